/*
   Copyright 2026 The toroidal authors

   Licensed under the Apache License, Version 2.0 (the "License");
   you may not use this file except in compliance with the License.
   You may obtain a copy of the License at

        http://www.apache.org/licenses/LICENSE-2.0

   Unless required by applicable law or agreed to in writing, software
   distributed under the License is distributed on an "AS IS" BASIS,
   WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
   See the License for the specific language governing permissions and
   limitations under the License.
*/

#ifndef TOROIDAL_ERRORS_HPP
#define TOROIDAL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace toroidal {

/// Base class for every error thrown by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// A requested root of unity does not live in the ambient cyclotomic field.
struct ConductorError : Error {
    using Error::Error;
};

/// Exact division by zero.
struct DivisionByZero : Error {
    DivisionByZero() : Error("division by zero") {}
};

/// Malformed or out-of-contract input (bad label, invalid matrix, non-symmetry
/// permutation, transitive automorphism where a non-transitive one is required).
struct InputError : Error {
    using Error::Error;
};

/// Generator images do not extend to an automorphism; the message names a
/// witness pair on which bracket compatibility fails.
struct ExtensionError : Error {
    using Error::Error;
};

/// An internally constructed object failed its own consistency check.  This
/// indicates a table bug, not a user error.
struct ConstructionError : Error {
    using Error::Error;
};

/// A degree window passed by the caller does not cover the support the
/// computation needs.  Raised instead of silently truncating.
struct WindowError : Error {
    using Error::Error;
};

}  // namespace toroidal

#endif  // TOROIDAL_ERRORS_HPP

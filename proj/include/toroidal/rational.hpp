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

#ifndef TOROIDAL_RATIONAL_HPP
#define TOROIDAL_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <numeric>
#include <string>
#include <vector>

namespace toroidal {

// All scalar arithmetic in the library is exact.  Rational is the coefficient
// type underneath CycNum; no floating point appears anywhere.
using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline bool is_zero(const Rational& q) { return q.is_zero(); }

inline bool is_integer(const Rational& q) { return denominator(q) == 1; }

inline Integer to_integer(const Rational& q) { return numerator(q) / denominator(q); }

inline long to_long(const Rational& q) { return static_cast<long>(to_integer(q)); }

inline std::string to_string(const Rational& q) { return q.str(); }

inline long lcm_long(long a, long b) { return std::lcm(a, b); }

/// num/den with sign normalization; the two-argument Rational constructor
/// rejects negative denominators.
inline Rational frac(long num, long den) {
    if (den < 0) {
        num = -num;
        den = -den;
    }
    return Rational(num, den);
}

}  // namespace toroidal

#endif  // TOROIDAL_RATIONAL_HPP

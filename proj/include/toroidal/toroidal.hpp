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

// Umbrella header.

#ifndef TOROIDAL_TOROIDAL_HPP
#define TOROIDAL_TOROIDAL_HPP

#include "toroidal/affine.hpp"
#include "toroidal/cartan.hpp"
#include "toroidal/cyclotomic.hpp"
#include "toroidal/errors.hpp"
#include "toroidal/folding.hpp"
#include "toroidal/linalg.hpp"
#include "toroidal/mry.hpp"
#include "toroidal/rational.hpp"
#include "toroidal/simple_lie.hpp"
#include "toroidal/toroidal_algebra.hpp"
#include "toroidal/uce.hpp"

#endif  // TOROIDAL_TOROIDAL_HPP

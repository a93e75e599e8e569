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

#include <catch2/catch_amalgamated.hpp>

#include <numeric>
#include <random>

#include "toroidal/cyclotomic.hpp"

using namespace toroidal;

namespace {

CycNum random_element(const FieldPtr& F, std::mt19937& rng) {
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 4);
    std::vector<Rational> c;
    for (long i = 0; i < F->degree(); ++i) c.emplace_back(Rational(num(rng)) / den(rng));
    return CycNum(F, std::move(c));
}

}  // namespace

TEST_CASE("roots of unity reduce to canonical values", "[cyclotomic]") {
    auto F = CycField::get(24);
    CHECK(F->root_of_unity(1, 2) == F->integer(-1));
    CHECK(F->root_of_unity(1, 1) == F->one());
    CHECK((F->one() + F->root_of_unity(1, 3) + F->root_of_unity(2, 3)).is_zero());
    CHECK(F->root_of_unity(2, 4) == F->integer(-1));
    CHECK(F->root_of_unity(1, 4) * F->root_of_unity(1, 4) == F->integer(-1));
}

TEST_CASE("xi_8 + xi_8^-1 squares to 2", "[cyclotomic]") {
    auto F = CycField::get(8);
    CycNum s = F->root_of_unity(1, 8) + F->root_of_unity(7, 8);
    CHECK(s * s == F->integer(2));
    CHECK(F->sqrt2() == s);
    CHECK(!s.is_rational());
}

TEST_CASE("conductor errors", "[cyclotomic]") {
    auto F = CycField::get(6);
    CHECK_THROWS_AS(F->root_of_unity(1, 4), ConductorError);
    CHECK_NOTHROW(F->root_of_unity(5, 6));
    CHECK_THROWS_AS(CycField::get(0), ConductorError);
}

TEST_CASE("multiplicative identities", "[cyclotomic]") {
    for (long N : {2L, 3L, 4L, 6L, 8L, 12L}) {
        auto F = CycField::get(N);
        CycNum xi = F->root_of_unity(1, N);
        CHECK(xi * F->root_of_unity(N - 1, N) == F->one());
        CHECK(xi.pow(N) == F->one());
    }
}

TEST_CASE("geometric sums detect divisibility", "[cyclotomic]") {
    // sum_{k in Z_d} xi_d^{-pk} equals d when d | p and 0 otherwise; this is
    // the orthogonality behind the graded-dimension predictions.
    auto F = CycField::get(12);
    for (long d : {1L, 2L, 3L, 4L, 6L, 12L}) {
        for (long p = -13; p <= 13; ++p) {
            CycNum sum = F->zero();
            for (long k = 0; k < d; ++k) sum += F->root_of_unity(-p * k, d);
            if (p % d == 0)
                CHECK(sum == F->integer(d));
            else
                CHECK(sum.is_zero());
        }
    }
}

TEST_CASE("multiplicative order of xi_M^k is M/gcd(k,M)", "[cyclotomic][property]") {
    auto F = CycField::get(24);
    for (long M : {1L, 2L, 3L, 4L, 6L, 8L, 12L, 24L}) {
        for (long k = 0; k < M; ++k) {
            long expected = M / std::gcd(k, M);
            CHECK(F->root_of_unity(k, M).multiplicative_order(24) == expected);
        }
    }
}

TEST_CASE("field axioms hold exactly on random triples", "[cyclotomic][property]") {
    std::mt19937 rng(20260810);
    for (long L : {5L, 8L, 12L}) {
        auto F = CycField::get(L);
        for (int trial = 0; trial < 40; ++trial) {
            CycNum a = random_element(F, rng), b = random_element(F, rng), c = random_element(F, rng);
            CHECK((a + b) + c == a + (b + c));
            CHECK((a * b) * c == a * (b * c));
            CHECK(a * (b + c) == a * b + a * c);
            CHECK(a + b == b + a);
            CHECK(a * b == b * a);
            if (!b.is_zero()) {
                CHECK((a / b) * b == a);
                CHECK(b * b.inverse() == F->one());
            }
        }
    }
}

TEST_CASE("canonical form is idempotent", "[cyclotomic][property]") {
    // Powers computed by repeated multiplication agree with the precomputed
    // canonical expansion of the same monomial.
    std::mt19937 rng(7);
    for (long L : {8L, 12L}) {
        auto F = CycField::get(L);
        CycNum xi = F->root_of_unity(1, L);
        CycNum acc = F->one();
        for (long e = 0; e < 2 * L; ++e) {
            CHECK(acc == CycNum(F, F->power_of_generator(e)));
            CHECK(acc == xi.pow(e));
            acc *= xi;
        }
        CycNum r = random_element(F, rng);
        CHECK(r * F->one() == r);
    }
}

TEST_CASE("division by zero is rejected", "[cyclotomic]") {
    auto F = CycField::get(4);
    CHECK_THROWS_AS(F->one() / F->zero(), DivisionByZero);
    CHECK_THROWS_AS(F->zero().inverse(), DivisionByZero);
}

TEST_CASE("values embed across compatible conductors", "[cyclotomic]") {
    auto F3 = CycField::get(3);
    auto F12 = CycField::get(12);
    CHECK(F3->root_of_unity(1, 3) + F12->zero() == F12->root_of_unity(4, 12));
    CHECK(F3->integer(2) * F12->root_of_unity(1, 12) == F12->root_of_unity(1, 12) + F12->root_of_unity(1, 12));
    auto F8 = CycField::get(8);
    CHECK_THROWS_AS(F8->one() + CycField::get(12)->root_of_unity(1, 12), ConductorError);
}

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

#include "toroidal/mry.hpp"

using namespace toroidal;

TEST_CASE("generator images are mu-hat fixed and graded", "[mry]") {
    TwistContext ctx = TwistContext::build("A_2^(1)", "(1 2)");
    MryVerifier V(ctx);
    for (int i = 0; i <= ctx.T.A.gcm.l; ++i)
        for (long m = -2; m <= 2; ++m) {
            CHECK(ctx.mu_hat(V.h(i, m)) == V.h(i, m));
            CHECK(ctx.mu_hat(V.x(i, m, +1)) == V.x(i, m, +1));
            CHECK(ctx.mu_hat(V.x(i, m, -1)) == V.x(i, m, -1));
            // deg x_{i,m}^+ = (alpha-check_i, m): one projected weight.
            std::vector<Rational> expect(size_t(ctx.fd.krank()), Rational(0));
            expect[size_t(ctx.fd.rep_index[size_t(i)])] = 1;
            for (const auto& [alpha, n] : ctx.T.support_degrees(V.x(i, m, +1))) {
                CHECK(n == m);
                CHECK(ctx.fd.project(alpha) == expect);
            }
        }
    CHECK(ctx.mu_hat(V.c()) == V.c());
}

TEST_CASE("T0 and T1 hold across the window", "[mry]") {
    TwistContext ctx = TwistContext::build("A_2^(1)", "(1 2)");
    MryVerifier V(ctx);
    for (int i = 0; i <= 2; ++i)
        for (long m = -3; m <= 3; ++m) {
            CHECK(V.verify_relation("T0", i, 0, m, 0).holds);
            CHECK(V.verify_relation("T1", i, 0, m, 0).holds);
        }
}

TEST_CASE("T2 matches the single-m coefficient and flags the printed one", "[mry]") {
    TwistContext ctx = TwistContext::build("A_2^(1)", "(1 2)");
    MryVerifier V(ctx);
    // m = 2, n = -2: the printed coefficient m^2 N differs from m N.
    RelationReport r = V.verify_relation("T2", 1, 1, 2, -2);
    CHECK(r.holds);
    CHECK(r.corrected_rhs_matches.value());
    CHECK_FALSE(r.printed_rhs_matches.value());
    // m in {0, 1}: both coefficients coincide.
    for (long m : {0L, 1L}) {
        RelationReport s = V.verify_relation("T2", 0, 0, m, -m);
        CHECK(s.holds);
        CHECK(s.corrected_rhs_matches.value());
        CHECK(s.printed_rhs_matches.value());
    }
    // Off the delta branch everything vanishes.
    RelationReport t = V.verify_relation("T2", 0, 1, 2, 1);
    CHECK(t.holds);
    CHECK(t.lhs.is_zero());
}

TEST_CASE("T4 produces the central term at m + n = 0", "[mry]") {
    TwistContext ctx = TwistContext::build("A_2^(1)", "(1 2)");
    MryVerifier V(ctx);
    const auto& F = ctx.field();
    for (int i = 0; i <= 2; ++i)
        for (long m = -2; m <= 2; ++m) {
            RelationReport r = V.verify_relation("T4", i, i, m, -m);
            CHECK(r.holds);
            if (m != 0) {
                // the k1 coefficient (m N <a_i^vee, a_i^vee>/2) sum_k delta xi^{km}
                CycNum norm = ctx.T.A.form(ctx.T.A.coroot[size_t(i)], ctx.T.A.coroot[size_t(i)]);
                CycNum expect = F->zero();
                int jj = i;
                for (long k = 0; k < ctx.N; ++k) {
                    if (jj == i) expect += F->root_of_unity(k * m, ctx.N);
                    jj = ctx.mu[size_t(jj)];
                }
                expect *= norm * F->rational(Rational(m * ctx.N, 2));
                auto it = r.lhs.center.find({0, 0});
                if (expect.is_zero()) {
                    CHECK(it == r.lhs.center.end());
                } else {
                    REQUIRE(it != r.lhs.center.end());
                    CHECK(it->second.first == expect);
                }
            }
        }
}

TEST_CASE("T6 kills the overlong strings", "[mry]") {
    TwistContext ctx = TwistContext::build("A_2^(1)", "(1 2)");
    MryVerifier V(ctx);
    // s_1 = 2: the derived example [x_{1,0}, [x_{1,1}, x_{1,2}]] = 0.
    CHECK(V.verify_t6_degrees(1, {0, 1, 2}, +1).holds);
    CHECK(V.verify_t6_degrees(1, {0, 1, 2}, -1).holds);
    CHECK(V.verify_t6_degrees(2, {-1, 0, 3}, +1).holds);
    // s_0 = 1: plain pair vanishing.
    CHECK(V.verify_t6_degrees(0, {1, 1}, +1).holds);
    CHECK_THROWS_AS(V.verify_t6_degrees(1, {0, 1}, +1), InputError);
}

TEST_CASE("T7 vanishing for matching parities", "[mry]") {
    TwistContext ctx = TwistContext::build("A_2^(1)", "(1 2)");
    MryVerifier V(ctx);
    CHECK(V.verify_t7(1, 0, 0).holds);
    CHECK(V.verify_t7(1, 0, 2).holds);
    CHECK(V.verify_t7(1, 1, 1).holds);
    CHECK(V.verify_t7(1, 1, 3).holds);
    CHECK_THROWS_AS(V.verify_t7(0, 0, 0), InputError);  // s_0 = 1
    CHECK_THROWS_AS(V.verify_t7(1, 0, 1), InputError);  // parity mismatch
}

TEST_CASE("full sweep on a small window", "[mry]") {
    for (auto [label, cycles] : std::vector<std::pair<std::string, std::string>>{
             {"A_2^(1)", "(1 2)"}, {"A_3^(1)", "(0 2)(1 3)"}}) {
        TwistContext ctx = TwistContext::build(label, cycles);
        MryVerifier V(ctx);
        auto reports = V.sweep(2);
        for (const auto& r : reports) {
            INFO(label << " " << r.key());
            CHECK(r.holds);
            if (r.tag == "T2") CHECK(r.corrected_rhs_matches.value());
        }
    }
}

TEST_CASE("folded zero modes satisfy the folded Serre relations", "[mry]") {
    for (auto [label, cycles] : std::vector<std::pair<std::string, std::string>>{
             {"A_2^(1)", "(1 2)"}, {"A_3^(1)", "(1 3)"}, {"D_3^(2)", "(0 2)"}}) {
        TwistContext ctx = TwistContext::build(label, cycles);
        MryVerifier V(ctx);
        GcheckReport rep = V.check_folded_serre();
        INFO(label << ": " << rep.witness);
        CHECK(rep.holds);
        for (const auto& kappa : rep.kappa) CHECK(kappa != 0);
    }
}

TEST_CASE("dimension audit agrees with the prediction", "[mry]") {
    TwistContext ctx = TwistContext::build("A_2^(1)", "(1 2)");
    MryVerifier V(ctx);
    auto rows = V.dimension_audit(4, 2);
    REQUIRE(!rows.empty());
    std::map<std::pair<std::vector<long>, long>, AuditRow> table;
    for (const auto& row : rows) {
        INFO("alpha = (" << row.alpha[0] << "," << row.alpha[1] << "), p = " << row.p);
        CHECK(row.ok);
        table[{row.alpha, row.p}] = row;
    }
    // Spot values from the prediction: (2 a-check_1, p) has dim 1 for odd p.
    CHECK(table.at({{0, 2}, 1}).computed == 1);
    CHECK(table.at({{0, 2}, 2}).computed == 0);
    CHECK(table.at({{0, 2}, 0}).computed == 0);
    // (3 a-check_1, p) is excluded by s_1 + 1.
    CHECK(table.at({{0, 3}, 0}).computed == 0);
    // (a-check_0, p): d_0 = 2.
    CHECK(table.at({{1, 0}, 2}).computed == 1);
    CHECK(table.at({{1, 0}, 1}).computed == 0);
}

TEST_CASE("audit for the A_3^(1) flip matches d_1 = 1", "[mry]") {
    TwistContext ctx = TwistContext::build("A_3^(1)", "(1 3)");
    std::vector<Rational> a1{Rational(0), Rational(1), Rational(0)};
    for (long p = -3; p <= 3; ++p) CHECK(ctx.fiber_dim(a1, p) == 1);
}

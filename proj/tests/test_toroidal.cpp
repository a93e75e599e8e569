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

#include <random>

#include "toroidal/folding.hpp"
#include "toroidal/toroidal_algebra.hpp"

using namespace toroidal;

namespace {

std::vector<Rational> rvec(std::initializer_list<long> xs) {
    std::vector<Rational> v;
    for (long x : xs) v.emplace_back(x);
    return v;
}

}  // namespace

TEST_CASE("folding A_3^(1) along (1 3)", "[folding]") {
    GcmData A = parse_affine("A_3^(1)");
    FoldedData fd = fold(A, perm_parse("(1 3)", 4));
    CHECK(fd.rep_list == std::vector<int>{0, 1, 2});
    CHECK(fd.folded_matrix == Matrix<long>{{2, -1, 0}, {-2, 2, -2}, {0, -1, 2}});
    CHECK(fd.folded_label == "C_2^(1)");
    CHECK(fd.s == std::vector<int>{1, 1, 1, 1});
    CHECK(fd.N == 2);
    CHECK(fd.d[0] == 2);
    CHECK(fd.d[1] == 1);

    // Orbit sizes partition the node set and d_i N_i = N.
    std::size_t total = 0;
    for (const auto& orb : fd.orbits) total += orb.size();
    CHECK(total == 4);
    for (int i = 0; i < 4; ++i) CHECK(fd.d[size_t(i)] * fd.orbit_count[size_t(i)] == fd.N);
}

TEST_CASE("folding A_2^(1) along (1 2)", "[folding]") {
    GcmData A = parse_affine("A_2^(1)");
    FoldedData fd = fold(A, perm_parse("(1 2)", 3));
    CHECK(fd.folded_matrix == Matrix<long>{{2, -1}, {-4, 2}});
    CHECK(fd.folded_label == "A_2^(2)");
    CHECK(fd.s == std::vector<int>{1, 2, 2});
    CHECK(fd.d == std::vector<long>{2, 1, 1});
}

TEST_CASE("transitive automorphisms are rejected", "[folding]") {
    GcmData A = parse_affine("A_2^(1)");
    CHECK_THROWS_AS(fold(A, perm_parse("(0 1 2)", 3)), InputError);
    GcmData A1 = parse_affine("A_1^(1)");
    CHECK_THROWS_AS(fold(A1, perm_parse("(0 1)", 2)), InputError);
    GcmData A3 = parse_affine("A_3^(1)");
    CHECK_THROWS_AS(fold(A3, perm_parse("(0 1)", 4)), InputError);  // not a symmetry
}

TEST_CASE("fold is stable under relabeling by commuting symmetries", "[folding]") {
    GcmData A = parse_affine("A_3^(1)");
    FoldedData f1 = fold(A, perm_parse("(1 3)", 4));
    // (0 2) = rotation-conjugate of (1 3); the folded matrices must agree up
    // to a simultaneous permutation, hence carry the same affine label.
    FoldedData f2 = fold(A, perm_parse("(0 2)", 4));
    CHECK(f1.folded_label == f2.folded_label);

    FoldedData f3 = fold(A, perm_parse("(0 2)(1 3)", 4));
    CHECK(f3.folded_matrix == Matrix<long>{{2, -2}, {-2, 2}});
    CHECK(f3.folded_label == "A_1^(1)");
}

TEST_CASE("predicted root slice for the A_2^(2) fold", "[folding]") {
    GcmData A = parse_affine("A_2^(1)");
    FoldedData fd = fold(A, perm_parse("(1 2)", 3));
    auto phi = predict_phi(fd, 6, 3);

    // (2 a-check_1, p): s_1 = 2, d_1 = 1, N = 2 so p is odd.
    CHECK(phi.count({{0, 2}, 1}) == 1);
    CHECK(phi.count({{0, 2}, -3}) == 1);
    CHECK(phi.count({{0, 2}, 2}) == 0);
    CHECK(phi.count({{0, 2}, 0}) == 0);
    // (a-check_0, p): d_0 = 2 so p is even.
    CHECK(phi.count({{1, 0}, 0}) == 1);
    CHECK(phi.count({{1, 0}, 2}) == 1);
    CHECK(phi.count({{1, 0}, 1}) == 0);
    // (a-check_1, p): d_1 = 1, any p.
    CHECK(phi.count({{0, 1}, 0}) == 1);
    CHECK(phi.count({{0, 1}, 3}) == 1);

    // Cor 5.3 exclusions: (1 - a_ij) a-check_i + a-check_j and (s_i + 1) a-check_i.
    for (long p = -3; p <= 3; ++p) {
        // i = 0, j = 1 (folded indices): a_01 = -1: 2 a0 + a1.
        CHECK(phi.count({{2, 1}, p}) == 0);
        // i = 1, j = 0: a_10 = -4: 5 a1 + a0.
        CHECK(phi.count({{1, 5}, p}) == 0);
        // (s_i + 1) multiples.
        CHECK(phi.count({{2, 0}, p}) == 0);
        CHECK(phi.count({{0, 3}, p}) == 0);
    }

    // Non-isotropy of every member, and W-check invariance of the slice.
    auto phi_wide = predict_phi(fd, 9, 3);
    for (const auto& g : phi) {
        CHECK(!is_isotropic(fd, g));
        for (int i = 0; i < fd.krank(); ++i) {
            std::vector<Rational> x(g.alpha.begin(), g.alpha.end());
            Rational c = 0;
            for (int j = 0; j < fd.krank(); ++j) c += x[size_t(j)] * fd.gram[size_t(i)][size_t(j)];
            c = 2 * c / fd.gram[size_t(i)][size_t(i)];
            GradedRoot img;
            for (int j = 0; j < fd.krank(); ++j)
                img.alpha.push_back(g.alpha[size_t(j)] - (j == i ? to_long(c) : 0));
            img.p = g.p;
            CHECK(phi_wide.count(img) == 1);
        }
    }
}

TEST_CASE("bounded Weyl orbit in the folded basis", "[folding]") {
    GcmData A = parse_affine("A_2^(1)");
    FoldedData fd = fold(A, perm_parse("(1 2)", 3));
    LatticeVec seed(BasisTag::FoldedSimple, {Rational(0), Rational(1)});
    auto orbit = weyl_orbit(seed, fd.gram, 3);
    // contains +-alpha-check_1 and the alpha-check_0 + alpha-check_1 images
    CHECK(orbit.count(LatticeVec(BasisTag::FoldedSimple, {Rational(0), Rational(-1)})) == 1);
    CHECK(orbit.count(LatticeVec(BasisTag::FoldedSimple, {Rational(1), Rational(1)})) == 1);
    CHECK(orbit.count(LatticeVec(BasisTag::FoldedSimple, {Rational(-1), Rational(-1)})) == 1);
    for (const auto& v : orbit) {
        GradedRoot g{{to_long(v.c[0]), to_long(v.c[1])}, 0};
        CHECK(!is_isotropic(fd, g));
    }
}

TEST_CASE("isotropy tags", "[folding]") {
    GcmData A = parse_affine("A_2^(1)");
    FoldedData fd = fold(A, perm_parse("(1 2)", 3));
    // pi(delta_2) = a-check_0 + 2 a-check_1 is isotropic.
    CHECK(is_isotropic(fd, {{1, 2}, 5}));
    CHECK(is_isotropic(fd, {{0, 0}, 1}));
    CHECK(!is_isotropic(fd, {{1, 0}, 0}));
    CHECK(!is_isotropic(fd, {{0, 1}, 0}));
}

// ---------------------------------------------------------------------------
// The two-variable algebra
// ---------------------------------------------------------------------------

TEST_CASE("toroidal bracket and the K relation", "[toroidal]") {
    TwistContext ctx = TwistContext::build("A_2^(1)", "(1 2)");
    ToroidalAlgebra& T = ctx.T;
    const auto& F = ctx.field();
    const auto& g = T.A.g;

    LieVec x = g.basis_vec(g.eplus(0));
    LieVec y = g.basis_vec(g.eminus(0));
    // [t1 t2 (x) x, t1^-1 t2^-1 (x) y] = 1 (x) [x,y] + <x,y>(k1 + k2).
    ToroidalElement u = T.from_loop(1, 1, x), v = T.from_loop(-1, -1, y);
    ToroidalElement w = T.bracket(u, v);
    ToroidalElement expect = T.from_loop(0, 0, g.bracket(x, y));
    T.add_center(expect, 0, 0, g.form(x, y), g.form(x, y));
    CHECK(w == expect);

    // Center annihilates everything.
    CHECK(T.bracket(T.k1(), u).is_zero());
    CHECK(T.bracket(u, T.center_term(2, 1 * T.r())).is_zero());

    // K relation: a k1 + b k2 = 0 at bidegree (a, b).
    for (long a : {-2L, 0L, 1L, 3L}) {
        for (long b : {-1L, 1L, 2L}) {
            ToroidalElement rel;
            T.add_center(rel, a, b, F->integer(a), F->integer(b));
            CHECK(rel.is_zero());
            // Writing the same abstract vector through either generator gives
            // identical canonical forms.
            ToroidalElement one_shot;
            T.add_center(one_shot, a, b, F->integer(3), F->integer(5));
            ToroidalElement two_shot;
            T.add_center(two_shot, a, b, F->integer(3), F->zero());
            T.add_center(two_shot, a, b, F->zero(), F->integer(5));
            CHECK(one_shot == two_shot);
        }
    }
    // At (a, 0) with a != 0 the k1 generator dies.
    ToroidalElement dead;
    T.add_center(dead, 2, 0, F->one(), F->zero());
    CHECK(dead.is_zero());

    // Jacobi on random toroidal triples.
    std::mt19937 rng(20260810);
    std::uniform_int_distribution<int> deg(-2, 2), idx(0, g.dim() - 1), coef(-2, 2);
    auto random_elem = [&]() {
        ToroidalElement e;
        for (int t = 0; t < 2; ++t) {
            long m2 = deg(rng);
            LieVec p = eigen_project(g, T.A.nu, T.r(), m2, g.basis_vec(idx(rng)));
            T.add_loop(e, deg(rng), m2, p, F->integer(coef(rng)));
        }
        return e;
    };
    for (int trial = 0; trial < 20; ++trial) {
        ToroidalElement a = random_elem(), b = random_elem(), c = random_elem();
        ToroidalElement j = T.bracket(a, T.bracket(b, c));
        j = T.add(j, T.bracket(b, T.bracket(c, a)));
        j = T.add(j, T.bracket(c, T.bracket(a, b)));
        CHECK(j.is_zero());
    }
}

TEST_CASE("Lemma 3.1 commutator formulas on embedded g-terms", "[toroidal]") {
    for (std::string label : {"A_2^(1)", "D_3^(2)"}) {
        TwistContext ctx = TwistContext::build(label, "");
        ToroidalAlgebra& T = ctx.T;
        const AffineAlgebra& A = T.A;
        const auto& F = ctx.field();
        long r = T.r();

        // Catalog of embedded g-elements: t1^{m1} (x) (t2^{m2} (x) v) with v
        // running over eigenspace projections of the basis.
        struct Item {
            long m1, m2;
            LieVec v;
            std::vector<Rational> restr;  // finite restricted weight
        };
        std::vector<Item> items;
        for (long m1 = -1; m1 <= 1; ++m1)
            for (long m2 = -r; m2 <= r; ++m2)
                for (int idx = 0; idx < A.g.dim(); ++idx) {
                    LieVec p = eigen_project(A.g, A.nu, r, m2, A.g.basis_vec(idx));
                    if (p.empty()) continue;
                    auto root = A.g.root_of(idx);
                    std::vector<Rational> fin(root.begin(), root.end());
                    items.push_back({m1, m2, p, A.gcm.rep_coords(fin)});
                }
        for (const auto& ia : items) {
            for (const auto& ib : items) {
                AffineElement xa = A.from_loop(ia.m2, ia.v);
                AffineElement xb = A.from_loop(ib.m2, ib.v);
                ToroidalElement lhs = T.bracket(T.embed(ia.m1, xa), T.embed(ib.m1, xb));
                bool imaginary_nonzero = true;
                for (std::size_t t = 0; t < ia.restr.size(); ++t)
                    if (ia.restr[t] + ib.restr[t] != 0) imaginary_nonzero = false;
                if (ia.m2 + ib.m2 == 0) imaginary_nonzero = false;
                ToroidalElement rhs = T.embed(ia.m1 + ib.m1, A.bracket(xa, xb));
                if (!imaginary_nonzero) {
                    // [t1^m (x) x, t1^n (x) y] = t1^{m+n} (x) [x,y]
                    //   + m delta_{m+n,0} <x,y> k1.
                    if (ia.m1 + ib.m1 == 0)
                        T.add_center(rhs, 0, 0, A.form(xa, xb) * F->integer(ia.m1), F->zero());
                } else {
                    // imaginary sum: the k1 coefficient is
                    // <x., y.> (m1 n2 - m2 n1)/(m2 + n2).
                    CycNum f = A.g.form(ia.v, ib.v);
                    Rational coef = frac(ia.m1 * ib.m2 - ia.m2 * ib.m1, ia.m2 + ib.m2);
                    T.add_center(rhs, ia.m1 + ib.m1, ia.m2 + ib.m2, f * F->rational(coef), F->zero());
                }
                REQUIRE(lhs == rhs);
            }
        }
    }
}

TEST_CASE("mu-hat fixes k1 and scales the generators", "[toroidal]") {
    TwistContext ctx = TwistContext::build("A_2^(1)", "(1 2)");
    ToroidalAlgebra& T = ctx.T;
    const auto& F = ctx.field();

    CHECK(ctx.mu_hat(T.k1()) == T.k1());
    for (long m = -2; m <= 2; ++m) {
        for (int i = 0; i <= T.A.gcm.l; ++i) {
            int j = ctx.mu[size_t(i)];
            ToroidalElement lhs = ctx.mu_hat(T.embed(m, T.A.e_plus[size_t(i)]));
            ToroidalElement rhs = T.scale(T.embed(m, T.A.e_plus[size_t(j)]), F->root_of_unity(-m, ctx.N));
            CHECK(lhs == rhs);
            lhs = ctx.mu_hat(T.embed(m, T.A.coroot[size_t(i)]));
            rhs = T.scale(T.embed(m, T.A.coroot[size_t(j)]), F->root_of_unity(-m, ctx.N));
            CHECK(lhs == rhs);
        }
    }
}

TEST_CASE("mu-hat has order N and respects the bracket", "[toroidal][property]") {
    for (auto [label, cycles] : std::vector<std::pair<std::string, std::string>>{
             {"A_2^(1)", "(1 2)"}, {"A_5^(2)", "(0 1)"}, {"D_3^(2)", "(0 2)"}}) {
        TwistContext ctx = TwistContext::build(label, cycles);
        ToroidalAlgebra& T = ctx.T;
        const AffineAlgebra& A = T.A;
        long r = T.r();

        std::vector<ToroidalElement> sample;
        for (int idx = 0; idx < A.g.dim(); ++idx)
            for (long m2 = -r; m2 <= r; ++m2) {
                LieVec p = eigen_project(A.g, A.nu, r, m2, A.g.basis_vec(idx));
                if (!p.empty()) sample.push_back(T.from_loop(1, m2, p));
            }
        sample.push_back(T.k1());
        sample.push_back(T.center_term(2, r));
        sample.push_back(T.center_term(-1, -r));
        sample.push_back(T.center_term(3, 0, /*k2_generator=*/true));

        for (const auto& u : sample) {
            ToroidalElement acc = u;
            for (long p = 0; p < ctx.N; ++p) acc = ctx.mu_hat(acc);
            CHECK(acc == u);
        }
        std::mt19937 rng(3);
        std::uniform_int_distribution<int> pick(0, static_cast<int>(sample.size()) - 1);
        for (int trial = 0; trial < 25; ++trial) {
            const ToroidalElement& u = sample[size_t(pick(rng))];
            const ToroidalElement& v = sample[size_t(pick(rng))];
            CHECK(ctx.mu_hat(T.bracket(u, v)) == T.bracket(ctx.mu_hat(u), ctx.mu_hat(v)));
        }
        // The averaging projector is idempotent.
        for (int trial = 0; trial < 10; ++trial) {
            const ToroidalElement& u = sample[size_t(pick(rng))];
            ToroidalElement s = ctx.symmetrize(u);
            CHECK(ctx.symmetrize(s) == s);
            CHECK(ctx.mu_hat(s) == s);
        }
        // x_(m) elements are fixed by mu-hat after the matching twist.
        for (int i = 0; i <= A.gcm.l; ++i)
            for (long m = -2; m <= 2; ++m) {
                AffineElement xm = ctx.twisted_average(A.e_plus[size_t(i)], m);
                ToroidalElement t = T.embed(m, xm);
                CHECK(ctx.mu_hat(t) == t);
            }
    }
}

TEST_CASE("graded fibers of the fixed subalgebra", "[toroidal]") {
    TwistContext ctx = TwistContext::build("A_2^(1)", "(1 2)");

    // dim g-hat[mu]_{a-check_1, n} = 1 for every n (d_1 = 1).
    for (long n = -2; n <= 2; ++n) CHECK(ctx.fiber_dim(rvec({0, 1}), n) == 1);
    // (2 a-check_1, n): 1 iff n odd.
    CHECK(ctx.fiber_dim(rvec({0, 2}), 1) == 1);
    CHECK(ctx.fiber_dim(rvec({0, 2}), -1) == 1);
    CHECK(ctx.fiber_dim(rvec({0, 2}), 2) == 0);
    CHECK(ctx.fiber_dim(rvec({0, 2}), 0) == 0);
    // (a-check_0, n): 1 iff n even (d_0 = 2).
    CHECK(ctx.fiber_dim(rvec({1, 0}), 0) == 1);
    CHECK(ctx.fiber_dim(rvec({1, 0}), 2) == 1);
    CHECK(ctx.fiber_dim(rvec({1, 0}), 1) == 0);
    // (3 a-check_1, n) is empty: s_1 + 1 exclusion.
    for (long n = -2; n <= 2; ++n) CHECK(ctx.fiber_dim(rvec({0, 3}), n) == 0);

    // Every basis vector of a fiber is mu-hat fixed and lives at the fiber's
    // degrees.
    auto basis = ctx.fixed_space_basis(rvec({0, 1}), 2, -3, 3);
    REQUIRE(basis.size() == 1);
    CHECK(ctx.mu_hat(basis[0]) == basis[0]);

    // Window refusal names the missing degree instead of truncating.
    CHECK_THROWS_AS(ctx.fixed_space_basis(rvec({0, 1}), 0, 5, 9), WindowError);

    TwistContext flip = TwistContext::build("A_3^(1)", "(1 3)");
    for (long p = -3; p <= 3; ++p) CHECK(flip.fiber_dim(rvec({0, 1, 0}), p) == 1);
}

TEST_CASE("bracket adds degrees", "[toroidal][property]") {
    TwistContext ctx = TwistContext::build("A_2^(1)", "(1 2)");
    ToroidalAlgebra& T = ctx.T;
    const auto& g = T.A.g;
    std::mt19937 rng(77);
    std::uniform_int_distribution<int> idx(0, g.dim() - 1), deg(-2, 2);
    for (int trial = 0; trial < 25; ++trial) {
        long m1 = deg(rng), m2 = deg(rng), n1 = deg(rng), n2 = deg(rng);
        LieVec x = eigen_project(g, T.A.nu, T.r(), m2, g.basis_vec(idx(rng)));
        LieVec y = eigen_project(g, T.A.nu, T.r(), n2, g.basis_vec(idx(rng)));
        if (x.empty() || y.empty()) continue;
        ToroidalElement u = T.from_loop(m1, m2, x), v = T.from_loop(n1, n2, y);
        auto du = T.support_degrees(u), dv = T.support_degrees(v);
        auto dw = T.support_degrees(T.bracket(u, v));
        for (const auto& [alpha, n] : dw) {
            bool matched = false;
            for (const auto& [a1, x1] : du)
                for (const auto& [a2, x2] : dv) {
                    if (x1 + x2 != n) continue;
                    bool same = true;
                    for (std::size_t t = 0; t < alpha.size(); ++t)
                        if (a1[t] + a2[t] != alpha[t]) same = false;
                    if (same) matched = true;
                }
            CHECK(matched);
        }
    }
}

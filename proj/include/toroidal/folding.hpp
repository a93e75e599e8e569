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

#ifndef TOROIDAL_FOLDING_HPP
#define TOROIDAL_FOLDING_HPP

#include <set>
#include <string>
#include <vector>

#include "toroidal/cartan.hpp"
#include "toroidal/errors.hpp"

namespace toroidal {

/// Orbit data and folded GCM of an affine GCM under a non-transitive diagram
/// automorphism mu.
struct FoldedData {
    GcmData parent;
    Perm mu;
    long N = 1;                           // order of mu
    std::vector<std::vector<int>> orbits;  // sorted by representative
    std::vector<int> rep_list;             // I-check: representatives, ascending
    std::vector<int> rep_index;            // node -> position of its rep in rep_list
    std::vector<int> s;                    // s_i per node (1 or 2)
    std::vector<int> orbit_count;          // N_i per node
    std::vector<long> d;                   // d_i = N / N_i per node
    Matrix<Rational> alpha_check;          // column i: alpha-check_i in alpha coords, for every node i
    Matrix<Rational> gram;                 // (alpha-check_i, alpha-check_j), i, j in rep_list
    Matrix<long> folded_matrix;            // A-check over rep_list
    std::string folded_label;              // affine classification of A-check

    int krank() const { return static_cast<int>(rep_list.size()); }

    /// pi_mu of an affine-lattice vector, in alpha-check coordinates over the
    /// representative set.
    std::vector<Rational> project(const std::vector<Rational>& alpha_coords) const {
        std::vector<Rational> out(rep_list.size(), Rational(0));
        for (std::size_t j = 0; j < alpha_coords.size(); ++j)
            out[static_cast<std::size_t>(rep_index[j])] += alpha_coords[j];
        return out;
    }

    Rational check_ip(const std::vector<Rational>& x, const std::vector<Rational>& y) const {
        Rational sum = 0;
        for (std::size_t i = 0; i < x.size(); ++i)
            for (std::size_t j = 0; j < y.size(); ++j)
                if (x[i] != 0 && y[j] != 0) sum += x[i] * y[j] * gram[i][j];
        return sum;
    }

    /// alpha-check_i of node i, as a LatticeVec in affine simple coordinates.
    LatticeVec alpha_check_of(int node) const {
        std::vector<Rational> c;
        for (std::size_t row = 0; row < alpha_check.size(); ++row) c.push_back(alpha_check[row][static_cast<std::size_t>(node)]);
        return LatticeVec(BasisTag::AffineSimple, std::move(c));
    }
};

/// A graded root (alpha, p) of Q-hat_mu = pi_mu(Q) x Z, alpha in alpha-check
/// coordinates over the representative set.
struct GradedRoot {
    std::vector<long> alpha;
    long p = 0;

    friend bool operator<(const GradedRoot& a, const GradedRoot& b) {
        if (a.alpha != b.alpha) return a.alpha < b.alpha;
        return a.p < b.p;
    }
    friend bool operator==(const GradedRoot& a, const GradedRoot& b) { return a.alpha == b.alpha && a.p == b.p; }

    long ht() const {
        long s = 0;
        for (long x : alpha) s += x;
        return s;
    }
};

/// Exact isotropy test (alpha, alpha) = 0 for a graded root.
inline bool is_isotropic(const FoldedData& fd, const GradedRoot& g) {
    std::vector<Rational> x(g.alpha.begin(), g.alpha.end());
    return fd.check_ip(x, x) == 0;
}

/// Fold an affine GCM along a diagram automorphism.  Transitive
/// automorphisms (the A_l^(1) rotations) are rejected; the folded matrix is
/// classified and must come out affine.
inline FoldedData fold(const GcmData& A, const Perm& mu) {
    if (static_cast<int>(mu.size()) != A.size()) throw InputError("permutation size does not match the GCM");
    if (!A.is_diagram_symmetry(mu))
        throw InputError("permutation " + perm_to_string(mu) + " is not a diagram symmetry of " + A.label);
    FoldedData fd;
    fd.parent = A;
    fd.mu = mu;
    fd.N = perm_order(mu);
    fd.orbits = perm_orbits(mu);
    if (fd.orbits.size() == 1)
        throw InputError("transitive automorphism: " + perm_to_string(mu) + " acts transitively on the nodes of " +
                         A.label + "; folding requires a non-transitive automorphism");
    int n = A.size();
    fd.rep_list.clear();
    fd.rep_index.assign(static_cast<std::size_t>(n), -1);
    fd.orbit_count.assign(static_cast<std::size_t>(n), 0);
    for (const auto& orb : fd.orbits) fd.rep_list.push_back(orb.front());
    std::sort(fd.rep_list.begin(), fd.rep_list.end());
    for (const auto& orb : fd.orbits) {
        int idx = static_cast<int>(std::lower_bound(fd.rep_list.begin(), fd.rep_list.end(), orb.front()) - fd.rep_list.begin());
        for (int m : orb) {
            fd.rep_index[static_cast<std::size_t>(m)] = idx;
            fd.orbit_count[static_cast<std::size_t>(m)] = static_cast<int>(orb.size());
        }
    }
    fd.d.assign(static_cast<std::size_t>(n), 0);
    for (int i = 0; i < n; ++i) fd.d[static_cast<std::size_t>(i)] = fd.N / fd.orbit_count[static_cast<std::size_t>(i)];

    // s_i through the orbit dichotomy: either the orbit roots are pairwise
    // orthogonal, or the orbit is {i, mu(i)} with a_{i mu(i)} = -1.
    fd.s.assign(static_cast<std::size_t>(n), 1);
    for (const auto& orb : fd.orbits) {
        bool orthogonal = true;
        for (std::size_t x = 0; x < orb.size(); ++x)
            for (std::size_t y = x + 1; y < orb.size(); ++y)
                if (A.a[static_cast<std::size_t>(orb[x])][static_cast<std::size_t>(orb[y])] != 0) orthogonal = false;
        int si;
        if (orthogonal) {
            si = 1;
        } else if (orb.size() == 2 && A.a[static_cast<std::size_t>(orb[0])][static_cast<std::size_t>(orb[1])] == -1 &&
                   A.a[static_cast<std::size_t>(orb[1])][static_cast<std::size_t>(orb[0])] == -1) {
            si = 2;
        } else {
            throw ConstructionError("orbit dichotomy fails for " + A.label + " under " + perm_to_string(mu));
        }
        for (int m : orb) fd.s[static_cast<std::size_t>(m)] = si;
    }

    // alpha-check_i = N^{-1} sum_k alpha_{mu^k(i)}: weight 1/N_i on each
    // orbit member.
    fd.alpha_check.assign(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)));
    for (int i = 0; i < n; ++i) {
        int cnt = fd.orbit_count[static_cast<std::size_t>(i)];
        int m = i;
        for (int k = 0; k < cnt; ++k) {
            fd.alpha_check[static_cast<std::size_t>(m)][static_cast<std::size_t>(i)] = Rational(1, cnt);
            m = mu[static_cast<std::size_t>(m)];
        }
    }

    int kr = fd.krank();
    fd.gram.assign(static_cast<std::size_t>(kr), std::vector<Rational>(static_cast<std::size_t>(kr), Rational(0)));
    for (int a = 0; a < kr; ++a)
        for (int b = 0; b < kr; ++b) {
            std::vector<Rational> va, vb;
            for (int row = 0; row < n; ++row) {
                va.push_back(fd.alpha_check[static_cast<std::size_t>(row)][static_cast<std::size_t>(fd.rep_list[static_cast<std::size_t>(a)])]);
                vb.push_back(fd.alpha_check[static_cast<std::size_t>(row)][static_cast<std::size_t>(fd.rep_list[static_cast<std::size_t>(b)])]);
            }
            fd.gram[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = A.form_ip(va, vb);
        }

    fd.folded_matrix.assign(static_cast<std::size_t>(kr), std::vector<long>(static_cast<std::size_t>(kr), 0));
    for (int a = 0; a < kr; ++a)
        for (int b = 0; b < kr; ++b) {
            Rational v = 2 * fd.gram[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] / fd.gram[static_cast<std::size_t>(a)][static_cast<std::size_t>(a)];
            if (!is_integer(v)) throw ConstructionError("folded Cartan entry is not an integer");
            fd.folded_matrix[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)] = to_long(v);
        }

    auto cls = affine_type_check(fd.folded_matrix);
    if (!std::holds_alternative<AffineClass>(cls))
        throw ConstructionError("folded matrix of " + A.label + " under " + perm_to_string(mu) + " is not of affine type");
    fd.folded_label = std::get<AffineClass>(cls).label;
    return fd;
}

/// The predicted non-isotropic root system of g-hat[mu], truncated to
/// |ht| <= height_bound and |p| <= degree_bound:
///   { (w(k alpha-check_i), p) : w in W-check, i in I-check, 1 <= k <= s_i,
///     p in (k-1) d_i + k d_i Z }.
/// Every returned root has multiplicity one.
inline std::set<GradedRoot> predict_phi(const FoldedData& fd, long height_bound, long degree_bound) {
    if (height_bound <= 0 || degree_bound < 0) throw InputError("predict_phi bounds must be positive");
    std::set<GradedRoot> out;
    int kr = fd.krank();
    for (int ii = 0; ii < kr; ++ii) {
        int node = fd.rep_list[static_cast<std::size_t>(ii)];
        long di = fd.d[static_cast<std::size_t>(node)];
        for (int k = 1; k <= fd.s[static_cast<std::size_t>(node)]; ++k) {
            std::vector<Rational> seed(static_cast<std::size_t>(kr), Rational(0));
            seed[static_cast<std::size_t>(ii)] = k;
            auto orbit = weyl_orbit_coords(seed, fd.gram, height_bound);
            std::vector<long> ps;
            for (long p = -degree_bound; p <= degree_bound; ++p) {
                long rem = ((p - (k - 1) * di) % (k * di) + k * di) % (k * di);
                if (rem == 0) ps.push_back(p);
            }
            for (const auto& w : orbit) {
                std::vector<long> coords;
                for (const auto& q : w) {
                    if (!is_integer(q)) throw ConstructionError("non-integral Weyl image in the folded lattice");
                    coords.push_back(to_long(q));
                }
                GradedRoot root;
                root.alpha = coords;
                for (long p : ps) {
                    root.p = p;
                    if (is_isotropic(fd, root)) throw ConstructionError("predicted root is isotropic");
                    out.insert(root);
                }
            }
        }
    }
    return out;
}

}  // namespace toroidal

#endif  // TOROIDAL_FOLDING_HPP

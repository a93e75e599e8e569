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

#ifndef TOROIDAL_CARTAN_HPP
#define TOROIDAL_CARTAN_HPP

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "toroidal/errors.hpp"
#include "toroidal/linalg.hpp"
#include "toroidal/rational.hpp"

namespace toroidal {

// ---------------------------------------------------------------------------
// Permutations in cycle notation
// ---------------------------------------------------------------------------

using Perm = std::vector<int>;  // img[i] = image of node i

inline Perm perm_identity(int n) {
    Perm p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

/// Parse cycle notation such as "(0 2)(1 3)" or "(1,2)"; entries are node
/// labels in [0, n).  The empty string is the identity.
inline Perm perm_parse(const std::string& text, int n) {
    Perm p = perm_identity(n);
    std::size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && (text[i] == ' ' || text[i] == ',' || text[i] == '\t')) ++i;
    };
    skip_ws();
    while (i < text.size()) {
        if (text[i] != '(') throw InputError("expected '(' in permutation: " + text);
        ++i;
        std::vector<int> cycle;
        skip_ws();
        while (i < text.size() && text[i] != ')') {
            if (!isdigit(static_cast<unsigned char>(text[i]))) throw InputError("bad permutation token in: " + text);
            int v = 0;
            while (i < text.size() && isdigit(static_cast<unsigned char>(text[i]))) v = v * 10 + (text[i++] - '0');
            if (v >= n) throw InputError("node " + std::to_string(v) + " out of range in permutation: " + text);
            cycle.push_back(v);
            skip_ws();
        }
        if (i == text.size()) throw InputError("unterminated cycle in permutation: " + text);
        ++i;  // ')'
        for (std::size_t k = 0; k < cycle.size(); ++k) {
            int from = cycle[k], to = cycle[(k + 1) % cycle.size()];
            if (p[from] != from) throw InputError("node repeated in permutation: " + text);
            p[from] = to;
        }
        skip_ws();
    }
    return p;
}

inline std::string perm_to_string(const Perm& p) {
    std::string out;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i] || p[i] == static_cast<int>(i)) continue;
        out += "(";
        std::size_t j = i;
        bool first = true;
        while (!seen[j]) {
            seen[j] = true;
            if (!first) out += " ";
            out += std::to_string(j);
            first = false;
            j = static_cast<std::size_t>(p[j]);
        }
        out += ")";
    }
    return out.empty() ? "()" : out;
}

inline long perm_order(const Perm& p) {
    long ord = 1;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        long len = 0;
        std::size_t j = i;
        while (!seen[j]) {
            seen[j] = true;
            j = static_cast<std::size_t>(p[j]);
            ++len;
        }
        ord = std::lcm(ord, len);
    }
    return ord;
}

/// Orbits of <p>, each sorted, listed by smallest element.
inline std::vector<std::vector<int>> perm_orbits(const Perm& p) {
    std::vector<std::vector<int>> orbits;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i]) continue;
        std::vector<int> orb;
        std::size_t j = i;
        while (!seen[j]) {
            seen[j] = true;
            orb.push_back(static_cast<int>(j));
            j = static_cast<std::size_t>(p[j]);
        }
        std::sort(orb.begin(), orb.end());
        orbits.push_back(std::move(orb));
    }
    return orbits;
}

// ---------------------------------------------------------------------------
// Lattice vectors with a declared basis
// ---------------------------------------------------------------------------

enum class BasisTag {
    AffineSimple,  // coordinates over alpha_0..alpha_l
    FoldedSimple,  // coordinates over alpha-check_i, i in the representative set
    FiniteDelta,   // coordinates over finite alpha-dot_1..alpha-dot_n plus delta_2
};

/// A vector over a declared root basis.  Mixed-basis arithmetic is rejected.
struct LatticeVec {
    BasisTag basis = BasisTag::AffineSimple;
    std::vector<Rational> c;

    LatticeVec() = default;
    LatticeVec(BasisTag b, std::vector<Rational> coords) : basis(b), c(std::move(coords)) {}

    friend LatticeVec operator+(const LatticeVec& a, const LatticeVec& b) {
        a.check_compatible(b);
        LatticeVec r = a;
        for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] += b.c[i];
        return r;
    }
    friend LatticeVec operator-(const LatticeVec& a, const LatticeVec& b) {
        a.check_compatible(b);
        LatticeVec r = a;
        for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
        return r;
    }
    friend LatticeVec operator*(const Rational& s, const LatticeVec& v) {
        LatticeVec r = v;
        for (auto& x : r.c) x *= s;
        return r;
    }
    friend bool operator==(const LatticeVec& a, const LatticeVec& b) { return a.basis == b.basis && a.c == b.c; }
    friend bool operator<(const LatticeVec& a, const LatticeVec& b) {
        if (a.basis != b.basis) return a.basis < b.basis;
        return a.c < b.c;
    }

    bool is_zero() const {
        for (const auto& x : c)
            if (x != 0) return false;
        return true;
    }

    /// Height: the coordinate sum.
    Rational ht() const {
        Rational s = 0;
        for (const auto& x : c) s += x;
        return s;
    }

  private:
    void check_compatible(const LatticeVec& o) const {
        if (basis != o.basis || c.size() != o.c.size()) throw InputError("mixed-basis lattice arithmetic rejected");
    }
};

// ---------------------------------------------------------------------------
// Finite root data
// ---------------------------------------------------------------------------

struct FiniteType {
    char family = 'A';
    int n = 1;

    std::string str() const { return std::string(1, family) + "_" + std::to_string(n); }
};

/// Gram matrix (alpha_i, alpha_j) of the simple roots, normalized so that
/// long roots have squared length 2.  Kac's labeling of the Dynkin diagrams
/// is used throughout (notably E_6: chain 1-2-3-4-5 with node 6 on node 3).
inline Matrix<Rational> finite_gram(const FiniteType& t) {
    int n = t.n;
    auto valid = [&](bool ok) {
        if (!ok) throw InputError("invalid finite type " + t.str());
    };
    std::vector<Rational> norm(static_cast<std::size_t>(n), Rational(2));
    std::vector<std::pair<int, int>> edges;       // 1-based node pairs
    std::map<std::pair<int, int>, Rational> gij;  // off-diagonal Gram entries
    auto chain = [&](int from, int to) {
        for (int i = from; i < to; ++i) edges.emplace_back(i, i + 1);
    };
    switch (t.family) {
        case 'A':
            valid(n >= 1);
            chain(1, n);
            break;
        case 'B':
            valid(n >= 2);
            chain(1, n);
            norm[static_cast<std::size_t>(n - 1)] = 1;
            break;
        case 'C':
            valid(n >= 2);
            chain(1, n);
            for (int i = 0; i < n - 1; ++i) norm[static_cast<std::size_t>(i)] = 1;
            break;
        case 'D':
            valid(n >= 3);
            chain(1, n - 2);
            edges.emplace_back(n - 2, n - 1);
            edges.emplace_back(n - 2, n);
            break;
        case 'E':
            valid(n >= 6 && n <= 8);
            chain(1, n - 1);
            edges.emplace_back(n == 6 ? 3 : (n == 7 ? 3 : 5), n);
            break;
        case 'F':
            valid(n == 4);
            chain(1, 4);
            norm[2] = norm[3] = 1;
            break;
        case 'G':
            valid(n == 2);
            chain(1, 2);
            norm[1] = Rational(2, 3);
            break;
        default:
            valid(false);
    }
    for (auto [i, j] : edges) {
        // Adjacent simple roots: (alpha_i, alpha_j) = -max(norm_i, norm_j)/2.
        Rational g = -std::max(norm[static_cast<std::size_t>(i - 1)], norm[static_cast<std::size_t>(j - 1)]) / 2;
        gij[{i, j}] = g;
    }
    Matrix<Rational> G(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n), Rational(0)));
    for (int i = 0; i < n; ++i) G[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = norm[static_cast<std::size_t>(i)];
    for (auto& [e, g] : gij) {
        G[static_cast<std::size_t>(e.first - 1)][static_cast<std::size_t>(e.second - 1)] = g;
        G[static_cast<std::size_t>(e.second - 1)][static_cast<std::size_t>(e.first - 1)] = g;
    }
    return G;
}

inline Matrix<int> cartan_from_gram(const Matrix<Rational>& G) {
    std::size_t n = G.size();
    Matrix<int> A(n, std::vector<int>(n, 0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            Rational a = 2 * G[i][j] / G[i][i];
            if (!is_integer(a)) throw ConstructionError("Cartan entry is not an integer");
            A[i][j] = static_cast<int>(to_long(a));
        }
    return A;
}

/// Positive roots of the finite root system, as integer coordinate vectors
/// over the simple roots, listed by height and then lexicographically.
inline std::vector<std::vector<long>> enumerate_positive_roots(const Matrix<int>& cartan) {
    std::size_t n = cartan.size();
    std::set<std::vector<long>> known;
    std::vector<std::vector<long>> by_height;
    std::vector<std::vector<long>> level;
    for (std::size_t i = 0; i < n; ++i) {
        std::vector<long> e(n, 0);
        e[i] = 1;
        level.push_back(e);
        known.insert(e);
    }
    std::vector<std::vector<long>> all;
    while (!level.empty()) {
        std::sort(level.begin(), level.end());
        all.insert(all.end(), level.begin(), level.end());
        std::vector<std::vector<long>> next;
        for (const auto& beta : level) {
            for (std::size_t i = 0; i < n; ++i) {
                // beta + alpha_i is a root iff q = p - <beta, alpha_i^vee> > 0,
                // where p is the depth of the alpha_i-string through beta.
                long pair = 0;
                for (std::size_t j = 0; j < n; ++j) pair += cartan[i][j] * beta[j];
                long p = 0;
                std::vector<long> down = beta;
                while (true) {
                    down[i] -= 1;
                    bool nonneg = true, zero = true;
                    for (auto v : down) {
                        if (v < 0) nonneg = false;
                        if (v != 0) zero = false;
                    }
                    if (zero || (nonneg && known.count(down))) {
                        ++p;
                        if (zero) break;
                    } else {
                        break;
                    }
                }
                if (p - pair > 0) {
                    std::vector<long> up = beta;
                    up[i] += 1;
                    if (known.insert(up).second) next.push_back(std::move(up));
                }
            }
        }
        level = std::move(next);
    }
    return all;
}

inline std::vector<long> highest_root(const std::vector<std::vector<long>>& pos_roots) {
    return pos_roots.back();
}

// ---------------------------------------------------------------------------
// Affine GCM data
// ---------------------------------------------------------------------------

/// A generalized Cartan matrix of affine type together with the loop
/// realization data it came from: the underlying finite type X_n, the twist
/// order r, the finite diagram automorphism, and the simple-root
/// identification used to derive the bilinear form.
struct GcmData {
    std::string label;
    int l = 0;            // node set I = {0, ..., l}
    Matrix<long> a;       // the GCM
    std::vector<long> marks;  // Kac labels; delta_2 = sum_i marks[i] alpha_i
    Matrix<Rational> form;    // (alpha_i, alpha_j)

    FiniteType xn;
    int r = 1;
    Perm nu;                     // finite diagram automorphism (0-indexed nodes)
    std::vector<long> theta;     // theta-dot over the finite simple roots
    int eps = 0;
    long a0 = 1;
    std::vector<int> node_to_finite;  // affine node -> finite orbit representative; -1 at eps
    std::vector<int> rep_list;        // sorted nu-orbit representatives, size l
    std::vector<int> rep_index;       // finite node -> position of its orbit rep in rep_list
    std::vector<int> orbit_size;      // finite node -> cardinality r_i of its nu-orbit

    Matrix<int> finite_cartan;
    Matrix<Rational> finite_gram;
    std::vector<std::vector<long>> finite_pos_roots;

    // alpha_i over the basis (alpha-dot_{rep[0..l-1]} projections, delta_2);
    // columns of alpha_cols are the alpha_i; alpha_cols_inv converts back.
    Matrix<Rational> alpha_cols;
    Matrix<Rational> alpha_cols_inv;

    int size() const { return l + 1; }

    Rational form_ip(const std::vector<Rational>& x, const std::vector<Rational>& y) const {
        Rational s = 0;
        for (int i = 0; i <= l; ++i)
            for (int j = 0; j <= l; ++j)
                if (x[static_cast<std::size_t>(i)] != 0 && y[static_cast<std::size_t>(j)] != 0)
                    s += x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)] *
                         form[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        return s;
    }

    bool is_diagram_symmetry(const Perm& mu) const {
        if (static_cast<int>(mu.size()) != size()) return false;
        for (int i = 0; i <= l; ++i)
            for (int j = 0; j <= l; ++j)
                if (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] !=
                    a[static_cast<std::size_t>(mu[static_cast<std::size_t>(i)])][static_cast<std::size_t>(mu[static_cast<std::size_t>(j)])])
                    return false;
        return true;
    }

    /// Project a finite-lattice vector (rational coordinates over all n finite
    /// simple roots) to coordinates over the orbit-representative basis of
    /// the nu-averaged lattice.
    std::vector<Rational> rep_coords(const std::vector<Rational>& finite_coords) const {
        std::vector<Rational> out(rep_list.size(), Rational(0));
        for (std::size_t j = 0; j < finite_coords.size(); ++j)
            out[static_cast<std::size_t>(rep_index[j])] += finite_coords[j];
        return out;
    }

    /// Convert (rep-basis coords, delta_2 coefficient) to affine simple-root
    /// coordinates.
    std::vector<Rational> to_alpha_coords(const std::vector<Rational>& rep, const Rational& delta) const {
        std::vector<Rational> w(rep);
        w.push_back(delta);
        std::vector<Rational> out(static_cast<std::size_t>(l + 1), Rational(0));
        for (int i = 0; i <= l; ++i)
            for (int j = 0; j <= l; ++j) out[static_cast<std::size_t>(i)] += alpha_cols_inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * w[static_cast<std::size_t>(j)];
        return out;
    }

    /// Inverse of to_alpha_coords: last entry of the result is the delta_2
    /// coefficient.
    std::vector<Rational> to_repdelta_coords(const std::vector<Rational>& alpha) const {
        std::vector<Rational> out(static_cast<std::size_t>(l + 1), Rational(0));
        for (int i = 0; i <= l; ++i)
            for (int j = 0; j <= l; ++j) out[static_cast<std::size_t>(i)] += alpha_cols[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * alpha[static_cast<std::size_t>(j)];
        return out;
    }
};

namespace detail {

struct AffineLabel {
    char family;
    int n;
    int r;
};

inline AffineLabel parse_affine_label(const std::string& label) {
    // Grammar: <family>_<rank>^(<r>)
    auto fail = [&] { throw InputError("unrecognized affine label: " + label); };
    if (label.size() < 7) fail();
    char fam = label[0];
    std::size_t i = 1;
    if (label[i] != '_') fail();
    ++i;
    int n = 0;
    if (i >= label.size() || !isdigit(static_cast<unsigned char>(label[i]))) fail();
    while (i < label.size() && isdigit(static_cast<unsigned char>(label[i]))) n = n * 10 + (label[i++] - '0');
    if (i + 3 > label.size() || label[i] != '^' || label[i + 1] != '(') fail();
    i += 2;
    int r = 0;
    if (i >= label.size() || !isdigit(static_cast<unsigned char>(label[i]))) fail();
    while (i < label.size() && isdigit(static_cast<unsigned char>(label[i]))) r = r * 10 + (label[i++] - '0');
    if (i + 1 != label.size() || label[i] != ')') fail();
    return {fam, n, r};
}

inline std::string affine_label_string(char fam, int n, int r) {
    return std::string(1, fam) + "_" + std::to_string(n) + "^(" + std::to_string(r) + ")";
}

}  // namespace detail

/// Construct the affine GCM, Kac labels and bilinear form for one of the
/// affine families.  The matrix is derived from the loop realization: the
/// finite Gram matrix of X_n, the twist automorphism nu, and the simple-root
/// identification alpha_eps = delta_2 - theta_[0], alpha_i = alphadot_i[0].
inline GcmData parse_affine(const std::string& label) {
    auto [fam, n, r] = detail::parse_affine_label(label);
    GcmData g;
    g.label = detail::affine_label_string(fam, n, r);
    g.r = r;
    g.xn = FiniteType{fam, n};

    auto bad_rank = [&] { throw InputError("invalid rank for affine label: " + label); };
    int num_nodes = 0;  // l + 1
    bool a_even_twisted = false;
    if (r == 1) {
        switch (fam) {
            case 'A':
                if (n < 1) bad_rank();
                break;
            case 'B':
                if (n < 3) bad_rank();
                break;
            case 'C':
                if (n < 2) bad_rank();
                break;
            case 'D':
                if (n < 4) bad_rank();
                break;
            case 'E':
                if (n < 6 || n > 8) bad_rank();
                break;
            case 'F':
                if (n != 4) bad_rank();
                break;
            case 'G':
                if (n != 2) bad_rank();
                break;
            default:
                bad_rank();
        }
        num_nodes = n + 1;
        g.nu = perm_identity(n);
    } else if (r == 2 && fam == 'A' && n >= 2 && n % 2 == 0) {
        a_even_twisted = true;  // A_{2l}^(2), l = n/2
        num_nodes = n / 2 + 1;
        g.nu.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) g.nu[static_cast<std::size_t>(i)] = n - 1 - i;
    } else if (r == 2 && fam == 'A' && n % 2 == 1 && n >= 5) {
        num_nodes = (n + 1) / 2 + 1;  // l = (n+1)/2
        g.nu.resize(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) g.nu[static_cast<std::size_t>(i)] = n - 1 - i;
    } else if (r == 2 && fam == 'D' && n >= 3) {
        num_nodes = n;  // l = n - 1
        g.nu = perm_identity(n);
        std::swap(g.nu[static_cast<std::size_t>(n - 2)], g.nu[static_cast<std::size_t>(n - 1)]);
    } else if (r == 2 && fam == 'E' && n == 6) {
        num_nodes = 5;
        g.nu = perm_identity(6);
        std::swap(g.nu[0], g.nu[4]);
        std::swap(g.nu[1], g.nu[3]);
    } else if (r == 3 && fam == 'D' && n == 4) {
        num_nodes = 3;
        g.nu = perm_identity(4);
        g.nu[0] = 2;  // node 1 -> 3
        g.nu[2] = 3;  // node 3 -> 4
        g.nu[3] = 0;  // node 4 -> 1
    } else {
        throw InputError("unrecognized affine label: " + label);
    }
    g.l = num_nodes - 1;

    if (static_cast<long>(perm_order(g.nu)) != r && !(r == 1))
        throw ConstructionError("twist permutation order mismatch for " + label);

    g.finite_gram = finite_gram(g.xn);
    g.finite_cartan = cartan_from_gram(g.finite_gram);
    g.finite_pos_roots = enumerate_positive_roots(g.finite_cartan);

    // Orbits of nu on the finite nodes.
    auto orbits = perm_orbits(g.nu);
    g.rep_list.clear();
    g.rep_index.assign(static_cast<std::size_t>(n), -1);
    g.orbit_size.assign(static_cast<std::size_t>(n), 0);
    for (const auto& orb : orbits) g.rep_list.push_back(orb.front());
    std::sort(g.rep_list.begin(), g.rep_list.end());
    for (const auto& orb : orbits) {
        int rep = orb.front();
        int idx = static_cast<int>(std::lower_bound(g.rep_list.begin(), g.rep_list.end(), rep) - g.rep_list.begin());
        for (int m : orb) {
            g.rep_index[static_cast<std::size_t>(m)] = idx;
            g.orbit_size[static_cast<std::size_t>(m)] = static_cast<int>(orb.size());
        }
    }
    if (static_cast<int>(g.rep_list.size()) != g.l)
        throw ConstructionError("orbit count does not match affine rank for " + label);

    // theta-dot per the case table of the loop realization.
    g.theta.assign(static_cast<std::size_t>(n), 0);
    if (r == 1 || a_even_twisted) {
        g.theta = highest_root(g.finite_pos_roots);
    } else if (fam == 'A') {
        // A_{2l-1}, r = 2: alphadot_1 + ... + alphadot_{2l-2}
        for (int i = 0; i + 1 < n; ++i) g.theta[static_cast<std::size_t>(i)] = 1;
    } else if (fam == 'D') {
        // D_{l+1}, r = 2, 3: alphadot_1 + ... + alphadot_l
        for (int i = 0; i + 1 < n; ++i) g.theta[static_cast<std::size_t>(i)] = 1;
    } else {  // E_6, r = 2
        g.theta = {1, 2, 2, 1, 1, 1};
    }

    // Node identification.
    g.eps = a_even_twisted ? g.l : 0;
    g.node_to_finite.assign(static_cast<std::size_t>(num_nodes), -1);
    if (a_even_twisted) {
        g.node_to_finite[0] = g.rep_list[static_cast<std::size_t>(g.l - 1)];  // finite node l
        for (int i = 1; i < g.l; ++i) g.node_to_finite[static_cast<std::size_t>(i)] = g.rep_list[static_cast<std::size_t>(i - 1)];
    } else {
        for (int i = 1; i <= g.l; ++i) g.node_to_finite[static_cast<std::size_t>(i)] = g.rep_list[static_cast<std::size_t>(i - 1)];
    }

    // alpha_i in finite coordinates (orbit averages), plus the delta_2 part.
    auto orbit_average = [&](int node) {
        std::vector<Rational> v(static_cast<std::size_t>(n), Rational(0));
        int m = node;
        int size = g.orbit_size[static_cast<std::size_t>(node)];
        for (int k = 0; k < size; ++k) {
            v[static_cast<std::size_t>(m)] += Rational(1, size);
            m = g.nu[static_cast<std::size_t>(m)];
        }
        return v;
    };
    auto average_vector = [&](const std::vector<long>& w) {
        // nu-average of an integer finite-lattice vector
        std::vector<Rational> acc(static_cast<std::size_t>(n), Rational(0));
        std::vector<long> cur(w);
        for (int k = 0; k < r; ++k) {
            for (int j = 0; j < n; ++j) acc[static_cast<std::size_t>(j)] += Rational(cur[static_cast<std::size_t>(j)], r);
            std::vector<long> nxt(static_cast<std::size_t>(n), 0);
            for (int j = 0; j < n; ++j) nxt[static_cast<std::size_t>(g.nu[static_cast<std::size_t>(j)])] += cur[static_cast<std::size_t>(j)];
            cur = std::move(nxt);
        }
        return acc;
    };

    std::vector<std::vector<Rational>> alpha_finite(static_cast<std::size_t>(num_nodes));
    std::vector<Rational> alpha_delta(static_cast<std::size_t>(num_nodes), Rational(0));
    std::vector<Rational> theta_avg = average_vector(g.theta);
    for (int i = 0; i < num_nodes; ++i) {
        if (i == g.eps) {
            std::vector<Rational> v(static_cast<std::size_t>(n), Rational(0));
            for (int j = 0; j < n; ++j) v[static_cast<std::size_t>(j)] = -theta_avg[static_cast<std::size_t>(j)];
            alpha_finite[static_cast<std::size_t>(i)] = std::move(v);
            alpha_delta[static_cast<std::size_t>(i)] = 1;
        } else {
            alpha_finite[static_cast<std::size_t>(i)] = orbit_average(g.node_to_finite[static_cast<std::size_t>(i)]);
        }
    }

    auto finite_ip = [&](const std::vector<Rational>& x, const std::vector<Rational>& y) {
        Rational s = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                if (x[static_cast<std::size_t>(i)] != 0 && y[static_cast<std::size_t>(j)] != 0)
                    s += x[static_cast<std::size_t>(i)] * y[static_cast<std::size_t>(j)] * g.finite_gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        return s;
    };

    g.form.assign(static_cast<std::size_t>(num_nodes), std::vector<Rational>(static_cast<std::size_t>(num_nodes), Rational(0)));
    for (int i = 0; i < num_nodes; ++i)
        for (int j = 0; j < num_nodes; ++j)
            g.form[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                finite_ip(alpha_finite[static_cast<std::size_t>(i)], alpha_finite[static_cast<std::size_t>(j)]);

    g.a.assign(static_cast<std::size_t>(num_nodes), std::vector<long>(static_cast<std::size_t>(num_nodes), 0));
    for (int i = 0; i < num_nodes; ++i)
        for (int j = 0; j < num_nodes; ++j) {
            Rational v = 2 * g.form[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] / g.form[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)];
            if (!is_integer(v)) throw ConstructionError("affine Cartan entry is not an integer for " + label);
            g.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = to_long(v);
        }

    // Kac labels: the primitive positive integer kernel vector of the GCM.
    {
        Matrix<Rational> m(static_cast<std::size_t>(num_nodes), std::vector<Rational>(static_cast<std::size_t>(num_nodes)));
        for (int i = 0; i < num_nodes; ++i)
            for (int j = 0; j < num_nodes; ++j) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Rational(g.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
        auto ker = kernel_basis(std::move(m), RationalOps{});
        if (ker.size() != 1) throw ConstructionError("affine GCM kernel is not one-dimensional for " + label);
        Integer lcm_den = 1;
        for (const auto& q : ker[0]) lcm_den = boost::multiprecision::lcm(lcm_den, denominator(q));
        std::vector<Integer> ints;
        Integer gcd_all = 0;
        for (const auto& q : ker[0]) {
            Integer v = numerator(q) * (lcm_den / denominator(q));
            ints.push_back(v);
            gcd_all = boost::multiprecision::gcd(gcd_all, v);
        }
        if (gcd_all == 0) throw ConstructionError("trivial kernel for " + label);
        bool neg = ints[0] < 0;
        g.marks.clear();
        for (auto& v : ints) {
            Integer w = v / gcd_all;
            if (neg) w = -w;
            if (w <= 0) throw ConstructionError("Kac labels are not positive for " + label);
            g.marks.push_back(static_cast<long>(w));
        }
    }
    g.a0 = g.marks[0];
    if (g.a0 != (a_even_twisted ? 2 : 1)) throw ConstructionError("unexpected a_0 for " + label);

    // Coordinate conversion between the affine simple-root basis and the
    // (rep-projected finite lattice, delta_2) basis.
    g.alpha_cols.assign(static_cast<std::size_t>(num_nodes), std::vector<Rational>(static_cast<std::size_t>(num_nodes), Rational(0)));
    for (int i = 0; i < num_nodes; ++i) {
        auto rep = g.rep_coords(alpha_finite[static_cast<std::size_t>(i)]);
        for (int k = 0; k < g.l; ++k) g.alpha_cols[static_cast<std::size_t>(k)][static_cast<std::size_t>(i)] = rep[static_cast<std::size_t>(k)];
        g.alpha_cols[static_cast<std::size_t>(g.l)][static_cast<std::size_t>(i)] = alpha_delta[static_cast<std::size_t>(i)];
    }
    {
        // Invert alpha_cols by augmenting with the identity.
        Matrix<Rational> aug(static_cast<std::size_t>(num_nodes), std::vector<Rational>(static_cast<std::size_t>(2 * num_nodes), Rational(0)));
        for (int i = 0; i < num_nodes; ++i) {
            for (int j = 0; j < num_nodes; ++j) aug[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = g.alpha_cols[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
            aug[static_cast<std::size_t>(i)][static_cast<std::size_t>(num_nodes + i)] = 1;
        }
        if (rref(aug, RationalOps{}) != static_cast<std::size_t>(num_nodes))
            throw ConstructionError("singular simple-root identification for " + label);
        g.alpha_cols_inv.assign(static_cast<std::size_t>(num_nodes), std::vector<Rational>(static_cast<std::size_t>(num_nodes)));
        for (int i = 0; i < num_nodes; ++i)
            for (int j = 0; j < num_nodes; ++j)
                g.alpha_cols_inv[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = aug[static_cast<std::size_t>(i)][static_cast<std::size_t>(num_nodes + j)];
    }
    return g;
}

// ---------------------------------------------------------------------------
// Affine type recognition
// ---------------------------------------------------------------------------

struct AffineClass {
    std::string label;
};
struct FiniteClass {};
struct IndefiniteClass {};
using GcmClassification = std::variant<FiniteClass, AffineClass, IndefiniteClass>;

namespace detail {

inline void validate_gcm(const Matrix<long>& a) {
    std::size_t n = a.size();
    if (n == 0) throw InputError("empty matrix is not a GCM");
    for (std::size_t i = 0; i < n; ++i) {
        if (a[i].size() != n) throw InputError("GCM must be square");
        if (a[i][i] != 2) throw InputError("GCM diagonal entries must equal 2");
        for (std::size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            if (a[i][j] > 0) throw InputError("GCM off-diagonal entries must be non-positive");
            if ((a[i][j] == 0) != (a[j][i] == 0)) throw InputError("GCM zero pattern must be symmetric");
        }
    }
}

inline Integer principal_minor(const Matrix<long>& a, const std::vector<std::size_t>& idx) {
    Matrix<Integer> sub(idx.size(), std::vector<Integer>(idx.size()));
    for (std::size_t i = 0; i < idx.size(); ++i)
        for (std::size_t j = 0; j < idx.size(); ++j) sub[i][j] = a[idx[i]][idx[j]];
    return det_integer(std::move(sub));
}

/// Does a simultaneous row/column permutation carry a onto b?
inline bool permutation_equivalent(const Matrix<long>& a, const Matrix<long>& b) {
    std::size_t n = a.size();
    if (b.size() != n) return false;
    // Per-node invariant: sorted multiset of (a_ij, a_ji) over j != i.
    auto signature = [](const Matrix<long>& m, std::size_t i) {
        std::vector<std::pair<long, long>> sig;
        for (std::size_t j = 0; j < m.size(); ++j)
            if (j != i && (m[i][j] != 0 || m[j][i] != 0)) sig.emplace_back(m[i][j], m[j][i]);
        std::sort(sig.begin(), sig.end());
        return sig;
    };
    std::vector<std::vector<std::pair<long, long>>> siga(n), sigb(n);
    for (std::size_t i = 0; i < n; ++i) {
        siga[i] = signature(a, i);
        sigb[i] = signature(b, i);
    }
    std::vector<int> assign(n, -1);
    std::vector<bool> used(n, false);
    std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
        if (i == n) return true;
        for (std::size_t t = 0; t < n; ++t) {
            if (used[t] || siga[i] != sigb[t]) continue;
            bool ok = true;
            for (std::size_t j = 0; j < i && ok; ++j) {
                if (a[i][j] != b[t][static_cast<std::size_t>(assign[j])] || a[j][i] != b[static_cast<std::size_t>(assign[j])][t]) ok = false;
            }
            if (!ok) continue;
            used[t] = true;
            assign[i] = static_cast<int>(t);
            if (place(i + 1)) return true;
            used[t] = false;
            assign[i] = -1;
        }
        return false;
    };
    return place(0);
}

/// All affine labels whose GCM has the given number of nodes.
inline std::vector<std::string> affine_catalog(std::size_t nodes) {
    std::vector<std::string> out;
    long s = static_cast<long>(nodes);
    auto add = [&](char f, long n, long r) { out.push_back(affine_label_string(f, static_cast<int>(n), static_cast<int>(r))); };
    if (s >= 2) add('A', s - 1, 1);
    if (s - 1 >= 3) add('B', s - 1, 1);
    if (s - 1 >= 2) add('C', s - 1, 1);
    if (s - 1 >= 4) add('D', s - 1, 1);
    if (s == 7) add('E', 6, 1);
    if (s == 8) add('E', 7, 1);
    if (s == 9) add('E', 8, 1);
    if (s == 5) add('F', 4, 1);
    if (s == 3) add('G', 2, 1);
    if (s >= 2) add('A', 2 * (s - 1), 2);
    if (s - 1 >= 3) add('A', 2 * (s - 1) - 1, 2);
    if (s >= 3) add('D', s, 2);
    if (s == 5) add('E', 6, 2);
    if (s == 3) add('D', 4, 3);
    return out;
}

}  // namespace detail

/// Classify a GCM as finite, affine (with the catalog label, up to a
/// simultaneous permutation of the index set), or indefinite.
inline GcmClassification affine_type_check(const Matrix<long>& a) {
    detail::validate_gcm(a);
    std::size_t n = a.size();
    bool all_positive = true, proper_positive = true;
    // Every principal minor, by subset enumeration; the sizes in play are
    // small (affine ranks <= 9 in the catalog).
    if (n > 16) throw InputError("GCM too large for exact minor classification");
    for (std::size_t mask = 1; mask < (1u << n); ++mask) {
        std::vector<std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (1u << i)) idx.push_back(i);
        Integer d = detail::principal_minor(a, idx);
        if (d <= 0) {
            all_positive = false;
            if (idx.size() < n) proper_positive = false;
        }
        if (!proper_positive) break;
    }
    if (all_positive) return FiniteClass{};
    if (proper_positive && detail::principal_minor(a, [&] {
            std::vector<std::size_t> all(n);
            std::iota(all.begin(), all.end(), 0);
            return all;
        }()) == 0) {
        for (const auto& label : detail::affine_catalog(n)) {
            if (detail::permutation_equivalent(a, parse_affine(label).a)) return AffineClass{label};
        }
        throw ConstructionError("affine GCM not matched by the catalog");
    }
    return IndefiniteClass{};
}

// ---------------------------------------------------------------------------
// Bounded Weyl orbits
// ---------------------------------------------------------------------------

/// Orbit of a seed under the simple reflections of a folded root basis,
/// truncated to |ht| <= height_bound; the result is the closure of the seed
/// under every reflection within the bound.  Coordinates are over the folded
/// simple roots, and gram is their Gram matrix.
inline std::set<std::vector<Rational>> weyl_orbit_coords(const std::vector<Rational>& seed,
                                                         const Matrix<Rational>& gram, long height_bound) {
    std::size_t k = gram.size();
    auto height = [](const std::vector<Rational>& v) {
        Rational s = 0;
        for (const auto& x : v) s += x;
        return s;
    };
    auto in_bound = [&](const std::vector<Rational>& v) {
        Rational h = height(v);
        if (h < 0) h = -h;
        return h <= height_bound;
    };
    std::set<std::vector<Rational>> seen;
    if (!in_bound(seed)) return seen;
    std::vector<std::vector<Rational>> frontier{seed};
    seen.insert(seed);
    while (!frontier.empty()) {
        std::vector<std::vector<Rational>> next;
        for (const auto& v : frontier) {
            for (std::size_t i = 0; i < k; ++i) {
                // r_i(v) = v - (2 (a_i, v) / (a_i, a_i)) e_i
                Rational c = 0;
                for (std::size_t j = 0; j < k; ++j) c += v[j] * gram[i][j];
                c = 2 * c / gram[i][i];
                std::vector<Rational> w = v;
                w[i] -= c;
                if (!in_bound(w) || seen.count(w)) continue;
                seen.insert(w);
                next.push_back(std::move(w));
            }
        }
        frontier = std::move(next);
    }
    return seen;
}

/// LatticeVec wrapper over weyl_orbit_coords for folded-basis seeds.
inline std::set<LatticeVec> weyl_orbit(const LatticeVec& seed, const Matrix<Rational>& folded_gram, long height_bound) {
    if (seed.basis != BasisTag::FoldedSimple) throw InputError("weyl_orbit expects a folded-basis seed");
    std::set<LatticeVec> out;
    for (auto& v : weyl_orbit_coords(seed.c, folded_gram, height_bound)) out.insert(LatticeVec(BasisTag::FoldedSimple, v));
    return out;
}

}  // namespace toroidal

#endif  // TOROIDAL_CARTAN_HPP

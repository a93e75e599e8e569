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

#ifndef TOROIDAL_SIMPLE_LIE_HPP
#define TOROIDAL_SIMPLE_LIE_HPP

#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "toroidal/cartan.hpp"
#include "toroidal/cyclotomic.hpp"
#include "toroidal/errors.hpp"
#include "toroidal/linalg.hpp"

namespace toroidal {

/// Sparse vector over the basis of a LieTable.
using LieVec = std::map<int, CycNum>;

inline void add_scaled(LieVec& acc, const LieVec& v, const CycNum& c) {
    if (c.is_zero()) return;
    for (const auto& [i, x] : v) {
        auto it = acc.find(i);
        if (it == acc.end()) {
            CycNum t = x * c;
            if (!t.is_zero()) acc.emplace(i, std::move(t));
        } else {
            it->second += x * c;
            if (it->second.is_zero()) acc.erase(it);
        }
    }
}

inline LieVec scaled(const LieVec& v, const CycNum& c) {
    LieVec out;
    add_scaled(out, v, c);
    return out;
}

inline bool lie_is_zero(const LieVec& v) { return v.empty(); }

inline bool lie_equal(const LieVec& a, const LieVec& b) { return a == b; }

/// A finite dimensional Lie algebra given by a basis, sparse structure
/// constants and the normalized invariant bilinear form.  Basis layout:
/// coroots h_1..h_rank first, then the positive root vectors E+ in the
/// height/lex order of pos_roots, then the matching negative root vectors E-.
/// Immutable after construction.
struct LieTable {
    FieldPtr field;
    FiniteType type;
    int rank = 0;
    Matrix<int> cartan;
    Matrix<Rational> gram;                     // (alpha_i, alpha_j) on simple roots
    std::vector<std::vector<long>> pos_roots;  // by height, then lex
    std::map<std::vector<long>, int> root_index;
    std::vector<std::vector<LieVec>> table;  // [i][j] = bracket of basis pair
    Matrix<CycNum> form_mat;

    int npos() const { return static_cast<int>(pos_roots.size()); }
    int dim() const { return rank + 2 * npos(); }
    int eplus(int k) const { return rank + k; }
    int eminus(int k) const { return rank + npos() + k; }
    bool is_cartan_index(int i) const { return i < rank; }

    /// Signed root of a basis element: coordinates of +root for E+, -root for
    /// E-, the zero vector for Cartan elements.
    std::vector<long> root_of(int idx) const {
        std::vector<long> z(static_cast<std::size_t>(rank), 0);
        if (idx < rank) return z;
        int k = idx - rank;
        bool neg = k >= npos();
        if (neg) k -= npos();
        auto r = pos_roots[static_cast<std::size_t>(k)];
        if (neg)
            for (auto& x : r) x = -x;
        return r;
    }

    std::string name(int idx) const {
        if (idx < rank) return "h" + std::to_string(idx + 1);
        int k = idx - rank;
        bool neg = k >= npos();
        if (neg) k -= npos();
        std::ostringstream os;
        os << (neg ? "E-(" : "E+(");
        const auto& r = pos_roots[static_cast<std::size_t>(k)];
        for (std::size_t i = 0; i < r.size(); ++i) os << (i ? "," : "") << r[i];
        os << ")";
        return os.str();
    }

    std::string to_string(const LieVec& v) const {
        if (v.empty()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [i, c] : v) {
            os << (first ? "" : " + ") << "(" << c.to_string() << ")*" << name(i);
            first = false;
        }
        return os.str();
    }

    LieVec basis_vec(int idx) const {
        LieVec v;
        v.emplace(idx, field->one());
        return v;
    }

    LieVec bracket(const LieVec& x, const LieVec& y) const {
        LieVec out;
        for (const auto& [i, a] : x)
            for (const auto& [j, b] : y) add_scaled(out, table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], a * b);
        return out;
    }

    CycNum form(const LieVec& x, const LieVec& y) const {
        CycNum s = field->zero();
        for (const auto& [i, a] : x)
            for (const auto& [j, b] : y) {
                const CycNum& f = form_mat[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                if (!f.is_zero()) s += a * b * f;
            }
        return s;
    }

    /// Coroot of a positive root, as a Cartan vector: beta^vee expanded over
    /// the simple coroots h_i.
    LieVec coroot(int pos_k) const {
        return table[static_cast<std::size_t>(eplus(pos_k))][static_cast<std::size_t>(eminus(pos_k))];
    }

    /// (beta, beta) for the k-th positive root.
    Rational root_norm(int pos_k) const {
        const auto& b = pos_roots[static_cast<std::size_t>(pos_k)];
        Rational s = 0;
        for (int i = 0; i < rank; ++i)
            for (int j = 0; j < rank; ++j)
                if (b[static_cast<std::size_t>(i)] != 0 && b[static_cast<std::size_t>(j)] != 0)
                    s += Rational(b[static_cast<std::size_t>(i)]) * Rational(b[static_cast<std::size_t>(j)]) * gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        return s;
    }
};

/// An automorphism of a LieTable, stored as a dense matrix over the basis.
struct FiniteAut {
    FieldPtr field;
    Matrix<CycNum> m;  // column j = image of basis element j
    long order = 1;

    LieVec apply(const LieVec& v) const {
        LieVec out;
        for (const auto& [j, c] : v) {
            for (std::size_t i = 0; i < m.size(); ++i) {
                const CycNum& e = m[i][static_cast<std::size_t>(j)];
                if (e.is_zero()) continue;
                auto it = out.find(static_cast<int>(i));
                if (it == out.end()) {
                    CycNum t = e * c;
                    if (!t.is_zero()) out.emplace(static_cast<int>(i), std::move(t));
                } else {
                    it->second += e * c;
                    if (it->second.is_zero()) out.erase(it);
                }
            }
        }
        return out;
    }

    LieVec apply_basis(int j) const {
        LieVec out;
        for (std::size_t i = 0; i < m.size(); ++i)
            if (!m[i][static_cast<std::size_t>(j)].is_zero()) out.emplace(static_cast<int>(i), m[i][static_cast<std::size_t>(j)]);
        return out;
    }

    bool is_identity() const {
        for (std::size_t i = 0; i < m.size(); ++i)
            for (std::size_t j = 0; j < m.size(); ++j) {
                if (i == j && !m[i][j].is_one()) return false;
                if (i != j && !m[i][j].is_zero()) return false;
            }
        return true;
    }
};

namespace detail {

// The asymmetry cocycle on a simply-laced root lattice, defined on the basis
// by eps(a_i, a_i) = -1, eps(a_i, a_j) = -1 for joined i < j, +1 otherwise,
// and extended bimultiplicatively.  Returns +-1 as a parity.
inline int cocycle_sign(const Matrix<int>& cartan, const std::vector<long>& u, const std::vector<long>& v) {
    long parity = 0;
    std::size_t n = u.size();
    for (std::size_t i = 0; i < n; ++i) {
        if (u[i] == 0) continue;
        for (std::size_t j = 0; j < n; ++j) {
            if (v[j] == 0) continue;
            int p = 0;
            if (i == j)
                p = 1;
            else if (i < j && cartan[i][j] != 0)
                p = 1;
            if (p) parity += u[i] * v[j];
        }
    }
    return (parity % 2 + 2) % 2 == 0 ? 1 : -1;
}

}  // namespace detail

/// Chevalley basis of a simply-laced simple Lie algebra from the asymmetry
/// cocycle on its root lattice: all structure constants are 0 or +-1, and
/// [E+_b, E-_b] = b^vee holds on the nose for every positive root b.
inline LieTable build_simply_laced(const FiniteType& type, const FieldPtr& field) {
    if (!(type.family == 'A' || type.family == 'D' || type.family == 'E'))
        throw InputError("not a simply-laced type: " + type.str());
    LieTable T;
    T.field = field;
    T.type = type;
    T.gram = finite_gram(type);
    T.cartan = cartan_from_gram(T.gram);
    T.rank = type.n;
    T.pos_roots = enumerate_positive_roots(T.cartan);
    for (std::size_t k = 0; k < T.pos_roots.size(); ++k) T.root_index[T.pos_roots[k]] = static_cast<int>(k);

    int d = T.dim();
    int P = T.npos();
    T.table.assign(static_cast<std::size_t>(d), std::vector<LieVec>(static_cast<std::size_t>(d)));
    T.form_mat.assign(static_cast<std::size_t>(d), std::vector<CycNum>(static_cast<std::size_t>(d), field->zero()));

    auto signed_root = [&](int k, int s) {
        auto r = T.pos_roots[static_cast<std::size_t>(k)];
        if (s < 0)
            for (auto& x : r) x = -x;
        return r;
    };
    auto evec = [&](const std::vector<long>& w, const CycNum& coeff) {
        // e_w expressed in the table basis: e_w = E+(w) for w > 0 and
        // -E-(-w) for w < 0.
        bool pos = false, neg = false;
        for (auto x : w) {
            if (x > 0) pos = true;
            if (x < 0) neg = true;
        }
        LieVec out;
        if (pos && !neg) {
            out.emplace(T.eplus(T.root_index.at(w)), coeff);
        } else if (neg && !pos) {
            std::vector<long> mw(w);
            for (auto& x : mw) x = -x;
            out.emplace(T.eminus(T.root_index.at(mw)), -coeff);
        } else {
            throw ConstructionError("mixed-sign root vector");
        }
        return out;
    };

    // Cartan brackets and form.
    for (int i = 0; i < T.rank; ++i)
        for (int j = 0; j < T.rank; ++j)
            T.form_mat[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                field->rational(T.gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
    for (int i = 0; i < T.rank; ++i) {
        for (int k = 0; k < P; ++k) {
            for (int s : {+1, -1}) {
                long pair = 0;  // <beta, alpha_i^vee> = sum_j cartan[i][j] beta_j
                for (int j = 0; j < T.rank; ++j)
                    pair += T.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] * T.pos_roots[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
                int idx = s > 0 ? T.eplus(k) : T.eminus(k);
                LieVec v;
                v.emplace(idx, field->integer(s > 0 ? pair : -pair));
                if (pair != 0) {
                    T.table[static_cast<std::size_t>(i)][static_cast<std::size_t>(idx)] = v;
                    T.table[static_cast<std::size_t>(idx)][static_cast<std::size_t>(i)] = scaled(v, field->integer(-1));
                }
            }
        }
    }

    // Root-vector brackets through the cocycle: [e_u, e_v] = eps(u,v) e_{u+v}
    // when u+v is a root, and [e_u, e_{-u}] = -h_u.
    for (int k1 = 0; k1 < P; ++k1) {
        for (int s1 : {+1, -1}) {
            int i1 = s1 > 0 ? T.eplus(k1) : T.eminus(k1);
            int sign1 = s1 > 0 ? 1 : -1;  // b(k,+) = e_beta, b(k,-) = -e_{-beta}
            auto u = signed_root(k1, s1);
            for (int k2 = 0; k2 < P; ++k2) {
                for (int s2 : {+1, -1}) {
                    int i2 = s2 > 0 ? T.eplus(k2) : T.eminus(k2);
                    int sign2 = s2 > 0 ? 1 : -1;
                    auto v = signed_root(k2, s2);
                    std::vector<long> w(u);
                    bool zero = true;
                    for (std::size_t t = 0; t < w.size(); ++t) {
                        w[t] += v[t];
                        if (w[t] != 0) zero = false;
                    }
                    // (sign1*sign2) undoes the -1 tags on negative basis vectors.
                    CycNum factor = field->integer(sign1 * sign2 * detail::cocycle_sign(T.cartan, u, v));
                    if (zero) {
                        // [e_u, e_{-u}] = -h_u, with no cocycle factor.
                        LieVec h;
                        for (int j = 0; j < T.rank; ++j)
                            if (u[static_cast<std::size_t>(j)] != 0) h.emplace(j, field->integer(-u[static_cast<std::size_t>(j)]));
                        T.table[static_cast<std::size_t>(i1)][static_cast<std::size_t>(i2)] = scaled(h, field->integer(sign1 * sign2));
                        // Form: <e_u, e_{-u}> = -1, so on basis vectors it is
                        // -(sign1*sign2).
                        T.form_mat[static_cast<std::size_t>(i1)][static_cast<std::size_t>(i2)] = field->integer(-sign1 * sign2);
                    } else {
                        std::vector<long> aw(w);
                        bool is_root = true;
                        bool negall = true, posall = true;
                        for (auto x : aw) {
                            if (x > 0) negall = false;
                            if (x < 0) posall = false;
                        }
                        if (posall)
                            is_root = T.root_index.count(aw) > 0;
                        else if (negall) {
                            std::vector<long> maw(aw);
                            for (auto& x : maw) x = -x;
                            is_root = T.root_index.count(maw) > 0;
                        } else
                            is_root = false;
                        if (is_root) T.table[static_cast<std::size_t>(i1)][static_cast<std::size_t>(i2)] = evec(w, factor);
                    }
                }
            }
        }
    }
    return T;
}

/// Extend generator images to a full automorphism by propagating brackets
/// through root strings.  `images` maps basis indices of root vectors to
/// their intended images; the declared set must generate.  Verifies bracket
/// compatibility on all basis pairs and reports the first inconsistency.
inline FiniteAut extend_automorphism(const LieTable& T, const std::map<int, LieVec>& images) {
    const FieldPtr& F = T.field;
    int d = T.dim();
    int P = T.npos();
    std::map<int, LieVec> known;
    for (const auto& [idx, img] : images) {
        if (idx < T.rank) throw InputError("generator images must be root vectors");
        known[idx] = img;
    }
    // Closure: each product of known root vectors whose bracket is a single
    // root-vector multiple determines one more image.  Root spaces are
    // one-dimensional, so the scalar comes from the table entry.
    bool changed = true;
    while (changed) {
        changed = false;
        std::vector<int> have;
        for (const auto& [idx, img] : known) have.push_back(idx);
        for (int i1 : have) {
            for (int i2 : have) {
                const LieVec& prod = T.table[static_cast<std::size_t>(i1)][static_cast<std::size_t>(i2)];
                if (prod.size() != 1) continue;
                int target = prod.begin()->first;
                if (target < T.rank || known.count(target)) continue;
                const CycNum& coeff = prod.begin()->second;
                LieVec img = T.bracket(known.at(i1), known.at(i2));
                known[target] = scaled(img, F->one() / coeff);
                changed = true;
            }
        }
    }
    for (int k = 0; k < 2 * P; ++k) {
        if (!known.count(T.rank + k))
            throw ExtensionError("declared generators do not generate: no image for " + T.name(T.rank + k));
    }
    // Cartan images: h_i = [E+_i, E-_i] for the simple roots.
    for (int i = 0; i < T.rank; ++i) {
        std::vector<long> simple(static_cast<std::size_t>(T.rank), 0);
        simple[static_cast<std::size_t>(i)] = 1;
        int k = T.root_index.at(simple);
        known[i] = T.bracket(known.at(T.eplus(k)), known.at(T.eminus(k)));
    }

    FiniteAut aut;
    aut.field = F;
    aut.m.assign(static_cast<std::size_t>(d), std::vector<CycNum>(static_cast<std::size_t>(d), F->zero()));
    for (const auto& [j, img] : known)
        for (const auto& [i, c] : img) aut.m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = c;

    // Bracket compatibility on every basis pair.
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            LieVec lhs = aut.apply(T.table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
            LieVec rhs = T.bracket(aut.apply_basis(i), aut.apply_basis(j));
            if (!lie_equal(lhs, rhs))
                throw ExtensionError("images are not bracket compatible on (" + T.name(i) + ", " + T.name(j) + ")");
        }
    }

    // Order by iteration.
    Matrix<CycNum> power = aut.m;
    auto is_id = [&](const Matrix<CycNum>& m) {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) {
                if (i == j && !m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].is_one()) return false;
                if (i != j && !m[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)].is_zero()) return false;
            }
        return true;
    };
    auto matmul = [&](const Matrix<CycNum>& a, const Matrix<CycNum>& b) {
        Matrix<CycNum> c(static_cast<std::size_t>(d), std::vector<CycNum>(static_cast<std::size_t>(d), F->zero()));
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k) {
                const CycNum& a_ik = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
                if (a_ik.is_zero()) continue;
                for (int j = 0; j < d; ++j) {
                    const CycNum& b_kj = b[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)];
                    if (b_kj.is_zero()) continue;
                    c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += a_ik * b_kj;
                }
            }
        return c;
    };
    long ord = 1;
    const long order_cap = 512;
    while (!is_id(power)) {
        power = matmul(power, aut.m);
        if (++ord > order_cap) throw ExtensionError("automorphism order exceeds cap");
    }
    aut.order = ord;
    return aut;
}

/// The diagram automorphism with E+-_i -> E+-_{perm(i)}; `period` must be a
/// multiple of its order.
inline FiniteAut build_nu(const LieTable& T, const Perm& perm, long period) {
    if (static_cast<int>(perm.size()) != T.rank) throw InputError("permutation size does not match the rank");
    for (int i = 0; i < T.rank; ++i)
        for (int j = 0; j < T.rank; ++j)
            if (T.cartan[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] !=
                T.cartan[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])][static_cast<std::size_t>(perm[static_cast<std::size_t>(j)])])
                throw InputError("permutation is not a diagram symmetry");
    std::map<int, LieVec> images;
    for (int i = 0; i < T.rank; ++i) {
        std::vector<long> simple(static_cast<std::size_t>(T.rank), 0), target(static_cast<std::size_t>(T.rank), 0);
        simple[static_cast<std::size_t>(i)] = 1;
        target[static_cast<std::size_t>(perm[static_cast<std::size_t>(i)])] = 1;
        int ks = T.root_index.at(simple), kt = T.root_index.at(target);
        images[T.eplus(ks)] = T.basis_vec(T.eplus(kt));
        images[T.eminus(ks)] = T.basis_vec(T.eminus(kt));
    }
    FiniteAut aut = extend_automorphism(T, images);
    if (period % aut.order != 0) throw InputError("declared period is not a period of the permutation");
    return aut;
}

/// x_[m] = r^{-1} sum_p xi_r^{-mp} nu^p(x); the projection onto the
/// xi_r^m-eigenspace of nu.
inline LieVec eigen_project(const LieTable& T, const FiniteAut& nu, long r, long m, const LieVec& x) {
    const FieldPtr& F = T.field;
    LieVec acc;
    LieVec cur = x;
    for (long p = 0; p < r; ++p) {
        add_scaled(acc, cur, F->root_of_unity(-m * p, r) * F->rational(Rational(1, r)));
        if (p + 1 < r) cur = nu.apply(cur);
    }
    return acc;
}

/// Basis of the eigenspace g_[m], echelonized for canonical membership tests.
inline std::vector<LieVec> eigenspace_basis(const LieTable& T, const FiniteAut& nu, long r, long m) {
    CycOps ops{T.field};
    LinearSpan<CycNum, CycOps> span(ops);
    std::vector<LieVec> basis;
    int d = T.dim();
    for (int j = 0; j < d; ++j) {
        LieVec p = eigen_project(T, nu, r, m, T.basis_vec(j));
        if (p.empty()) continue;
        std::vector<CycNum> dense(static_cast<std::size_t>(d), T.field->zero());
        for (const auto& [i, c] : p) dense[static_cast<std::size_t>(i)] = c;
        if (span.insert(std::move(dense))) basis.push_back(std::move(p));
    }
    return basis;
}

namespace detail {

struct FoldRecipe {
    FiniteType parent;
    Perm perm;  // diagram automorphism of the parent (0-indexed)
};

inline FoldRecipe fold_recipe(const FiniteType& t) {
    FoldRecipe r;
    if (t.family == 'B') {
        r.parent = FiniteType{'D', t.n + 1};
        r.perm = perm_identity(t.n + 1);
        std::swap(r.perm[static_cast<std::size_t>(t.n - 1)], r.perm[static_cast<std::size_t>(t.n)]);
    } else if (t.family == 'C') {
        r.parent = FiniteType{'A', 2 * t.n - 1};
        r.perm.resize(static_cast<std::size_t>(2 * t.n - 1));
        for (int i = 0; i < 2 * t.n - 1; ++i) r.perm[static_cast<std::size_t>(i)] = 2 * t.n - 2 - i;
    } else if (t.family == 'F') {
        r.parent = FiniteType{'E', 6};
        r.perm = perm_identity(6);
        std::swap(r.perm[0], r.perm[4]);
        std::swap(r.perm[1], r.perm[3]);
    } else if (t.family == 'G') {
        r.parent = FiniteType{'D', 4};
        r.perm = perm_identity(4);
        r.perm[0] = 2;
        r.perm[2] = 3;
        r.perm[3] = 0;
    } else {
        throw InputError("no folding recipe for " + t.str());
    }
    return r;
}

}  // namespace detail

/// Chevalley basis of a non-simply-laced type, realized as the fixed-point
/// subalgebra of its simply-laced parent under a diagram automorphism.  Root
/// vectors are orbit sums of parent root vectors; the parent form restricts
/// to the normalized form of the folded algebra.
inline LieTable build_folded(const FiniteType& type, const FieldPtr& field) {
    auto recipe = detail::fold_recipe(type);
    LieTable parent = build_simply_laced(recipe.parent, field);
    FiniteAut sigma = build_nu(parent, recipe.perm, perm_order(recipe.perm));

    LieTable T;
    T.field = field;
    T.type = type;
    T.gram = finite_gram(type);
    T.cartan = cartan_from_gram(T.gram);
    T.rank = type.n;
    T.pos_roots = enumerate_positive_roots(T.cartan);
    for (std::size_t i = 0; i < T.pos_roots.size(); ++i) T.root_index[T.pos_roots[i]] = static_cast<int>(i);

    // Folded simple roots of the parent: orbit averages, in parent lattice
    // coordinates; then the relabeling onto this type's catalog order.
    auto orbits = perm_orbits(recipe.perm);
    int nf = static_cast<int>(orbits.size());
    if (nf != T.rank) throw ConstructionError("folded rank mismatch for " + type.str());
    Matrix<Rational> folded_simple(static_cast<std::size_t>(nf),
                                   std::vector<Rational>(static_cast<std::size_t>(parent.rank), Rational(0)));
    for (int i = 0; i < nf; ++i)
        for (int node : orbits[static_cast<std::size_t>(i)])
            folded_simple[static_cast<std::size_t>(i)][static_cast<std::size_t>(node)] = Rational(1, static_cast<long>(orbits[static_cast<std::size_t>(i)].size()));
    auto parent_ip = [&](const std::vector<Rational>& x, const std::vector<Rational>& y) {
        Rational s = 0;
        for (int a = 0; a < parent.rank; ++a)
            for (int b = 0; b < parent.rank; ++b)
                if (x[static_cast<std::size_t>(a)] != 0 && y[static_cast<std::size_t>(b)] != 0)
                    s += x[static_cast<std::size_t>(a)] * y[static_cast<std::size_t>(b)] * parent.gram[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)];
        return s;
    };
    // relabel[i] = index of the orbit realizing this type's node i.
    std::vector<int> relabel(static_cast<std::size_t>(nf), -1);
    {
        std::vector<int> cand(static_cast<std::size_t>(nf));
        std::iota(cand.begin(), cand.end(), 0);
        std::function<bool(int)> place = [&](int i) -> bool {
            if (i == nf) return true;
            for (int c : cand) {
                if (std::count(relabel.begin(), relabel.begin() + i, c)) continue;
                bool ok = true;
                for (int j = 0; j <= i && ok; ++j) {
                    int cj = (j == i) ? c : relabel[static_cast<std::size_t>(j)];
                    Rational expect = T.gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                    if (parent_ip(folded_simple[static_cast<std::size_t>(c)], folded_simple[static_cast<std::size_t>(cj)]) != expect)
                        ok = false;
                }
                if (!ok) continue;
                relabel[static_cast<std::size_t>(i)] = c;
                if (place(i + 1)) return true;
                relabel[static_cast<std::size_t>(i)] = -1;
            }
            return false;
        };
        if (!place(0)) throw ConstructionError("cannot match folded simple roots onto " + type.str());
    }

    // Restriction of a parent root to folded coordinates: sum the
    // coordinates over each orbit, against the relabeling.
    auto parent_to_folded = [&](const std::vector<long>& gamma) {
        std::vector<Rational> acc(static_cast<std::size_t>(nf), Rational(0));
        for (int i = 0; i < nf; ++i) {
            const auto& orb = orbits[static_cast<std::size_t>(relabel[static_cast<std::size_t>(i)])];
            Rational s = 0;
            for (int node : orb) s += gamma[static_cast<std::size_t>(node)];
            acc[static_cast<std::size_t>(i)] = s;
        }
        return acc;
    };

    // Orbit sums of parent root vectors per folded positive root.
    int P = T.npos();
    int dim = T.dim();
    std::vector<LieVec> new_basis(static_cast<std::size_t>(dim));
    auto act_on_root = [&](const std::vector<long>& gamma) {
        std::vector<long> out(static_cast<std::size_t>(parent.rank), 0);
        for (int a = 0; a < parent.rank; ++a) out[static_cast<std::size_t>(recipe.perm[static_cast<std::size_t>(a)])] += gamma[static_cast<std::size_t>(a)];
        return out;
    };
    for (int kk = 0; kk < P; ++kk) {
        const auto& beta = T.pos_roots[static_cast<std::size_t>(kk)];
        // Find one parent positive root restricting to beta.
        int found = -1;
        for (int pk = 0; pk < parent.npos() && found < 0; ++pk) {
            std::vector<Rational> restr = parent_to_folded(parent.pos_roots[static_cast<std::size_t>(pk)]);
            bool match = true;
            for (int i = 0; i < nf; ++i)
                if (restr[static_cast<std::size_t>(i)] != Rational(beta[static_cast<std::size_t>(i)])) match = false;
            if (match) found = pk;
        }
        if (found < 0) throw ConstructionError("no parent root over folded root in " + type.str());
        // Orbit length of the parent root.
        std::vector<long> g0 = parent.pos_roots[static_cast<std::size_t>(found)];
        std::vector<long> g = g0;
        int orbit_len = 0;
        do {
            g = act_on_root(g);
            ++orbit_len;
        } while (g != g0);
        LieVec ep, em;
        LieVec cur_p = parent.basis_vec(parent.eplus(found));
        LieVec cur_m = parent.basis_vec(parent.eminus(found));
        for (int p = 0; p < orbit_len; ++p) {
            add_scaled(ep, cur_p, field->one());
            add_scaled(em, cur_m, field->one());
            if (p + 1 < orbit_len) {
                cur_p = sigma.apply(cur_p);
                cur_m = sigma.apply(cur_m);
            }
        }
        // Fixed-point sanity: orbit sums must be sigma-invariant and nonzero.
        if (!lie_equal(sigma.apply(ep), ep) || ep.empty())
            throw ConstructionError("orbit sum is not a fixed vector in " + type.str());
        new_basis[static_cast<std::size_t>(T.eplus(kk))] = std::move(ep);
        new_basis[static_cast<std::size_t>(T.eminus(kk))] = std::move(em);
    }
    for (int i = 0; i < T.rank; ++i) {
        std::vector<long> simple(static_cast<std::size_t>(T.rank), 0);
        simple[static_cast<std::size_t>(i)] = 1;
        int kk = T.root_index.at(simple);
        new_basis[static_cast<std::size_t>(i)] =
            parent.bracket(new_basis[static_cast<std::size_t>(T.eplus(kk))], new_basis[static_cast<std::size_t>(T.eminus(kk))]);
    }

    // Express parent vectors over the new basis: set up an echelonized solver.
    int pd = parent.dim();
    Matrix<CycNum> cols(static_cast<std::size_t>(pd), std::vector<CycNum>(static_cast<std::size_t>(dim), field->zero()));
    for (int j = 0; j < dim; ++j)
        for (const auto& [i, c] : new_basis[static_cast<std::size_t>(j)]) cols[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = c;
    CycOps ops{field};
    auto express = [&](const LieVec& v) {
        std::vector<CycNum> rhs(static_cast<std::size_t>(pd), field->zero());
        for (const auto& [i, c] : v) rhs[static_cast<std::size_t>(i)] = c;
        auto sol = solve(cols, rhs, ops);
        if (!sol) throw ConstructionError("vector leaves the fixed subalgebra in " + type.str());
        LieVec out;
        for (int j = 0; j < dim; ++j)
            if (!(*sol)[static_cast<std::size_t>(j)].is_zero()) out.emplace(j, (*sol)[static_cast<std::size_t>(j)]);
        return out;
    };

    T.table.assign(static_cast<std::size_t>(dim), std::vector<LieVec>(static_cast<std::size_t>(dim)));
    T.form_mat.assign(static_cast<std::size_t>(dim), std::vector<CycNum>(static_cast<std::size_t>(dim), field->zero()));
    for (int i = 0; i < dim; ++i) {
        for (int j = 0; j < dim; ++j) {
            T.table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                express(parent.bracket(new_basis[static_cast<std::size_t>(i)], new_basis[static_cast<std::size_t>(j)]));
            T.form_mat[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
                parent.form(new_basis[static_cast<std::size_t>(i)], new_basis[static_cast<std::size_t>(j)]);
        }
    }
    return T;
}

/// Chevalley basis with integral structure constants, coroots and the
/// normalized invariant form, for any finite type.
inline LieTable build_simple(const FiniteType& type, const FieldPtr& field) {
    if (type.family == 'A' || type.family == 'D' || type.family == 'E') return build_simply_laced(type, field);
    if (type.family == 'B' || type.family == 'C' || type.family == 'F' || type.family == 'G')
        return build_folded(type, field);
    throw InputError("invalid finite type " + type.str());
}

}  // namespace toroidal

#endif  // TOROIDAL_SIMPLE_LIE_HPP

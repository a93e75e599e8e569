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

#ifndef TOROIDAL_UCE_HPP
#define TOROIDAL_UCE_HPP

#include <map>
#include <string>
#include <vector>

#include "toroidal/linalg.hpp"
#include "toroidal/simple_lie.hpp"

namespace toroidal {

/// A finite dimensional Lie algebra given by nothing but a basis and sparse
/// structure constants; the input and output format of the uce functor.
struct GenericAlgebra {
    FieldPtr field;
    int dim = 0;
    std::vector<std::vector<LieVec>> table;

    static GenericAlgebra from_lie_table(const LieTable& T) {
        GenericAlgebra g;
        g.field = T.field;
        g.dim = T.dim();
        g.table = T.table;
        return g;
    }

    LieVec bracket(const LieVec& x, const LieVec& y) const {
        LieVec out;
        for (const auto& [i, a] : x)
            for (const auto& [j, b] : y) add_scaled(out, table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)], a * b);
        return out;
    }

    LieVec basis_vec(int i) const {
        LieVec v;
        v.emplace(i, field->one());
        return v;
    }

    /// Dimension of the derived subalgebra [k, k].
    std::size_t derived_dim() const {
        CycOps ops{field};
        LinearSpan<CycNum, CycOps> span(ops);
        for (int i = 0; i < dim; ++i)
            for (int j = i + 1; j < dim; ++j) {
                std::vector<CycNum> dense(static_cast<std::size_t>(dim), field->zero());
                for (const auto& [t, c] : table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]) dense[static_cast<std::size_t>(t)] = c;
                span.insert(std::move(dense));
            }
        return span.dim();
    }

    bool is_perfect() const { return derived_dim() == static_cast<std::size_t>(dim); }

    /// Basis of the center {x : [x, k] = 0}.
    Matrix<CycNum> center_basis() const {
        // Stack the adjoint matrices: rows indexed by (j, t), columns by i.
        Matrix<CycNum> m(static_cast<std::size_t>(dim) * static_cast<std::size_t>(dim),
                         std::vector<CycNum>(static_cast<std::size_t>(dim), field->zero()));
        for (int i = 0; i < dim; ++i)
            for (int j = 0; j < dim; ++j)
                for (const auto& [t, c] : table[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])
                    m[static_cast<std::size_t>(j) * static_cast<std::size_t>(dim) + static_cast<std::size_t>(t)][static_cast<std::size_t>(i)] = c;
        return kernel_basis(std::move(m), CycOps{field});
    }

    bool is_centerless() const { return center_basis().empty(); }
};

/// uce(k) = (k (x) k) / B together with the canonical map u: uce(k) -> [k,k].
struct UceResult {
    GenericAlgebra algebra;            // the quotient, on coset representatives e_a (x) e_b
    std::vector<std::pair<int, int>> coset_reps;
    Matrix<CycNum> u_columns;          // column q = u(basis q) as a vector in k
    std::size_t kernel_dim = 0;
    bool input_perfect = false;
    bool input_centerless = false;
    bool kernel_central = false;
    bool kernel_is_center = false;     // exact, computed when input is perfect and centerless

    // Quotient coordinates of a pure tensor x (x) y, for covering-map checks.
    int source_dim = 0;
    LinearSpan<CycNum, CycOps> relation_span{CycOps{}};
    std::map<std::size_t, int> rep_of_column;

    std::vector<CycNum> express_tensor(const LieVec& x, const LieVec& y) const {
        const FieldPtr& F = algebra.field;
        std::size_t dd = static_cast<std::size_t>(source_dim) * static_cast<std::size_t>(source_dim);
        std::vector<CycNum> dense(dd, F->zero());
        for (const auto& [a, ca] : x)
            for (const auto& [b, cb] : y)
                dense[static_cast<std::size_t>(a) * static_cast<std::size_t>(source_dim) + static_cast<std::size_t>(b)] += ca * cb;
        dense = relation_span.reduce(std::move(dense));
        std::vector<CycNum> coeff(coset_reps.size(), F->zero());
        for (std::size_t col = 0; col < dd; ++col) {
            if (dense[col].is_zero()) continue;
            auto it = rep_of_column.find(col);
            if (it == rep_of_column.end()) throw ConstructionError("tensor vector leaves the quotient span");
            coeff[static_cast<std::size_t>(it->second)] = dense[col];
        }
        return coeff;
    }
};

/// The uce functor on finite dimensional algebras: quotient of the tensor
/// square by the symmetry and Jacobi relations, with the induced bracket
/// [x (x) x', y (x) y'] = [x,x'] (x) [y,y'].
inline UceResult uce_finite(const GenericAlgebra& k) {
    const FieldPtr& F = k.field;
    int d = k.dim;
    std::size_t dd = static_cast<std::size_t>(d) * static_cast<std::size_t>(d);
    CycOps ops{F};
    auto tensor_index = [&](int a, int b) { return static_cast<std::size_t>(a) * static_cast<std::size_t>(d) + static_cast<std::size_t>(b); };

    // Span of B: x(x)y + y(x)x and the Jacobi cyclics on basis triples.
    LinearSpan<CycNum, CycOps> brel(ops);
    auto add_tensor = [&](std::vector<CycNum>& dense, const LieVec& x, const LieVec& y, const CycNum& c) {
        for (const auto& [a, ca] : x)
            for (const auto& [b, cb] : y) dense[tensor_index(a, b)] += c * ca * cb;
    };
    for (int a = 0; a < d; ++a)
        for (int b = a; b < d; ++b) {
            std::vector<CycNum> dense(dd, F->zero());
            dense[tensor_index(a, b)] += F->one();
            dense[tensor_index(b, a)] += F->one();
            brel.insert(std::move(dense));
        }
    for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b)
            for (int c = b + 1; c < d; ++c) {
                std::vector<CycNum> dense(dd, F->zero());
                add_tensor(dense, k.basis_vec(a), k.table[static_cast<std::size_t>(b)][static_cast<std::size_t>(c)], F->one());
                add_tensor(dense, k.basis_vec(b), k.table[static_cast<std::size_t>(c)][static_cast<std::size_t>(a)], F->one());
                add_tensor(dense, k.basis_vec(c), k.table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)], F->one());
                brel.insert(std::move(dense));
            }

    // Coset representatives: the tensor basis vectors at the non-pivot
    // columns of the (mutually reduced) relation span.  Reduction then lands
    // exactly on representative columns.
    UceResult out;
    std::map<std::size_t, int> rep_of_column;
    {
        std::vector<bool> is_pivot(dd, false);
        for (const auto& [piv, row] : brel.rows()) is_pivot[piv] = true;
        for (std::size_t col = 0; col < dd; ++col) {
            if (is_pivot[col]) continue;
            rep_of_column[col] = static_cast<int>(out.coset_reps.size());
            out.coset_reps.emplace_back(static_cast<int>(col) / d, static_cast<int>(col) % d);
        }
    }
    int q = static_cast<int>(out.coset_reps.size());

    // Express a tensor-square vector over the coset representatives: after
    // reduction against the mutually-reduced B rows the residual is
    // supported exactly on the non-pivot (representative) columns.
    auto express = [&](std::vector<CycNum> dense) {
        dense = brel.reduce(std::move(dense));
        std::vector<CycNum> coeff(static_cast<std::size_t>(q), F->zero());
        for (std::size_t col = 0; col < dd; ++col) {
            if (dense[col].is_zero()) continue;
            auto it = rep_of_column.find(col);
            if (it == rep_of_column.end()) throw ConstructionError("tensor vector leaves the quotient span");
            coeff[static_cast<std::size_t>(it->second)] = dense[col];
        }
        return coeff;
    };

    // The induced bracket and the map u on the quotient basis.
    out.algebra.field = F;
    out.algebra.dim = q;
    out.algebra.table.assign(static_cast<std::size_t>(q), std::vector<LieVec>(static_cast<std::size_t>(q)));
    for (int s = 0; s < q; ++s) {
        auto [a1, b1] = out.coset_reps[static_cast<std::size_t>(s)];
        LieVec u1 = k.table[static_cast<std::size_t>(a1)][static_cast<std::size_t>(b1)];
        for (int t = 0; t < q; ++t) {
            auto [a2, b2] = out.coset_reps[static_cast<std::size_t>(t)];
            LieVec u2 = k.table[static_cast<std::size_t>(a2)][static_cast<std::size_t>(b2)];
            std::vector<CycNum> dense(dd, F->zero());
            add_tensor(dense, u1, u2, F->one());
            auto coeffs = express(std::move(dense));
            LieVec entry;
            for (int w = 0; w < q; ++w)
                if (!coeffs[static_cast<std::size_t>(w)].is_zero()) entry.emplace(w, coeffs[static_cast<std::size_t>(w)]);
            out.algebra.table[static_cast<std::size_t>(s)][static_cast<std::size_t>(t)] = std::move(entry);
        }
    }
    out.u_columns.assign(static_cast<std::size_t>(d), std::vector<CycNum>(static_cast<std::size_t>(q), F->zero()));
    for (int t = 0; t < q; ++t) {
        auto [a, b] = out.coset_reps[static_cast<std::size_t>(t)];
        for (const auto& [i, c] : k.table[static_cast<std::size_t>(a)][static_cast<std::size_t>(b)]) out.u_columns[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] = c;
    }

    out.input_perfect = k.is_perfect();
    out.input_centerless = k.is_centerless();
    std::size_t image_dim = rank_of(out.u_columns, ops);
    out.kernel_dim = static_cast<std::size_t>(q) - image_dim;

    // Kernel centrality, by exact elimination.
    auto ker = kernel_basis(out.u_columns, ops);
    out.kernel_central = true;
    for (const auto& kv : ker) {
        LieVec z;
        for (int t = 0; t < q; ++t)
            if (!kv[static_cast<std::size_t>(t)].is_zero()) z.emplace(t, kv[static_cast<std::size_t>(t)]);
        for (int t = 0; t < q && out.kernel_central; ++t)
            if (!out.algebra.bracket(z, out.algebra.basis_vec(t)).empty()) out.kernel_central = false;
    }
    if (out.input_perfect && out.input_centerless) {
        auto center = out.algebra.center_basis();
        // ker(u) central and of the same dimension as the center means they
        // coincide (ker(u) is contained in the center).
        out.kernel_is_center = out.kernel_central && center.size() == out.kernel_dim;
    }
    out.source_dim = d;
    out.relation_span = brel;
    out.rep_of_column = rep_of_column;
    return out;
}

/// Graded eigenspace dimensions of a multiloop slice, with the fixed-point
/// characterization verified through a second algebraic route (projector
/// ranks vs. simultaneous kernels).
struct MultiloopSlice {
    std::vector<long> periods;
    std::map<std::vector<long>, std::size_t> dims;  // over the fundamental domain
    std::size_t total = 0;
    bool fixed_point_consistent = false;
};

inline MultiloopSlice multiloop_build(const GenericAlgebra& k, const std::vector<Matrix<CycNum>>& sigmas,
                                      const std::vector<long>& periods) {
    if (sigmas.size() != periods.size()) throw InputError("one period per automorphism required");
    const FieldPtr& F = k.field;
    int d = k.dim;
    CycOps ops{F};
    auto matmul = [&](const Matrix<CycNum>& a, const Matrix<CycNum>& b) {
        Matrix<CycNum> c(static_cast<std::size_t>(d), std::vector<CycNum>(static_cast<std::size_t>(d), F->zero()));
        for (int i = 0; i < d; ++i)
            for (int t = 0; t < d; ++t) {
                if (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)].is_zero()) continue;
                for (int j = 0; j < d; ++j)
                    c[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] +=
                        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(t)] * b[static_cast<std::size_t>(t)][static_cast<std::size_t>(j)];
            }
        return c;
    };
    auto identity = [&]() {
        Matrix<CycNum> m(static_cast<std::size_t>(d), std::vector<CycNum>(static_cast<std::size_t>(d), F->zero()));
        for (int i = 0; i < d; ++i) m[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)] = F->one();
        return m;
    };
    auto equal = [&](const Matrix<CycNum>& a, const Matrix<CycNum>& b) {
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                if (!(a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] == b[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)])) return false;
        return true;
    };
    // Period and commutation validation.
    for (std::size_t s = 0; s < sigmas.size(); ++s) {
        Matrix<CycNum> p = identity();
        for (long t = 0; t < periods[s]; ++t) p = matmul(p, sigmas[s]);
        if (!equal(p, identity())) throw InputError("declared period is not a period of sigma_" + std::to_string(s));
        for (std::size_t u = s + 1; u < sigmas.size(); ++u)
            if (!equal(matmul(sigmas[s], sigmas[u]), matmul(sigmas[u], sigmas[s])))
                throw InputError("the automorphisms do not commute");
    }

    MultiloopSlice slice;
    slice.periods = periods;
    std::vector<long> tuple(periods.size(), 0);
    std::function<void(std::size_t)> walk = [&](std::size_t pos) {
        if (pos == periods.size()) {
            // Route 1: simultaneous kernels of (sigma_s - xi^{m_s}).
            Matrix<CycNum> stacked;
            for (std::size_t s = 0; s < sigmas.size(); ++s) {
                CycNum ev = F->root_of_unity(tuple[s], periods[s]);
                for (int i = 0; i < d; ++i) {
                    std::vector<CycNum> row(static_cast<std::size_t>(d), F->zero());
                    for (int j = 0; j < d; ++j) row[static_cast<std::size_t>(j)] = sigmas[s][static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                    row[static_cast<std::size_t>(i)] -= ev;
                    stacked.push_back(std::move(row));
                }
            }
            std::size_t dim1 = kernel_basis(std::move(stacked), ops).size();
            // Route 2: rank of the product of averaging projectors for the
            // twisted automorphisms xi^{-d} (x) sigma.
            Matrix<CycNum> proj = identity();
            for (std::size_t s = 0; s < sigmas.size(); ++s) {
                Matrix<CycNum> p(static_cast<std::size_t>(d), std::vector<CycNum>(static_cast<std::size_t>(d), F->zero()));
                Matrix<CycNum> pw = identity();
                for (long t = 0; t < periods[s]; ++t) {
                    CycNum c = F->root_of_unity(-tuple[s] * t, periods[s]) * F->rational(Rational(1, periods[s]));
                    for (int i = 0; i < d; ++i)
                        for (int j = 0; j < d; ++j) p[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] += c * pw[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                    pw = matmul(pw, sigmas[s]);
                }
                proj = matmul(proj, p);
            }
            std::size_t dim2 = rank_of(proj, ops);
            if (dim1 != dim2) slice.fixed_point_consistent = false;
            slice.dims[tuple] = dim1;
            slice.total += dim1;
            return;
        }
        for (long m = 0; m < periods[pos]; ++m) {
            tuple[pos] = m;
            walk(pos + 1);
        }
        tuple[pos] = 0;
    };
    slice.fixed_point_consistent = true;
    walk(0);
    return slice;
}

}  // namespace toroidal

#endif  // TOROIDAL_UCE_HPP

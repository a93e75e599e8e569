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

#ifndef TOROIDAL_LINALG_HPP
#define TOROIDAL_LINALG_HPP

#include <optional>
#include <vector>

#include "toroidal/cyclotomic.hpp"
#include "toroidal/rational.hpp"

namespace toroidal {

template <class T>
using Matrix = std::vector<std::vector<T>>;

/// Field callbacks for the generic elimination routines.
struct RationalOps {
    Rational zero() const { return Rational(0); }
    Rational one() const { return Rational(1); }
    static bool is_zero(const Rational& x) { return x == 0; }
};

struct CycOps {
    FieldPtr F;
    CycNum zero() const { return F->zero(); }
    CycNum one() const { return F->one(); }
    static bool is_zero(const CycNum& x) { return x.is_zero(); }
};

/// In-place reduced row echelon form; returns the rank.  Pivot columns are
/// appended to *pivots when provided.
template <class T, class Ops>
std::size_t rref(Matrix<T>& m, const Ops& ops, std::vector<std::size_t>* pivots = nullptr) {
    std::size_t rows = m.size();
    std::size_t cols = rows ? m[0].size() : 0;
    std::size_t rank = 0;
    for (std::size_t col = 0; col < cols && rank < rows; ++col) {
        std::size_t sel = rank;
        while (sel < rows && Ops::is_zero(m[sel][col])) ++sel;
        if (sel == rows) continue;
        std::swap(m[sel], m[rank]);
        T inv = ops.one() / m[rank][col];
        for (std::size_t j = col; j < cols; ++j) m[rank][j] = m[rank][j] * inv;
        for (std::size_t i = 0; i < rows; ++i) {
            if (i == rank || Ops::is_zero(m[i][col])) continue;
            T f = m[i][col];
            for (std::size_t j = col; j < cols; ++j) m[i][j] = m[i][j] - f * m[rank][j];
        }
        if (pivots) pivots->push_back(col);
        ++rank;
    }
    return rank;
}

template <class T, class Ops>
std::size_t rank_of(Matrix<T> m, const Ops& ops) {
    return rref(m, ops);
}

/// Basis of the right kernel (rows of the result are kernel vectors).
template <class T, class Ops>
Matrix<T> kernel_basis(Matrix<T> m, const Ops& ops) {
    std::size_t cols = m.empty() ? 0 : m[0].size();
    std::vector<std::size_t> pivots;
    rref(m, ops, &pivots);
    std::vector<bool> is_pivot(cols, false);
    for (auto p : pivots) is_pivot[p] = true;
    Matrix<T> basis;
    for (std::size_t free = 0; free < cols; ++free) {
        if (is_pivot[free]) continue;
        std::vector<T> v(cols, ops.zero());
        v[free] = ops.one();
        for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = ops.zero() - m[r][free];
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Solve A x = b exactly; nullopt when inconsistent.  Free variables are 0.
template <class T, class Ops>
std::optional<std::vector<T>> solve(Matrix<T> a, const std::vector<T>& b, const Ops& ops) {
    std::size_t rows = a.size();
    std::size_t cols = rows ? a[0].size() : 0;
    for (std::size_t i = 0; i < rows; ++i) a[i].push_back(b[i]);
    std::vector<std::size_t> pivots;
    rref(a, ops, &pivots);
    std::vector<T> x(cols, ops.zero());
    for (std::size_t r = 0; r < pivots.size(); ++r) {
        if (pivots[r] == cols) return std::nullopt;  // pivot in the augmented column
        x[pivots[r]] = a[r][cols];
    }
    // Consistency of rows beyond the pivot count.
    for (std::size_t r = pivots.size(); r < rows; ++r)
        if (!Ops::is_zero(a[r][cols])) return std::nullopt;
    return x;
}

/// Incremental echelon container for exact span/rank bookkeeping.
template <class T, class Ops>
class LinearSpan {
  public:
    explicit LinearSpan(const Ops& ops) : ops_(ops) {}

    /// Reduce v against the stored rows; keep it when independent.  Rows are
    /// kept mutually reduced, so reduce() zeroes every pivot column.
    bool insert(std::vector<T> v) {
        for (const auto& [piv, row] : rows_) {
            if (Ops::is_zero(v[piv])) continue;
            T f = v[piv];
            for (std::size_t j = 0; j < v.size(); ++j) v[j] = v[j] - f * row[j];
        }
        std::size_t piv = 0;
        while (piv < v.size() && Ops::is_zero(v[piv])) ++piv;
        if (piv == v.size()) return false;
        T inv = ops_.one() / v[piv];
        for (auto& x : v) x = x * inv;
        for (auto& [p, row] : rows_) {
            if (Ops::is_zero(row[piv])) continue;
            T f = row[piv];
            for (std::size_t j = 0; j < row.size(); ++j) row[j] = row[j] - f * v[j];
        }
        rows_.emplace_back(piv, std::move(v));
        return true;
    }

    std::size_t dim() const { return rows_.size(); }

    /// True when v lies in the current span.
    bool contains(std::vector<T> v) const {
        v = reduce(std::move(v));
        for (const auto& x : v)
            if (!Ops::is_zero(x)) return false;
        return true;
    }

    /// The residual of v after elimination against the stored rows.
    std::vector<T> reduce(std::vector<T> v) const {
        for (const auto& [piv, row] : rows_) {
            if (Ops::is_zero(v[piv])) continue;
            T f = v[piv];
            for (std::size_t j = 0; j < v.size(); ++j) v[j] = v[j] - f * row[j];
        }
        return v;
    }

    const std::vector<std::pair<std::size_t, std::vector<T>>>& rows() const { return rows_; }

  private:
    Ops ops_;
    std::vector<std::pair<std::size_t, std::vector<T>>> rows_;
};

/// Exact determinant of an integer matrix (Bareiss fraction-free elimination).
inline Integer det_integer(Matrix<Integer> m) {
    std::size_t n = m.size();
    if (n == 0) return 1;
    Integer sign = 1, prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t sel = k + 1;
            while (sel < n && m[sel][k] == 0) ++sel;
            if (sel == n) return 0;
            std::swap(m[sel], m[k]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

}  // namespace toroidal

#endif  // TOROIDAL_LINALG_HPP

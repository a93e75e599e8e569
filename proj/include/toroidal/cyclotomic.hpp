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

#ifndef TOROIDAL_CYCLOTOMIC_HPP
#define TOROIDAL_CYCLOTOMIC_HPP

#include <map>
#include <memory>
#include <mutex>
#include <sstream>
#include <utility>
#include <vector>

#include "toroidal/errors.hpp"
#include "toroidal/rational.hpp"

namespace toroidal {

class CycNum;
class CycField;
using FieldPtr = std::shared_ptr<const CycField>;

namespace detail {

// Dense polynomials over Q, little-endian coefficients, no trailing zeros.
using Poly = std::vector<Rational>;

inline void poly_trim(Poly& p) {
    while (!p.empty() && p.back() == 0) p.pop_back();
}

inline Poly poly_mul(const Poly& a, const Poly& b) {
    if (a.empty() || b.empty()) return {};
    Poly c(a.size() + b.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] == 0) continue;
        for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    poly_trim(c);
    return c;
}

// Exact division with remainder; divisor need not be monic.
inline std::pair<Poly, Poly> poly_divmod(Poly num, const Poly& den) {
    if (den.empty()) throw DivisionByZero();
    poly_trim(num);
    Poly quot;
    if (num.size() >= den.size()) quot.assign(num.size() - den.size() + 1, Rational(0));
    const Rational& lead = den.back();
    while (num.size() >= den.size()) {
        Rational c = num.back() / lead;
        std::size_t shift = num.size() - den.size();
        quot[shift] = c;
        for (std::size_t i = 0; i < den.size(); ++i) num[shift + i] -= c * den[i];
        poly_trim(num);
    }
    poly_trim(quot);
    return {std::move(quot), std::move(num)};
}

}  // namespace detail

/// The ambient cyclotomic field Q(xi_L), xi_L = exp(2*pi*i/L).  One field is
/// fixed per computation, chosen large enough that every root of unity the
/// job needs satisfies M | L.  The reduction data is built once and is
/// read-only afterwards, so CycNum values can be shared freely across
/// concurrent sweeps.
class CycField : public std::enable_shared_from_this<CycField> {
  public:
    /// Memoized access; fields are interned per conductor.
    static FieldPtr get(long conductor) {
        static std::mutex mu;
        static std::map<long, FieldPtr> cache;
        if (conductor < 1) throw ConductorError("conductor must be a positive integer");
        std::lock_guard<std::mutex> lock(mu);
        auto it = cache.find(conductor);
        if (it != cache.end()) return it->second;
        FieldPtr f(new CycField(conductor));
        cache.emplace(conductor, f);
        return f;
    }

    long conductor() const { return L_; }

    /// Degree phi(L) of the field over Q.
    long degree() const { return phi_; }

    /// Coefficients of the L-th cyclotomic polynomial, monic, little-endian.
    const std::vector<Rational>& minimal_polynomial() const { return phi_poly_; }

    /// xi_L^e reduced to the canonical basis, e taken mod L.
    const std::vector<Rational>& power_of_generator(long e) const {
        e %= L_;
        if (e < 0) e += L_;
        return pow_[static_cast<std::size_t>(e)];
    }

    CycNum zero() const;
    CycNum one() const;
    CycNum rational(const Rational& q) const;
    CycNum integer(long n) const;

    /// xi_M^k as an element of this field.  Requires M | L.
    CycNum root_of_unity(long k, long M) const;

    /// sqrt(2) = xi_8 + xi_8^{-1}; requires 8 | L.
    CycNum sqrt2() const;

  private:
    explicit CycField(long L) : L_(L) {
        phi_poly_ = cyclotomic_polynomial(L);
        phi_ = static_cast<long>(phi_poly_.size()) - 1;
        // Canonical-basis expansion of every power of the generator.  x^e for
        // e < phi is immediate; higher powers fold down through the minimal
        // polynomial once each, reusing the previous row.
        pow_.resize(static_cast<std::size_t>(L_));
        for (long e = 0; e < L_; ++e) {
            std::vector<Rational> row(static_cast<std::size_t>(phi_), Rational(0));
            if (e < phi_) {
                row[static_cast<std::size_t>(e)] = 1;
            } else {
                // x * pow_[e-1], reduced.
                const auto& prev = pow_[static_cast<std::size_t>(e - 1)];
                std::vector<Rational> shifted(static_cast<std::size_t>(phi_) + 1, Rational(0));
                for (long i = 0; i < phi_; ++i) shifted[static_cast<std::size_t>(i + 1)] = prev[static_cast<std::size_t>(i)];
                Rational top = shifted[static_cast<std::size_t>(phi_)];
                for (long i = 0; i < phi_; ++i)
                    row[static_cast<std::size_t>(i)] =
                        shifted[static_cast<std::size_t>(i)] - top * phi_poly_[static_cast<std::size_t>(i)];
            }
            pow_[static_cast<std::size_t>(e)] = std::move(row);
        }
    }

    // Phi_L = (x^L - 1) / prod_{d | L, d < L} Phi_d, computed recursively.
    static detail::Poly cyclotomic_polynomial(long L) {
        if (L == 1) return {Rational(-1), Rational(1)};
        detail::Poly num(static_cast<std::size_t>(L) + 1, Rational(0));
        num[0] = -1;
        num[static_cast<std::size_t>(L)] = 1;
        for (long d = 1; d < L; ++d) {
            if (L % d != 0) continue;
            auto [q, r] = detail::poly_divmod(num, cyclotomic_polynomial(d));
            if (!r.empty()) throw ConstructionError("cyclotomic polynomial division left a remainder");
            num = std::move(q);
        }
        return num;
    }

    long L_;
    long phi_;
    detail::Poly phi_poly_;
    std::vector<std::vector<Rational>> pow_;
};

/// An exact element of the ambient cyclotomic field: a polynomial in xi_L of
/// degree < phi(L), reduced modulo the L-th cyclotomic polynomial.  The
/// representation is canonical, so equality and the zero test are coefficient
/// comparisons.  Values are immutable after construction.
class CycNum {
  public:
    CycNum() = default;

    CycNum(FieldPtr field, std::vector<Rational> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
        c_.resize(static_cast<std::size_t>(field_->degree()), Rational(0));
    }

    const FieldPtr& field() const { return field_; }
    const std::vector<Rational>& coeffs() const { return c_; }

    bool is_zero() const {
        for (const auto& x : c_)
            if (x != 0) return false;
        return true;
    }

    bool is_one() const { return is_rational() && c_[0] == 1; }

    /// True when the value lies in Q.
    bool is_rational() const {
        for (std::size_t i = 1; i < c_.size(); ++i)
            if (c_[i] != 0) return false;
        return true;
    }

    /// The rational value; only valid when is_rational().
    const Rational& rational_value() const {
        if (!is_rational()) throw Error("cyclotomic number is not rational: " + to_string());
        return c_[0];
    }

    friend CycNum operator+(const CycNum& a, const CycNum& b) {
        auto [x, y] = CycNum::aligned(a, b);
        for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] += y.c_[i];
        return x;
    }

    friend CycNum operator-(const CycNum& a, const CycNum& b) {
        auto [x, y] = CycNum::aligned(a, b);
        for (std::size_t i = 0; i < x.c_.size(); ++i) x.c_[i] -= y.c_[i];
        return x;
    }

    CycNum operator-() const {
        CycNum r(*this);
        for (auto& x : r.c_) x = -x;
        return r;
    }

    friend CycNum operator*(const CycNum& a, const CycNum& b) {
        auto [x, y] = CycNum::aligned(a, b);
        const auto& F = *x.field_;
        long phi = F.degree();
        std::vector<Rational> prod(static_cast<std::size_t>(2 * phi - 1), Rational(0));
        for (long i = 0; i < phi; ++i) {
            if (x.c_[static_cast<std::size_t>(i)] == 0) continue;
            for (long j = 0; j < phi; ++j)
                prod[static_cast<std::size_t>(i + j)] += x.c_[static_cast<std::size_t>(i)] * y.c_[static_cast<std::size_t>(j)];
        }
        // Fold degrees >= phi down through the minimal polynomial.
        const auto& mp = F.minimal_polynomial();
        for (long d = 2 * phi - 2; d >= phi; --d) {
            Rational top = prod[static_cast<std::size_t>(d)];
            if (top == 0) continue;
            prod[static_cast<std::size_t>(d)] = 0;
            for (long i = 0; i < phi; ++i) prod[static_cast<std::size_t>(d - phi + i)] -= top * mp[static_cast<std::size_t>(i)];
        }
        prod.resize(static_cast<std::size_t>(phi));
        return CycNum(x.field_, std::move(prod));
    }

    friend CycNum operator/(const CycNum& a, const CycNum& b) { return a * b.inverse(); }

    CycNum& operator+=(const CycNum& o) { return *this = *this + o; }
    CycNum& operator-=(const CycNum& o) { return *this = *this - o; }
    CycNum& operator*=(const CycNum& o) { return *this = *this * o; }
    CycNum& operator/=(const CycNum& o) { return *this = *this / o; }

    friend bool operator==(const CycNum& a, const CycNum& b) {
        auto [x, y] = CycNum::aligned(a, b);
        return x.c_ == y.c_;
    }
    friend bool operator!=(const CycNum& a, const CycNum& b) { return !(a == b); }

    /// Exact inverse through the extended Euclidean algorithm modulo the
    /// minimal polynomial.
    CycNum inverse() const {
        if (is_zero()) throw DivisionByZero();
        if (is_rational()) {
            std::vector<Rational> r(c_.size(), Rational(0));
            r[0] = Rational(1) / c_[0];
            return CycNum(field_, std::move(r));
        }
        detail::Poly a(c_.begin(), c_.end());
        detail::poly_trim(a);
        detail::Poly m = field_->minimal_polynomial();
        // Invariants: r0 = s0*a mod m, r1 = s1*a mod m.
        detail::Poly r0 = m, r1 = a;
        detail::Poly s0 = {}, s1 = {Rational(1)};
        while (!(r1.size() == 1)) {
            if (r1.empty()) throw DivisionByZero();  // not coprime: impossible for nonzero element
            auto [q, rem] = detail::poly_divmod(r0, r1);
            detail::Poly s2 = s0;
            detail::Poly qs1 = detail::poly_mul(q, s1);
            s2.resize(std::max(s2.size(), qs1.size()), Rational(0));
            for (std::size_t i = 0; i < qs1.size(); ++i) s2[i] -= qs1[i];
            detail::poly_trim(s2);
            r0 = std::move(r1);
            r1 = std::move(rem);
            s0 = std::move(s1);
            s1 = std::move(s2);
        }
        // r1 is a nonzero constant g with s1*a = g mod m, so a^{-1} = s1/g.
        Rational g = r1[0];
        std::vector<Rational> inv(c_.size(), Rational(0));
        for (std::size_t i = 0; i < s1.size(); ++i) inv[i] = s1[i] / g;
        CycNum result(field_, std::move(inv));
        return result;
    }

    CycNum pow(long n) const {
        if (n < 0) return inverse().pow(-n);
        CycNum acc = field_->one();
        CycNum base = *this;
        while (n > 0) {
            if (n & 1) acc *= base;
            base *= base;
            n >>= 1;
        }
        return acc;
    }

    /// Multiplicative order, or 0 if *this is not a root of unity of order
    /// dividing the conductor's lcm bound.
    long multiplicative_order(long bound) const {
        CycNum acc = field_->one();
        for (long k = 1; k <= bound; ++k) {
            acc *= *this;
            if (acc.is_one()) return k;
        }
        return 0;
    }

    /// Deterministic rendering; "z" stands for xi_L.
    std::string to_string() const {
        if (is_rational()) return toroidal::to_string(c_[0]);
        std::ostringstream os;
        bool first = true;
        for (std::size_t i = c_.size(); i-- > 0;) {
            if (c_[i] == 0) continue;
            Rational v = c_[i];
            if (!first) {
                os << (v < 0 ? " - " : " + ");
                if (v < 0) v = -v;
            } else if (v < 0 && i > 0) {
                os << "-";
                v = -v;
            }
            first = false;
            if (i == 0) {
                os << toroidal::to_string(v);
            } else {
                if (v != 1) os << toroidal::to_string(v) << "*";
                os << "z";
                if (i > 1) os << "^" << i;
            }
        }
        os << " @Q(z_" << field_->conductor() << ")";
        return os.str();
    }

  private:
    // Cross-conductor coercion: a value embeds into a larger field whenever
    // its conductor divides the other's.
    static std::pair<CycNum, CycNum> aligned(const CycNum& a, const CycNum& b) {
        if (!a.field_ || !b.field_) throw Error("uninitialized cyclotomic number");
        if (a.field_ == b.field_ || a.field_->conductor() == b.field_->conductor()) return {a, b};
        long La = a.field_->conductor(), Lb = b.field_->conductor();
        if (Lb % La == 0) return {a.embedded(b.field_), b};
        if (La % Lb == 0) return {a, b.embedded(a.field_)};
        throw ConductorError("incompatible conductors " + std::to_string(La) + " and " + std::to_string(Lb));
    }

    CycNum embedded(const FieldPtr& big) const {
        long La = field_->conductor(), Lb = big->conductor();
        long stride = Lb / La;
        std::vector<Rational> out(static_cast<std::size_t>(big->degree()), Rational(0));
        for (std::size_t k = 0; k < c_.size(); ++k) {
            if (c_[k] == 0) continue;
            const auto& mono = big->power_of_generator(static_cast<long>(k) * stride);
            for (std::size_t i = 0; i < out.size(); ++i) out[i] += c_[k] * mono[i];
        }
        return CycNum(big, std::move(out));
    }

    FieldPtr field_;
    std::vector<Rational> c_;
};

inline CycNum CycField::zero() const {
    return CycNum(shared_from_this(), std::vector<Rational>(static_cast<std::size_t>(phi_), Rational(0)));
}

inline CycNum CycField::one() const { return rational(Rational(1)); }

inline CycNum CycField::rational(const Rational& q) const {
    std::vector<Rational> c(static_cast<std::size_t>(phi_), Rational(0));
    c[0] = q;
    return CycNum(shared_from_this(), std::move(c));
}

inline CycNum CycField::integer(long n) const { return rational(Rational(n)); }

inline CycNum CycField::root_of_unity(long k, long M) const {
    if (M < 1 || L_ % M != 0)
        throw ConductorError("order " + std::to_string(M) + " does not divide the conductor " + std::to_string(L_));
    long e = ((k % M) + M) % M * (L_ / M) % L_;
    return CycNum(shared_from_this(), power_of_generator(e));
}

inline CycNum CycField::sqrt2() const { return root_of_unity(1, 8) + root_of_unity(-1, 8); }

inline bool is_zero(const CycNum& z) { return z.is_zero(); }

}  // namespace toroidal

#endif  // TOROIDAL_CYCLOTOMIC_HPP

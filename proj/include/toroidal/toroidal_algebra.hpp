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

#ifndef TOROIDAL_TOROIDAL_ALGEBRA_HPP
#define TOROIDAL_TOROIDAL_ALGEBRA_HPP

#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "toroidal/affine.hpp"
#include "toroidal/folding.hpp"

namespace toroidal {

/// An element of the two-variable algebra g-hat: a finite sparse sum of loop
/// terms t_1^{m_1} t_2^{m_2} (x) v with v in gdot_[m_2 mod r], plus central
/// terms from K_{1,r} in canonical form.  The center at bidegree (a, b) is
/// subject to a k_1-term + b k_2-term = 0; the canonical form stores the k_1
/// coefficient when b != 0, the k_2 coefficient when b = 0 != a, and both at
/// (0, 0).  Eager canonicalization makes equality a map comparison.
struct ToroidalElement {
    std::map<std::pair<long, long>, LieVec> loop;
    std::map<std::pair<long, long>, std::pair<CycNum, CycNum>> center;

    bool is_zero() const { return loop.empty() && center.empty(); }

    friend bool operator==(const ToroidalElement& a, const ToroidalElement& b) {
        return a.loop == b.loop && a.center == b.center;
    }
    friend bool operator!=(const ToroidalElement& a, const ToroidalElement& b) { return !(a == b); }
};

/// The algebra g-hat = C[t1, t1^-1, t2, t2^-1] (x) gdot (+) K_{1,r} with the
/// toroidal bracket, built over an affine realization.
class ToroidalAlgebra {
  public:
    AffineAlgebra A;

    explicit ToroidalAlgebra(AffineAlgebra a) : A(std::move(a)) {}

    const FieldPtr& field() const { return A.field; }
    long r() const { return A.r; }

    ToroidalElement zero() const { return {}; }

    void add_loop(ToroidalElement& acc, long m1, long m2, const LieVec& v, const CycNum& c) const {
        if (v.empty() || c.is_zero()) return;
        auto key = std::make_pair(m1, m2);
        auto& slot = acc.loop[key];
        add_scaled(slot, v, c);
        if (slot.empty()) acc.loop.erase(key);
    }

    /// Accumulate c1 * (t1^a t2^b k1) + c2 * (t1^a t2^b k2), reduced through
    /// the relation a k1-term + b k2-term = 0.
    void add_center(ToroidalElement& acc, long a, long b, const CycNum& c1, const CycNum& c2) const {
        CycNum s1 = c1, s2 = c2;
        if (b != 0) {
            s1 = c1 - c2 * field()->rational(frac(a, b));
            s2 = field()->zero();
        } else if (a != 0) {
            s1 = field()->zero();  // a k1 = 0 at bidegree (a, 0)
            s2 = c2;
        }
        if (s1.is_zero() && s2.is_zero()) return;
        auto key = std::make_pair(a, b);
        auto it = acc.center.find(key);
        if (it == acc.center.end()) {
            acc.center.emplace(key, std::make_pair(s1, s2));
        } else {
            it->second.first += s1;
            it->second.second += s2;
            if (it->second.first.is_zero() && it->second.second.is_zero()) acc.center.erase(it);
        }
    }

    void add_to(ToroidalElement& acc, const ToroidalElement& x, const CycNum& c) const {
        if (c.is_zero()) return;
        for (const auto& [key, v] : x.loop) add_loop(acc, key.first, key.second, v, c);
        for (const auto& [key, cc] : x.center) add_center(acc, key.first, key.second, cc.first * c, cc.second * c);
    }

    ToroidalElement add(const ToroidalElement& a, const ToroidalElement& b) const {
        ToroidalElement out = a;
        add_to(out, b, field()->one());
        return out;
    }

    ToroidalElement sub(const ToroidalElement& a, const ToroidalElement& b) const {
        ToroidalElement out = a;
        add_to(out, b, field()->integer(-1));
        return out;
    }

    ToroidalElement scale(const ToroidalElement& a, const CycNum& c) const {
        ToroidalElement out;
        add_to(out, a, c);
        return out;
    }

    ToroidalElement from_loop(long m1, long m2, LieVec v) const {
        ToroidalElement e;
        if (!v.empty()) e.loop.emplace(std::make_pair(m1, m2), std::move(v));
        return e;
    }

    /// The central element k1.
    ToroidalElement k1() const {
        ToroidalElement e;
        add_center(e, 0, 0, field()->one(), field()->zero());
        return e;
    }

    /// t1^a t2^b k1 (requires b in rZ, and the canonical survivor at the
    /// bidegree); t1^a k2 via b = 0.
    ToroidalElement center_term(long a, long b, bool k2_generator = false) const {
        if (b % r() != 0) throw InputError("central bidegree must have t2-degree in rZ");
        ToroidalElement e;
        if (k2_generator)
            add_center(e, a, b, field()->zero(), field()->one());
        else
            add_center(e, a, b, field()->one(), field()->zero());
        return e;
    }

    /// Embedding of t1^{m1} (x) x for x in the affine algebra g:
    /// t2^{m2} (x) xdot + a k2  |->  t1^{m1} t2^{m2} (x) xdot + a t1^{m1} k2.
    ToroidalElement embed(long m1, const AffineElement& x) const {
        ToroidalElement out;
        for (const auto& [m2, v] : x.loop) add_loop(out, m1, m2, v, field()->one());
        if (x.k2.field() && !x.k2.is_zero()) add_center(out, m1, 0, field()->zero(), x.k2);
        return out;
    }

    /// The toroidal bracket: loop terms multiply through the gdot bracket and
    /// produce the central correction <x,y> (m1 k1 + m2 k2) at the combined
    /// bidegree; central terms annihilate everything.
    ToroidalElement bracket(const ToroidalElement& u, const ToroidalElement& v) const {
        ToroidalElement out;
        for (const auto& [mk, x] : u.loop) {
            for (const auto& [nk, y] : v.loop) {
                long M = mk.first + nk.first, Nn = mk.second + nk.second;
                LieVec b = A.g.bracket(x, y);
                if (!b.empty()) add_loop(out, M, Nn, b, field()->one());
                CycNum f = A.g.form(x, y);
                if (!f.is_zero()) add_center(out, M, Nn, f * field()->integer(mk.first), f * field()->integer(mk.second));
            }
        }
        return out;
    }

    ToroidalElement ad_pow(const ToroidalElement& x, long n, const ToroidalElement& y) const {
        ToroidalElement acc = y;
        for (long i = 0; i < n; ++i) acc = bracket(x, acc);
        return acc;
    }

    /// Affine weight (alpha coordinates over the affine simple roots) of a
    /// gdot basis element placed at loop degree m2.
    std::vector<Rational> weight_alpha(int idx, long m2) const {
        auto root = A.g.root_of(idx);
        std::vector<Rational> fin(root.begin(), root.end());
        return A.gcm.to_alpha_coords(A.gcm.rep_coords(fin), Rational(m2));
    }

    /// The Q x Z degrees supporting an element: (alpha coords, t1-degree).
    std::set<std::pair<std::vector<Rational>, long>> support_degrees(const ToroidalElement& e) const {
        std::set<std::pair<std::vector<Rational>, long>> out;
        for (const auto& [key, v] : e.loop)
            for (const auto& [idx, c] : v) out.emplace(weight_alpha(idx, key.second), key.first);
        for (const auto& [key, cc] : e.center) {
            std::vector<Rational> w;
            for (long m : A.gcm.marks) w.emplace_back(Rational(key.second) * m);
            out.emplace(std::move(w), key.first);
        }
        return out;
    }

    std::string to_string(const ToroidalElement& e) const {
        if (e.is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [key, v] : e.loop) {
            if (!first) os << " + ";
            first = false;
            os << "t1^" << key.first << " t2^" << key.second << "(x)[" << A.g.to_string(v) << "]";
        }
        for (const auto& [key, cc] : e.center) {
            if (!cc.first.is_zero()) {
                if (!first) os << " + ";
                first = false;
                os << "(" << cc.first.to_string() << ")*t1^" << key.first << " t2^" << key.second << " k1";
            }
            if (!cc.second.is_zero()) {
                if (!first) os << " + ";
                first = false;
                os << "(" << cc.second.to_string() << ")*t1^" << key.first << " k2";
            }
        }
        return os.str();
    }
};

/// Everything needed to compute inside g-hat[mu]: the toroidal algebra, the
/// lift of mu, the automorphism mu-hat, and the exact graded fibers of the
/// fixed subalgebra.
class TwistContext {
  public:
    ToroidalAlgebra T;
    Perm mu;
    long N = 1;
    MuLift lift;
    FoldedData fd;

    static TwistContext build(const std::string& label, const std::string& mu_cycles) {
        GcmData probe = parse_affine(label);
        Perm mu = perm_parse(mu_cycles, probe.size());
        return build(label, mu);
    }

    static TwistContext build(const std::string& label, const Perm& mu) {
        long N = perm_order(mu);
        AffineAlgebra A = AffineAlgebra::build(label, N);
        MuLift lift = A.compute_mu_lift(mu);
        FoldedData fd = fold(A.gcm, mu);
        return TwistContext{ToroidalAlgebra(std::move(A)), mu, N, std::move(lift), std::move(fd)};
    }

    const FieldPtr& field() const { return T.field(); }

    /// The automorphism mu-hat of g-hat (Lemma 3.2): real-root loop terms
    /// transform through the affine action of mu scaled by xi^{-m1}; Cartan
    /// loop terms at t2-degree m2 != 0 pick up the -(m1/m2) rho_mu(h) k1
    /// correction; k1 is fixed and central terms scale by xi^{-a}.
    ToroidalElement mu_hat(const ToroidalElement& u) const {
        const AffineAlgebra& A = T.A;
        ToroidalElement out;
        for (const auto& [key, v] : u.loop) {
            auto [m1, m2] = key;
            CycNum xi = field()->root_of_unity(-m1, N);
            LieVec cartan_part, root_part;
            for (const auto& [idx, c] : v) {
                if (A.g.is_cartan_index(idx))
                    cartan_part.emplace(idx, c);
                else
                    root_part.emplace(idx, c);
            }
            if (!root_part.empty()) {
                AffineElement img = A.mu_action(A.from_loop(m2, root_part), lift);
                for (const auto& [mm2, vv] : img.loop) T.add_loop(out, m1, mm2, vv, xi);
            }
            if (!cartan_part.empty()) {
                // chi acts on the imaginary degree m2 delta_2 by chi(delta_2)^{m2}.
                CycNum xic = xi * field()->integer(AffineAlgebra::chi_delta_pow(lift, m2));
                LieVec mw = lift.mu_dot.apply(cartan_part);
                T.add_loop(out, m1, m2, mw, xic);
                CycNum rho = A.rho_of_cartan(lift, cartan_part);
                if (!rho.is_zero()) {
                    if (m2 == 0) {
                        T.add_center(out, m1, 0, field()->zero(), xic * rho);
                    } else {
                        T.add_center(out, m1, m2, field()->zero() - xic * rho * field()->rational(frac(m1, m2)),
                                     field()->zero());
                    }
                }
            }
        }
        for (const auto& [key, cc] : u.center) {
            CycNum xi = field()->root_of_unity(-key.first, N);
            CycNum xic = xi * field()->integer(AffineAlgebra::chi_delta_pow(lift, key.second));
            T.add_center(out, key.first, key.second, xic * cc.first, xi * cc.second);
        }
        return out;
    }

    /// The averaging projector N^{-1} sum_p mu-hat^p onto g-hat[mu].
    ToroidalElement symmetrize(const ToroidalElement& u) const {
        ToroidalElement acc, cur = u;
        for (long p = 0; p < N; ++p) {
            T.add_to(acc, cur, field()->rational(Rational(1, N)));
            if (p + 1 < N) cur = mu_hat(cur);
        }
        return acc;
    }

    /// x_(m) = sum_{p in Z_N} xi^{-pm} mu^p(x) for x in g.
    AffineElement twisted_average(const AffineElement& x, long m) const {
        AffineElement acc = T.A.zero(), cur = x;
        for (long p = 0; p < N; ++p) {
            T.A.add_to(acc, cur, field()->root_of_unity(-p * m, N));
            if (p + 1 < N) cur = T.A.mu_action(cur, lift);
        }
        return acc;
    }

    /// The t2-degrees every basis candidate for the fiber over alpha needs:
    /// for each restricted weight there is at most one t2-degree solving
    /// pi_mu(weight + m2 delta_2) = alpha, because pi_mu(delta_2) has
    /// strictly positive coordinates.
    std::set<long> required_window(const std::vector<Rational>& alpha_check) const {
        std::set<long> need;
        const auto& g = T.A.g;
        std::vector<Rational> pid = pi_delta();
        auto try_base = [&](const std::vector<Rational>& base) {
            Rational m2 = (alpha_check[0] - base[0]) / pid[0];
            if (!is_integer(m2)) return;
            for (std::size_t i = 0; i < base.size(); ++i)
                if (base[i] + m2 * pid[i] != alpha_check[i]) return;
            need.insert(to_long(m2));
        };
        std::set<std::vector<Rational>> seen;
        for (int k = 0; k < g.npos(); ++k) {
            for (int sgn : {+1, -1}) {
                std::vector<Rational> fin;
                for (long x : g.pos_roots[static_cast<std::size_t>(k)]) fin.emplace_back(sgn * x);
                auto base = fd.project(T.A.gcm.to_alpha_coords(T.A.gcm.rep_coords(fin), Rational(0)));
                if (seen.insert(base).second) try_base(base);
            }
        }
        try_base(std::vector<Rational>(alpha_check.size(), Rational(0)));  // Cartan and central weights
        return need;
    }

    /// Basis of the graded fiber g-hat[mu]_{alpha, n}; alpha is given in
    /// alpha-check coordinates over the representative set.  The window must
    /// cover every t2-degree of the fiber; otherwise a WindowError names the
    /// missing degrees (never a silent truncation).
    std::vector<ToroidalElement> fixed_space_basis(const std::vector<Rational>& alpha_check, long n, long window_lo,
                                                   long window_hi) const {
        auto need = required_window(alpha_check);
        for (long m2 : need)
            if (m2 < window_lo || m2 > window_hi)
                throw WindowError("fiber over the requested degree needs t2-degree " + std::to_string(m2) +
                                  " outside the window [" + std::to_string(window_lo) + ", " +
                                  std::to_string(window_hi) + "]");
        const auto& g = T.A.g;
        std::vector<ToroidalElement> candidates;
        for (long m2 : need) {
            for (int idx = 0; idx < g.dim(); ++idx) {
                if (fd.project(T.weight_alpha(idx, m2)) != alpha_check) continue;
                LieVec p = eigen_project(g, T.A.nu, T.r(), m2, g.basis_vec(idx));
                if (p.empty()) continue;
                candidates.push_back(T.from_loop(n, m2, std::move(p)));
            }
            // Central candidates share the Cartan weight equation.
            std::vector<Rational> pid = pi_delta();
            bool delta_line = true;
            for (std::size_t i = 0; i < alpha_check.size(); ++i)
                if (alpha_check[i] != Rational(m2) * pid[i]) delta_line = false;
            if (delta_line) {
                if (m2 != 0 && m2 % T.r() == 0) candidates.push_back(T.center_term(n, m2));
                if (m2 == 0) {
                    candidates.push_back(T.center_term(n, 0, /*k2=*/true));
                    if (n == 0) candidates.push_back(T.k1());
                }
            }
        }
        return independent_projections(candidates);
    }

    /// dim g-hat[mu]_{alpha, n} with an automatically sufficient window.
    std::size_t fiber_dim(const std::vector<Rational>& alpha_check, long n) const {
        auto need = required_window(alpha_check);
        if (need.empty()) return 0;
        return fixed_space_basis(alpha_check, n, *need.begin(), *need.rbegin()).size();
    }

  private:
    std::vector<Rational> pi_delta() const {
        std::vector<Rational> d;
        for (long m : T.A.gcm.marks) d.emplace_back(m);
        return fd.project(d);
    }

    std::vector<ToroidalElement> independent_projections(const std::vector<ToroidalElement>& candidates) const {
        // Dense coordinates over the union support of the projections.
        std::vector<ToroidalElement> images;
        std::map<std::tuple<long, long, int>, std::size_t> loop_cols;
        std::map<std::tuple<long, long, int>, std::size_t> center_cols;
        for (const auto& c : candidates) {
            ToroidalElement img = symmetrize(c);
            if (img.is_zero()) continue;
            for (const auto& [key, v] : img.loop)
                for (const auto& [idx, cc] : v) {
                    auto col = std::make_tuple(key.first, key.second, idx);
                    if (!loop_cols.count(col)) loop_cols.emplace(col, loop_cols.size());
                }
            for (const auto& [key, cc] : img.center)
                for (int slot : {0, 1}) {
                    auto col = std::make_tuple(key.first, key.second, slot);
                    if (!center_cols.count(col)) center_cols.emplace(col, center_cols.size());
                }
            images.push_back(std::move(img));
        }
        std::size_t width = loop_cols.size() + center_cols.size();
        CycOps ops{field()};
        LinearSpan<CycNum, CycOps> span(ops);
        std::vector<ToroidalElement> basis;
        for (auto& img : images) {
            std::vector<CycNum> dense(width, field()->zero());
            for (const auto& [key, v] : img.loop)
                for (const auto& [idx, cc] : v) dense[loop_cols.at(std::make_tuple(key.first, key.second, idx))] = cc;
            for (const auto& [key, cc] : img.center) {
                if (!cc.first.is_zero()) dense[loop_cols.size() + center_cols.at(std::make_tuple(key.first, key.second, 0))] = cc.first;
                if (!cc.second.is_zero()) dense[loop_cols.size() + center_cols.at(std::make_tuple(key.first, key.second, 1))] = cc.second;
            }
            if (span.insert(std::move(dense))) basis.push_back(std::move(img));
        }
        return basis;
    }
};

}  // namespace toroidal

#endif  // TOROIDAL_TOROIDAL_ALGEBRA_HPP

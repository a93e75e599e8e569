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

#ifndef TOROIDAL_AFFINE_HPP
#define TOROIDAL_AFFINE_HPP

#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "toroidal/cartan.hpp"
#include "toroidal/cyclotomic.hpp"
#include "toroidal/errors.hpp"
#include "toroidal/simple_lie.hpp"

namespace toroidal {

/// An element of g = Aff(gdot, nu): a finite sparse sum of loop terms
/// t_2^m (x) v with v in the eigenspace gdot_[m mod r], plus a multiple of
/// the canonical central element k_2.  Degrees are unbounded; operations are
/// per-term, so no truncation window exists.
struct AffineElement {
    std::map<long, LieVec> loop;
    CycNum k2;

    bool is_zero() const { return loop.empty() && (!k2.field() || k2.is_zero()); }

    friend bool operator==(const AffineElement& a, const AffineElement& b) {
        bool k2a = a.k2.field() && !a.k2.is_zero();
        bool k2b = b.k2.field() && !b.k2.is_zero();
        if (k2a != k2b) return false;
        if (k2a && !(a.k2 == b.k2)) return false;
        return a.loop == b.loop;
    }
    friend bool operator!=(const AffineElement& a, const AffineElement& b) { return !(a == b); }
};

/// The lift (mu-dot, rho_mu) of an affine diagram automorphism mu to the
/// finite algebra, together with rho_mu extended to the Cartan subalgebra.
///
/// chi is a {+-1}-character of the affine root lattice composed onto the
/// plain loop-shaped action.  It is trivial whenever the plain action
/// already permutes the Chevalley generators on the nose; when the finite
/// diagram flip negates the theta root vector (A_2^(1) under (1 2) is the
/// smallest case) the character is what restores mu(e_i) = e_{mu(i)} exactly.
struct MuLift {
    Perm mu;                      // on the affine node set
    long N = 1;                   // order of mu
    FiniteAut mu_dot;             // automorphism of gdot
    std::vector<long> rho;        // rho_mu(alphadot_i), per finite node
    std::vector<Rational> rho_h;  // rho_mu(h_i) on the simple coroots
    std::vector<long> chi;        // character values on the affine simple roots
    long chi_delta = 1;           // chi(delta_2)

    bool chi_trivial() const {
        for (long c : chi)
            if (c != 1) return false;
        return true;
    }
};

/// The affine Kac-Moody algebra g = Aff(gdot, nu) in its loop realization,
/// with the identified Chevalley generators.  The construction self-checks
/// all affine Serre relations before returning.
class AffineAlgebra {
  public:
    GcmData gcm;
    FieldPtr field;
    LieTable g;  // the finite dimensional simple algebra gdot
    FiniteAut nu;
    long r = 1;

    std::vector<AffineElement> e_plus, e_minus, coroot;  // identified generators per affine node
    int theta_index = -1;                                // index of theta-dot among the positive roots

    /// Build the realization for an affine label.  extra_conductor is lcm-ed
    /// into the scalar field (used to host the xi_N of a later twist).
    static AffineAlgebra build(const std::string& label, long extra_conductor = 1) {
        AffineAlgebra A;
        A.gcm = parse_affine(label);
        A.r = A.gcm.r;
        bool a_even = (A.gcm.eps != 0);
        long conductor = std::lcm(static_cast<long>(A.r), extra_conductor);
        if (a_even) conductor = std::lcm(conductor, 8L);
        A.field = CycField::get(conductor);
        A.g = build_simple(A.gcm.xn, A.field);
        A.nu = build_nu(A.g, A.gcm.nu, A.r);
        A.theta_index = A.g.root_index.at(A.gcm.theta);

        const FieldPtr& F = A.field;
        int l = A.gcm.l;
        A.e_plus.resize(static_cast<std::size_t>(l + 1));
        A.e_minus.resize(static_cast<std::size_t>(l + 1));
        A.coroot.resize(static_cast<std::size_t>(l + 1));

        auto simple_plus = [&](int finite_node) {
            std::vector<long> s(static_cast<std::size_t>(A.g.rank), 0);
            s[static_cast<std::size_t>(finite_node)] = 1;
            return A.g.root_index.at(s);
        };

        // E_i, H_i of the generator table, then the identification.
        std::vector<LieVec> E_plus(static_cast<std::size_t>(l + 1)), E_minus(static_cast<std::size_t>(l + 1)),
            H(static_cast<std::size_t>(l + 1));
        for (int i = 0; i <= l; ++i) {
            if (i == A.gcm.eps) continue;
            int f = A.gcm.node_to_finite[static_cast<std::size_t>(i)];
            long ri = A.gcm.orbit_size[static_cast<std::size_t>(f)];
            int k = simple_plus(f);
            CycNum c = F->integer(ri);
            if (a_even && i == 0) c = F->integer(2) * F->sqrt2();  // E_0 = 2 sqrt(2) E-dot_{l[0]}
            E_plus[static_cast<std::size_t>(i)] = scaled(eigen_project(A.g, A.nu, A.r, 0, A.g.basis_vec(A.g.eplus(k))), c);
            E_minus[static_cast<std::size_t>(i)] = scaled(eigen_project(A.g, A.nu, A.r, 0, A.g.basis_vec(A.g.eminus(k))), c);
            CycNum hc = (a_even && i == 0) ? F->integer(4) : F->integer(ri);
            H[static_cast<std::size_t>(i)] = scaled(eigen_project(A.g, A.nu, A.r, 0, A.g.coroot(k)), hc);
        }
        {
            // Node eps: E_eps^+ = r E-dot_{theta[1]}^- and E_eps^- the
            // matching vector in the [-1] eigenspace, so that t^{+-1} (x)
            // E_eps^+- lies in the realization (coefficient 1 when A is of
            // type A_{2l}^(2)); H_eps = -r theta^vee_[0].
            int i = A.gcm.eps;
            CycNum c = a_even ? F->one() : F->integer(A.r);
            E_plus[static_cast<std::size_t>(i)] =
                scaled(eigen_project(A.g, A.nu, A.r, 1, A.g.basis_vec(A.g.eminus(A.theta_index))), c);
            E_minus[static_cast<std::size_t>(i)] =
                scaled(eigen_project(A.g, A.nu, A.r, -1, A.g.basis_vec(A.g.eplus(A.theta_index))), c);
            CycNum hc = a_even ? F->integer(-1) : F->integer(-A.r);
            H[static_cast<std::size_t>(i)] = scaled(eigen_project(A.g, A.nu, A.r, 0, A.g.coroot(A.theta_index)), hc);
        }
        for (int i = 0; i <= l; ++i) {
            long deg = (i == A.gcm.eps) ? 1 : 0;
            A.e_plus[static_cast<std::size_t>(i)] = A.from_loop(deg, E_plus[static_cast<std::size_t>(i)]);
            A.e_minus[static_cast<std::size_t>(i)] = A.from_loop(-deg, E_minus[static_cast<std::size_t>(i)]);
            AffineElement h = A.from_loop(0, H[static_cast<std::size_t>(i)]);
            if (i == A.gcm.eps) h.k2 = F->rational(Rational(A.r, A.gcm.a0));
            A.coroot[static_cast<std::size_t>(i)] = std::move(h);
        }
        A.self_check();
        return A;
    }

    // ----- element constructors -----

    AffineElement zero() const {
        AffineElement z;
        z.k2 = field->zero();
        return z;
    }

    AffineElement from_loop(long m, LieVec v) const {
        AffineElement e = zero();
        if (!v.empty()) e.loop.emplace(m, std::move(v));
        return e;
    }

    AffineElement central(const CycNum& c) const {
        AffineElement e = zero();
        e.k2 = c;
        return e;
    }

    void add_to(AffineElement& acc, const AffineElement& x, const CycNum& c) const {
        if (c.is_zero()) return;
        for (const auto& [m, v] : x.loop) {
            auto& slot = acc.loop[m];
            add_scaled(slot, v, c);
            if (slot.empty()) acc.loop.erase(m);
        }
        if (x.k2.field() && !x.k2.is_zero()) acc.k2 = (acc.k2.field() ? acc.k2 : field->zero()) + x.k2 * c;
    }

    AffineElement add(const AffineElement& a, const AffineElement& b) const {
        AffineElement out = a;
        if (!out.k2.field()) out.k2 = field->zero();
        add_to(out, b, field->one());
        return out;
    }

    AffineElement scale(const AffineElement& a, const CycNum& c) const {
        AffineElement out = zero();
        add_to(out, a, c);
        return out;
    }

    AffineElement negate(const AffineElement& a) const { return scale(a, field->integer(-1)); }

    AffineElement sub(const AffineElement& a, const AffineElement& b) const {
        AffineElement out = a;
        if (!out.k2.field()) out.k2 = field->zero();
        add_to(out, b, field->integer(-1));
        return out;
    }

    // ----- the bracket and the invariant form -----

    /// [t^a (x) x + a1 k2, t^b (x) y + a2 k2]
    ///   = t^{a+b} (x) [x,y] + <x,y> delta_{a+b,0} a k2.
    AffineElement bracket(const AffineElement& u, const AffineElement& v) const {
        AffineElement out = zero();
        for (const auto& [m1, x] : u.loop) {
            for (const auto& [m2, y] : v.loop) {
                LieVec b = g.bracket(x, y);
                if (!b.empty()) {
                    auto& slot = out.loop[m1 + m2];
                    add_scaled(slot, b, field->one());
                    if (slot.empty()) out.loop.erase(m1 + m2);
                }
                if (m1 + m2 == 0 && m1 != 0) {
                    CycNum f = g.form(x, y);
                    if (!f.is_zero()) out.k2 += f * field->integer(m1);
                }
            }
        }
        return out;
    }

    /// The extended invariant form: <t^a (x) x, t^b (x) y> = delta_{a+b,0} <x,y>;
    /// k_2 pairs to zero with everything.
    CycNum form(const AffineElement& u, const AffineElement& v) const {
        CycNum s = field->zero();
        for (const auto& [m1, x] : u.loop) {
            auto it = v.loop.find(-m1);
            if (it != v.loop.end()) s += g.form(x, it->second);
        }
        return s;
    }

    AffineElement ad_pow(const AffineElement& x, long n, const AffineElement& y) const {
        AffineElement acc = y;
        for (long i = 0; i < n; ++i) acc = bracket(x, acc);
        return acc;
    }

    std::string to_string(const AffineElement& e) const {
        if (e.is_zero()) return "0";
        std::ostringstream os;
        bool first = true;
        for (const auto& [m, v] : e.loop) {
            if (!first) os << " + ";
            first = false;
            os << "t2^" << m << "(x)[" << g.to_string(v) << "]";
        }
        if (e.k2.field() && !e.k2.is_zero()) {
            if (!first) os << " + ";
            os << "(" << e.k2.to_string() << ")*k2";
        }
        return os.str();
    }

    /// Eigenspace invariant of the realization: every loop term lies in the
    /// nu-eigenspace matching its degree.
    bool well_formed(const AffineElement& e) const {
        for (const auto& [m, v] : e.loop) {
            LieVec img = nu.apply(v);
            LieVec expect = scaled(v, field->root_of_unity(m, r));
            if (!lie_equal(img, expect)) return false;
        }
        return true;
    }

    // ----- defining relations -----

    /// Verify every affine Serre relation on the identified generators;
    /// throws ConstructionError naming the first violated relation.
    void self_check() const {
        int l = gcm.l;
        auto fail = [&](const std::string& what) {
            throw ConstructionError("affine relation check failed for " + gcm.label + ": " + what);
        };
        for (int i = 0; i <= l; ++i) {
            for (int j = 0; j <= l; ++j) {
                if (!bracket(coroot[static_cast<std::size_t>(i)], coroot[static_cast<std::size_t>(j)]).is_zero())
                    fail("[h" + std::to_string(i) + ", h" + std::to_string(j) + "] != 0");
                long aij = gcm.a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
                AffineElement lhs = bracket(coroot[static_cast<std::size_t>(i)], e_plus[static_cast<std::size_t>(j)]);
                if (lhs != scale(e_plus[static_cast<std::size_t>(j)], field->integer(aij)))
                    fail("[h" + std::to_string(i) + ", e" + std::to_string(j) + "+] != a_ij e_j+");
                lhs = bracket(coroot[static_cast<std::size_t>(i)], e_minus[static_cast<std::size_t>(j)]);
                if (lhs != scale(e_minus[static_cast<std::size_t>(j)], field->integer(-aij)))
                    fail("[h" + std::to_string(i) + ", e" + std::to_string(j) + "-] != -a_ij e_j-");
                AffineElement ef = bracket(e_plus[static_cast<std::size_t>(i)], e_minus[static_cast<std::size_t>(j)]);
                if (i == j) {
                    if (ef != coroot[static_cast<std::size_t>(i)]) fail("[e" + std::to_string(i) + "+, e" + std::to_string(i) + "-] != h" + std::to_string(i));
                } else {
                    if (!ef.is_zero()) fail("[e" + std::to_string(i) + "+, e" + std::to_string(j) + "-] != 0");
                    long n = 1 - aij;
                    if (!ad_pow(e_plus[static_cast<std::size_t>(i)], n, e_plus[static_cast<std::size_t>(j)]).is_zero())
                        fail("(ad e" + std::to_string(i) + "+)^" + std::to_string(n) + " e" + std::to_string(j) + "+ != 0");
                    if (!ad_pow(e_minus[static_cast<std::size_t>(i)], n, e_minus[static_cast<std::size_t>(j)]).is_zero())
                        fail("(ad e" + std::to_string(i) + "-)^" + std::to_string(n) + " e" + std::to_string(j) + "- != 0");
                }
            }
        }
    }

    // ----- diagram automorphism lifts -----

    /// Lemma 2.1: the lift (mu-dot, rho_mu) of an affine diagram automorphism.
    /// For nu = id the lattice decomposition mu(alpha) = mu-dot(alpha) +
    /// rho_mu(alpha) delta_2 drives the generator images; for the two
    /// nontrivial twisted cases the explicit images are installed.  The
    /// properties rho_mu o nu = rho_mu and mu-dot(x_[m]) =
    /// mu-dot(x)_[m + rho_mu(alpha)] are verified before returning.
    MuLift compute_mu_lift(const Perm& mu) const {
        if (!gcm.is_diagram_symmetry(mu))
            throw InputError("permutation " + perm_to_string(mu) + " is not a diagram symmetry of " + gcm.label);
        MuLift lift;
        lift.mu = mu;
        lift.N = perm_order(mu);
        lift.rho.assign(static_cast<std::size_t>(g.rank), 0);
        lift.chi.assign(static_cast<std::size_t>(gcm.l + 1), 1);
        lift.chi_delta = 1;

        bool mu_trivial = (mu == perm_identity(gcm.l + 1));
        if (mu_trivial) {
            std::map<int, LieVec> images;
            for (int i = 0; i < g.rank; ++i) {
                std::vector<long> s(static_cast<std::size_t>(g.rank), 0);
                s[static_cast<std::size_t>(i)] = 1;
                int k = g.root_index.at(s);
                images[g.eplus(k)] = g.basis_vec(g.eplus(k));
                images[g.eminus(k)] = g.basis_vec(g.eminus(k));
            }
            lift.mu_dot = extend_automorphism(g, images);
        } else if (r == 1) {
            // Untwisted: mu(e_i^+) = e_{mu(i)}^+ with e_i^+ = 1 (x) Edot_i^+
            // for i != 0 and e_0^+ = t (x) Edot_theta^-.  The signs of the
            // two theta-touching images depend on the Chevalley convention
            // (the diagram flip can negate the highest root vector), so they
            // are searched; residual unit-image defects are a lattice
            // character and get absorbed below.
            auto gen_plus_index = [&](int node) {
                if (node == 0) return g.eminus(theta_index);
                std::vector<long> s(static_cast<std::size_t>(g.rank), 0);
                s[static_cast<std::size_t>(node - 1)] = 1;
                return g.eplus(g.root_index.at(s));
            };
            for (int i = 1; i <= gcm.l; ++i)
                lift.rho[static_cast<std::size_t>(i - 1)] = (mu[static_cast<std::size_t>(i)] == 0) ? 1 : 0;
            lift.rho_h.clear();
            for (int i = 0; i < g.rank; ++i)
                lift.rho_h.push_back(Rational(2 * lift.rho[static_cast<std::size_t>(i)]) /
                                     g.gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)]);
            bool done = false;
            std::string first_failure;
            for (long s_from0 : {+1L, -1L}) {
                for (long s_to0 : {+1L, -1L}) {
                    std::map<int, LieVec> images;
                    for (int i = 0; i <= gcm.l; ++i) {
                        long sgn = (i == 0) ? s_from0 : (mu[static_cast<std::size_t>(i)] == 0 ? s_to0 : +1);
                        images[gen_plus_index(i)] =
                            scaled(g.basis_vec(gen_plus_index(mu[static_cast<std::size_t>(i)])), field->integer(sgn));
                    }
                    try {
                        lift.mu_dot = extend_automorphism(g, images);
                        verify_lift(lift);
                        absorb_character(lift);
                        check_defining_action(lift);
                        done = true;
                    } catch (const Error& e) {
                        if (first_failure.empty()) first_failure = e.what();
                    }
                    if (done) break;
                }
                if (done) break;
            }
            if (!done)
                throw ConstructionError("no sign choice yields a valid lift for " + gcm.label + ": " + first_failure);
            return lift;
        } else {
            // Twisted with nontrivial mu: A_{2l-1}^(2) with mu = (0 1) or
            // D_{l+1}^(2) with the diagram reflection (Lemma 2.1 proof).  The
            // proof's image table is stated for one choice of Chevalley
            // signs; the two theta-image signs are searched and the winner
            // is pinned by the mu(e_i) = e_{mu(i)} property below.
            int n = g.rank;
            std::vector<long> nu_theta(static_cast<std::size_t>(n), 0);
            for (int j = 0; j < n; ++j) nu_theta[static_cast<std::size_t>(gcm.nu[static_cast<std::size_t>(j)])] += gcm.theta[static_cast<std::size_t>(j)];
            int k_theta = theta_index;
            int k_nu_theta = g.root_index.at(nu_theta);
            auto unit = [&](int idx, long sgn) { return scaled(g.basis_vec(idx), field->integer(sgn)); };

            int node_to_theta = -1, node_to_nu_theta = -1;  // 0-based finite nodes
            if (gcm.xn.family == 'A') {
                Perm expect = perm_identity(gcm.l + 1);
                std::swap(expect[0], expect[1]);
                if (mu != expect) throw InputError("unsupported diagram symmetry for " + gcm.label);
                node_to_nu_theta = 0;
                node_to_theta = n - 1;
                lift.rho[0] = 1;
                lift.rho[static_cast<std::size_t>(n - 1)] = 1;
            } else if (gcm.xn.family == 'D' && r == 2) {
                int l = gcm.l;
                Perm expect = perm_identity(l + 1);
                for (int i = 0; i <= l; ++i) expect[static_cast<std::size_t>(i)] = l - i;
                if (mu != expect) throw InputError("unsupported diagram symmetry for " + gcm.label);
                node_to_theta = l - 1;   // finite node l, 1-based
                node_to_nu_theta = l;    // finite node l+1, 1-based
                lift.rho[static_cast<std::size_t>(l - 1)] = 1;
                lift.rho[static_cast<std::size_t>(l)] = 1;
            } else {
                throw InputError("no nontrivial diagram symmetry is available for " + gcm.label);
            }

            // The fixed middle of the image table: Edot_i -> Edot_{target(i)}.
            std::map<int, int> plain;  // finite node -> finite node
            if (gcm.xn.family == 'A') {
                for (int i = 1; i + 1 < n; ++i) plain[i] = i;
            } else {
                int l = gcm.l;
                for (int i = 1; i <= l - 1; ++i) plain[i - 1] = l - i - 1;
            }

            bool done = false;
            std::string first_failure;
            // The lattice only pins mu-dot(alpha) up to the nu-orbit
            // {-theta, -nu theta}, and the proof's signs presume one
            // Chevalley convention; search the eight candidates and let the
            // mu(e_i) = e_{mu(i)} property pick the lift.
            for (int swap_targets : {0, 1}) {
                int kA = swap_targets ? k_nu_theta : k_theta;
                int kB = swap_targets ? k_theta : k_nu_theta;
                for (long sA : {+1L, -1L}) {
                    for (long sB : {-1L, +1L}) {
                        std::map<int, LieVec> images;
                        auto set_pair = [&](int from_node, const LieVec& img_plus, const LieVec& img_minus) {
                            std::vector<long> s(static_cast<std::size_t>(n), 0);
                            s[static_cast<std::size_t>(from_node)] = 1;
                            int k = g.root_index.at(s);
                            images[g.eplus(k)] = img_plus;
                            images[g.eminus(k)] = img_minus;
                        };
                        for (auto [from, to] : plain) {
                            std::vector<long> s(static_cast<std::size_t>(n), 0);
                            s[static_cast<std::size_t>(to)] = 1;
                            int k = g.root_index.at(s);
                            set_pair(from, g.basis_vec(g.eplus(k)), g.basis_vec(g.eminus(k)));
                        }
                        set_pair(node_to_theta, unit(g.eminus(kA), sA), unit(g.eplus(kA), sA));
                        set_pair(node_to_nu_theta, unit(g.eminus(kB), sB), unit(g.eplus(kB), sB));
                        try {
                            lift.mu_dot = extend_automorphism(g, images);
                            lift.rho_h.clear();
                            for (int i = 0; i < g.rank; ++i)
                                lift.rho_h.push_back(Rational(2 * lift.rho[static_cast<std::size_t>(i)]) /
                                                     g.gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)]);
                            verify_lift(lift);
                            absorb_character(lift);
                            check_defining_action(lift);
                            done = true;
                        } catch (const Error& e) {
                            if (first_failure.empty()) first_failure = e.what();
                        }
                        if (done) break;
                    }
                    if (done) break;
                }
                if (done) break;
            }
            if (!done)
                throw ConstructionError("no sign choice yields a valid lift for " + gcm.label + ": " + first_failure);
            return lift;
        }

        // rho on the Cartan subalgebra through the form identification:
        // h_i corresponds to 2 alpha_i / (alpha_i, alpha_i).
        lift.rho_h.clear();
        for (int i = 0; i < g.rank; ++i)
            lift.rho_h.push_back(Rational(2 * lift.rho[static_cast<std::size_t>(i)]) / g.gram[static_cast<std::size_t>(i)][static_cast<std::size_t>(i)]);

        verify_lift(lift);
        absorb_character(lift);
        check_defining_action(lift);
        return lift;
    }

    /// The plain loop-shaped action can miss mu(e_i) = e_{mu(i)} by a sign
    /// when mu-dot negates a root vector over a mu-fixed node.  The defect is
    /// a {+-1}-character of the root lattice; measure it on the generators
    /// and fold it into the lift.
    void absorb_character(MuLift& lift) const {
        lift.chi.assign(static_cast<std::size_t>(gcm.l + 1), 1);
        lift.chi_delta = 1;
        for (int i = 0; i <= gcm.l; ++i) {
            int j = lift.mu[static_cast<std::size_t>(i)];
            AffineElement img = mu_action(e_plus[static_cast<std::size_t>(i)], lift);
            if (img == e_plus[static_cast<std::size_t>(j)]) continue;
            if (img == scale(e_plus[static_cast<std::size_t>(j)], field->integer(-1))) {
                lift.chi[static_cast<std::size_t>(j)] = -1;
            } else {
                throw ConstructionError("generator image is not proportional to a generator for " + gcm.label);
            }
        }
        long d = 1;
        for (int i = 0; i <= gcm.l; ++i)
            if (lift.chi[static_cast<std::size_t>(i)] == -1 && gcm.marks[static_cast<std::size_t>(i)] % 2 != 0) d = -d;
        lift.chi_delta = d;
    }

    /// mu(alpha_i^vee) = alpha_{mu(i)}^vee and mu(e_i^+-) = e_{mu(i)}^+-.
    void check_defining_action(const MuLift& lift) const {
        for (int i = 0; i <= gcm.l; ++i) {
            int j = lift.mu[static_cast<std::size_t>(i)];
            if (mu_action(e_plus[static_cast<std::size_t>(i)], lift) != e_plus[static_cast<std::size_t>(j)] ||
                mu_action(e_minus[static_cast<std::size_t>(i)], lift) != e_minus[static_cast<std::size_t>(j)] ||
                mu_action(coroot[static_cast<std::size_t>(i)], lift) != coroot[static_cast<std::size_t>(j)])
                throw ConstructionError("the lifted action does not permute the Chevalley generators of " + gcm.label);
        }
    }

    /// rho_mu evaluated on a finite root (integer lattice coordinates).
    long rho_of_root(const MuLift& lift, const std::vector<long>& root) const {
        long s = 0;
        for (std::size_t i = 0; i < root.size(); ++i) s += root[i] * lift.rho[i];
        return s;
    }

    /// rho_mu evaluated on a Cartan vector (coordinates over the simple
    /// coroots h_i).
    CycNum rho_of_cartan(const MuLift& lift, const LieVec& h) const {
        CycNum s = field->zero();
        for (const auto& [i, c] : h) {
            if (i >= g.rank) throw Error("rho_of_cartan expects a Cartan vector");
            s += c * field->rational(lift.rho_h[static_cast<std::size_t>(i)]);
        }
        return s;
    }

    /// chi evaluated on the affine root (finite signed root + m delta_2).
    long chi_of_root(const MuLift& lift, const std::vector<long>& root, long m) const {
        if (lift.chi_trivial()) return 1;
        std::vector<Rational> fin(root.begin(), root.end());
        std::vector<Rational> coords = gcm.to_alpha_coords(gcm.rep_coords(fin), Rational(m));
        long parity = 0;
        for (int i = 0; i <= gcm.l; ++i) {
            if (lift.chi[static_cast<std::size_t>(i)] == 1) continue;
            const Rational& c = coords[static_cast<std::size_t>(i)];
            if (!is_integer(c)) throw ConstructionError("character evaluated off the root lattice");
            parity += to_long(c);
        }
        return (parity % 2 + 2) % 2 == 0 ? 1 : -1;
    }

    static long chi_delta_pow(const MuLift& lift, long m) {
        return (lift.chi_delta == -1 && ((m % 2 + 2) % 2 == 1)) ? -1 : 1;
    }

    /// Prop 2.2's action composed with the lattice character chi:
    ///   mu(t^m (x) x_[m]) = t^{m+rho(alpha)} (x) mu-dot(x_[m])   (x in a root space)
    ///   mu(t^m (x) h_[m]) = t^m (x) mu-dot(h_[m]) + delta_{m,0} rho(h) k2
    ///   mu(k2) = k2,
    /// each output component then scaled by chi(its Q-degree).  With chi
    /// trivial this is Eq. (actmu) verbatim.
    AffineElement mu_action(const AffineElement& u, const MuLift& lift) const {
        AffineElement out = zero();
        if (u.k2.field()) out.k2 = u.k2;
        bool plain = lift.chi_trivial();
        for (const auto& [m, v] : u.loop) {
            LieVec cartan_part;
            for (const auto& [idx, c] : v) {
                if (g.is_cartan_index(idx)) {
                    cartan_part.emplace(idx, c);
                    continue;
                }
                std::vector<long> alpha = g.root_of(idx);
                long shift = rho_of_root(lift, alpha);
                LieVec x;
                x.emplace(idx, c);
                LieVec img = lift.mu_dot.apply(eigen_project(g, nu, r, m, x));
                if (img.empty()) continue;
                long target = m + shift;
                auto& slot = out.loop[target];
                if (plain) {
                    add_scaled(slot, img, field->one());
                } else {
                    for (const auto& [j, cj] : img) {
                        long f = g.is_cartan_index(j) ? chi_delta_pow(lift, target)
                                                      : chi_of_root(lift, g.root_of(j), target);
                        LieVec one_term;
                        one_term.emplace(j, cj);
                        add_scaled(slot, one_term, field->integer(f));
                    }
                }
                if (slot.empty()) out.loop.erase(target);
            }
            if (!cartan_part.empty()) {
                LieVec img = lift.mu_dot.apply(cartan_part);
                if (!img.empty()) {
                    auto& slot = out.loop[m];
                    add_scaled(slot, img, field->integer(plain ? 1 : chi_delta_pow(lift, m)));
                    if (slot.empty()) out.loop.erase(m);
                }
                if (m == 0) out.k2 += rho_of_cartan(lift, cartan_part);
            }
        }
        return out;
    }

  private:
    void verify_lift(const MuLift& lift) const {
        // (rhomu) rho o nu = rho on the simple roots.
        for (int i = 0; i < g.rank; ++i)
            if (lift.rho[static_cast<std::size_t>(i)] != lift.rho[static_cast<std::size_t>(gcm.nu[static_cast<std::size_t>(i)])])
                throw ConstructionError("rho_mu is not nu-invariant");
        // (rhomu) mu(alpha_[0]) = mu-dot(alpha)_[0] + rho(alpha) delta_2 in the
        // affine root lattice, checked on the finite simple roots.
        for (int i = 0; i < g.rank; ++i) {
            std::vector<long> s(static_cast<std::size_t>(g.rank), 0);
            s[static_cast<std::size_t>(i)] = 1;
            // LHS: the permutation action on alpha-dot_i[0] in alpha coords.
            std::vector<Rational> fin(static_cast<std::size_t>(g.rank), Rational(0));
            fin[static_cast<std::size_t>(i)] = 1;
            std::vector<Rational> lhs = gcm.to_alpha_coords(gcm.rep_coords(fin), Rational(0));
            std::vector<Rational> lhs_img(static_cast<std::size_t>(gcm.l + 1), Rational(0));
            for (int a = 0; a <= gcm.l; ++a) lhs_img[static_cast<std::size_t>(lift.mu[static_cast<std::size_t>(a)])] += lhs[static_cast<std::size_t>(a)];
            // RHS: mu-dot(alpha_i) from the automorphism, averaged, plus rho delta_2.
            int k = g.root_index.at(s);
            LieVec img = lift.mu_dot.apply_basis(g.eplus(k));
            if (img.size() != 1) throw ConstructionError("mu-dot image of a simple root vector is not homogeneous");
            std::vector<long> beta = g.root_of(img.begin()->first);
            std::vector<Rational> beta_r(beta.begin(), beta.end());
            std::vector<Rational> rhs =
                gcm.to_alpha_coords(gcm.rep_coords(beta_r), Rational(lift.rho[static_cast<std::size_t>(i)]));
            if (lhs_img != rhs) throw ConstructionError("lattice decomposition of mu fails on a simple root");
        }
        // (dmurhomu) mu-dot(x_[m]) = mu-dot(x)_[m + rho(alpha)] on every root
        // vector in the basis.
        for (int k = 0; k < 2 * g.npos(); ++k) {
            int idx = g.rank + k;
            std::vector<long> alpha = g.root_of(idx);
            long shift = rho_of_root(lift, alpha);
            LieVec x = g.basis_vec(idx);
            for (long m = 0; m < r; ++m) {
                LieVec lhs = lift.mu_dot.apply(eigen_project(g, nu, r, m, x));
                LieVec rhs = eigen_project(g, nu, r, m + shift, lift.mu_dot.apply(x));
                if (!lie_equal(lhs, rhs)) throw ConstructionError("property (d) of the lift fails on " + g.name(idx));
            }
        }
    }
};

}  // namespace toroidal

#endif  // TOROIDAL_AFFINE_HPP

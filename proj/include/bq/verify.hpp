#pragma once

// Property-suite runners behind the `verify` command and the acceptance
// checks.  Each suite evaluates a list of named identities over seeded random
// cases and reports the worst residual against its pinned tolerance; a suite
// passes when every identity does.  n = 0 runs nothing and passes trivially.

#include <string>
#include <vector>

#include "bq/diffops.hpp"
#include "bq/fields.hpp"
#include "bq/physics.hpp"
#include "bq/random.hpp"
#include "bq/transforms.hpp"
#include "bq/waves.hpp"

namespace bq {

struct IdentityResult {
    std::string name;
    double max_residual = 0.0;
    double tolerance = 0.0;
    long cases = 0;

    bool pass() const { return max_residual <= tolerance; }
};

struct SuiteReport {
    std::string suite;
    std::vector<IdentityResult> identities;

    bool pass() const {
        for (const auto& r : identities)
            if (!r.pass()) return false;
        return true;
    }
};

namespace detail {

class ResidualTracker {
  public:
    ResidualTracker(SuiteReport& report, std::string name, double tol)
        : report_(report), slot_(report.identities.size()) {
        report_.identities.push_back(IdentityResult{std::move(name), 0.0, tol, 0});
    }

    void update(double residual) {
        IdentityResult& r = report_.identities[slot_];
        r.max_residual = std::max(r.max_residual, residual);
        ++r.cases;
    }

  private:
    SuiteReport& report_;
    std::size_t slot_;
};

inline QuadraticBqField random_quadratic(Rng& rng) {
    QuadraticBqField q;
    q.c0 = rng.biquaternion();
    for (int a = 0; a < 4; ++a) {
        q.c1[a] = rng.biquaternion();
        for (int b = 0; b < 4; ++b) q.c2[a][b] = rng.biquaternion();
    }
    return q;
}

}  // namespace detail

// ---------------------------------------------------------------------------

inline SuiteReport run_algebra_suite(long n, std::uint64_t seed) {
    SuiteReport report{"algebra", {}};
    if (n <= 0) return report;
    Rng rng(seed);
    {
        detail::ResidualTracker assoc(report, "associativity", 1e-12);
        detail::ResidualTracker comm(report, "commutator_is_2_cross", 1e-12);
        detail::ResidualTracker jac(report, "jacobi_identity", 1e-12);
        detail::ResidualTracker conj_rev(report, "conjugate_of_product_reverses", 1e-12);
        for (long i = 0; i < n; ++i) {
            const Biquaternion F = rng.biquaternion(), G = rng.biquaternion(),
                               H = rng.biquaternion();
            const double scale = 1.0 + norm(F) * norm(G) * norm(H);
            assoc.update(norm((F * G) * H - F * (G * H)) / scale);
            const Biquaternion c = F * G - G * F;
            comm.update((norm(c - commutator(F, G)) + std::abs(c.s)) / (1.0 + norm(F) * norm(G)));
            jac.update(norm(commutator(commutator(F, G), H) + commutator(commutator(H, F), G) +
                            commutator(commutator(G, H), F)) /
                       scale);
            conj_rev.update(norm(conj(F * G) - conj(G) * conj(F)) / (1.0 + norm(F) * norm(G)));
        }
    }
    {
        detail::ResidualTracker norm_law(report, "norm_law_real_quaternions", 1e-12);
        detail::ResidualTracker pseudo_law(report, "pseudonorm_law_selfconjugated", 1e-12);
        for (long i = 0; i < n; ++i) {
            Biquaternion F{Complex{rng.symmetric()}, CVec3{rng.vec3()}};
            const Biquaternion lhs = conj(F) * F;
            norm_law.update((std::abs(lhs.s - norm_sq(F)) + std::sqrt(norm_sq(lhs.v)) +
                             norm(F * conj(F) - lhs)) /
                            (1.0 + norm_sq(F)));
            const Biquaternion S{Complex{rng.symmetric()}, kImag * CVec3{rng.vec3()}};
            const Complex pn2{pseudonorm_sq(S)};
            pseudo_law.update((norm(cconj(S) * S - Biquaternion{pn2}) +
                               norm(S * cconj(S) - Biquaternion{pn2})) /
                              (1.0 + norm_sq(S)));
        }
    }
    {
        detail::ResidualTracker inv(report, "inverse_roundtrip_conditioned", 1e-10);
        detail::ResidualTracker xi_struct(report, "energy_impulse_structure", 1e-12);
        for (long i = 0; i < n; ++i) {
            const Biquaternion F = rng.biquaternion();
            if (std::abs(scalar_product(F, F)) > 1e-3) {
                const Biquaternion left = inverse(F) * F, right = F * inverse(F);
                inv.update(norm(left - Biquaternion::unit()) +
                           norm(right - Biquaternion::unit()));
            }
            const EnergyImpulse e = energy_impulse(F);
            const Biquaternion prod = e.xi * mutual(e.xi);
            xi_struct.update((std::abs(e.xi.s.imag()) + norm(e.xi.v.real()) +
                              std::abs(prod.s - Complex{e.pseudonorm_sq}) +
                              std::sqrt(norm_sq(prod.v))) /
                             (1.0 + norm_sq(F)));
        }
    }
    return report;
}

// ---------------------------------------------------------------------------

inline SuiteReport run_transforms_suite(long n, std::uint64_t seed) {
    SuiteReport report{"transforms", {}};
    if (n <= 0) return report;
    Rng rng(seed);
    {
        detail::ResidualTracker rot(report, "rotation_two_paths", 1e-12);
        detail::ResidualTracker rot_inv(report, "rotation_preserves_tau_and_length", 1e-12);
        detail::ResidualTracker boost_pn(report, "boost_preserves_interval", 1e-12);
        detail::ResidualTracker boost_cf(report, "boost_matches_relativistic_map", 1e-11);
        detail::ResidualTracker poin(report, "poincare_preserves_interval", 1e-12);
        detail::ResidualTracker comp(report, "rotor_composition_action", 1e-12);
        for (long i = 0; i < n; ++i) {
            const SpacetimePoint Z = rng.spacetime_point(2.0);
            const Rotor U{rng.in(-3.0, 3.0), rng.unit_vec3()};
            const SpacetimePoint a = apply_rotation(U, Z), b = rotation_closed_form(U, Z);
            rot.update(std::abs(a.tau - b.tau) + norm(a.x - b.x));
            rot_inv.update(std::abs(a.tau - Z.tau) +
                           std::abs(norm(a.x) - norm(Z.x)) / (1.0 + norm(Z.x)));

            const double v = 0.95 * rng.symmetric();
            const Vec3 e = rng.unit_vec3();
            const LorentzBoost L = LorentzBoost::from_velocity(v, e);
            const SpacetimePoint bz = apply_boost(L, Z);
            boost_pn.update(std::abs(interval_sq(bz) - interval_sq(Z)) /
                            (1.0 + std::abs(interval_sq(Z))));
            const SpacetimePoint rz = relativistic_map(v, e, Z);
            boost_cf.update(std::abs(bz.tau - rz.tau) + norm(bz.x - rz.x));

            const Poincare P{rng.in(-2.0, 2.0), rng.in(-1.0, 1.0), rng.unit_vec3()};
            const SpacetimePoint pz = apply_poincare(P, Z);
            poin.update(std::abs(interval_sq(pz) - interval_sq(Z)) /
                        (1.0 + std::abs(interval_sq(Z))));

            const Rotor U2{rng.in(-3.0, 3.0), rng.unit_vec3()};
            const auto c = compose_rotors(U, U2);
            if (!c.degenerate) {
                const SpacetimePoint lhs = apply_rotation(c.rotor, Z);
                const SpacetimePoint rhs = apply_rotation(U, apply_rotation(U2, Z));
                comp.update(std::abs(lhs.tau - rhs.tau) + norm(lhs.x - rhs.x));
            }
        }
    }
    {
        detail::ResidualTracker ex(report, "boost_v06_maps_unit_time", 1e-14);
        const SpacetimePoint out =
            apply_boost(LorentzBoost::from_velocity(0.6, {1.0, 0.0, 0.0}), {1.0, {0.0, 0.0, 0.0}});
        ex.update(std::abs(out.tau - 1.25) + std::abs(out.x.x - 0.75) + std::abs(out.x.y) +
                  std::abs(out.x.z));
    }
    return report;
}

// ---------------------------------------------------------------------------

inline SuiteReport run_diffops_suite(long n, std::uint64_t seed) {
    SuiteReport report{"diffops", {}};
    if (n <= 0) return report;
    Rng rng(seed);
    {
        detail::ResidualTracker mva(report, "matrix_path_equals_algebra_path", 1e-12);
        for (long i = 0; i < std::max<long>(n, 100); ++i) {
            const BqField f = detail::random_quadratic(rng).as_field();
            const SpacetimePoint p = rng.spacetime_point();
            for (Sign s : {Sign::plus, Sign::minus}) {
                const Biquaternion alg = bigradient(s, f, p);
                const auto mat = matrix_apply(s, f, p);
                double worst = 0.0;
                for (int slot = 0; slot < 4; ++slot)
                    worst = std::max(worst, std::abs(mat[slot] - alg.component(slot)));
                mva.update(worst);
            }
        }
    }
    {
        detail::ResidualTracker eq46(report, "dirac_product_is_wave_operator", 1e-12);
        const SpacetimePoint p{0.3, {-0.2, 0.4, 0.1}};
        const double h = 0.5;
        std::vector<std::pair<int, int>> monos{{-1, -1}};  // 1, z_a, z_a z_b
        for (int a = 0; a < 4; ++a) {
            monos.push_back({a, -1});
            for (int b = a; b < 4; ++b) monos.push_back({a, b});
        }
        for (int slot = 0; slot < 4; ++slot)
            for (auto [a1, a2] : monos) {
                    BqField f;
                    f.value = [slot, a1, a2](const SpacetimePoint& q) {
                        double v = 1.0;
                        if (a1 >= 0) v *= q.component(a1);
                        if (a2 >= 0) v *= q.component(a2);
                        Biquaternion out;
                        if (slot == 0)
                            out.s = v;
                        else if (slot == 1)
                            out.v.x = v;
                        else if (slot == 2)
                            out.v.y = v;
                        else
                            out.v.z = v;
                        return out;
                    };
                    const double box = (a1 == a2 && a1 >= 0) ? (a1 == 0 ? 2.0 : -2.0) : 0.0;
                    for (Sign first : {Sign::plus, Sign::minus}) {
                        BqField inner;
                        inner.value = [&](const SpacetimePoint& q) {
                            return bigradient_fd(first, f, q, h);
                        };
                        const Biquaternion nested = bigradient_fd(opposite(first), inner, p, h);
                        double worst = 0.0;
                        for (int m = 0; m < 4; ++m)
                            worst = std::max(
                                worst, std::abs(nested.component(m) -
                                                (m == slot ? Complex{box} : Complex{})));
                        eq46.update(worst);
                    }
                }
    }
    {
        detail::ResidualTracker conv(report, "factorization_order_two", 0.2);
        GaussianPulse g;
        g.amplitude = Biquaternion{Complex{0.8, -0.3},
                                   CVec3{Complex{0.5, 0.2}, Complex{-0.4, 0.9}, Complex{0.1, -0.6}}};
        g.t0 = 0.1;
        g.sigma_t = 0.9;
        g.center = {-0.2, 0.3, 0.1};
        g.sigma = 1.1;
        const BqField f = g.as_field().without_partials();
        const SpacetimePoint p{0.2, {0.4, -0.1, 0.3}};
        double err[3];
        int k = 0;
        for (double h : {1e-2, 5e-3, 2.5e-3}) {
            const auto c = dalembert_factorization_check(Sign::plus, f, p, h);
            err[k++] = norm(c.lhs - c.rhs);
        }
        conv.update(std::abs(std::log2(err[0] / err[1]) - 2.0));
        conv.update(std::abs(std::log2(err[1] / err[2]) - 2.0));
    }
    return report;
}

// ---------------------------------------------------------------------------

inline SuiteReport run_waves_suite(long n, std::uint64_t seed) {
    SuiteReport report{"waves", {}};
    if (n <= 0) return report;
    Rng rng(seed);
    const QuadratureSpec q_pair{48, 500};
    {
        detail::ResidualTracker wave_delta(report, "wave_fundamental_delta", 1e-3);
        detail::ResidualTracker kgfsh_delta(report, "kgfsh_fundamental_delta", 1e-3);
        const double amp[3] = {1.0, -1.7, 0.6};
        const double t0[3] = {0.3, 0.25, 0.35};
        for (int i = 0; i < 3; ++i) {
            TestFunction phi;
            phi.amplitude = amp[i];
            phi.t = {t0[i], 0.45};
            phi.x = {Bump1D{0.0, 1.1 + 0.1 * i}, Bump1D{0.0, 1.3 - 0.1 * i}, Bump1D{0.0, 1.2}};
            const double v0 = phi.value_at_origin();
            wave_delta.update(std::abs(wave_delta_pairing(phi, q_pair) - v0) / std::abs(v0));
            kgfsh_delta.update(std::abs(kgfsh_delta_pairing(0.8, phi, q_pair) - v0) /
                               std::abs(v0));
        }
    }
    {
        detail::ResidualTracker cons(report, "constant_retarded_half_tau_sq", 1e-8);
        const Biquaternion c = rng.biquaternion();
        BqField cf;
        cf.value = [&](const SpacetimePoint&) { return c; };
        for (double tau : {0.5, 1.2, 2.0}) {
            const Biquaternion got =
                retarded_convolve(Complex{}, cf, {tau, {0.2, -0.1, 0.3}}, QuadratureSpec{64, 110});
            cons.update(norm(got - (0.5 * tau * tau) * c));
        }
    }
    {
        detail::ResidualTracker lin(report, "pairing_linearity", 1e-10);
        const QuadratureSpec q{24, 110};
        for (long i = 0; i < std::min<long>(n, 8); ++i) {
            TestFunction a;
            a.t = {rng.in(0.2, 0.5), 0.4};
            a.x = {Bump1D{0.0, 1.0}, Bump1D{0.0, 1.0}, Bump1D{0.0, 1.0}};
            const Complex ca = rng.complex_unit_box(), cb = rng.complex_unit_box();
            const ConeLayerKernel k = ConeLayerKernel::kgfsh(rng.in(0.0, 1.0));
            const auto range = a.retarded_r_range();
            auto value = [&](auto&& g) { return pair_cone_layer(k, g, range, {0.0, 0.0}, q); };
            const Complex pa =
                value([&](double t, const Vec3& y) { return Complex{a.value({t, y})}; });
            const Complex pb = value([&](double t, const Vec3& y) {
                return Complex{a.value({t, y}) * a.value({t, y})};
            });
            const Complex mix = value([&](double t, const Vec3& y) {
                const Complex va{a.value({t, y})};
                return ca * va + cb * va * va;
            });
            lin.update(std::abs(mix - (ca * pa + cb * pb)) / (1.0 + std::abs(pa) + std::abs(pb)));
        }
    }
    {
        detail::ResidualTracker quad_conv(report, "quadrature_refinement_gain", 1.0);
        auto f = [](const Vec3& y) { return std::cos(3.0 * y.x + 2.0 * y.y - y.z); };
        const double exact = integrate_shell(f, Vec3{}, 0.0, 1.0, QuadratureSpec{96, 1000});
        const double e1 =
            std::abs(integrate_shell(f, Vec3{}, 0.0, 1.0, QuadratureSpec{8, 26}) - exact);
        const double e2 =
            std::abs(integrate_shell(f, Vec3{}, 0.0, 1.0, QuadratureSpec{16, 110}) - exact);
        quad_conv.update(4.0 * e2 / e1);
    }
    {
        detail::ResidualTracker pw(report, "plane_wave_kirchhoff", 1e-3);
        const Vec3 xi{0.4, 0.2, -0.3};
        const Biquaternion C = rng.biquaternion();
        const BqField wave = biwave_plane_wave(+1, xi, +1, C);
        auto K0 = [&](const Vec3& y) { return wave.value({0.0, y}); };
        const QuadratureSpec q{12, 288};
        for (int it = 0; it < 5; ++it)
            for (int ix = 0; ix < 5; ++ix) {
                const SpacetimePoint p{0.8 + 0.1 * it,
                                       {-0.2 + 0.1 * ix, 0.05 * (it - 2), -0.05 * (ix - 2)}};
                const Biquaternion got = biwave_solve(Sign::plus, nullptr, K0, p, q, 1e-2);
                pw.update(norm(got - wave.value(p)) / norm(wave.value(p)));
            }
    }
    {
        detail::ResidualTracker idem(report, "kirchhoff_idempotence", 1e-3);
        const Vec3 xi{0.5, -0.1, 0.2};
        const BqField wave = biwave_plane_wave(+1, xi, +1);
        const QuadratureSpec q{10, 128};
        auto K1 = [&](const Vec3& y) {
            return biwave_solve(Sign::plus, nullptr,
                                [&](const Vec3& z) { return wave.value({0.0, z}); }, {0.6, y}, q,
                                1e-2);
        };
        const SpacetimePoint target{0.4, {0.1, 0.05, -0.1}};
        const Biquaternion direct = wave.value({1.0, target.x});
        idem.update(norm(biwave_solve(Sign::plus, nullptr, K1, target, q, 2e-2) - direct) /
                    norm(direct));
    }
    {
        detail::ResidualTracker mx(report, "maxwell_kirchhoff_residual", 1e-2);
        GaussianPulse pulse;
        pulse.amplitude = Biquaternion{kImag * 1.0};
        pulse.t0 = 0.35;
        pulse.sigma_t = 0.12;
        pulse.sigma = 0.25;
        const BqField Theta = pulse.as_field();
        const QuadratureSpec q{32, 288};
        const SpacetimePoint p{0.8, {0.15, -0.05, 0.1}};
        BqField A;
        A.value = [&](const SpacetimePoint& pt) {
            return kirchhoff_maxwell(&Theta, nullptr, pt, q.refined(), 1e-2);
        };
        const Biquaternion residual = bigradient_fd(Sign::plus, A, p, 1e-2) + Theta.value(p);
        mx.update(norm(residual) / (1.0 + norm(Theta.value(p))));
    }
    {
        detail::ResidualTracker shock(report, "shock_constraint_kernel", 1e-12);
        for (long i = 0; i < std::max<long>(n, 100); ++i) {
            const ShockGap gap = admissible_shock_gap(rng.unit_vec3(), rng.complex_unit_box(),
                                                      rng.complex_unit_box(), rng.unit_vec3());
            const auto chk = shock_gap_check(gap);
            shock.update(norm(chk.residual) + std::abs(chk.longitudinal) +
                         std::sqrt(norm_sq(chk.transversal)));
        }
    }
    return report;
}

// ---------------------------------------------------------------------------

inline SuiteReport run_physics_suite(long n, std::uint64_t seed) {
    SuiteReport report{"physics", {}};
    if (n <= 0) return report;
    Rng rng(seed);
    {
        detail::ResidualTracker shock(report, "em_shock_conditions", 1e-12);
        detail::ResidualTracker rejected(report, "em_longitudinal_rejected", 0.5);
        const double eps = 2.2, mu = 0.6;
        for (long i = 0; i < std::max<long>(n, 100); ++i) {
            const Vec3 mh = rng.unit_vec3();
            const auto [gE, gH] =
                admissible_em_gap(mh, rng.unit_vec3(), rng.in(0.1, 2.0), eps, mu);
            const EMShockCheck chk = em_shock_check(gE, gH, mh, eps, mu);
            shock.update(norm(chk.r_E) + norm(chk.r_H) + norm(chk.r_D) + norm(chk.r_B) +
                         chk.transversality + norm(chk.bq_residual));
        }
        const EMShockCheck lng =
            em_shock_check({0.8, 0.0, 0.0}, {0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, eps, mu);
        rejected.update(lng.transversal ? 1.0 : 0.0);
    }
    {
        detail::ResidualTracker sp_norm(report, "spinor_norms", 1e-12);
        detail::ResidualTracker sp_pn(report, "spinor_pseudonorm_sq", 1e-12);
        detail::ResidualTracker sp_dirac(report, "spinor_dirac_residual", 1e-10);
        detail::ResidualTracker sp_xi(report, "spinor_energy_impulse", 1e-12);
        for (long i = 0; i < std::max<long>(n, 100); ++i) {
            const Vec3 xi = rng.unit_vec3() * rng.in(0.2, 2.0);
            const double rho = rng.in(-1.0, 1.0);
            const Sign sign = rng.uniform() < 0.5 ? Sign::plus : Sign::minus;
            const XiSpinor sp = elementary_xi_spinor(xi, rho, sign);
            const SpacetimePoint p = rng.spacetime_point(2.0);
            const Biquaternion v = sp.field.value(p);
            sp_norm.update(std::abs(norm(v) - 1.0));
            sp_pn.update(std::abs(pseudonorm_sq(v)));
            sp_dirac.update(norm(md_apply(kImag * rho, sign, sp.field, p)));
            sp_xi.update(norm(spinor_energy_impulse(v) -
                              Biquaternion{Complex{1.0}, CVec3{xi} * (-kImag / norm(xi))}));

            const double omega = rng.in(-1.5, 1.5);
            if (std::abs(omega + rho) > 0.05) {
                const OmegaSpinor osp = elementary_omega_spinor(omega, rho, rng.unit_vec3());
                const Biquaternion ov = osp.amplitude.value(p.x);
                sp_norm.update(std::abs(norm(ov) - 1.0));
                sp_pn.update(std::abs(pseudonorm_sq(ov)));
                const double sgn = omega + rho > 0.0 ? 1.0 : -1.0;
                sp_xi.update(norm(spinor_energy_impulse(ov) -
                                  Biquaternion{Complex{1.0},
                                               CVec3{osp.direction} * (-kImag * sgn)}));
                sp_dirac.update(norm(md_apply(kImag * rho, Sign::minus, osp.field, p)));
            }
        }
    }
    {
        detail::ResidualTracker poyn(report, "poynting_identity", 1e-12);
        detail::ResidualTracker energy(report, "energy_nonnegative", 0.0);
        for (long i = 0; i < std::max<long>(n, 100); ++i) {
            const Vec3 E = rng.vec3(), H = rng.vec3();
            const double eps = rng.in(0.5, 2.0), mu = rng.in(0.5, 2.0);
            const Biquaternion A{Complex{}, CVec3{E} * std::sqrt(eps) +
                                                CVec3{H} * (kImag * std::sqrt(mu))};
            const EnergyImpulse e = energy_impulse(A);
            const double c = 1.0 / std::sqrt(eps * mu);
            poyn.update(norm(e.P - cross(E, H) * (1.0 / c)) / (1.0 + norm(E) * norm(H)));
            energy.update(e.W >= 0.0 ? 0.0 : 1.0);
        }
    }
    {
        detail::ResidualTracker res(report, "maxwell_plane_wave_residual", 1e-12);
        detail::ResidualTracker cov(report, "maxwell_poincare_covariance", 1e-8);
        const EMPlaneWave wave = em_plane_wave({0.25, 0.1, -0.2}, {0.0, 1.0, 0.2}, 1.3, 0.8);
        BqField zero;
        zero.value = [](const SpacetimePoint&) { return Biquaternion{}; };
        for (long i = 0; i < std::min<long>(n, 50); ++i)
            res.update(norm(maxwell_residual(wave.A, zero, rng.spacetime_point())));
        const Poincare P{0.4, 0.3, normalized(Vec3{0.5, -1.0, 2.0})};
        BqField Ap;
        Ap.value = [&](const SpacetimePoint& zp) {
            return transform_biwave_data(P, true, wave.A.value(apply_poincare(P, zp)),
                                         Biquaternion{})
                .first;
        };
        cov.update(norm(bigradient_fd(Sign::plus, Ap, {0.6, {0.3, -0.2, 0.4}}, 1e-4)));
    }
    return report;
}

// ---------------------------------------------------------------------------

inline std::vector<SuiteReport> run_suites(const std::string& which, long n, std::uint64_t seed) {
    std::vector<SuiteReport> out;
    const bool all = which == "all";
    if (all || which == "algebra") out.push_back(run_algebra_suite(n, seed));
    if (all || which == "transforms") out.push_back(run_transforms_suite(n, seed + 1));
    if (all || which == "diffops") out.push_back(run_diffops_suite(n, seed + 2));
    if (all || which == "waves") out.push_back(run_waves_suite(n, seed + 3));
    if (all || which == "physics") out.push_back(run_physics_suite(n, seed + 4));
    if (out.empty()) throw parse_error("unknown suite: " + which);
    return out;
}

}  // namespace bq

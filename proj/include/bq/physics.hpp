#pragma once

// Biquaternionic electromagnetics and spinors: the intensity biquaternion
// A = √ε E + i√μ H and charge-current Θ = iρ + J, the Maxwell equation as a
// biwave equation ∇⁺A + Θ = 0, shock-front conditions on EM gaps, and the
// elementary harmonic spinors with their convolution-generated fields.
//
// Units: τ = ct, and the light speed c = 1/√(εμ) enters only through ε, μ.

#include <functional>

#include "bq/diffops.hpp"
#include "bq/field.hpp"
#include "bq/fields.hpp"
#include "bq/quadrature.hpp"
#include "bq/transforms.hpp"
#include "bq/waves.hpp"

namespace bq {

// ---------------------------------------------------------------------------
// EM field packaging

/// Real E/H fields with constant permittivity and permeability.
struct EMField {
    std::function<Vec3(const SpacetimePoint&)> E;
    std::function<Vec3(const SpacetimePoint&)> H;
    double eps = 1.0;
    double mu = 1.0;

    double light_speed() const { return 1.0 / std::sqrt(eps * mu); }
};

/// Charge and current densities ρ^E, j^E.
struct ChargeCurrent {
    std::function<double(const SpacetimePoint&)> rho_E;
    std::function<Vec3(const SpacetimePoint&)> j_E;
};

/// Intensity biquaternion A = 0 + (√ε E + i√μ H).
inline Biquaternion intensity_bq(const EMField& em, const SpacetimePoint& p) {
    return {Complex{}, CVec3{em.E(p)} * Complex{std::sqrt(em.eps)} +
                           CVec3{em.H(p)} * (kImag * std::sqrt(em.mu))};
}

/// Charge-current biquaternion Θ = iρ + J with ρ = ρ^E/√ε, J = √μ j^E.
inline Biquaternion charge_current_bq(const ChargeCurrent& cc, double eps, double mu,
                                      const SpacetimePoint& p) {
    return {kImag * (cc.rho_E(p) / std::sqrt(eps)), CVec3{cc.j_E(p)} * Complex{std::sqrt(mu)}};
}

// ---------------------------------------------------------------------------
// Maxwell residuals

/// Residual of the biquaternionic Maxwell equation, ∇⁺A + Θ.  The scalar and
/// vector parts of the result are the two halves of the Hamilton split.
inline Biquaternion maxwell_residual(const BqField& A, const BqField& Theta,
                                     const SpacetimePoint& p, double h = kDefaultFdStep) {
    return bigradient(Sign::plus, A, p, h) + Theta.value(p);
}

/// Residual pair of the modified (open-system) Maxwell equations with a
/// scalar field a entering the potential as i·a + A:
///   vector: ∂_τA + i rot A + J − grad a,   scalar: ρ − div A + ∂_τ a.
struct ModifiedMaxwellResidual {
    Complex scalar;
    CVec3 vector;
};

inline ModifiedMaxwellResidual maxwell_residual_modified(const BqField& A,
                                                         const ScalarField& a,
                                                         const BqField& Theta,
                                                         const SpacetimePoint& p,
                                                         double h = kDefaultFdStep) {
    BqField combined;
    combined.value = [&](const SpacetimePoint& pt) {
        Biquaternion out = A.value(pt);
        out.s = out.s + kImag * a.value(pt);
        return out;
    };
    if (A.has_partials() && a.has_partials()) {
        combined.partials = [&](const SpacetimePoint& pt) {
            BqPartials d = A.partials(pt);
            const auto da = a.partials(pt);
            for (int axis = 0; axis < 4; ++axis) d[axis].s = d[axis].s + kImag * da[axis];
            return d;
        };
    }
    const Biquaternion r = bigradient(Sign::plus, combined, p, h) + Theta.value(p);
    return {r.s / kImag, r.v};
}

// ---------------------------------------------------------------------------
// Shock EM waves (front conditions on intensity gaps)

struct EMShockCheck {
    Vec3 r_E, r_H;           // [E] − c[[B],m̂],  [H] − c[m̂,[D]]
    Vec3 r_D, r_B;           // the equivalent D/B-form residuals
    double transversality;   // |(m̂, [A])|
    bool transversal;
    Biquaternion bq_residual;  // [A] − i m̂∘[A]
};

inline EMShockCheck em_shock_check(const Vec3& gap_E, const Vec3& gap_H, const Vec3& front_normal,
                                   double eps, double mu, double tol = 1e-9) {
    const Vec3 mh = normalized(front_normal);
    const double c = 1.0 / std::sqrt(eps * mu);
    const Vec3 gap_D = eps * gap_E, gap_B = mu * gap_H;
    EMShockCheck out;
    out.r_E = gap_E - c * cross(gap_B, mh);
    out.r_H = gap_H - c * cross(mh, gap_D);
    out.r_D = gap_D - (1.0 / c) * cross(gap_H, mh);
    out.r_B = gap_B - (1.0 / c) * cross(mh, gap_E);
    const CVec3 gap_A = CVec3{gap_E} * Complex{std::sqrt(eps)} +
                        CVec3{gap_H} * (kImag * std::sqrt(mu));
    out.transversality = std::abs(dot(CVec3{mh}, gap_A));
    const double scale = std::sqrt(norm_sq(gap_A));
    out.transversal = out.transversality <= tol * (1.0 + scale);
    const Biquaternion A{Complex{}, gap_A};
    out.bq_residual = A - kImag * (Biquaternion{Complex{}, CVec3{mh}} * A);
    return out;
}

/// Admissible EM gap pair built from the shock constraint kernel: [E] ⊥ m̂
/// arbitrary, [H] = √(ε/μ) [m̂, [E]].
inline std::pair<Vec3, Vec3> admissible_em_gap(const Vec3& front_normal, const Vec3& e_dir,
                                               double magnitude, double eps, double mu) {
    const Vec3 mh = normalized(front_normal);
    const Vec3 e_perp = e_dir - mh * dot(mh, e_dir);
    const Vec3 gap_E = normalized(e_perp) * magnitude;
    const Vec3 gap_H = std::sqrt(eps / mu) * cross(mh, gap_E);
    return {gap_E, gap_H};
}

// ---------------------------------------------------------------------------
// Vacuum plane waves

/// Transverse vacuum plane wave: A = 0 + (iku + [ξ,u])e^{iφ}, φ = (ξ,x) + kτ,
/// u ⊥ ξ, which solves ∇⁺A = 0 with zero scalar part.  The E/H pair is
/// recovered from the real and imaginary parts of the vector part.
struct EMPlaneWave {
    BqField A;
    EMField em;
};

inline EMPlaneWave em_plane_wave(const Vec3& xi, const Vec3& polarization, double eps = 1.0,
                                 double mu = 1.0) {
    const double k = norm(xi);
    if (!(k > 0.0)) throw zero_wave_vector("plane wave needs xi != 0");
    const Vec3 u = normalized(polarization - xi * (dot(xi, polarization) / (k * k)));
    const Biquaternion amp{Complex{}, (kImag * k) * CVec3{u} + CVec3{cross(xi, u)}};
    EMPlaneWave out;
    out.A = exponential_field(amp, k, xi);
    const BqField A = out.A;
    out.em.eps = eps;
    out.em.mu = mu;
    out.em.E = [A, eps](const SpacetimePoint& p) {
        return A.value(p).v.real() / std::sqrt(eps);
    };
    out.em.H = [A, mu](const SpacetimePoint& p) { return A.value(p).v.imag() / std::sqrt(mu); };
    return out;
}

// ---------------------------------------------------------------------------
// Spinors

/// Energy-impulse of a unit spinor in the convention of the spinor sections:
/// Ξ = Sp∘Sp* (twice the ½F∘F* density of the algebra module).
inline Biquaternion spinor_energy_impulse(const Biquaternion& sp) { return sp * conj(sp); }

/// Elementary ξ-oriented harmonic spinor
///   Sp = (i + ξ/‖ξ‖)/√2 · e^{i((ξ,x) + (−ρ + s‖ξ‖)τ)},
/// annihilated by ∇^(s) + iρ; unit norm and zero pseudonorm pointwise.
struct XiSpinor {
    Vec3 xi;
    double rho = 0.0;
    Sign sign = Sign::plus;
    BqField field;
    double phase_speed = 1.0;  // V = 1 ± ρ/‖ξ‖, keyed to the spinor sign
    bool supersonic = false;
};

inline XiSpinor elementary_xi_spinor(const Vec3& xi, double rho, Sign sign) {
    const double k = norm(xi);
    if (!(k > 0.0)) throw zero_wave_vector("spinor needs xi != 0");
    XiSpinor sp;
    sp.xi = xi;
    sp.rho = rho;
    sp.sign = sign;
    const double s = sign_value(sign);
    const Complex inv_sqrt2{1.0 / std::sqrt(2.0)};
    const Biquaternion amp{kImag * inv_sqrt2, CVec3{xi} * (inv_sqrt2 / k)};
    sp.field = exponential_field(amp, -rho + s * k, xi);
    sp.phase_speed = 1.0 + s * rho / k;
    sp.supersonic = std::abs(sp.phase_speed) > 1.0;
    return sp;
}

/// Elementary harmonic (ω+ρ)-spinor amplitude
///   Ψ₀(x) = (ω + ρ − ik e) e^{−ik(e,x)} / (k√2),  k = |ω+ρ| ≠ 0,
/// annihilated by the gradiental operator (ω + ρ − ∇); the spacetime field
/// Ψ₀(x)e^{iωτ} then satisfies (∇⁻ + iρ)Sp = 0.
struct OmegaSpinor {
    double omega = 0.0;
    double rho = 0.0;
    Vec3 direction{1.0, 0.0, 0.0};
    SpatialBqField amplitude;
    BqField field;  // amplitude × e^{iωτ}
};

inline OmegaSpinor elementary_omega_spinor(double omega, double rho, const Vec3& direction) {
    const double w = omega + rho;
    const double k = std::abs(w);
    if (!(k > 0.0)) throw zero_wave_number("spinor needs |omega + rho| != 0");
    OmegaSpinor sp;
    sp.omega = omega;
    sp.rho = rho;
    sp.direction = normalized(direction);
    const Vec3 e = sp.direction;
    const Biquaternion amp =
        (1.0 / (k * std::sqrt(2.0))) * Biquaternion{Complex{w}, CVec3{e} * (-kImag * k)};
    sp.amplitude.value = [amp, k, e](const Vec3& x) {
        return std::exp(-kImag * k * dot(e, x)) * amp;
    };
    sp.amplitude.partials = [amp, k, e](const Vec3& x) {
        const Biquaternion v = std::exp(-kImag * k * dot(e, x)) * amp;
        return std::array<Biquaternion, 3>{(-kImag * k * e.x) * v, (-kImag * k * e.y) * v,
                                           (-kImag * k * e.z) * v};
    };
    sp.field = exponential_field(amp, omega, e * (-k));
    return sp;
}

/// Spacetime convolution (Sp ∗ C)(p) = ∫ Sp(p − w)∘C(w) dw over the support
/// box of C.  The kernel stays on the left of the quaternion product, which
/// is what preserves the spinor equation (solutions form a right module).
inline Biquaternion spinor_field_convolve(const BqField& base, const BqField& C,
                                          const std::array<double, 4>& support_lo,
                                          const std::array<double, 4>& support_hi,
                                          const SpacetimePoint& p, int nodes_per_axis) {
    return integrate_box4(
        [&](double tau, const Vec3& y) {
            return base.value({p.tau - tau, p.x - y}) * C.value({tau, y});
        },
        support_lo, support_hi, nodes_per_axis);
}

/// Spatial counterpart for harmonic spinor amplitudes.
inline Biquaternion spinor_field_convolve_spatial(const SpatialBqField& base,
                                                  const SpatialBqField& C, const Vec3& lo,
                                                  const Vec3& hi, const Vec3& x,
                                                  int nodes_per_axis) {
    return integrate_box3([&](const Vec3& y) { return base.value(x - y) * C.value(y); }, lo, hi,
                          nodes_per_axis);
}

/// Nonoriented spinor field ∫_{‖e‖=1} p(e) Ψ₀(x, e) dS(e), by spherical
/// quadrature over directions.  ω = 0 yields static spinors.
inline SpatialBqField nonoriented_spinor_field(const std::function<Complex(const Vec3&)>& density,
                                               double omega, double rho, int n_s) {
    const double w = omega + rho;
    if (!(std::abs(w) > 0.0)) throw zero_wave_number("spinor needs |omega + rho| != 0");
    const SphereRule sph = sphere_rule(n_s);
    std::vector<OmegaSpinor> members;
    members.reserve(sph.size());
    for (std::size_t j = 0; j < sph.size(); ++j)
        members.push_back(elementary_omega_spinor(omega, rho, sph.dir[j]));
    auto weights = sph.w;
    auto dens = density;
    SpatialBqField out;
    out.value = [members, weights, dens, sph](const Vec3& x) {
        Biquaternion acc;
        for (std::size_t j = 0; j < members.size(); ++j)
            acc = acc + weights[j] * dens(sph.dir[j]) * members[j].amplitude.value(x);
        return acc;
    };
    out.partials = [members, weights, dens, sph](const Vec3& x) {
        std::array<Biquaternion, 3> acc{};
        for (std::size_t j = 0; j < members.size(); ++j) {
            const auto d = members[j].amplitude.partials(x);
            const Complex wj = weights[j] * dens(sph.dir[j]);
            for (int i = 0; i < 3; ++i) acc[i] = acc[i] + wj * d[i];
        }
        return acc;
    };
    return out;
}

}  // namespace bq

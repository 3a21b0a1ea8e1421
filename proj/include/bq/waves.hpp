#pragma once

// Fundamental and generalized solutions of the biwave, KGFSh and
// Maxwell-Dirac equations: simple layers on the light cone evaluated through
// pairings and convolutions, retarded (Kirchhoff) potentials, homogeneous
// plane-wave superpositions, and shock-front gap conditions.
//
// The singular kernels are never evaluated pointwise on the cone; every use
// goes through a radial × spherical product quadrature in which the r² volume
// element absorbs the 1/r density.

#include <functional>
#include <optional>
#include <utility>

#include "bq/diffops.hpp"
#include "bq/field.hpp"
#include "bq/quadrature.hpp"
#include "bq/test_function.hpp"

namespace bq {

/// Simple layer on the light cone with radial density e^{−mr}/(4πr) on the
/// retarded sheet τ = ‖x‖ (weight a) and e^{+mr}/(4πr) on the advanced sheet
/// τ = −‖x‖ (weight 1 − a).  m = 0 is the wave kernel, m = iρ the KGFSh one.
struct ConeLayerKernel {
    Complex m{};
    Complex a{1.0};

    static ConeLayerKernel wave() { return {}; }
    static ConeLayerKernel kgfsh(double rho, Complex a_ = Complex{1.0}) {
        return {kImag * rho, a_};
    }
};

// ---------------------------------------------------------------------------
// Pairings against test functions

/// ⟨ψ_{m,a}, g⟩ for a scalar spacetime function g: the retarded sheet
/// contributes (a/4π)∫ r e^{−mr} ∫_{S²} g(r, rσ) dΩ dr and the advanced one
/// ((1−a)/4π)∫ r e^{+mr} ∫_{S²} g(−r, rσ) dΩ dr, over the given r-supports.
template <typename G>
Complex pair_cone_layer(const ConeLayerKernel& k, const G& g,
                        std::pair<double, double> retarded_r,
                        std::pair<double, double> advanced_r, const QuadratureSpec& q) {
    constexpr double four_pi = 4.0 * std::numbers::pi;
    const SphereRule sph = sphere_rule(q.n_s);
    Complex total{};
    auto sheet = [&](double sign_tau, const Complex& weight, std::pair<double, double> range,
                     const Complex& exp_rate) {
        if (std::abs(weight) == 0.0 || !(range.second > range.first)) return;
        const Quad1D radial = on_interval(gauss_legendre(q.n_r), range.first, range.second);
        Complex acc{};
        for (std::size_t i = 0; i < radial.x.size(); ++i) {
            const double r = radial.x[i];
            Complex ring{};
            for (std::size_t j = 0; j < sph.size(); ++j)
                ring += sph.w[j] * g(sign_tau * r, r * sph.dir[j]);
            acc += radial.w[i] * r * std::exp(exp_rate * r) * ring;
        }
        total += weight * acc / four_pi;
    };
    sheet(+1.0, k.a, retarded_r, -k.m);
    sheet(-1.0, Complex{1.0} - k.a, advanced_r, k.m);
    return total;
}

inline Complex pair_cone_layer(const ConeLayerKernel& k, const TestFunction& phi,
                               const QuadratureSpec& q) {
    return pair_cone_layer(
        k, [&phi](double tau, const Vec3& y) { return phi.value({tau, y}); },
        phi.retarded_r_range(), phi.advanced_r_range(), q);
}

/// ⟨ψ, φ⟩ for the wave kernel ψ = δ(τ − ‖x‖)/(4π‖x‖).  When `tol` is given,
/// the value is cross-checked against a halved budget and
/// quadrature_budget_exceeded is thrown if the two disagree beyond it.
inline Complex pair_wave_fundamental(const TestFunction& phi, const QuadratureSpec& q,
                                     std::optional<double> tol = std::nullopt) {
    const Complex full = pair_cone_layer(ConeLayerKernel::wave(), phi, q);
    if (tol) {
        const QuadratureSpec half{std::max(2, q.n_r / 2), std::max(6, q.n_s / 4)};
        const Complex coarse = pair_cone_layer(ConeLayerKernel::wave(), phi, half);
        if (std::abs(full - coarse) > *tol)
            throw quadrature_budget_exceeded("pairing did not converge within budget");
    }
    return full;
}

/// General a-family pairing ⟨ψ_{m,a}, φ⟩ over both cone sheets.
inline Complex kgfsh_fundamental_pair(const Complex& m, const Complex& a,
                                      const TestFunction& phi, const QuadratureSpec& q) {
    return pair_cone_layer(ConeLayerKernel{m, a}, phi, q);
}

/// Distributional check of □ψ = δ: ⟨ψ, □φ⟩, which must equal φ(0,0).
inline Complex wave_delta_pairing(const TestFunction& phi, const QuadratureSpec& q) {
    return pair_cone_layer(
        ConeLayerKernel::wave(),
        [&phi](double tau, const Vec3& y) { return phi.dalembert({tau, y}); },
        phi.retarded_r_range(), phi.advanced_r_range(), q);
}

/// KGFSh analogue: ⟨ψ, (□ − ρ² − 2iρ∂_τ)φ⟩ against the retarded kernel
/// e^{−iρr}/(4πr); equals φ(0,0) when □ψ − ρ²ψ + 2iρ∂_τψ = δ.
inline Complex kgfsh_delta_pairing(double rho, const TestFunction& phi,
                                   const QuadratureSpec& q) {
    const Complex rr{rho * rho};
    return pair_cone_layer(
        ConeLayerKernel::kgfsh(rho),
        [&phi, rho, rr](double tau, const Vec3& y) {
            const SpacetimePoint p{tau, y};
            return Complex{phi.dalembert(p)} - rr * phi.value(p) -
                   2.0 * kImag * rho * phi.d(p, 0);
        },
        phi.retarded_r_range(), phi.advanced_r_range(), q);
}

/// Pairing ⟨Ψ, φ⟩ with the singular biwave fundamental solution
/// Ψ = ∂_τψ ± i grad ψ, computed by moving the derivatives onto φ.
inline Biquaternion fundamental_biwave_pair(Sign sign, const TestFunction& phi,
                                            const QuadratureSpec& q) {
    const ConeLayerKernel k = ConeLayerKernel::wave();
    auto pair_d = [&](int axis) {
        return pair_cone_layer(
            k, [&phi, axis](double tau, const Vec3& y) { return phi.d({tau, y}, axis); },
            phi.retarded_r_range(), phi.advanced_r_range(), q);
    };
    const double s = sign_value(sign);
    Biquaternion out;
    out.s = -pair_d(0);
    out.v = CVec3{pair_d(1), pair_d(2), pair_d(3)} * (-s * kImag);
    return out;
}

/// ⟨∇^(−sign)Ψ^(sign), φ⟩ assembled from the ten second-derivative pairings
/// through the operator-symbol contraction; equals φ(0,0)·1 since
/// ∇∓∇±ψ = □ψ = δ.
inline Biquaternion biwave_delta_pair(Sign sign, const TestFunction& phi,
                                      const QuadratureSpec& q) {
    const ConeLayerKernel k = ConeLayerKernel::wave();
    Complex m2[4][4];
    for (int a = 0; a < 4; ++a)
        for (int b = a; b < 4; ++b) {
            m2[a][b] = pair_cone_layer(
                k, [&phi, a, b](double tau, const Vec3& y) { return phi.dd({tau, y}, a, b); },
                phi.retarded_r_range(), phi.advanced_r_range(), q);
            m2[b][a] = m2[a][b];
        }
    auto symbol = [](Sign sg, int mu) {
        if (mu == 0) return Biquaternion::unit();
        Biquaternion e;
        e.v = CVec3{mu == 1 ? 1.0 : 0.0, mu == 2 ? 1.0 : 0.0, mu == 3 ? 1.0 : 0.0};
        return (sign_value(sg) * kImag) * e;
    };
    Biquaternion out;
    for (int mu = 0; mu < 4; ++mu)
        for (int nu = 0; nu < 4; ++nu)
            out = out + m2[mu][nu] * (symbol(opposite(sign), mu) * symbol(sign, nu));
    return out;
}

// ---------------------------------------------------------------------------
// Retarded potentials

/// (ψ_m ∗ H(τ)F)(p) = ∫_{r≤τ_p} e^{−mr} F(τ_p − r, x_p − y) /(4πr) dV(y).
/// Empty support (τ_p ≤ 0) integrates to zero.
inline Biquaternion retarded_convolve(const Complex& m, const BqField& F,
                                      const SpacetimePoint& p, const QuadratureSpec& q) {
    if (!(p.tau > 0.0)) return {};
    constexpr double four_pi = 4.0 * std::numbers::pi;
    const Quad1D radial = on_interval(gauss_legendre(q.n_r), 0.0, p.tau);
    const SphereRule sph = sphere_rule(q.n_s);
    Biquaternion acc;
    for (std::size_t i = 0; i < radial.x.size(); ++i) {
        const double r = radial.x[i];
        Biquaternion ring;
        for (std::size_t j = 0; j < sph.size(); ++j)
            ring = ring + sph.w[j] * F.value({p.tau - r, p.x - r * sph.dir[j]});
        acc = acc + (radial.w[i] * r / four_pi) * std::exp(-m * r) * ring;
    }
    return acc;
}

/// Spherical-mean surface potential (f ∗_x ψ)(τ,x) = (4πτ)⁻¹ ∫_{r=τ} f dS.
inline Biquaternion sphere_surface_potential(
    const std::function<Biquaternion(const Vec3&)>& f, double tau, const Vec3& x,
    const QuadratureSpec& q) {
    constexpr double four_pi = 4.0 * std::numbers::pi;
    const SphereRule sph = sphere_rule(q.n_s);
    Biquaternion acc;
    for (std::size_t j = 0; j < sph.size(); ++j)
        acc = acc + sph.w[j] * f(x + tau * sph.dir[j]);
    return (tau / four_pi) * acc;
}

/// Finite-difference step used on evaluated potentials (tied to quadrature
/// smoothness rather than to field scales).
inline constexpr double kPotentialFdStep = 1e-2;

// ---------------------------------------------------------------------------
// Kirchhoff solves

/// Solution of the Cauchy problem ∇^(sign) K = G, K(0,·) = K0, at a point
/// with τ > 0:
///
///   K = ∇^(−sign) { (ψ ∗ H(τ)G) + (ψ ∗_x K0) }
///
/// with the outer bigradient taken as central finite differences of the
/// evaluated potential.  The moving-domain surface term of the classical
/// Kirchhoff display is produced by the τ-difference of the volume potential
/// and is therefore not added separately.
inline Biquaternion biwave_solve(Sign sign, const BqField* G,
                                 const std::function<Biquaternion(const Vec3&)>& K0,
                                 const SpacetimePoint& p, const QuadratureSpec& q,
                                 double h = kPotentialFdStep) {
    if (!(p.tau > 0.0)) throw negative_time("Kirchhoff solve needs tau > 0");
    if (!(p.tau - h > 0.0)) throw negative_time("tau too small for the potential stencil");
    BqField potential;
    potential.value = [&, G](const SpacetimePoint& pt) {
        Biquaternion u;
        if (G) u = retarded_convolve(Complex{}, *G, pt, q);
        if (K0) u = u + sphere_surface_potential(K0, pt.tau, pt.x, q);
        return u;
    };
    return bigradient_fd(opposite(sign), potential, p, h);
}

/// Kirchhoff solution of the Maxwell biwave equation ∇⁺A + Θ = 0 with
/// initial intensity A0: A = ∇⁻{ (ψ ∗_x A0) − (ψ ∗ H(τ)Θ) }.  The sign of
/// the Θ terms follows from the solve of ∇⁺A = −Θ; the self-consistency
/// residual ∇⁺A + Θ → 0 pins it.
inline Biquaternion kirchhoff_maxwell(const BqField* Theta,
                                      const std::function<Biquaternion(const Vec3&)>& A0,
                                      const SpacetimePoint& p, const QuadratureSpec& q,
                                      double h = kPotentialFdStep) {
    BqField minus_theta;
    if (Theta) {
        minus_theta.value = [Theta](const SpacetimePoint& pt) { return -Theta->value(pt); };
    }
    return biwave_solve(Sign::plus, Theta ? &minus_theta : nullptr, A0, p, q, h);
}

/// Generalized Maxwell-Dirac solve (∇^(sign) + m)B = F for m = iρ:
/// B = (∇^(−sign) + m)(ψ_m ∗ H(τ)F).  The retarded kernel exists for any m;
/// only the causal branch (a = 1) is evolved here, and advanced/homogeneous
/// additions additionally require an imaginary mass.
inline Biquaternion md_solve(const Complex& m, Sign sign, const BqField& F,
                             const SpacetimePoint& p, const QuadratureSpec& q,
                             double h = kPotentialFdStep, const Complex& a = Complex{1.0}) {
    if (!(p.tau > 0.0)) throw negative_time("MD solve needs tau > 0");
    if (!(p.tau - h > 0.0)) throw negative_time("tau too small for the potential stencil");
    if (std::abs(a - Complex{1.0}) > 0.0) {
        if (std::abs(m.real()) > 0.0)
            throw unsupported_mass("advanced/homogeneous branches need an imaginary mass");
        throw out_of_domain("only the causal kernel branch (a = 1) is evolved");
    }
    BqField potential;
    potential.value = [&](const SpacetimePoint& pt) { return retarded_convolve(m, F, pt, q); };
    return bigradient_fd(opposite(sign), potential, p, h) + m * potential.value(p);
}

// ---------------------------------------------------------------------------
// Harmonic and static solves

/// Helmholtz-layer kernel of the gradiental equation:
/// χ(r) = −a e^{−ikr}/(4πr) + (a−1) e^{ikr}/(4πr), (Δ + k²)χ = δ.
inline Complex gradiental_kernel(double k, const Complex& a, double r) {
    constexpr double four_pi = 4.0 * std::numbers::pi;
    return (-a * std::exp(-kImag * k * r) + (a - 1.0) * std::exp(kImag * k * r)) / (four_pi * r);
}

/// Spatial convolution (χ ∗ F)(x) of a radial kernel with a source supported
/// in the ball ‖y − c‖ ≤ R.  Observation points well outside the ball use a
/// source-centered rule (the kernel is smooth there); points inside or near
/// it use an observation-centered rule whose r² volume element absorbs the
/// kernel singularity.
template <typename Kernel>
Biquaternion radial_kernel_convolve(const Kernel& chi, const SpatialBqField& F, const Vec3& c,
                                    double R, const Vec3& x, const QuadratureSpec& q) {
    const double d = norm(x - c);
    if (d > 1.3 * R) {
        return integrate_shell(
            [&](const Vec3& z) { return chi(norm(x - z)) * F.value(z); }, c, 0.0, R, q);
    }
    const Quad1D radial = on_interval(gauss_legendre(q.n_r), 0.0, d + R);
    const SphereRule sph = sphere_rule(q.n_s);
    Biquaternion acc;
    for (std::size_t i = 0; i < radial.x.size(); ++i) {
        const double r = radial.x[i];
        Biquaternion ring;
        for (std::size_t j = 0; j < sph.size(); ++j)
            ring = ring + sph.w[j] * F.value(x - r * sph.dir[j]);
        acc = acc + (radial.w[i] * r * r) * chi(r) * ring;
    }
    return acc;
}

/// Solves the gradiental equation (ω + ρ ± ∇)∘B = F for a spatial source
/// supported in the ball ‖y − c‖ ≤ R: B = (ω + ρ ∓ ∇)(χ ∗ F).
/// ω = 0 covers the static equation with k = |ρ|.
inline Biquaternion harmonic_md_solve(double omega, double rho, Sign sign,
                                      const SpatialBqField& F, const Vec3& support_center,
                                      double support_radius, const Vec3& x, const Complex& a,
                                      const QuadratureSpec& q, double h = kPotentialFdStep) {
    const double w = omega + rho;
    const double k = std::abs(w);
    if (!(k > 0.0)) throw zero_wave_number("gradiental kernel needs |omega + rho| != 0");
    SpatialBqField potential;
    potential.value = [&](const Vec3& xe) {
        return radial_kernel_convolve([&](double r) { return gradiental_kernel(k, a, r); }, F,
                                      support_center, support_radius, xe, q);
    };
    // (w ∓ ∇) applied to the potential
    return gradiental_apply(w, opposite(sign), potential, x, h);
}

// ---------------------------------------------------------------------------
// Homogeneous solutions (plane-wave superpositions)

/// Only the imaginary-mass KGFSh equation admits nontrivial homogeneous
/// solutions; for Re m ≠ 0 the symbol ‖ξ‖² − (ω + im)² never vanishes.
inline bool kgfsh_homogeneous_exists(const Complex& m) { return m.real() == 0.0; }

/// ψ₀(τ,x) = ∫_{‖ξ‖≤R} φ(ξ) e^{i((ξ,x) ± ‖ξ‖τ)} dV(ξ); satisfies □ψ₀ = 0.
inline Complex homogeneous_wave(const std::function<Complex(const Vec3&)>& phi, double xi_radius,
                                Sign tau_sign, const SpacetimePoint& p,
                                const QuadratureSpec& q) {
    const double s = sign_value(tau_sign);
    return integrate_shell(
        [&](const Vec3& xi) {
            return phi(xi) * std::exp(kImag * (dot(xi, p.x) + s * norm(xi) * p.tau));
        },
        Vec3{}, 0.0, xi_radius, q);
}

/// u₀ = e^{−iρτ} ψ₀; satisfies the homogeneous KGFSh equation with m = iρ.
inline Complex homogeneous_kgfsh(double rho, const std::function<Complex(const Vec3&)>& phi,
                                 double xi_radius, Sign tau_sign, const SpacetimePoint& p,
                                 const QuadratureSpec& q) {
    return std::exp(-kImag * rho * p.tau) * homogeneous_wave(phi, xi_radius, tau_sign, p, q);
}

// ---------------------------------------------------------------------------
// Shock fronts

/// Gap of a discontinuous solution across a characteristic surface, with the
/// unit spatial front normal (the front moves with speed |c| = 1).
struct ShockGap {
    Vec3 front_normal{1.0, 0.0, 0.0};
    Biquaternion gap;
};

struct ShockGapCheck {
    Biquaternion residual;  // [K] − i m̂∘[K]
    Complex longitudinal;   // [k] + i(m̂, [K])
    CVec3 transversal;      // ([K] − m̂(m̂,[K])) − i[m̂,[K]]
};

/// Front conditions of admissible shocks; all three outputs vanish exactly on
/// gaps satisfying them.
inline ShockGapCheck shock_gap_check(const ShockGap& g) {
    const Vec3 mh = normalized(g.front_normal);
    const Biquaternion m_bq{Complex{}, CVec3{mh}};
    ShockGapCheck out;
    out.residual = g.gap - kImag * (m_bq * g.gap);
    out.longitudinal = g.gap.s + kImag * dot(CVec3{mh}, g.gap.v);
    const CVec3 tangential = g.gap.v - CVec3{mh} * dot(CVec3{mh}, g.gap.v);
    out.transversal = tangential - kImag * cross(CVec3{mh}, g.gap.v);
    return out;
}

/// The full solution set of the front conditions: a longitudinal part
/// α(m̂ − i·1) and a transversal part c(u + i[m̂,u]) for u ⊥ m̂.
inline ShockGap admissible_shock_gap(const Vec3& front_normal, const Complex& alpha,
                                     const Complex& c, const Vec3& u_raw) {
    const Vec3 mh = normalized(front_normal);
    ShockGap g;
    g.front_normal = mh;
    g.gap.s = -kImag * alpha;
    g.gap.v = CVec3{mh} * alpha;
    const Vec3 u_perp = u_raw - mh * dot(mh, u_raw);
    if (std::abs(c) > 0.0) {
        const Vec3 u = normalized(u_perp);
        g.gap.v = g.gap.v + c * (CVec3{u} + kImag * cross(CVec3{mh}, CVec3{u}));
    }
    return g;
}

}  // namespace bq

#pragma once

// Canned analytic fields with exact first partials: exponential (plane-wave)
// fields, separable Gaussians, and quadratic polynomial fields.

#include <array>

#include "bq/field.hpp"

namespace bq {

/// A∘e^{i(b₀τ + (b,x))} with constant amplitude A and real frequencies.
inline BqField exponential_field(const Biquaternion& amplitude, double b0, const Vec3& b) {
    auto phase = [=](const SpacetimePoint& p) {
        return std::exp(kImag * (b0 * p.tau + dot(b, p.x)));
    };
    BqField f;
    f.value = [=](const SpacetimePoint& p) { return phase(p) * amplitude; };
    f.partials = [=](const SpacetimePoint& p) {
        const Biquaternion v = phase(p) * amplitude;
        BqPartials d;
        d[0] = (kImag * b0) * v;
        for (int j = 0; j < 3; ++j) d[j + 1] = (kImag * b[j]) * v;
        return d;
    };
    return f;
}

/// Solution of the homogeneous biwave equation ∇^(sign) K = 0:
/// K = (iω ± ξ)∘C · e^{i((ξ,x) + ωτ)}, ω = ω_sign·‖ξ‖ (+ξ for the ∇⁺
/// equation, −ξ for ∇⁻).
inline BqField biwave_plane_wave(int equation_sign, const Vec3& xi, int omega_sign,
                                 const Biquaternion& C = Biquaternion::unit()) {
    const double k = norm(xi);
    if (!(k > 0.0)) throw zero_wave_vector("plane wave needs xi != 0");
    const double omega = omega_sign >= 0 ? k : -k;
    const Biquaternion sym{kImag * omega,
                           CVec3{xi} * Complex{equation_sign >= 0 ? 1.0 : -1.0}};
    return exponential_field(sym * C, omega, xi);
}

/// A·exp(−(τ−t₀)²/(2σ_t²) − ‖x−c‖²/(2σ²)).  Effective support ~6σ.
struct GaussianPulse {
    Biquaternion amplitude = Biquaternion::unit();
    double t0 = 0.0;
    double sigma_t = 1.0;
    Vec3 center;
    double sigma = 1.0;

    double envelope(const SpacetimePoint& p) const {
        const double dt = p.tau - t0;
        const Vec3 dx = p.x - center;
        return std::exp(-0.5 * dt * dt / (sigma_t * sigma_t) -
                        0.5 * dot(dx, dx) / (sigma * sigma));
    }

    BqField as_field() const {
        const GaussianPulse g = *this;
        BqField f;
        f.value = [g](const SpacetimePoint& p) { return g.envelope(p) * g.amplitude; };
        f.partials = [g](const SpacetimePoint& p) {
            const double e = g.envelope(p);
            BqPartials d;
            d[0] = (-e * (p.tau - g.t0) / (g.sigma_t * g.sigma_t)) * g.amplitude;
            const Vec3 dx = p.x - g.center;
            for (int j = 0; j < 3; ++j)
                d[j + 1] = (-e * dx[j] / (g.sigma * g.sigma)) * g.amplitude;
            return d;
        };
        return f;
    }
};

/// Quadratic polynomial field c0 + Σ_μ c1[μ] p_μ + Σ_{μν} c2[μ][ν] p_μ p_ν.
/// Central differences are exact on these, so they double as stencil oracles.
struct QuadraticBqField {
    Biquaternion c0;
    std::array<Biquaternion, 4> c1{};
    std::array<std::array<Biquaternion, 4>, 4> c2{};

    BqField as_field() const {
        const QuadraticBqField q = *this;
        BqField f;
        f.value = [q](const SpacetimePoint& p) {
            Biquaternion out = q.c0;
            for (int m = 0; m < 4; ++m) {
                out = out + p.component(m) * q.c1[m];
                for (int n = 0; n < 4; ++n)
                    out = out + (p.component(m) * p.component(n)) * q.c2[m][n];
            }
            return out;
        };
        f.partials = [q](const SpacetimePoint& p) {
            BqPartials d;
            for (int m = 0; m < 4; ++m) {
                d[m] = q.c1[m];
                for (int n = 0; n < 4; ++n)
                    d[m] = d[m] + p.component(n) * (q.c2[m][n] + q.c2[n][m]);
            }
            return d;
        };
        return f;
    }

    /// Exact d'Alembertian (constant for quadratics): 2c2[0][0] − 2Σ_j c2[j][j].
    Biquaternion dalembertian() const {
        Biquaternion out = 2.0 * c2[0][0];
        for (int j = 1; j < 4; ++j) out = out - 2.0 * c2[j][j];
        return out;
    }
};

}  // namespace bq

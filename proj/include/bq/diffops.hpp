#pragma once

// Bigradient operators ∇± = ∂_τ ± i∇ acting by quaternionic product, their
// d'Alembert factorization, and the equivalent 4×4 Dirac-matrix form.

#include <array>

#include "bq/field.hpp"

namespace bq {

enum class Sign { plus, minus };

constexpr double sign_value(Sign s) { return s == Sign::plus ? 1.0 : -1.0; }
constexpr Sign opposite(Sign s) { return s == Sign::plus ? Sign::minus : Sign::plus; }

/// Default finite-difference step for first derivatives of analytic fields.
inline constexpr double kDefaultFdStep = 1e-3;

// ---------------------------------------------------------------------------
// Partial-derivative sources

inline BqPartials fd_partials(const BqField& f, const SpacetimePoint& p, double h) {
    BqPartials d;
    for (int a = 0; a < 4; ++a)
        d[a] = (1.0 / (2.0 * h)) * (f.value(p.shifted(a, h)) - f.value(p.shifted(a, -h)));
    return d;
}

/// Exact partials when the field provides them, central differences otherwise.
inline BqPartials partials_of(const BqField& f, const SpacetimePoint& p,
                              double h = kDefaultFdStep) {
    return f.has_partials() ? f.partials(p) : fd_partials(f, p, h);
}

// ---------------------------------------------------------------------------
// Bigradient

/// ∇±F = (∂_τ f ∓ i div F) + ∂_τ F ± i grad f ± i rot F, assembled from the
/// four first partials.  The ∂_τ F term carries no sign: it comes from the
/// plain ∂_τ in ∇± = ∂_τ ± i∇ (the D± matrix diagonals say the same).
inline Biquaternion bigradient_from_partials(Sign sign, const BqPartials& d) {
    const double s = sign_value(sign);
    const Complex div_F = d[1].v.x + d[2].v.y + d[3].v.z;
    const CVec3 grad_f{d[1].s, d[2].s, d[3].s};
    const CVec3 rot_F{d[2].v.z - d[3].v.y, d[3].v.x - d[1].v.z, d[1].v.y - d[2].v.x};
    Biquaternion out;
    out.s = d[0].s - s * kImag * div_F;
    out.v = d[0].v + (s * kImag) * grad_f + (s * kImag) * rot_F;
    return out;
}

inline Biquaternion bigradient(Sign sign, const BqField& f, const SpacetimePoint& p,
                               double h = kDefaultFdStep) {
    return bigradient_from_partials(sign, partials_of(f, p, h));
}

/// Forced finite-difference path (ignores exact partials); used by the
/// convergence studies.
inline Biquaternion bigradient_fd(Sign sign, const BqField& f, const SpacetimePoint& p,
                                  double h) {
    return bigradient_from_partials(sign, fd_partials(f, p, h));
}

/// Maxwell-Dirac operator (∇± + m)∘F at a point.
inline Biquaternion md_apply(const Complex& m, Sign sign, const BqField& f,
                             const SpacetimePoint& p, double h = kDefaultFdStep) {
    return bigradient(sign, f, p, h) + m * f.value(p);
}

// ---------------------------------------------------------------------------
// d'Alembert factorization ∇⁻∘∇⁺ = ∇⁺∘∇⁻ = ∂²_τ − Δ

struct FactorizationCheck {
    Biquaternion lhs;  // nested bigradients
    Biquaternion rhs;  // wave operator applied componentwise
};

/// lhs = ∇^(-sign)(∇^(sign) f) with the outer derivative always a central
/// difference of step h; rhs = (∂²_τ − Δ)f via second-difference stencils
/// (differences of the exact partials when the field has them).
inline FactorizationCheck dalembert_factorization_check(Sign inner_sign, const BqField& f,
                                                        const SpacetimePoint& p, double h) {
    BqField inner;
    inner.value = [&f, inner_sign, h](const SpacetimePoint& q) {
        return bigradient(inner_sign, f, q, h);
    };
    FactorizationCheck out;
    out.lhs = bigradient_fd(opposite(inner_sign), inner, p, h);

    Biquaternion box;
    for (int a = 0; a < 4; ++a) {
        Biquaternion second;
        if (f.has_partials())
            second = (1.0 / (2.0 * h)) *
                     (f.partials(p.shifted(a, h))[a] - f.partials(p.shifted(a, -h))[a]);
        else
            second = (1.0 / (h * h)) * (f.value(p.shifted(a, h)) - 2.0 * f.value(p) +
                                        f.value(p.shifted(a, -h)));
        box = a == 0 ? second : box - second;
    }
    out.rhs = box;
    return out;
}

// ---------------------------------------------------------------------------
// Dirac matrices

using Mat4c = std::array<std::array<Complex, 4>, 4>;

/// The constant matrices D⁰..D³ with D⁺ = Σ_j D^j ∂_j (D⁰ the identity,
/// D¹..D³ Hermitian with entries in {0, ±i}).
inline std::array<Mat4c, 4> dirac_matrices() {
    const Complex i = kImag;
    std::array<Mat4c, 4> D{};
    for (int k = 0; k < 4; ++k) D[0][k][k] = 1.0;
    D[1][0][1] = -i; D[1][1][0] = i; D[1][2][3] = -i; D[1][3][2] = i;
    D[2][0][2] = -i; D[2][1][3] = i; D[2][2][0] = i;  D[2][3][1] = -i;
    D[3][0][3] = -i; D[3][1][2] = -i; D[3][2][1] = i; D[3][3][0] = i;
    return D;
}

/// Applies the matrix operator D± to the component 4-vector (f, F₁, F₂, F₃);
/// shares its derivative inputs with bigradient(), so the two paths must
/// agree slot for slot.
inline std::array<Complex, 4> matrix_apply(Sign sign, const BqField& f, const SpacetimePoint& p,
                                           double h = kDefaultFdStep) {
    static const std::array<Mat4c, 4> D = dirac_matrices();
    const BqPartials d = partials_of(f, p, h);
    std::array<Complex, 4> out{};
    for (int mu = 0; mu < 4; ++mu)
        for (int m = 0; m < 4; ++m)
            for (int j = 0; j < 4; ++j) {
                Complex entry = D[mu][m][j];
                if (sign == Sign::minus) entry = std::conj(entry);
                out[m] += entry * d[mu].component(j);
            }
    return out;
}

// ---------------------------------------------------------------------------
// Scalar operators

inline std::array<Complex, 4> scalar_fd_partials(const ScalarField& u, const SpacetimePoint& p,
                                                 double h) {
    std::array<Complex, 4> d{};
    for (int a = 0; a < 4; ++a)
        d[a] = (u.value(p.shifted(a, h)) - u.value(p.shifted(a, -h))) / (2.0 * h);
    return d;
}

/// Klein–Gordon–Fock–Schrödinger operator □u + 2m ∂_τ u + m² u.
inline Complex kgfsh_apply(const Complex& m, const ScalarField& u, const SpacetimePoint& p,
                           double h = kDefaultFdStep) {
    Complex box{};
    for (int a = 0; a < 4; ++a) {
        Complex second;
        if (u.has_partials())
            second = (u.partials(p.shifted(a, h))[a] - u.partials(p.shifted(a, -h))[a]) /
                     (2.0 * h);
        else
            second = (u.value(p.shifted(a, h)) - 2.0 * u.value(p) + u.value(p.shifted(a, -h))) /
                     (h * h);
        box += (a == 0 ? second : -second);
    }
    const Complex d_tau = u.has_partials()
                              ? u.partials(p)[0]
                              : (u.value(p.shifted(0, h)) - u.value(p.shifted(0, -h))) / (2.0 * h);
    return box + 2.0 * m * d_tau + m * m * u.value(p);
}

// ---------------------------------------------------------------------------
// Gradiental operator (harmonic amplitudes)

inline std::array<Biquaternion, 3> spatial_partials_of(const SpatialBqField& f, const Vec3& x,
                                                       double h) {
    if (f.has_partials()) return f.partials(x);
    std::array<Biquaternion, 3> d;
    for (int j = 0; j < 3; ++j) {
        Vec3 hi = x, lo = x;
        (j == 0 ? hi.x : j == 1 ? hi.y : hi.z) += h;
        (j == 0 ? lo.x : j == 1 ? lo.y : lo.z) -= h;
        d[j] = (1.0 / (2.0 * h)) * (f.value(hi) - f.value(lo));
    }
    return d;
}

/// ∇∘B by quaternion product: (−div B) + (grad b + rot B).
inline Biquaternion nabla_apply(const std::array<Biquaternion, 3>& d) {
    Biquaternion out;
    out.s = -(d[0].v.x + d[1].v.y + d[2].v.z);
    out.v = CVec3{d[0].s, d[1].s, d[2].s} +
            CVec3{d[1].v.z - d[2].v.y, d[2].v.x - d[0].v.z, d[0].v.y - d[1].v.x};
    return out;
}

/// Gradiental operator (w ± ∇)∘B(x), w = ω + ρ.  The superposition
/// (w + ∇)∘(w − ∇) equals w² + Δ on scalar fields.
inline Biquaternion gradiental_apply(double w, Sign sign, const SpatialBqField& f, const Vec3& x,
                                     double h = kDefaultFdStep) {
    const Biquaternion nabla = nabla_apply(spatial_partials_of(f, x, h));
    return w * f.value(x) + sign_value(sign) * nabla;
}

}  // namespace bq

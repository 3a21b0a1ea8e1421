#pragma once

// Orthogonal, Lorentz and Poincaré transformations realized as biquaternion
// sandwich products, with closed-form counterparts and composition rules.
//
// Composition convention throughout: compose(A, B) acts as "apply B first,
// then A" and its sandwich element is the product A∘B.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <optional>

#include "bq/biquaternion.hpp"
#include "bq/spacetime.hpp"

namespace bq {

/// Rotation element U(φ,e) = cos φ + e sin φ; the sandwich U∘Z∘U* rotates
/// space around the unit axis `e` through angle 2φ.
struct Rotor {
    double phi = 0.0;
    Vec3 axis{1.0, 0.0, 0.0};

    Rotor() = default;
    Rotor(double phi_, const Vec3& axis_) : phi(phi_), axis(normalized(axis_)) {}

    Biquaternion element() const {
        return {Complex{std::cos(phi)}, CVec3{axis} * Complex{std::sin(phi)}};
    }
};

/// Lorentz element L(θ,e) = ch θ + ie sh θ with L∘L⁻ = 1.
struct LorentzBoost {
    double theta = 0.0;
    Vec3 axis{1.0, 0.0, 0.0};

    LorentzBoost() = default;
    LorentzBoost(double theta_, const Vec3& axis_) : theta(theta_), axis(normalized(axis_)) {}

    /// Rapidity from velocity: ch 2θ = (1−v²)^{−1/2} gives θ = ½ artanh v.
    static LorentzBoost from_velocity(double v, const Vec3& axis_) {
        if (!(std::abs(v) < 1.0)) throw invalid_velocity("|v| must be < 1");
        return {0.5 * std::atanh(v), axis_};
    }

    double velocity() const { return std::tanh(2.0 * theta); }

    Biquaternion element() const {
        return {Complex{std::cosh(theta)}, CVec3{axis} * (kImag * std::sinh(theta))};
    }
};

/// Poincaré element P = U∘L = cos(φ+iθ) + e sin(φ+iθ), rotor and boost
/// sharing one axis.  Conserves the pseudonorm: P∘P⁻ = P*∘(P*)⁻ = 1.
struct Poincare {
    double phi = 0.0;
    double theta = 0.0;
    Vec3 axis{1.0, 0.0, 0.0};

    Poincare() = default;
    Poincare(double phi_, double theta_, const Vec3& axis_)
        : phi(phi_), theta(theta_), axis(normalized(axis_)) {}

    Complex angle() const { return {phi, theta}; }

    Biquaternion element() const {
        return {std::cos(angle()), CVec3{axis} * std::sin(angle())};
    }
    /// P* = cos(φ−iθ) − e sin(φ−iθ).
    Biquaternion element_conj() const { return conj(element()); }
};

// ---------------------------------------------------------------------------
// Rotations

/// Sandwich form Z′ = U∘Z∘U*.
inline SpacetimePoint apply_rotation(const Rotor& U, const SpacetimePoint& Z) {
    const Biquaternion u = U.element();
    return dequaternize(u * quaternize(Z) * conj(u));
}

/// Closed form of the same map: τ′ = τ,
/// x′ = e(e,x) + (x − e(e,x)) cos 2φ + [e,x] sin 2φ.
inline SpacetimePoint rotation_closed_form(const Rotor& U, const SpacetimePoint& Z) {
    const Vec3& e = U.axis;
    const Vec3 axial = e * dot(e, Z.x);
    const Vec3 xp =
        axial + (Z.x - axial) * std::cos(2.0 * U.phi) + cross(e, Z.x) * std::sin(2.0 * U.phi);
    return {Z.tau, xp};
}

struct RotorComposition {
    Rotor rotor;
    bool degenerate = false;  // composition was ±identity; axis fixed to e1
};

/// U₃ = U₁∘U₂ recovered in rotor form: φ₃ = arccos u₃ (principal branch),
/// e₃ = U₃/‖U₃‖.  Acts as "U₂ first, then U₁".
inline RotorComposition compose_rotors(const Rotor& U1, const Rotor& U2) {
    const Biquaternion u3 = U1.element() * U2.element();
    const double c = std::clamp(u3.s.real(), -1.0, 1.0);
    const double vn = std::sqrt(norm_sq(u3.v));
    RotorComposition out;
    if (vn < 1e-12) {
        out.degenerate = true;
        out.rotor.phi = c >= 0.0 ? 0.0 : std::numbers::pi;
        out.rotor.axis = {1.0, 0.0, 0.0};
        return out;
    }
    out.rotor.phi = std::acos(c);
    out.rotor.axis = u3.v.real() * (1.0 / vn);  // the vector part of a rotor product is real
    return out;
}

// ---------------------------------------------------------------------------
// Boosts

/// Sandwich form Z′ = L∘Z∘L; conserves τ² − ‖x‖².
inline SpacetimePoint apply_boost(const LorentzBoost& L, const SpacetimePoint& Z) {
    const Biquaternion l = L.element();
    return dequaternize(l * quaternize(Z) * l);
}

/// Relativistic closed form: τ′ = (τ + v(e,x))/√(1−v²),
/// x′ = (x − e(e,x)) + e((e,x) + vτ)/√(1−v²).
inline SpacetimePoint relativistic_map(double v, const Vec3& axis, const SpacetimePoint& Z) {
    if (!(std::abs(v) < 1.0)) throw invalid_velocity("|v| must be < 1");
    const Vec3 e = normalized(axis);
    const double g = 1.0 / std::sqrt(1.0 - v * v);
    const double ex = dot(e, Z.x);
    return {(Z.tau + v * ex) * g, (Z.x - e * ex) + e * ((ex + v * Z.tau) * g)};
}

/// Inverse of relativistic_map (the displayed inverse pair).
inline SpacetimePoint relativistic_map_inverse(double v, const Vec3& axis,
                                               const SpacetimePoint& Zp) {
    if (!(std::abs(v) < 1.0)) throw invalid_velocity("|v| must be < 1");
    const Vec3 e = normalized(axis);
    const double g = 1.0 / std::sqrt(1.0 - v * v);
    const double ex = dot(e, Zp.x);
    return {(Zp.tau - v * ex) * g, (Zp.x - e * ex) + e * ((ex - v * Zp.tau) * g)};
}

// ---------------------------------------------------------------------------
// Poincaré maps

/// Z′ = P∘Z∘P*.
inline SpacetimePoint apply_poincare(const Poincare& P, const SpacetimePoint& Z) {
    const Biquaternion p = P.element();
    return dequaternize(p * quaternize(Z) * P.element_conj());
}

/// Z = P⁻∘Z′∘(P*)⁻.
inline SpacetimePoint apply_poincare_inverse(const Poincare& P, const SpacetimePoint& Zp) {
    return dequaternize(mutual(P.element()) * quaternize(Zp) * mutual(P.element_conj()));
}

struct PoincareComposition {
    std::optional<Poincare> op;  // set only when the axes coincide
    Biquaternion raw;            // P₁∘P₂ in all cases
    bool closed = false;
};

/// Same-axis compositions close with added angles; otherwise only the raw
/// biquaternion product is returned (the vector part acquires a real
/// component and the result is not a Lorentz-group element).
inline PoincareComposition compose_poincare(const Poincare& P1, const Poincare& P2) {
    PoincareComposition out;
    out.raw = P1.element() * P2.element();
    if (norm(cross(P1.axis, P2.axis)) < 1e-12 && dot(P1.axis, P2.axis) > 0.0) {
        out.closed = true;
        out.op = Poincare{P1.phi + P2.phi, P1.theta + P2.theta, P1.axis};
    }
    return out;
}

// ---------------------------------------------------------------------------
// Field data under Poincaré transformations

/// Biwave-data transformation: if ∇^(sign) K = G holds at Z, the returned
/// pair (K′, G′) satisfies ∇′^(sign) K′ = G′ at Z′ = P⁻∘Z∘(P*)⁻, so
/// consumers evaluate the original fields at Z = apply_poincare(P, Z′).
///
/// For the ∇⁺ equation K′ = P⁻∘K∘P and G′ = P*∘G∘P; for ∇⁻ the left factors
/// swap.  Pure rotations have P* = P⁻ and both cases reduce to the common
/// sandwich K′ = P⁻∘K∘P, G′ = P⁻∘G∘P; for boosts the unequal left factors are
/// forced by the symbol identity P∘s_μ∘P* = Σ_ν Λ_νμ s_ν, and the numerical
/// residual check singles them out.
inline std::pair<Biquaternion, Biquaternion> transform_biwave_data(const Poincare& P,
                                                                   bool plus_equation,
                                                                   const Biquaternion& K,
                                                                   const Biquaternion& G) {
    const Biquaternion p = P.element();
    const Biquaternion pm = mutual(p);
    const Biquaternion pc = conj(p);
    if (plus_equation) return {pm * K * p, pc * G * p};
    return {pc * K * p, pm * G * p};
}

}  // namespace bq

#pragma once

// Minkowski-space points and their biquaternion embedding Z = τ + ix.

#include "bq/biquaternion.hpp"

namespace bq {

struct SpacetimePoint {
    double tau = 0.0;
    Vec3 x;

    constexpr SpacetimePoint() = default;
    constexpr SpacetimePoint(double tau_, const Vec3& x_) : tau(tau_), x(x_) {}
    constexpr SpacetimePoint(double tau_, double x1, double x2, double x3)
        : tau(tau_), x{x1, x2, x3} {}

    constexpr double component(int i) const { return i == 0 ? tau : x[i - 1]; }

    constexpr SpacetimePoint shifted(int axis, double d) const {
        SpacetimePoint p = *this;
        if (axis == 0)
            p.tau += d;
        else if (axis == 1)
            p.x.x += d;
        else if (axis == 2)
            p.x.y += d;
        else
            p.x.z += d;
        return p;
    }
};

/// Z = τ + ix (selfconjugated).
inline Biquaternion quaternize(const SpacetimePoint& p) {
    return {Complex{p.tau}, kImag * CVec3{p.x}};
}

/// Inverse of quaternize; requires a selfconjugated input within `tol`.
inline SpacetimePoint dequaternize(const Biquaternion& Z, double tol = 1e-9) {
    if (std::abs(Z.s.imag()) > tol * (1.0 + norm(Z)) ||
        norm(Z.v.real()) > tol * (1.0 + norm(Z)))
        throw out_of_domain("biquaternion is not a quaternized spacetime point");
    return {Z.s.real(), Z.v.imag()};
}

/// τ² − ‖x‖², the Minkowski interval (pseudonorm squared of Z).
constexpr double interval_sq(const SpacetimePoint& p) { return p.tau * p.tau - dot(p.x, p.x); }

}  // namespace bq

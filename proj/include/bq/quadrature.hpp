#pragma once

// Quadrature building blocks: Gauss–Legendre 1D rules, unit-sphere rules
// (octahedral tables for small node counts, Gauss×uniform product otherwise),
// and product integrators over balls and boxes.

#include <cmath>
#include <numbers>
#include <vector>

#include "bq/biquaternion.hpp"
#include "bq/errors.hpp"

namespace bq {

struct Quad1D {
    std::vector<double> x;  // nodes
    std::vector<double> w;  // weights
};

/// Gauss–Legendre nodes/weights on [−1, 1], Newton iteration on P_n.
inline Quad1D gauss_legendre(int n) {
    if (n < 1) throw quadrature_budget_exceeded("node count must be positive");
    Quad1D q;
    q.x.resize(n);
    q.w.resize(n);
    const int m = (n + 1) / 2;
    for (int i = 0; i < m; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        q.x[i] = -z;
        q.x[n - 1 - i] = z;
        q.w[i] = q.w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
    return q;
}

/// Affine image of a rule on [a, b].
inline Quad1D on_interval(const Quad1D& q, double a, double b) {
    Quad1D out = q;
    const double mid = 0.5 * (a + b), half = 0.5 * (b - a);
    for (std::size_t i = 0; i < out.x.size(); ++i) {
        out.x[i] = mid + half * q.x[i];
        out.w[i] = half * q.w[i];
    }
    return out;
}

// ---------------------------------------------------------------------------
// Unit-sphere rules (weights sum to 4π)

struct SphereRule {
    std::vector<Vec3> dir;
    std::vector<double> w;

    std::size_t size() const { return dir.size(); }
};

namespace detail {

inline void add_octahedron_vertices(SphereRule& r, double w) {
    for (int a = 0; a < 3; ++a)
        for (int s = -1; s <= 1; s += 2) {
            Vec3 v;
            (a == 0 ? v.x : a == 1 ? v.y : v.z) = s;
            r.dir.push_back(v);
            r.w.push_back(w);
        }
}

inline void add_cube_vertices(SphereRule& r, double w) {
    const double c = 1.0 / std::sqrt(3.0);
    for (int sx = -1; sx <= 1; sx += 2)
        for (int sy = -1; sy <= 1; sy += 2)
            for (int sz = -1; sz <= 1; sz += 2) {
                r.dir.push_back({sx * c, sy * c, sz * c});
                r.w.push_back(w);
            }
}

inline void add_edge_midpoints(SphereRule& r, double w) {
    const double c = 1.0 / std::sqrt(2.0);
    for (int a = 0; a < 3; ++a) {
        const int b = (a + 1) % 3;
        for (int sa = -1; sa <= 1; sa += 2)
            for (int sb = -1; sb <= 1; sb += 2) {
                Vec3 v;
                (a == 0 ? v.x : a == 1 ? v.y : v.z) = sa * c;
                (b == 0 ? v.x : b == 1 ? v.y : v.z) = sb * c;
                r.dir.push_back(v);
                r.w.push_back(w);
            }
    }
}

}  // namespace detail

/// Octahedrally symmetric rules: 6 nodes (degree 3), 14 (degree 5),
/// 26 (degree 7).  Rational weights, exact on the stated degrees.
inline SphereRule octahedral_sphere_rule(int n) {
    constexpr double four_pi = 4.0 * std::numbers::pi;
    SphereRule r;
    if (n == 6) {
        detail::add_octahedron_vertices(r, four_pi / 6.0);
    } else if (n == 14) {
        detail::add_octahedron_vertices(r, four_pi / 15.0);
        detail::add_cube_vertices(r, four_pi * 3.0 / 40.0);
    } else if (n == 26) {
        detail::add_octahedron_vertices(r, four_pi / 21.0);
        detail::add_edge_midpoints(r, four_pi * 4.0 / 105.0);
        detail::add_cube_vertices(r, four_pi * 9.0 / 280.0);
    } else {
        throw quadrature_budget_exceeded("no octahedral rule with this node count");
    }
    return r;
}

/// Gauss–Legendre in cos θ × uniform in φ; exact for spherical polynomials
/// up to degree min(2n_θ − 1, n_φ − 1) with n_φ = 2 n_θ.
inline SphereRule product_sphere_rule(int n_theta) {
    const int n_phi = 2 * n_theta;
    const Quad1D gl = gauss_legendre(n_theta);
    SphereRule r;
    r.dir.reserve(static_cast<std::size_t>(n_theta) * n_phi);
    r.w.reserve(r.dir.capacity());
    for (int i = 0; i < n_theta; ++i) {
        const double ct = gl.x[i], st = std::sqrt(1.0 - ct * ct);
        for (int j = 0; j < n_phi; ++j) {
            const double phi = 2.0 * std::numbers::pi * j / n_phi;
            r.dir.push_back({st * std::cos(phi), st * std::sin(phi), ct});
            r.w.push_back(gl.w[i] * 2.0 * std::numbers::pi / n_phi);
        }
    }
    return r;
}

/// Rule selection by requested node count: the octahedral tables for 6/14/26,
/// otherwise the smallest product rule with at least `n_s` nodes.
inline SphereRule sphere_rule(int n_s) {
    if (n_s == 6 || n_s == 14 || n_s == 26) return octahedral_sphere_rule(n_s);
    int n_theta = 3;
    while (2 * n_theta * n_theta < n_s) ++n_theta;
    return product_sphere_rule(n_theta);
}

/// Node budget for the radial × spherical product integrators.
struct QuadratureSpec {
    int n_r = 64;
    int n_s = 110;

    QuadratureSpec refined() const { return {2 * n_r, 4 * n_s}; }
};

// ---------------------------------------------------------------------------
// Product integrators

/// ∫_{r0≤‖y‖≤r1} g(y) dV(y) via Gauss–Legendre in r (r² weight) × sphere rule.
template <typename F>
auto integrate_shell(const F& g, const Vec3& center, double r0, double r1,
                     const QuadratureSpec& q) {
    const Quad1D radial = on_interval(gauss_legendre(q.n_r), r0, r1);
    const SphereRule sph = sphere_rule(q.n_s);
    using R = decltype(g(center));
    R acc{};
    for (std::size_t i = 0; i < radial.x.size(); ++i) {
        const double r = radial.x[i];
        R ring{};
        for (std::size_t j = 0; j < sph.size(); ++j)
            ring = ring + sph.w[j] * g(center + r * sph.dir[j]);
        acc = acc + (radial.w[i] * r * r) * ring;
    }
    return acc;
}

/// ∫ over the 4D box [lo, hi] with a per-axis Gauss–Legendre product rule.
template <typename F>
auto integrate_box4(const F& g, const std::array<double, 4>& lo, const std::array<double, 4>& hi,
                    int nodes_per_axis) {
    std::array<Quad1D, 4> q;
    for (int a = 0; a < 4; ++a)
        q[a] = on_interval(gauss_legendre(nodes_per_axis), lo[a], hi[a]);
    using R = decltype(g(0.0, Vec3{}));
    R acc{};
    for (std::size_t i0 = 0; i0 < q[0].x.size(); ++i0)
        for (std::size_t i1 = 0; i1 < q[1].x.size(); ++i1)
            for (std::size_t i2 = 0; i2 < q[2].x.size(); ++i2)
                for (std::size_t i3 = 0; i3 < q[3].x.size(); ++i3) {
                    const double w = q[0].w[i0] * q[1].w[i1] * q[2].w[i2] * q[3].w[i3];
                    acc = acc + w * g(q[0].x[i0], Vec3{q[1].x[i1], q[2].x[i2], q[3].x[i3]});
                }
    return acc;
}

/// ∫ over the 3D box with a per-axis Gauss–Legendre product rule.
template <typename F>
auto integrate_box3(const F& g, const Vec3& lo, const Vec3& hi, int nodes_per_axis) {
    const Quad1D base = gauss_legendre(nodes_per_axis);
    const Quad1D qx = on_interval(base, lo.x, hi.x);
    const Quad1D qy = on_interval(base, lo.y, hi.y);
    const Quad1D qz = on_interval(base, lo.z, hi.z);
    using R = decltype(g(Vec3{}));
    R acc{};
    for (std::size_t i = 0; i < qx.x.size(); ++i)
        for (std::size_t j = 0; j < qy.x.size(); ++j)
            for (std::size_t k = 0; k < qz.x.size(); ++k)
                acc = acc + (qx.w[i] * qy.w[j] * qz.w[k]) * g(Vec3{qx.x[i], qy.x[j], qz.x[k]});
    return acc;
}

}  // namespace bq

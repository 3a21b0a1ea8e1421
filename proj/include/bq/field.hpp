#pragma once

// Biquaternion-valued fields on spacetime, presented analytically (an
// evaluator plus optional exact first partials) or as uniform grid samples.

#include <array>
#include <functional>
#include <utility>
#include <vector>

#include "bq/biquaternion.hpp"
#include "bq/spacetime.hpp"

namespace bq {

/// First partial derivatives {∂_τ, ∂_1, ∂_2, ∂_3} of a biquaternion field.
struct BqPartials {
    std::array<Biquaternion, 4> d{};  // index 0 is ∂_τ

    const Biquaternion& operator[](int axis) const { return d[axis]; }
    Biquaternion& operator[](int axis) { return d[axis]; }
    const Biquaternion& d_tau() const { return d[0]; }
};

struct BqField {
    std::function<Biquaternion(const SpacetimePoint&)> value;
    std::function<BqPartials(const SpacetimePoint&)> partials;  // may be empty

    bool has_partials() const { return static_cast<bool>(partials); }

    /// Same evaluator with the exact partials dropped (forces finite
    /// differences downstream).
    BqField without_partials() const { return {value, nullptr}; }
};

/// Complex scalar field on spacetime (potentials, KGFSh unknowns).
struct ScalarField {
    std::function<Complex(const SpacetimePoint&)> value;
    std::function<std::array<Complex, 4>(const SpacetimePoint&)> partials;  // may be empty

    bool has_partials() const { return static_cast<bool>(partials); }
};

/// Biquaternion field on R³ (harmonic amplitudes, static problems).
struct SpatialBqField {
    std::function<Biquaternion(const Vec3&)> value;
    std::function<std::array<Biquaternion, 3>(const Vec3&)> partials;  // may be empty

    bool has_partials() const { return static_cast<bool>(partials); }
};

// ---------------------------------------------------------------------------
// Uniform grid samples

struct GridBqField {
    SpacetimePoint origin;
    std::array<double, 4> spacing{};  // per axis, all > 0
    std::array<int, 4> extents{};     // nodes per axis
    std::vector<Biquaternion> data;   // row-major, tau slowest

    std::size_t index(int i0, int i1, int i2, int i3) const {
        return ((static_cast<std::size_t>(i0) * extents[1] + i1) * extents[2] + i2) * extents[3] +
               i3;
    }

    const Biquaternion& at(int i0, int i1, int i2, int i3) const {
        return data[index(i0, i1, i2, i3)];
    }

    SpacetimePoint node(int i0, int i1, int i2, int i3) const {
        return {origin.tau + i0 * spacing[0],
                {origin.x.x + i1 * spacing[1], origin.x.y + i2 * spacing[2],
                 origin.x.z + i3 * spacing[3]}};
    }

    /// Maps a point to its grid indices; the point must sit on a node.
    std::array<int, 4> locate(const SpacetimePoint& p) const {
        std::array<int, 4> idx{};
        for (int a = 0; a < 4; ++a) {
            const double off = (p.component(a) - origin.component(a)) / spacing[a];
            const int i = static_cast<int>(std::lround(off));
            if (std::abs(off - i) > 1e-6 || i < 0 || i >= extents[a])
                throw out_of_domain("point is not a grid node");
            idx[a] = i;
        }
        return idx;
    }

    bool interior(const std::array<int, 4>& idx, int margin = 1) const {
        for (int a = 0; a < 4; ++a)
            if (idx[a] < margin || idx[a] >= extents[a] - margin) return false;
        return true;
    }

    /// View as a BqField.  Values are defined on nodes only; partials use
    /// central differences with the grid spacing and require an interior
    /// node (out_of_domain otherwise).
    BqField as_field() const {
        const GridBqField* g = this;
        BqField f;
        f.value = [g](const SpacetimePoint& p) {
            const auto idx = g->locate(p);
            return g->at(idx[0], idx[1], idx[2], idx[3]);
        };
        f.partials = [g](const SpacetimePoint& p) {
            const auto idx = g->locate(p);
            if (!g->interior(idx)) throw out_of_domain("no stencil support at grid boundary");
            BqPartials d;
            for (int a = 0; a < 4; ++a) {
                auto lo = idx, hi = idx;
                --lo[a];
                ++hi[a];
                d[a] = (1.0 / (2.0 * g->spacing[a])) *
                       (g->at(hi[0], hi[1], hi[2], hi[3]) - g->at(lo[0], lo[1], lo[2], lo[3]));
            }
            return d;
        };
        return f;
    }
};

/// Multilinear interpolation of grid samples at an arbitrary point: zero
/// outside the sampled box, constant along axes with a single node.  This is
/// the evaluation used when a grid acts as a source in quadrature-based
/// solves; the strict node view (as_field) serves the stencil operators.
inline Biquaternion interpolate(const GridBqField& g, const SpacetimePoint& p) {
    int base[4];
    double frac[4];
    for (int a = 0; a < 4; ++a) {
        if (g.extents[a] == 1) {
            base[a] = 0;
            frac[a] = 0.0;
            continue;
        }
        const double u = (p.component(a) - g.origin.component(a)) / g.spacing[a];
        if (u < 0.0 || u > g.extents[a] - 1.0) return {};
        base[a] = std::min(static_cast<int>(u), g.extents[a] - 2);
        frac[a] = u - base[a];
    }
    Biquaternion acc;
    for (int corner = 0; corner < 16; ++corner) {
        double w = 1.0;
        int idx[4];
        for (int a = 0; a < 4; ++a) {
            const int bit = (corner >> a) & 1;
            if (g.extents[a] == 1 && bit) {
                w = 0.0;
                break;
            }
            idx[a] = base[a] + bit;
            w *= bit ? frac[a] : 1.0 - frac[a];
        }
        if (w != 0.0) acc = acc + w * g.at(idx[0], idx[1], idx[2], idx[3]);
    }
    return acc;
}

/// Samples an analytic field onto a uniform grid.
inline GridBqField sample_grid(const BqField& f, const SpacetimePoint& origin,
                               const std::array<double, 4>& spacing,
                               const std::array<int, 4>& extents) {
    GridBqField g;
    g.origin = origin;
    g.spacing = spacing;
    g.extents = extents;
    g.data.resize(static_cast<std::size_t>(extents[0]) * extents[1] * extents[2] * extents[3]);
    for (int i0 = 0; i0 < extents[0]; ++i0)
        for (int i1 = 0; i1 < extents[1]; ++i1)
            for (int i2 = 0; i2 < extents[2]; ++i2)
                for (int i3 = 0; i3 < extents[3]; ++i3)
                    g.data[g.index(i0, i1, i2, i3)] = f.value(g.node(i0, i1, i2, i3));
    return g;
}

}  // namespace bq

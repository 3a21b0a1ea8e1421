#pragma once

// Seeded random inputs for the property suites.  The generator is
// std::mt19937_64 with an explicit seed; doubles are produced by the fixed
// mapping (x >> 11)·2⁻⁵³, so a given seed yields the same case stream on
// every run of the same build.

#include <cstdint>
#include <random>

#include "bq/biquaternion.hpp"
#include "bq/spacetime.hpp"

namespace bq {

class Rng {
  public:
    explicit Rng(std::uint64_t seed) : gen_(seed) {}

    /// Uniform in [0, 1).
    double uniform() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }
    /// Uniform in [−1, 1).
    double symmetric() { return 2.0 * uniform() - 1.0; }
    double in(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    Complex complex_unit_box() { return {symmetric(), symmetric()}; }

    CVec3 cvec3() { return {complex_unit_box(), complex_unit_box(), complex_unit_box()}; }

    /// Components uniform in the complex unit box [−1,1]².
    Biquaternion biquaternion() { return {complex_unit_box(), cvec3()}; }

    Vec3 vec3() { return {symmetric(), symmetric(), symmetric()}; }

    Vec3 unit_vec3() {
        for (;;) {
            const Vec3 v = vec3();
            const double n = norm(v);
            if (n > 0.1 && n <= 1.0) return v / n;
        }
    }

    SpacetimePoint spacetime_point(double scale = 1.0) {
        return {scale * symmetric(), scale * vec3()};
    }

  private:
    std::mt19937_64 gen_;
};

}  // namespace bq

#pragma once

// Core biquaternion arithmetic: hypercomplex numbers f + F with a complex
// scalar part f and a complex 3-vector part F, under the quaternionic
// product.  All values are immutable plain structs; every function is pure.

#include <array>
#include <cmath>
#include <complex>

#include "bq/errors.hpp"

namespace bq {

using Complex = std::complex<double>;

inline constexpr Complex kImag{0.0, 1.0};

/// Real 3-vector (spatial points, axes, normals).
struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    constexpr Vec3() = default;
    constexpr Vec3(double x_, double y_, double z_) : x(x_), y(y_), z(z_) {}

    constexpr Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr Vec3 operator-() const { return {-x, -y, -z}; }
    constexpr Vec3 operator*(double a) const { return {a * x, a * y, a * z}; }
    constexpr Vec3 operator/(double a) const { return {x / a, y / a, z / a}; }
    friend constexpr Vec3 operator*(double a, const Vec3& v) { return v * a; }

    constexpr double operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

constexpr double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
constexpr Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline double norm(const Vec3& v) { return std::sqrt(dot(v, v)); }

inline Vec3 normalized(const Vec3& v) {
    const double n = norm(v);
    if (!(n > 0.0)) throw zero_wave_vector("cannot normalize a zero vector");
    return v / n;
}

/// Complex 3-vector.
struct CVec3 {
    Complex x{}, y{}, z{};

    constexpr CVec3() = default;
    constexpr CVec3(Complex x_, Complex y_, Complex z_) : x(x_), y(y_), z(z_) {}
    constexpr CVec3(const Vec3& v) : x(v.x), y(v.y), z(v.z) {}

    constexpr CVec3 operator+(const CVec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    constexpr CVec3 operator-(const CVec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    constexpr CVec3 operator-() const { return {-x, -y, -z}; }
    constexpr CVec3 operator*(const Complex& a) const { return {a * x, a * y, a * z}; }
    friend constexpr CVec3 operator*(const Complex& a, const CVec3& v) { return v * a; }
    constexpr CVec3 operator*(double a) const { return {a * x, a * y, a * z}; }
    friend constexpr CVec3 operator*(double a, const CVec3& v) { return v * a; }

    constexpr Complex operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }

    constexpr Vec3 real() const { return {x.real(), y.real(), z.real()}; }
    constexpr Vec3 imag() const { return {x.imag(), y.imag(), z.imag()}; }
};

/// Bilinear product (no conjugation): sum of componentwise products.
constexpr Complex dot(const CVec3& a, const CVec3& b) {
    return a.x * b.x + a.y * b.y + a.z * b.z;
}
constexpr CVec3 cross(const CVec3& a, const CVec3& b) {
    return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline CVec3 conj(const CVec3& v) { return {std::conj(v.x), std::conj(v.y), std::conj(v.z)}; }
/// Sum of squared moduli of the components.
inline double norm_sq(const CVec3& v) {
    return std::norm(v.x) + std::norm(v.y) + std::norm(v.z);
}

/// Biquaternion f + F: complex scalar part `s`, complex vector part `v`.
struct Biquaternion {
    Complex s{};
    CVec3 v{};

    constexpr Biquaternion() = default;
    constexpr Biquaternion(Complex scalar) : s(scalar) {}
    constexpr Biquaternion(double scalar) : s(scalar) {}
    constexpr Biquaternion(const CVec3& vec) : v(vec) {}
    constexpr Biquaternion(Complex scalar, const CVec3& vec) : s(scalar), v(vec) {}

    static constexpr Biquaternion unit() { return Biquaternion{Complex{1.0}}; }
    static constexpr Biquaternion e1() { return Biquaternion{CVec3{1.0, 0.0, 0.0}}; }
    static constexpr Biquaternion e2() { return Biquaternion{CVec3{0.0, 1.0, 0.0}}; }
    static constexpr Biquaternion e3() { return Biquaternion{CVec3{0.0, 0.0, 1.0}}; }

    constexpr Biquaternion operator+(const Biquaternion& o) const { return {s + o.s, v + o.v}; }
    constexpr Biquaternion operator-(const Biquaternion& o) const { return {s - o.s, v - o.v}; }
    constexpr Biquaternion operator-() const { return {-s, -v}; }

    /// Component access in the (b0, b1, b2, b3) = (scalar, vector) ordering.
    constexpr Complex component(int i) const { return i == 0 ? s : v[i - 1]; }
};

/// Complex-linear combination a*F + b*G.
constexpr Biquaternion linear_combine(const Complex& a, const Biquaternion& F, const Complex& b,
                                      const Biquaternion& G) {
    return {a * F.s + b * G.s, a * F.v + b * G.v};
}

constexpr Biquaternion operator*(const Complex& a, const Biquaternion& F) {
    return {a * F.s, a * F.v};
}
constexpr Biquaternion operator*(const Biquaternion& F, const Complex& a) { return a * F; }
constexpr Biquaternion operator*(double a, const Biquaternion& F) { return Complex{a} * F; }
constexpr Biquaternion operator*(const Biquaternion& F, double a) { return Complex{a} * F; }

/// Quaternionic product: F∘G = (fg − (F,G)) + (fG + gF + [F,G]).
constexpr Biquaternion operator*(const Biquaternion& F, const Biquaternion& G) {
    return {F.s * G.s - dot(F.v, G.v), F.s * G.v + G.s * F.v + cross(F.v, G.v)};
}

/// F∘G − G∘F; always purely vectorial and equal to 2[F,G].
constexpr Biquaternion commutator(const Biquaternion& F, const Biquaternion& G) {
    return Biquaternion{CVec3{2.0 * cross(F.v, G.v)}};
}

/// Mutual biquaternion f − F.
constexpr Biquaternion mutual(const Biquaternion& F) { return {F.s, -F.v}; }
/// Componentwise complex conjugate f̄ + F̄.
inline Biquaternion cconj(const Biquaternion& F) { return {std::conj(F.s), conj(F.v)}; }
/// Conjugate f̄ − F̄ (complex conjugate of the mutual).
inline Biquaternion conj(const Biquaternion& F) { return {std::conj(F.s), -conj(F.v)}; }

/// Bilinear scalar product (F,G) = fg + (F,G), no conjugation.
constexpr Complex scalar_product(const Biquaternion& F, const Biquaternion& G) {
    return F.s * G.s + dot(F.v, G.v);
}

inline double norm_sq(const Biquaternion& F) { return std::norm(F.s) + norm_sq(F.v); }
/// Nonnegative norm √(|f|² + ‖F‖²).
inline double norm(const Biquaternion& F) { return std::sqrt(norm_sq(F)); }

/// |f|² − ‖F‖², the (real) square of the pseudonorm.
inline double pseudonorm_sq(const Biquaternion& F) { return std::norm(F.s) - norm_sq(F.v); }

/// Pseudonorm √(|f|² − ‖F‖²) with Re ≥ 0: real root when the radicand is
/// nonnegative, i·√(−radicand) otherwise.
inline Complex pseudonorm(const Biquaternion& F) {
    const double r = pseudonorm_sq(F);
    return r >= 0.0 ? Complex{std::sqrt(r), 0.0} : Complex{0.0, std::sqrt(-r)};
}

inline bool is_selfconjugated(const Biquaternion& F, double tol = 1e-12) {
    return norm(conj(F) - F) <= tol * (1.0 + norm(F));
}

/// F∘F̄ = F̄∘F = 1 within tolerance (holds for Lorentz elements).
inline bool is_unitary(const Biquaternion& F, double tol = 1e-12) {
    return norm(F * cconj(F) - Biquaternion::unit()) <= tol &&
           norm(cconj(F) * F - Biquaternion::unit()) <= tol;
}

/// F∘F⁻ = F⁻∘F = 1 within tolerance (holds for rotation elements).
inline bool is_mutual_unitary(const Biquaternion& F, double tol = 1e-12) {
    return norm(F * mutual(F) - Biquaternion::unit()) <= tol &&
           norm(mutual(F) * F - Biquaternion::unit()) <= tol;
}

/// Inverse F⁻/(F,F).  Left and right inverses coincide whenever (F,F) ≠ 0;
/// throws non_invertible when |(F,F)| falls below the relative cutoff.
inline Biquaternion inverse(const Biquaternion& F) {
    const Complex ff = scalar_product(F, F);
    const double cutoff = 1e-12 * std::max(1.0, norm_sq(F));
    if (std::abs(ff) <= cutoff)
        throw non_invertible("biquaternion is not invertible: (F,F) vanishes");
    return (1.0 / ff) * mutual(F);
}

/// Solves F∘G = B.
inline Biquaternion solve_left(const Biquaternion& F, const Biquaternion& B) {
    return inverse(F) * B;
}
/// Solves G∘F = B.
inline Biquaternion solve_right(const Biquaternion& F, const Biquaternion& B) {
    return B * inverse(F);
}

/// Energy-impulse Ξ = ½ F∘F*: scalar part is the (real) energy density W,
/// vector part is i·P with P the real momentum density.
struct EnergyImpulse {
    Biquaternion xi;
    double W = 0.0;
    Vec3 P;
    double pseudonorm_sq = 0.0;  // W² − ‖P‖²
};

inline EnergyImpulse energy_impulse(const Biquaternion& F) {
    EnergyImpulse out;
    out.xi = 0.5 * (F * conj(F));
    out.W = out.xi.s.real();
    out.P = out.xi.v.imag();
    out.pseudonorm_sq = out.W * out.W - dot(out.P, out.P);
    return out;
}

inline bool approx_equal(const Biquaternion& F, const Biquaternion& G, double atol = 1e-12,
                         double rtol = 1e-12) {
    return norm(F - G) <= atol + rtol * std::max(norm(F), norm(G));
}

}  // namespace bq

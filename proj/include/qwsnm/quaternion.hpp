#pragma once

#include <cmath>
#include <iosfwd>

namespace qwsnm {

// Hamilton quaternion a0 + a1*i + a2*j + a3*k, all components double.
// Multiplication is non-commutative: i*j = k = -j*i.
struct Quaternion {
  double a0 = 0.0;
  double a1 = 0.0;
  double a2 = 0.0;
  double a3 = 0.0;

  Quaternion() = default;
  constexpr Quaternion(double r, double i, double j, double k)
      : a0(r), a1(i), a2(j), a3(k) {}

  static constexpr Quaternion real(double r) { return {r, 0, 0, 0}; }
};

enum class Axis { I, J, K };

constexpr Quaternion operator+(const Quaternion& a, const Quaternion& b) {
  return {a.a0 + b.a0, a.a1 + b.a1, a.a2 + b.a2, a.a3 + b.a3};
}

constexpr Quaternion operator-(const Quaternion& a, const Quaternion& b) {
  return {a.a0 - b.a0, a.a1 - b.a1, a.a2 - b.a2, a.a3 - b.a3};
}

constexpr Quaternion operator-(const Quaternion& a) {
  return {-a.a0, -a.a1, -a.a2, -a.a3};
}

constexpr Quaternion operator*(double s, const Quaternion& a) {
  return {s * a.a0, s * a.a1, s * a.a2, s * a.a3};
}

constexpr Quaternion operator*(const Quaternion& a, double s) { return s * a; }

// Hamilton product.
constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) {
  return {a.a0 * b.a0 - a.a1 * b.a1 - a.a2 * b.a2 - a.a3 * b.a3,
          a.a0 * b.a1 + a.a1 * b.a0 + a.a2 * b.a3 - a.a3 * b.a2,
          a.a0 * b.a2 - a.a1 * b.a3 + a.a2 * b.a0 + a.a3 * b.a1,
          a.a0 * b.a3 + a.a1 * b.a2 - a.a2 * b.a1 + a.a3 * b.a0};
}

constexpr Quaternion conj(const Quaternion& a) {
  return {a.a0, -a.a1, -a.a2, -a.a3};
}

inline double modulus(const Quaternion& a) {
  return std::sqrt(a.a0 * a.a0 + a.a1 * a.a1 + a.a2 * a.a2 + a.a3 * a.a3);
}

inline double modulus_sq(const Quaternion& a) {
  return a.a0 * a.a0 + a.a1 * a.a1 + a.a2 * a.a2 + a.a3 * a.a3;
}

// Involution q^u = -u q u for a pure unit axis u; flips the two components
// orthogonal to the axis.
constexpr Quaternion involution(const Quaternion& a, Axis axis) {
  switch (axis) {
    case Axis::I:
      return {a.a0, a.a1, -a.a2, -a.a3};
    case Axis::J:
      return {a.a0, -a.a1, a.a2, -a.a3};
    default:
      return {a.a0, -a.a1, -a.a2, a.a3};
  }
}

std::ostream& operator<<(std::ostream& os, const Quaternion& q);

}  // namespace qwsnm

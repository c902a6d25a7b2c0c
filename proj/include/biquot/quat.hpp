#pragma once

#include <cmath>
#include <ostream>

namespace biquot {

struct ImQuaternion;

/// Real quaternion re + ci*i + cj*j + ck*k. Component order (re, i, j, k)
/// is used everywhere a quaternion is serialized.
struct Quaternion {
  double re = 0.0;
  double ci = 0.0;
  double cj = 0.0;
  double ck = 0.0;

  constexpr Quaternion() = default;
  constexpr Quaternion(double r, double i, double j, double k) : re(r), ci(i), cj(j), ck(k) {}
  constexpr explicit Quaternion(double r) : re(r) {}

  static constexpr Quaternion unit_i() { return {0.0, 1.0, 0.0, 0.0}; }
  static constexpr Quaternion unit_j() { return {0.0, 0.0, 1.0, 0.0}; }
  static constexpr Quaternion unit_k() { return {0.0, 0.0, 0.0, 1.0}; }

  constexpr Quaternion conj() const { return {re, -ci, -cj, -ck}; }
  constexpr double norm2() const { return re * re + ci * ci + cj * cj + ck * ck; }
  double norm() const { return std::sqrt(norm2()); }
  constexpr ImQuaternion imag() const;

  constexpr Quaternion& operator+=(const Quaternion& o) {
    re += o.re;
    ci += o.ci;
    cj += o.cj;
    ck += o.ck;
    return *this;
  }
  constexpr Quaternion& operator-=(const Quaternion& o) {
    re -= o.re;
    ci -= o.ci;
    cj -= o.cj;
    ck -= o.ck;
    return *this;
  }
  constexpr Quaternion& operator*=(double s) {
    re *= s;
    ci *= s;
    cj *= s;
    ck *= s;
    return *this;
  }

  bool is_finite() const {
    return std::isfinite(re) && std::isfinite(ci) && std::isfinite(cj) && std::isfinite(ck);
  }

  friend constexpr bool operator==(const Quaternion&, const Quaternion&) = default;
};

/// Purely imaginary quaternion; Im H is the Lie algebra sp(1).
struct ImQuaternion {
  double ci = 0.0;
  double cj = 0.0;
  double ck = 0.0;

  constexpr ImQuaternion() = default;
  constexpr ImQuaternion(double i, double j, double k) : ci(i), cj(j), ck(k) {}

  constexpr Quaternion as_quaternion() const { return {0.0, ci, cj, ck}; }
  constexpr operator Quaternion() const { return as_quaternion(); }  // NOLINT(google-explicit-constructor)
  constexpr double norm2() const { return ci * ci + cj * cj + ck * ck; }

  friend constexpr bool operator==(const ImQuaternion&, const ImQuaternion&) = default;
};

constexpr ImQuaternion Quaternion::imag() const { return {ci, cj, ck}; }

constexpr Quaternion operator+(Quaternion a, const Quaternion& b) { return a += b; }
constexpr Quaternion operator-(Quaternion a, const Quaternion& b) { return a -= b; }
constexpr Quaternion operator-(const Quaternion& a) { return {-a.re, -a.ci, -a.cj, -a.ck}; }
constexpr Quaternion operator*(double s, Quaternion a) { return a *= s; }
constexpr Quaternion operator*(Quaternion a, double s) { return a *= s; }

/// Hamilton product: i*j = k, j*k = i, k*i = j.
constexpr Quaternion q_mul(const Quaternion& a, const Quaternion& b) {
  return {a.re * b.re - a.ci * b.ci - a.cj * b.cj - a.ck * b.ck,
          a.re * b.ci + a.ci * b.re + a.cj * b.ck - a.ck * b.cj,
          a.re * b.cj - a.ci * b.ck + a.cj * b.re + a.ck * b.ci,
          a.re * b.ck + a.ci * b.cj - a.cj * b.ci + a.ck * b.re};
}

constexpr Quaternion operator*(const Quaternion& a, const Quaternion& b) { return q_mul(a, b); }

struct ConjNorm {
  Quaternion conj;
  double norm2;
};

constexpr ConjNorm q_conj_norm(const Quaternion& a) { return {a.conj(), a.norm2()}; }

/// Real inner product on H = R^4.
constexpr double real_dot(const Quaternion& a, const Quaternion& b) {
  return a.re * b.re + a.ci * b.ci + a.cj * b.cj + a.ck * b.ck;
}

constexpr ImQuaternion operator+(const ImQuaternion& a, const ImQuaternion& b) {
  return {a.ci + b.ci, a.cj + b.cj, a.ck + b.ck};
}
constexpr ImQuaternion operator-(const ImQuaternion& a, const ImQuaternion& b) {
  return {a.ci - b.ci, a.cj - b.cj, a.ck - b.ck};
}
constexpr ImQuaternion operator*(double s, const ImQuaternion& a) { return {s * a.ci, s * a.cj, s * a.ck}; }

inline std::ostream& operator<<(std::ostream& os, const Quaternion& q) {
  return os << '(' << q.re << ", " << q.ci << "i, " << q.cj << "j, " << q.ck << "k)";
}

}  // namespace biquot

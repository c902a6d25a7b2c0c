#include "biquot/liealg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace biquot {

namespace {

constexpr std::array<std::array<int, 2>, 3> kOffDiagonal = {{{0, 1}, {0, 2}, {1, 2}}};
const double kSqrt2 = std::sqrt(2.0);

bool in_p_slot(int r, int c) { return (r == 2) != (c == 2); }

}  // namespace

QMatrix3 QMatrix3::identity() {
  QMatrix3 m;
  for (int d = 0; d < 3; ++d) m(d, d) = Quaternion(1.0);
  return m;
}

QMatrix3 QMatrix3::conj_transpose() const {
  QMatrix3 t;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) t(r, c) = e_[c][r].conj();
  return t;
}

double QMatrix3::max_abs_entry() const {
  double m = 0.0;
  for (const auto& row : e_)
    for (const auto& q : row)
      m = std::max({m, std::abs(q.re), std::abs(q.ci), std::abs(q.cj), std::abs(q.ck)});
  return m;
}

bool QMatrix3::is_finite() const {
  for (const auto& row : e_)
    for (const auto& q : row)
      if (!q.is_finite()) return false;
  return true;
}

QMatrix3& QMatrix3::operator+=(const QMatrix3& o) {
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) e_[r][c] += o.e_[r][c];
  return *this;
}

QMatrix3& QMatrix3::operator-=(const QMatrix3& o) {
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) e_[r][c] -= o.e_[r][c];
  return *this;
}

QMatrix3& QMatrix3::operator*=(double s) {
  for (auto& row : e_)
    for (auto& q : row) q *= s;
  return *this;
}

QMatrix3 operator+(QMatrix3 a, const QMatrix3& b) { return a += b; }
QMatrix3 operator-(QMatrix3 a, const QMatrix3& b) { return a -= b; }
QMatrix3 operator*(double s, QMatrix3 a) { return a *= s; }

QMatrix3 operator*(const QMatrix3& a, const QMatrix3& b) {
  QMatrix3 out;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) {
      Quaternion acc;
      for (int k = 0; k < 3; ++k) acc += a(r, k) * b(k, c);
      out(r, c) = acc;
    }
  return out;
}

double max_abs_diff(const QMatrix3& a, const QMatrix3& b) { return (a - b).max_abs_entry(); }

Sp3Element::Sp3Element(const QMatrix3& m) : m_(m) {
  if (!m.is_finite()) throw std::invalid_argument("Sp3Element: non-finite entry");
  const double scale = std::max(1.0, m.max_abs_entry());
  if ((m + m.conj_transpose()).max_abs_entry() > 1e-12 * scale)
    throw std::invalid_argument("Sp3Element: matrix is not skew-Hermitian");
}

Sp3Element Sp3Element::skew_part(const QMatrix3& m) {
  Sp3Element out;
  out.m_ = 0.5 * (m - m.conj_transpose());
  return out;
}

Sp3Element Sp3Element::diag(const ImQuaternion& a, const ImQuaternion& b, const ImQuaternion& c) {
  Sp3Element out;
  out.m_(0, 0) = a;
  out.m_(1, 1) = b;
  out.m_(2, 2) = c;
  return out;
}

Sp3Element Sp3Element::from_coords(const Coords21& x) {
  Sp3Element out;
  for (int d = 0; d < 3; ++d) out.m_(d, d) = Quaternion(0.0, x[3 * d], x[3 * d + 1], x[3 * d + 2]);
  for (int p = 0; p < 3; ++p) {
    const int base = 9 + 4 * p;
    const Quaternion q =
        (1.0 / kSqrt2) * Quaternion(x[base], x[base + 1], x[base + 2], x[base + 3]);
    const auto [r, c] = kOffDiagonal[p];
    out.m_(r, c) = q;
    out.m_(c, r) = -q.conj();
  }
  return out;
}

Sp3Element Sp3Element::basis_element(int index) {
  Coords21 x = Coords21::Zero();
  x[index] = 1.0;
  return from_coords(x);
}

Coords21 Sp3Element::coords() const {
  Coords21 x;
  for (int d = 0; d < 3; ++d) {
    x[3 * d] = m_(d, d).ci;
    x[3 * d + 1] = m_(d, d).cj;
    x[3 * d + 2] = m_(d, d).ck;
  }
  for (int p = 0; p < 3; ++p) {
    const int base = 9 + 4 * p;
    const auto [r, c] = kOffDiagonal[p];
    const Quaternion& q = m_(r, c);
    x[base] = kSqrt2 * q.re;
    x[base + 1] = kSqrt2 * q.ci;
    x[base + 2] = kSqrt2 * q.cj;
    x[base + 3] = kSqrt2 * q.ck;
  }
  return x;
}

double Sp3Element::norm() const { return std::sqrt(std::max(0.0, g0_inner(*this, *this))); }

Sp3Element& Sp3Element::operator+=(const Sp3Element& o) {
  m_ += o.m_;
  return *this;
}
Sp3Element& Sp3Element::operator-=(const Sp3Element& o) {
  m_ -= o.m_;
  return *this;
}
Sp3Element& Sp3Element::operator*=(double s) {
  m_ *= s;
  return *this;
}

Sp3Element operator+(Sp3Element a, const Sp3Element& b) { return a += b; }
Sp3Element operator-(Sp3Element a, const Sp3Element& b) { return a -= b; }
Sp3Element operator-(const Sp3Element& a) { return -1.0 * a; }
Sp3Element operator*(double s, Sp3Element a) { return a *= s; }

Sp3Element bracket(const Sp3Element& a, const Sp3Element& b) {
  return Sp3Element::skew_part(a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

double g0_inner(const Sp3Element& a, const Sp3Element& b) {
  double tr = 0.0;
  for (int r = 0; r < 3; ++r)
    for (int k = 0; k < 3; ++k) tr += (a(r, k) * b(k, r)).re;
  return -tr;
}

KPDecomposition split_kp(const Sp3Element& a) {
  QMatrix3 k;
  QMatrix3 p;
  for (int r = 0; r < 3; ++r)
    for (int c = 0; c < 3; ++c) (in_p_slot(r, c) ? p : k)(r, c) = a(r, c);
  return {Sp3Element(k), Sp3Element(p)};
}

Sp3Element sp2_project(const Sp3Element& a) {
  QMatrix3 m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m(r, c) = a(r, c);
  return Sp3Element(m);
}

PVector PVector::from_p_part(const Sp3Element& p_part) { return {p_part(0, 2), p_part(1, 2)}; }

Sp3Element PVector::to_matrix() const {
  QMatrix3 m;
  m(0, 2) = z1;
  m(1, 2) = z2;
  m(2, 0) = -z1.conj();
  m(2, 1) = -z2.conj();
  return Sp3Element(m);
}

double real_dot(const PVector& v, const PVector& w) { return real_dot(v.z1, w.z1) + real_dot(v.z2, w.z2); }

Sp3Element adjoint(const QMatrix3& p, const Sp3Element& a) {
  const QMatrix3 pinv = p.conj_transpose();
  if (max_abs_diff(p * pinv, QMatrix3::identity()) > 1e-10)
    throw std::invalid_argument("adjoint: group element is not symplectic-unitary");
  return Sp3Element::skew_part(p * a.matrix() * pinv);
}

double dependence_residual(const PVector& v, const PVector& w) {
  const double d = real_dot(v, w);
  return std::max(0.0, v.norm2() * w.norm2() - d * d);
}

double dependence_residual(const ImQuaternion& a, const ImQuaternion& b) {
  const double d = a.ci * b.ci + a.cj * b.cj + a.ck * b.ck;
  return std::max(0.0, a.norm2() * b.norm2() - d * d);
}

namespace {

constexpr double kZeroNorm2 = 1e-24;

}  // namespace

double normalized_dependence_residual(const PVector& v, const PVector& w) {
  const double nv = v.norm2();
  const double nw = w.norm2();
  if (nv <= kZeroNorm2 || nw <= kZeroNorm2) return 0.0;
  return dependence_residual(v, w) / (nv * nw);
}

double normalized_dependence_residual(const ImQuaternion& a, const ImQuaternion& b) {
  const double na = a.norm2();
  const double nb = b.norm2();
  if (na <= kZeroNorm2 || nb <= kZeroNorm2) return 0.0;
  return dependence_residual(a, b) / (na * nb);
}

Sp3Element random_sp3(std::mt19937_64& rng, bool normalize) {
  std::normal_distribution<double> gauss;
  Coords21 x;
  for (int i = 0; i < 21; ++i) x[i] = gauss(rng);
  if (normalize) x.normalize();
  return Sp3Element::from_coords(x);
}

Quaternion random_quaternion(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  const double r = gauss(rng);
  const double i = gauss(rng);
  const double j = gauss(rng);
  const double k = gauss(rng);
  return {r, i, j, k};
}

ImQuaternion random_im_quaternion(std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  const double i = gauss(rng);
  const double j = gauss(rng);
  const double k = gauss(rng);
  return {i, j, k};
}

}  // namespace biquot

#pragma once

#include <array>
#include <random>

#include <Eigen/Core>

#include "biquot/quat.hpp"

namespace biquot {

/// 3x3 quaternionic matrix; elements of Sp(3) and M_3(H).
class QMatrix3 {
 public:
  QMatrix3() = default;

  static QMatrix3 identity();

  Quaternion& operator()(int r, int c) { return e_[r][c]; }
  const Quaternion& operator()(int r, int c) const { return e_[r][c]; }

  QMatrix3 conj_transpose() const;
  double max_abs_entry() const;
  bool is_finite() const;

  QMatrix3& operator+=(const QMatrix3& o);
  QMatrix3& operator-=(const QMatrix3& o);
  QMatrix3& operator*=(double s);

 private:
  std::array<std::array<Quaternion, 3>, 3> e_{};
};

QMatrix3 operator+(QMatrix3 a, const QMatrix3& b);
QMatrix3 operator-(QMatrix3 a, const QMatrix3& b);
QMatrix3 operator*(double s, QMatrix3 a);
QMatrix3 operator*(const QMatrix3& a, const QMatrix3& b);

/// Max entrywise |a - b| over all quaternion components.
double max_abs_diff(const QMatrix3& a, const QMatrix3& b);

/// Coordinates of sp(3) in a g0-orthonormal real basis. Layout: the
/// i,j,k parts of the three diagonal entries (9), then (re,i,j,k)*sqrt(2)
/// of the (1,2), (1,3), (2,3) entries (12).
using Coords21 = Eigen::Matrix<double, 21, 1>;

/// Element of sp(3): a 3x3 quaternionic skew-Hermitian matrix.
class Sp3Element {
 public:
  Sp3Element() = default;

  /// Throws std::invalid_argument unless m + conj-transpose(m) = 0 to 1e-12
  /// (relative to the largest entry once that exceeds 1).
  explicit Sp3Element(const QMatrix3& m);

  /// Skew-Hermitian part (m - m*)/2. Used on products whose skew symmetry
  /// holds algebraically, to drop rounding in the symmetric part.
  static Sp3Element skew_part(const QMatrix3& m);

  static Sp3Element diag(const ImQuaternion& a, const ImQuaternion& b, const ImQuaternion& c);
  static Sp3Element from_coords(const Coords21& x);
  /// Unit vector number `index` of the g0-orthonormal coordinate basis.
  static Sp3Element basis_element(int index);

  Coords21 coords() const;
  const QMatrix3& matrix() const { return m_; }
  const Quaternion& operator()(int r, int c) const { return m_(r, c); }

  /// sqrt(g0(A, A)).
  double norm() const;
  bool is_zero(double tol = 0.0) const { return m_.max_abs_entry() <= tol; }

  Sp3Element& operator+=(const Sp3Element& o);
  Sp3Element& operator-=(const Sp3Element& o);
  Sp3Element& operator*=(double s);

 private:
  QMatrix3 m_;
};

Sp3Element operator+(Sp3Element a, const Sp3Element& b);
Sp3Element operator-(Sp3Element a, const Sp3Element& b);
Sp3Element operator-(const Sp3Element& a);
Sp3Element operator*(double s, Sp3Element a);
inline double max_abs_diff(const Sp3Element& a, const Sp3Element& b) {
  return max_abs_diff(a.matrix(), b.matrix());
}

/// [A, B] = AB - BA.
Sp3Element bracket(const Sp3Element& a, const Sp3Element& b);

/// g0(A, B) = -Re Tr(AB).
double g0_inner(const Sp3Element& a, const Sp3Element& b);

/// k = sp(2) + sp(1) (block diagonal), p = its g0-orthogonal complement
/// (the (1,3), (2,3) slots and their negated conjugates).
struct KPDecomposition {
  Sp3Element k_part;
  Sp3Element p_part;
};

KPDecomposition split_kp(const Sp3Element& a);

/// Projection onto sp(2) + 0: keeps the upper-left 2x2 block.
Sp3Element sp2_project(const Sp3Element& a);

/// p identified with H^2 via the (1,3) and (2,3) entries.
struct PVector {
  Quaternion z1;
  Quaternion z2;

  static PVector from_p_part(const Sp3Element& p_part);
  Sp3Element to_matrix() const;
  double norm2() const { return z1.norm2() + z2.norm2(); }
};

double real_dot(const PVector& v, const PVector& w);

/// Ad_p(A) = p A p^-1 with p^-1 taken as conj-transpose(p). Throws
/// std::invalid_argument if p * conj-transpose(p) differs from I by more
/// than 1e-10.
Sp3Element adjoint(const QMatrix3& p, const Sp3Element& a);

/// Gram determinant |v|^2|w|^2 - <v,w>^2 on H^2 = R^8. Degree 4, not
/// normalized.
double dependence_residual(const PVector& v, const PVector& w);

/// Gram determinant of (a, b) in Im H = R^3.
double dependence_residual(const ImQuaternion& a, const ImQuaternion& b);

/// Gram determinant of unit-normalized inputs; zero when either input is
/// numerically zero (a zero vector is dependent on anything).
double normalized_dependence_residual(const PVector& v, const PVector& w);
double normalized_dependence_residual(const ImQuaternion& a, const ImQuaternion& b);

inline constexpr double kDependenceThreshold = 1e-9;

inline bool linearly_dependent(const PVector& v, const PVector& w) {
  return normalized_dependence_residual(v, w) <= kDependenceThreshold;
}

/// 21 independent standard Gaussians on the g0-orthonormal basis, so the
/// distribution is invariant under Ad. Optionally scaled to g0-norm 1.
Sp3Element random_sp3(std::mt19937_64& rng, bool normalize = false);
Quaternion random_quaternion(std::mt19937_64& rng);
ImQuaternion random_im_quaternion(std::mt19937_64& rng);

}  // namespace biquot

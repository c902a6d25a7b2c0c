#pragma once

#include <array>

#include "biquot/liealg.hpp"

namespace biquot {

/// 2x2 quaternionic block, used for phi3 on the Lie algebra level.
using QBlock2 = std::array<std::array<Quaternion, 2>, 2>;

/// Lie algebra form of the irreducible 4-dimensional representation
/// sp(1) -> sp(2):
///   [ 3 t_i              sqrt3 (t_j + t_k)     ]
///   [ sqrt3 (t_j + t_k)  2 (t_k - t_j) - t_i   ]
/// with t_i, t_j, t_k the i, j, k parts of t (each a quaternion).
QBlock2 phi3_alg(const ImQuaternion& t);

using Phi3Fn = QBlock2 (*)(const ImQuaternion&);

/// Three sp(3) elements, the images of t = i, j, k under a real-linear map.
struct BasisTriple {
  Sp3Element at_i;
  Sp3Element at_j;
  Sp3Element at_k;

  const Sp3Element& operator[](int l) const { return l == 0 ? at_i : (l == 1 ? at_j : at_k); }
};

/// Number of singular values of the 3x21 coordinate matrix above 1e-9.
int real_rank(const BasisTriple& basis);

/// diag(phi3(t), t) -- an element of h1.
Sp3Element h1_element(const ImQuaternion& t, Phi3Fn phi = &phi3_alg);
/// diag(phi3(s), 0) -- an element of h2.
Sp3Element h2_element(const ImQuaternion& s, Phi3Fn phi = &phi3_alg);

BasisTriple h1_basis();
BasisTriple h2_basis();

/// cos/sin rotation in the (1,3) plane with (1,3) entry +sin(theta). No
/// range checks; see point_p.
QMatrix3 rotation_13(double theta);

/// A point p(theta) in Sp(3) on the curve studied here.
class ThetaPoint {
 public:
  double theta() const { return theta_; }
  const QMatrix3& matrix() const { return matrix_; }
  /// p^-1, which for a symplectic-unitary p is its conjugate transpose.
  QMatrix3 inverse() const { return matrix_.conj_transpose(); }

 private:
  friend ThetaPoint point_p(double theta);
  ThetaPoint(double theta, const QMatrix3& m) : theta_(theta), matrix_(m) {}

  double theta_;
  QMatrix3 matrix_;
};

/// Throws std::invalid_argument unless theta lies in (0, pi/2).
ThetaPoint point_p(double theta);

/// Ad_p applied to h1_basis.
BasisTriple adp_h1_basis(const ThetaPoint& pt);

/// Closed form of Ad_p(diag(phi3(t), t)):
///   (1,1) 3cos^2 t_i + sin^2 t,  (1,2) sqrt3 cos (t_j + t_k),
///   (1,3) cos sin (t - 3 t_i),   (2,2) 2(t_k - t_j) - t_i,
///   (2,3) -sqrt3 sin (t_j + t_k), (3,3) 3 sin^2 t_i + cos^2 t.
Sp3Element adp_h1_closed_form(double theta, const ImQuaternion& t);

/// Rank of t -> rho(Ad_p h1(t)) = (Ad_p h1(t))_33 as a map R^3 -> Im H.
int rho_rank(const ThetaPoint& pt);
int rho_rank(const QMatrix3& p);

inline constexpr double kRankThreshold = 1e-9;

}  // namespace biquot

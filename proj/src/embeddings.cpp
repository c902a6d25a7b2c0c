#include "biquot/embeddings.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/SVD>

namespace biquot {

namespace {

const double kSqrt3 = std::sqrt(3.0);

constexpr std::array<ImQuaternion, 3> kUnits = {ImQuaternion{1, 0, 0}, ImQuaternion{0, 1, 0},
                                                ImQuaternion{0, 0, 1}};

int count_above(const Eigen::VectorXd& singular_values) {
  int rank = 0;
  for (Eigen::Index i = 0; i < singular_values.size(); ++i)
    if (singular_values[i] > kRankThreshold) ++rank;
  return rank;
}

Sp3Element block_element(const QBlock2& b, const ImQuaternion& last) {
  QMatrix3 m;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) m(r, c) = b[r][c];
  m(2, 2) = last;
  return Sp3Element(m);
}

}  // namespace

QBlock2 phi3_alg(const ImQuaternion& t) {
  const Quaternion ti(0.0, t.ci, 0.0, 0.0);
  const Quaternion tj(0.0, 0.0, t.cj, 0.0);
  const Quaternion tk(0.0, 0.0, 0.0, t.ck);
  const Quaternion off = kSqrt3 * (tj + tk);
  return {{{3.0 * ti, off}, {off, 2.0 * (tk - tj) - ti}}};
}

int real_rank(const BasisTriple& basis) {
  Eigen::Matrix<double, 3, 21> m;
  for (int l = 0; l < 3; ++l) m.row(l) = basis[l].coords().transpose();
  return count_above(Eigen::JacobiSVD<Eigen::Matrix<double, 3, 21>>(m).singularValues());
}

Sp3Element h1_element(const ImQuaternion& t, Phi3Fn phi) { return block_element(phi(t), t); }
Sp3Element h2_element(const ImQuaternion& s, Phi3Fn phi) { return block_element(phi(s), {}); }

BasisTriple h1_basis() { return {h1_element(kUnits[0]), h1_element(kUnits[1]), h1_element(kUnits[2])}; }
BasisTriple h2_basis() { return {h2_element(kUnits[0]), h2_element(kUnits[1]), h2_element(kUnits[2])}; }

QMatrix3 rotation_13(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  QMatrix3 m;
  m(0, 0) = Quaternion(c);
  m(0, 2) = Quaternion(s);
  m(1, 1) = Quaternion(1.0);
  m(2, 0) = Quaternion(-s);
  m(2, 2) = Quaternion(c);
  return m;
}

ThetaPoint point_p(double theta) {
  if (!std::isfinite(theta) || theta <= 0.0 || theta >= std::numbers::pi / 2)
    throw std::invalid_argument("point_p: theta must lie in (0, pi/2)");
  return ThetaPoint(theta, rotation_13(theta));
}

BasisTriple adp_h1_basis(const ThetaPoint& pt) {
  const BasisTriple h1 = h1_basis();
  return {adjoint(pt.matrix(), h1.at_i), adjoint(pt.matrix(), h1.at_j), adjoint(pt.matrix(), h1.at_k)};
}

Sp3Element adp_h1_closed_form(double theta, const ImQuaternion& t) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const Quaternion tq = t;
  const Quaternion ti(0.0, t.ci, 0.0, 0.0);
  const Quaternion tjk(0.0, 0.0, t.cj, t.ck);
  const Quaternion tj(0.0, 0.0, t.cj, 0.0);
  const Quaternion tk(0.0, 0.0, 0.0, t.ck);

  QMatrix3 m;
  m(0, 0) = 3.0 * c * c * ti + s * s * tq;
  m(0, 1) = kSqrt3 * c * tjk;
  m(0, 2) = c * s * (tq - 3.0 * ti);
  m(1, 0) = m(0, 1);
  m(1, 1) = 2.0 * (tk - tj) - ti;
  m(1, 2) = -kSqrt3 * s * tjk;
  m(2, 0) = m(0, 2);
  m(2, 1) = m(1, 2);
  m(2, 2) = 3.0 * s * s * ti + c * c * tq;
  return Sp3Element(m);
}

int rho_rank(const QMatrix3& p) {
  const BasisTriple h1 = h1_basis();
  Eigen::Matrix3d m;
  for (int l = 0; l < 3; ++l) {
    const Quaternion z33 = adjoint(p, h1[l])(2, 2);
    m.col(l) << z33.ci, z33.cj, z33.ck;
  }
  return count_above(Eigen::JacobiSVD<Eigen::Matrix3d>(m).singularValues());
}

int rho_rank(const ThetaPoint& pt) { return rho_rank(pt.matrix()); }

}  // namespace biquot

#include "biquot/zeroplane.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace biquot {

namespace {

const double kSqrt3 = std::sqrt(3.0);

// Normal-form elimination tolerances, relative to g0-normalized inputs.
constexpr double kVanishTol = 1e-9;
constexpr double kValidateTol = 1e-8;

double norm2(const Sp3Element& a) { return g0_inner(a, a); }

double stacked_norm(std::initializer_list<Sp3Element> parts) {
  double s = 0.0;
  for (const auto& p : parts) s += norm2(p);
  return std::sqrt(std::max(0.0, s));
}

double normalized_gram(const Sp3Element& a, const Sp3Element& b) {
  const double na = norm2(a);
  const double nb = norm2(b);
  if (na <= 1e-24 || nb <= 1e-24) return 0.0;
  const double d = g0_inner(a, b);
  return std::max(0.0, 1.0 - d * d / (na * nb));
}

ImQuaternion along(int axis, double value) {
  ImQuaternion q;
  (axis == 0 ? q.ci : (axis == 1 ? q.cj : q.ck)) = value;
  return q;
}

void require_reduced_range(const ThetaPoint& pt) {
  if (pt.theta() >= std::numbers::pi / 4)
    throw std::invalid_argument("reduced equations require theta in (0, pi/4)");
}

}  // namespace

double conditionA_residual(const Sp3Element& x, const Sp3Element& y, const ThetaPoint& pt) {
  const BasisTriple adp = adp_h1_basis(pt);
  const BasisTriple h2 = h2_basis();
  double r = 0.0;
  for (int l = 0; l < 3; ++l) {
    r = std::max({r, std::abs(g0_inner(x, adp[l])), std::abs(g0_inner(x, h2[l])),
                  std::abs(g0_inner(y, adp[l])), std::abs(g0_inner(y, h2[l]))});
  }
  return r;
}

double conditionB_residual(const Sp3Element& x, const Sp3Element& y) {
  const KPDecomposition xs = split_kp(x);
  const KPDecomposition ys = split_kp(y);
  return stacked_norm({bracket(x, y), bracket(xs.k_part, ys.k_part), bracket(xs.p_part, ys.p_part)});
}

double conditionC_residual(const Sp3Element& x, const Sp3Element& y, const QMatrix3& p) {
  const QMatrix3 pinv = p.conj_transpose();
  const KPDecomposition xs = split_kp(adjoint(pinv, x));
  const KPDecomposition ys = split_kp(adjoint(pinv, y));
  return stacked_norm({bracket(xs.k_part, ys.k_part), bracket(xs.p_part, ys.p_part)});
}

double conditionC_residual(const Sp3Element& x, const Sp3Element& y, const ThetaPoint& pt) {
  return conditionC_residual(x, y, pt.matrix());
}

double conditionC_p_residual(const Sp3Element& x, const Sp3Element& y, const ThetaPoint& pt) {
  const QMatrix3 pinv = pt.inverse();
  return bracket(split_kp(adjoint(pinv, x)).p_part, split_kp(adjoint(pinv, y)).p_part).norm();
}

Sp3Element ReducedPair::x() const {
  QMatrix3 m;
  m(0, 0) = x1;
  m(0, 1) = x2;
  m(1, 0) = -x2.conj();
  m(1, 1) = x3;
  m(2, 2) = x4;
  return Sp3Element(m);
}

Sp3Element ReducedPair::y() const {
  QMatrix3 m;
  m(0, 2) = y1;
  m(1, 2) = y2;
  m(2, 0) = -y1.conj();
  m(2, 1) = -y2.conj();
  m(2, 2) = y3;
  return Sp3Element(m);
}

ReducedPair ReducedPair::scaled(double sx, double sy) const {
  return {sx * x1, sx * x2, sx * x3, sx * x4, sy * y1, sy * y2, sy * y3};
}

std::optional<double> lambda_case(const ReducedPair& rp) {
  const double n4 = rp.x4.norm2();
  if (n4 <= 1e-18) return std::nullopt;
  const double lambda = real_dot(rp.y3, rp.x4) / n4;
  const ImQuaternion rest = rp.y3 - lambda * rp.x4;
  if (std::sqrt(rest.norm2()) > 1e-6 * std::max(std::sqrt(rp.y3.norm2()), std::sqrt(n4))) return std::nullopt;
  return lambda;
}

ReducedPair normal_form_reduce(const Sp3Element& x, const Sp3Element& y, const ThetaPoint& pt) {
  if (rho_rank(pt) != 3) throw std::invalid_argument("normal_form_reduce: rho restricted to Ad_p h1 is not onto");
  const double nx = x.norm();
  const double ny = y.norm();
  if (nx == 0.0 || ny == 0.0 || normalized_gram(x, y) < kVanishTol)
    throw std::invalid_argument("normal_form_reduce: X and Y are linearly dependent");
  const Sp3Element xn = (1.0 / nx) * x;
  const Sp3Element yn = (1.0 / ny) * y;
  if (conditionA_residual(xn, yn, pt) > kSolutionTolerance)
    throw std::invalid_argument("normal_form_reduce: condition (A) does not hold");
  if (conditionB_residual(xn, yn) > kSolutionTolerance)
    throw std::invalid_argument("normal_form_reduce: condition (B) does not hold");

  // Step 1: kill the p-part of X using the dependence of X_p and Y_p.
  const PVector vx = PVector::from_p_part(split_kp(xn).p_part);
  const PVector vy = PVector::from_p_part(split_kp(yn).p_part);
  Sp3Element x1 = xn;
  Sp3Element y1 = yn;
  if (std::sqrt(vx.norm2()) <= kVanishTol) {
    // X_p already vanishes.
  } else if (std::sqrt(vy.norm2()) <= kVanishTol) {
    std::swap(x1, y1);
  } else {
    if (!linearly_dependent(vx, vy)) throw ReductionError("normal_form_reduce: p-parts of X and Y are independent");
    const double lambda = real_dot(vx, vy) / vy.norm2();
    x1 = xn - lambda * yn;
  }
  const KPDecomposition x1s = split_kp(x1);
  if (x1s.p_part.norm() > kValidateTol * std::max(1.0, x1.norm()))
    throw ReductionError("normal_form_reduce: elimination left a p-part in X'");
  x1 = x1s.k_part;

  // Step 2: the sp(2)-parts are dependent; subtract a multiple of X' from Y.
  const Sp3Element xs = sp2_project(x1);
  const Sp3Element ys = sp2_project(y1);
  if (xs.norm() <= kVanishTol * std::max(1.0, x1.norm()))
    throw ReductionError("normal_form_reduce: X' has no sp(2) part, which forces X' = 0");
  if (normalized_gram(xs, ys) > kDependenceThreshold)
    throw ReductionError("normal_form_reduce: sp(2)-parts of X' and Y are independent");
  const double mu = g0_inner(ys, xs) / norm2(xs);
  Sp3Element y2 = y1 - mu * x1;
  const Sp3Element y2s = sp2_project(y2);
  if (y2.norm() <= kVanishTol) throw ReductionError("normal_form_reduce: Y' degenerated to 0");
  if (y2s.norm() > kValidateTol * y2.norm())
    throw ReductionError("normal_form_reduce: elimination left an sp(2)-part in Y'");
  y2 -= y2s;

  return {x1(0, 0).imag(), x1(0, 1), x1(1, 1).imag(), x1(2, 2).imag(), y2(0, 2), y2(1, 2), y2(2, 2).imag()};
}

double ConditionResiduals::max_condition() const { return std::max({a_res, b_res, c_res}); }

double ConditionResiduals::max_equation() const { return *std::max_element(eq_res.begin(), eq_res.end()); }

double ConditionResiduals::max_of(std::initializer_list<Eq> eqs) const {
  double m = 0.0;
  for (Eq e : eqs) m = std::max(m, (*this)[e]);
  return m;
}

std::array<double, 9> linear_equation_values(const ReducedPair& rp, const ThetaPoint& pt) {
  const double c = std::cos(pt.theta());
  const double s = std::sin(pt.theta());
  const double s2 = s * s;
  const double c2 = c * c;
  const auto& [x1, x2, x3, x4, y1, y2, y3] = rp;
  return {
      3.0 * x1.ci - x3.ci,
      kSqrt3 * x2.cj - x3.cj,
      kSqrt3 * x2.ck + x3.ck,
      x1.ci * (-2.0 * s2) + x4.ci * (1.0 + 2.0 * s2),
      x2.cj * (c - 1.0) * 2.0 * kSqrt3 + x1.cj * s2 + x4.cj * c2,
      x2.ck * (c - 1.0) * 2.0 * kSqrt3 + x1.ck * s2 + x4.ck * c2,
      -4.0 * s * c * y1.ci + (2.0 * s2 + 1.0) * y3.ci,
      2.0 * s * c * y1.cj - 2.0 * kSqrt3 * s * y2.cj + c2 * y3.cj,
      2.0 * s * c * y1.ck - 2.0 * kSqrt3 * s * y2.ck + c2 * y3.ck,
  };
}

std::array<double, 9> condition_a_forms(const ReducedPair& rp, const ThetaPoint& pt) {
  const Sp3Element x = rp.x();
  const Sp3Element y = rp.y();
  const BasisTriple adp = adp_h1_basis(pt);
  const BasisTriple h2 = h2_basis();
  std::array<double, 9> out{};
  for (int l = 0; l < 3; ++l) {
    out[l] = g0_inner(x, h2[l]);
    out[3 + l] = g0_inner(x, adp[l]);
    out[6 + l] = g0_inner(y, adp[l]);
  }
  return out;
}

std::pair<PVector, PVector> vw_vectors(const ReducedPair& rp, const ThetaPoint& pt) {
  require_reduced_range(pt);
  const double c = std::cos(pt.theta());
  const double s = std::sin(pt.theta());
  const PVector v{c * s * Quaternion(rp.x1 - rp.x4), -s * rp.x2.conj()};
  const Quaternion re_y1(rp.y1.re);
  const Quaternion im_y1 = rp.y1.imag();
  const PVector w{re_y1 + (c * c - s * s) * im_y1 - s * c * Quaternion(rp.y3), c * rp.y2};
  return {v, w};
}

ConditionResiduals lemma_equations_residual(const ReducedPair& rp, const ThetaPoint& pt) {
  require_reduced_range(pt);
  const auto& [x1, x2, x3, x4, y1, y2, y3] = rp;
  ConditionResiduals out;
  auto set = [&out](Eq e, double v) { out.eq_res[static_cast<int>(e)] = v; };

  set(Eq::e1, (x1 * y1 + x2 * y2 - y1 * x4).norm());
  set(Eq::e2, (-(x2.conj() * y1) + x3 * y2 - y2 * x4).norm());
  set(Eq::e3, normalized_dependence_residual(x4, y3));
  const auto [v, w] = vw_vectors(rp, pt);
  set(Eq::e4, normalized_dependence_residual(v, w));
  const std::array<double, 9> lin = linear_equation_values(rp, pt);
  for (int i = 0; i < 9; ++i) out.eq_res[static_cast<int>(Eq::e5i) + i] = std::abs(lin[i]);

  const Sp3Element x = rp.x();
  const Sp3Element y = rp.y();
  out.a_res = conditionA_residual(x, y, pt);
  out.b_res = conditionB_residual(x, y);
  out.c_res = conditionC_residual(x, y, pt);
  out.c_p_res = conditionC_p_residual(x, y, pt);
  return out;
}

std::string_view to_string(PConvention c) {
  return c == PConvention::kPlusSine ? "plus-sine (p13 = +sin theta)" : "minus-sine (p13 = -sin theta)";
}

QMatrix3 convention_matrix(const ThetaPoint& pt, PConvention c) {
  return c == PConvention::kPlusSine ? pt.matrix() : pt.inverse();
}

double vw_identity_error(const ReducedPair& rp, const ThetaPoint& pt, PConvention conv) {
  const QMatrix3 qinv = convention_matrix(pt, conv).conj_transpose();
  const PVector ax = PVector::from_p_part(split_kp(adjoint(qinv, rp.x())).p_part);
  const PVector ay = PVector::from_p_part(split_kp(adjoint(qinv, rp.y())).p_part);
  const auto [v, w] = vw_vectors(rp, pt);
  double err = 0.0;
  for (const auto& [a, b] : {std::pair{ax.z1, v.z1}, {ax.z2, v.z2}, {ay.z1, w.z1}, {ay.z2, w.z2}})
    err = std::max(err, (a - b).norm());
  return err;
}

ReducedPair random_reduced_pair(std::mt19937_64& rng) {
  ReducedPair rp;
  rp.x1 = random_im_quaternion(rng);
  rp.x2 = random_quaternion(rng);
  rp.x3 = random_im_quaternion(rng);
  rp.x4 = random_im_quaternion(rng);
  rp.y1 = random_quaternion(rng);
  rp.y2 = random_quaternion(rng);
  rp.y3 = random_im_quaternion(rng);
  return rp;
}

ReducedPair enforce_condition_a(ReducedPair rp, const ThetaPoint& pt) {
  const double c = std::cos(pt.theta());
  const double s = std::sin(pt.theta());
  const double s2 = s * s;
  const double c2 = c * c;
  // (6) fixes x1 from x2, x4; then (5) fixes x3; (7) fixes y3.
  rp.x1.ci = (1.0 + 2.0 * s2) / (2.0 * s2) * rp.x4.ci;
  rp.x1.cj = -(2.0 * kSqrt3 * (c - 1.0) * rp.x2.cj + c2 * rp.x4.cj) / s2;
  rp.x1.ck = -(2.0 * kSqrt3 * (c - 1.0) * rp.x2.ck + c2 * rp.x4.ck) / s2;
  rp.x3 = {3.0 * rp.x1.ci, kSqrt3 * rp.x2.cj, -kSqrt3 * rp.x2.ck};
  rp.y3.ci = 4.0 * s * c * rp.y1.ci / (2.0 * s2 + 1.0);
  rp.y3.cj = -(2.0 * s * c * rp.y1.cj - 2.0 * kSqrt3 * s * rp.y2.cj) / c2;
  rp.y3.ck = -(2.0 * s * c * rp.y1.ck - 2.0 * kSqrt3 * s * rp.y2.ck) / c2;
  return rp;
}

ReducedPair construct_ab_solution(const ThetaPoint& pt, int axis, int root) {
  if (axis != 1 && axis != 2) throw std::invalid_argument("construct_ab_solution: axis must be j (1) or k (2)");
  const double c = std::cos(pt.theta());
  const double s = std::sin(pt.theta());
  // All entries are real multiples of one unit u, so they commute and
  // (1), (2) reduce to scalar bilinear equations. With x2 = u, (5) gives
  // x3 = kappa u and (6) gives x1 in terms of x4; nonzero Y exists iff
  // x2^2 = (x3 - x4)(x1 - x4), a quadratic in x4.
  const double kappa = axis == 1 ? kSqrt3 : -kSqrt3;
  const double x2 = 1.0;
  const double x3 = kappa * x2;
  const double b = 2.0 * kSqrt3 * (c - 1.0) - kappa;
  const double c0 = -2.0 * kSqrt3 * kappa * (c - 1.0) - s * s;
  const double disc = std::sqrt(b * b - 4.0 * c0);
  const double x4 = root == 0 ? (-b + disc) / 2.0 : (-b - disc) / 2.0;
  const double x1 = -(c * c * x4 + 2.0 * kSqrt3 * (c - 1.0) * x2) / (s * s);
  const double y1 = -(x3 - x4);
  const double y2 = x2;
  const double y3 = -(2.0 * s * c * y1 - 2.0 * kSqrt3 * s * y2) / (c * c);

  ReducedPair rp;
  rp.x1 = along(axis, x1);
  rp.x2 = along(axis, x2);
  rp.x3 = along(axis, x3);
  rp.x4 = along(axis, x4);
  rp.y1 = along(axis, y1);
  rp.y2 = along(axis, y2);
  rp.y3 = along(axis, y3);
  return rp;
}

ReducedPair enforce_vw_dependence(ReducedPair rp, const ThetaPoint& pt, double mu) {
  const double c = std::cos(pt.theta());
  const double s = std::sin(pt.theta());
  const PVector v = vw_vectors(rp, pt).first;
  rp.y2 = (mu / c) * v.z2;
  const Quaternion im = (1.0 / (c * c - s * s)) * (mu * v.z1 + s * c * Quaternion(rp.y3));
  rp.y1 = im.imag();
  return rp;
}

}  // namespace biquot

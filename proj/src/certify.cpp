#include "biquot/certify.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>

#include <Eigen/SVD>

namespace biquot {

namespace {

const double kSqrt3 = std::sqrt(3.0);
constexpr double kPi = std::numbers::pi;

void require_open_quarter_turn(double theta, const char* who) {
  if (!std::isfinite(theta) || theta <= 0.0 || theta >= kPi / 2 || std::cos(theta) == 0.0)
    throw std::invalid_argument(std::string(who) + ": theta must lie in (0, pi/2)");
}

Quaternion on_unit(int unit, double value) {
  Quaternion q;
  (unit == 1 ? q.cj : q.ck) = value;
  return q;
}

// Interior grid of the open interval (a, b).
template <typename F>
void for_each_interior(double a, double b, int n, F&& f) {
  for (int m = 0; m < n; ++m) f(a + (b - a) * (m + 1) / (n + 1));
}

using Poly = std::vector<long long>;  // coefficients, lowest degree first

Poly poly_mul(const Poly& a, const Poly& b) {
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

IdentityRecord min_positive(std::string name, double a, double b, int n, const std::function<double(double)>& f) {
  double worst = std::numeric_limits<double>::infinity();
  for_each_interior(a, b, n, [&](double t) { worst = std::min(worst, f(t)); });
  return {std::move(name), worst > 0.0, worst};
}

IdentityRecord max_error(std::string name, double a, double b, int n, double tol,
                         const std::function<double(double)>& lhs, const std::function<double(double)>& rhs) {
  double worst = 0.0;
  for_each_interior(a, b, n, [&](double t) { worst = std::max(worst, std::abs(lhs(t) - rhs(t))); });
  return {std::move(name), worst <= tol, worst};
}

IdentityRecord boundary_zero(std::string name, double at, const std::function<double(double)>& f) {
  const double v = std::abs(f(at));
  return {std::move(name), v <= 1e-6, v};
}

}  // namespace

std::string_view to_string(Axis a) { return a == Axis::j ? "j" : "k"; }

std::string_view to_string(Verdict v) { return v == Verdict::positive ? "positive" : "inconclusive"; }

LinearSystem build_linear_system(double theta, Axis axis) {
  require_open_quarter_turn(theta, "build_linear_system");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double t = std::tan(theta);
  const double e = epsilon_of(axis);
  LinearSystem m;
  // clang-format off
  m << 0.0,   0.0,                       -t,  t,      -1.0,           0.0,                0.0,
       c * s, 0.0,                       0.0, -c * s, s * s - c * c,  0.0,                c * s,
       0.0,   t,                         0.0, 0.0,    0.0,            -1.0,               0.0,
       0.0,   kSqrt3,                    e,   0.0,    0.0,            0.0,                0.0,
       s * s, 2.0 * kSqrt3 * (c - 1.0),  0.0, c * c,  0.0,            0.0,                0.0,
       0.0,   0.0,                       0.0, 0.0,    2.0 * s * c,    -2.0 * kSqrt3 * s,  c * c;
  // clang-format on
  return m;
}

KernelSolution kernel_solution(double theta, Axis axis) {
  const LinearSystem m = build_linear_system(theta, axis);
  const Eigen::JacobiSVD<LinearSystem> svd(m, Eigen::ComputeFullV);

  KernelSolution out;
  out.ell = axis;
  out.epsilon = epsilon_of(axis);
  for (int i = 0; i < 6; ++i) out.singular_values[i] = svd.singularValues()[i];
  out.singular_values[6] = 0.0;
  for (double sv : out.singular_values)
    if (sv <= kKernelThreshold) ++out.dimension;
  if (out.singular_values[5] < kGapThreshold)
    throw NumericalError("kernel_solution: ill-conditioned gap, singular value " +
                         std::to_string(out.singular_values[5]));

  const Eigen::Matrix<double, 7, 1> v = svd.matrixV().col(6);
  if (std::abs(v[1]) < 1e-12) throw NumericalError("kernel_solution: x2 component vanishes, gauge undefined");
  const double scale = -kSqrt3 * std::cos(theta) / v[1];
  for (int i = 0; i < 7; ++i) out.coords[i] = scale * v[i];
  return out;
}

Vec7 kernel_reference(double theta, double epsilon) {
  require_open_quarter_turn(theta, "kernel_reference");
  if (epsilon != 1.0 && epsilon != -1.0) throw std::invalid_argument("kernel_reference: epsilon must be +1 or -1");
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  const double t = std::tan(theta);
  const double e = epsilon;
  return {
      -3.0 * c * ((2.0 + e) * c * c - 4.0 * c + 2.0),
      -kSqrt3 * c,
      3.0 * e * c,
      -3.0 * (c - 1.0) * ((2.0 + e) * c * c + (e - 2.0) * c - 2.0),
      -3.0 * t * ((2.0 + e) * c * c * c - 4.0 * c * c + 2.0),
      -kSqrt3 * s,
      6.0 * t * t * ((2.0 + e) * c * c * c - 4.0 * c * c + 1.0),
  };
}

double abs_cosine(const Vec7& a, const Vec7& b) {
  double ab = 0.0;
  double aa = 0.0;
  double bb = 0.0;
  for (int i = 0; i < 7; ++i) {
    ab += a[i] * b[i];
    aa += a[i] * a[i];
    bb += b[i] * b[i];
  }
  if (aa == 0.0 || bb == 0.0) return 0.0;
  return std::min(1.0, std::abs(ab) / std::sqrt(aa * bb));
}

double sign_product(const Vec7& kernel) {
  const Quaternion y1 = on_unit(1, kernel[4]);
  const Quaternion diff = on_unit(1, kernel[0] - kernel[3]);
  return (y1 * diff).re;
}

bool in_certified_range(double theta) { return std::isfinite(theta) && theta > 0.0 && theta < kPi / 6; }

bool sign_certificate(double theta) {
  if (!in_certified_range(theta)) throw std::invalid_argument("sign_certificate: theta must lie in (0, pi/6)");
  for (double e : {1.0, -1.0})
    if (!(sign_product(kernel_reference(theta, e)) < 0.0)) return false;
  return true;
}

ReducedPair embed_kernel(const Vec7& k, int unit) {
  if (unit != 1 && unit != 2) throw std::invalid_argument("embed_kernel: unit must be j (1) or k (2)");
  const auto im = [unit](double v) { return on_unit(unit, v).imag(); };
  return {im(k[0]), on_unit(unit, k[1]), im(k[2]), im(k[3]), on_unit(unit, k[4]), on_unit(unit, k[5]), im(k[6])};
}

int slot_for_epsilon(double epsilon) { return epsilon > 0.0 ? 2 : 1; }

std::vector<IdentityRecord> identity_suite(int grid) {
  using std::cos;
  using std::sin;
  const double sixth = kPi / 6;
  const double quarter = kPi / 4;
  std::vector<IdentityRecord> out;

  // w = 0 case: the compatibility condition collapses to 3 sin^2 = cos^2.
  out.push_back(max_error(
      "cleared w=0 condition equals 3sin^2 - cos^2", 0.0, sixth, grid, 1e-12,
      [](double t) {
        const double s = sin(t), c = cos(t);
        return 2 * s * s * c * c + 2 * s * s * s * s + s * s - c * c;
      },
      [](double t) { return 3 * sin(t) * sin(t) - cos(t) * cos(t); }));
  out.push_back(min_positive("cos^2 - 3sin^2 > 0 on (0, pi/6)", 0.0, sixth, grid,
                             [](double t) { return cos(t) * cos(t) - 3 * sin(t) * sin(t); }));
  out.push_back(boundary_zero("cos^2 - 3sin^2 vanishes at pi/6", sixth,
                              [](double t) { return cos(t) * cos(t) - 3 * sin(t) * sin(t); }));

  // lambda = 2 case.
  {
    const Poly lhs = poly_mul(poly_mul({-1, 1}, {-1, 1}), {1, 2});
    const Poly rhs = {1, 0, -3, 2};
    out.push_back({"(c-1)^2(2c+1) = 2c^3 - 3c^2 + 1 coefficientwise", lhs == rhs, lhs == rhs ? 0.0 : 1.0});
  }
  // With u = 1 - cos = 2 sin^2(t/2), 2c^3 - 3c^2 + 1 = 3u^2 - 2u^3; the
  // direct form cancels to rounding noise near 0.
  out.push_back(min_positive("2cos^3 - 3cos^2 + 1 > 0 on (0, pi/6)", 0.0, sixth, grid, [](double t) {
    const double h = sin(t / 2);
    const double u = 2 * h * h;
    return u * u * (3 - 2 * u);
  }));
  out.push_back(max_error(
      "2cos^3 - 3cos^2 + 1 = 3u^2 - 2u^3 for u = 1 - cos", 0.0, sixth, grid, 1e-14,
      [](double t) {
        const double c = cos(t);
        return 2 * c * c * c - 3 * c * c + 1;
      },
      [](double t) {
        const double u = 1 - cos(t);
        return 3 * u * u - 2 * u * u * u;
      }));
  out.push_back(min_positive("cos sin / (cos^2 - sin^2) > 0 on (0, pi/4)", 0.0, quarter, grid, [](double t) {
    return cos(t) * sin(t) / (cos(t) * cos(t) - sin(t) * sin(t));
  }));
  out.push_back(min_positive("sin / cos > 0 on (0, pi/4)", 0.0, quarter, grid,
                             [](double t) { return sin(t) / cos(t); }));

  // i-components vanish.
  out.push_back(max_error(
      "cos^2 - sin^2 - 4cos^2 sin^2/(2sin^2+1) = (1-4sin^2)/(1+2sin^2)", 0.0, sixth, grid, 1e-12,
      [](double t) {
        const double s = sin(t), c = cos(t);
        return c * c - s * s - c * s * (4 * c * s / (2 * s * s + 1));
      },
      [](double t) {
        const double s2 = sin(t) * sin(t);
        return (1 - 4 * s2) / (1 + 2 * s2);
      }));
  out.push_back(min_positive("1 - 4sin^2 > 0 on (0, pi/6)", 0.0, sixth, grid,
                             [](double t) { return 1 - 4 * sin(t) * sin(t); }));
  out.push_back(
      boundary_zero("1 - 4sin^2 vanishes at pi/6", sixth, [](double t) { return 1 - 4 * sin(t) * sin(t); }));

  // Final sign argument.
  out.push_back(min_positive("3x^3 - 4x^2 + 2 > 0 on (sqrt3/2, 1)", kSqrt3 / 2, 1.0, grid,
                             [](double x) { return 3 * x * x * x - 4 * x * x + 2; }));
  out.push_back(min_positive("-(x^3 - 4x^2 + 1) > 0 on (sqrt3/2, 1)", kSqrt3 / 2, 1.0, grid,
                             [](double x) { return -(x * x * x - 4 * x * x + 1); }));
  out.push_back({"cos(pi/6) > 2/3", cos(sixth) > 2.0 / 3.0, cos(sixth) - 2.0 / 3.0});
  return out;
}

Verdict decide_verdict(const Certificate& cert) {
  const bool ok = in_certified_range(cert.theta) && cert.rho_rank == 3 && cert.kernel_dim_j == 1 &&
                  cert.kernel_dim_k == 1 && cert.kernel_match_j >= 1.0 - kMatchTolerance &&
                  cert.kernel_match_k >= 1.0 - kMatchTolerance && cert.sign_ok;
  return ok ? Verdict::positive : Verdict::inconclusive;
}

Certificate certify_theta(double theta) {
  const ThetaPoint pt = point_p(theta);
  Certificate cert;
  cert.theta = theta;
  cert.rho_rank = rho_rank(pt);
  for (Axis axis : {Axis::j, Axis::k}) {
    int dim = 0;
    double match = 0.0;
    try {
      const KernelSolution ks = kernel_solution(theta, axis);
      dim = ks.dimension;
      match = abs_cosine(ks.coords, kernel_reference(theta, ks.epsilon));
    } catch (const NumericalError&) {
    }
    (axis == Axis::j ? cert.kernel_dim_j : cert.kernel_dim_k) = dim;
    (axis == Axis::j ? cert.kernel_match_j : cert.kernel_match_k) = match;
  }
  cert.sign_ok = in_certified_range(theta) && sign_certificate(theta);
  cert.verdict = decide_verdict(cert);
  return cert;
}

}  // namespace biquot

#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "biquot/zeroplane.hpp"

namespace biquot {

/// Label l in {j, k} of the final linear system; epsilon = +1 iff l = j.
enum class Axis { j, k };

constexpr double epsilon_of(Axis a) { return a == Axis::j ? 1.0 : -1.0; }
std::string_view to_string(Axis a);

/// Seven kernel coordinates ordered (x1, x2, x3, x4, y1, y2, y3)_l.
using Vec7 = std::array<double, 7>;
using LinearSystem = Eigen::Matrix<double, 6, 7>;

class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Rows, in order: linearized (2), the (4.1) row, the (4.2) row, the (5)
/// row sqrt3 x2 + eps x3, the (6) row, the (7) row. Requires theta in
/// (0, pi/2).
LinearSystem build_linear_system(double theta, Axis axis);

struct KernelSolution {
  Axis ell = Axis::j;
  double epsilon = 1.0;
  int dimension = 0;
  /// Gauge-normalized so that coords[1] = (x2)_l = -sqrt3 cos theta.
  Vec7 coords{};
  /// All seven singular values in decreasing order; the seventh is 0 for a
  /// 6x7 system.
  Vec7 singular_values{};
};

inline constexpr double kKernelThreshold = 1e-10;
inline constexpr double kGapThreshold = 1e-6;

/// Kernel of build_linear_system via SVD. Throws NumericalError when the
/// smallest nonzero singular value (index 5) falls below kGapThreshold.
KernelSolution kernel_solution(double theta, Axis axis);

/// The closed-form kernel vector:
///   x1 = -3c((2+e)c^2 - 4c + 2),    x2 = -sqrt3 c,   x3 = 3ec,
///   x4 = -3(c-1)((2+e)c^2 + (e-2)c - 2),
///   y1 = -3 tan((2+e)c^3 - 4c^2 + 2), y2 = -sqrt3 s,
///   y3 = 6 tan^2((2+e)c^3 - 4c^2 + 1).
Vec7 kernel_reference(double theta, double epsilon);

/// |cosine| between two 7-vectors.
double abs_cosine(const Vec7& a, const Vec7& b);

/// Real part of the quaternion y1 (x1 - x4) when every entry is a multiple
/// of the unit l: -(y1)_l (x1 - x4)_l.
double sign_product(const Vec7& kernel);

/// True iff y1 (x1 - x4) < 0 for both l, contradicting (1), which demands
/// y1 (x1 - x4) = tan |x2|^2 > 0. Requires theta in (0, pi/6).
bool sign_certificate(double theta);

/// Places kernel coordinates into the quaternion slot `unit` (1 = j, 2 = k).
ReducedPair embed_kernel(const Vec7& coords, int unit);

/// The quaternion slot whose (5) row agrees with the system's sqrt3 x2 + e x3
/// row: (5k) for e = +1, (5j) for e = -1.
int slot_for_epsilon(double epsilon);

struct IdentityRecord {
  std::string name;
  bool passed = false;
  /// Worst value seen (minimum for positivity checks, max error otherwise).
  double worst = 0.0;
};

/// Trigonometric and polynomial identities the elimination argument relies on.
/// `grid` is the number of interior points per interval.
std::vector<IdentityRecord> identity_suite(int grid = 10000);

enum class Verdict { positive, inconclusive };
std::string_view to_string(Verdict v);

struct Certificate {
  double theta = 0.0;
  int rho_rank = 0;
  int kernel_dim_j = 0;
  int kernel_dim_k = 0;
  double kernel_match_j = 0.0;
  double kernel_match_k = 0.0;
  bool sign_ok = false;
  std::optional<double> lambda_case_note;
  Verdict verdict = Verdict::inconclusive;
};

inline constexpr double kMatchTolerance = 1e-8;

/// Positive only when rho_rank = 3, both kernels are one-dimensional and
/// match the closed form, the sign check passed and theta is in (0, pi/6).
Verdict decide_verdict(const Certificate& cert);

/// Requires theta in (0, pi/2); outside (0, pi/6) the verdict is always
/// inconclusive.
Certificate certify_theta(double theta);

bool in_certified_range(double theta);

}  // namespace biquot

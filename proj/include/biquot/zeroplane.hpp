#pragma once

#include <array>
#include <optional>
#include <random>
#include <stdexcept>
#include <string_view>
#include <utility>

#include "biquot/embeddings.hpp"
#include "biquot/liealg.hpp"

namespace biquot {

// Zero-curvature planes at [p^-1] in H1\Sp(3)/H2 are spanned by independent
// X, Y in sp(3) with
//   (A) g0(X, Ad_p h1) = g0(X, h2) = g0(Y, Ad_p h1) = g0(Y, h2) = 0,
//   (B) [X,Y] = [X_k, Y_k] = [X_p, Y_p] = 0,
//   (C) [(Ad_p^-1 X)_k, (Ad_p^-1 Y)_k] = [(Ad_p^-1 X)_p, (Ad_p^-1 Y)_p] = 0.
// The residuals below vanish exactly when the respective condition holds.

/// Max |g0| of X and Y against the bases of Ad_p h1 and h2.
double conditionA_residual(const Sp3Element& x, const Sp3Element& y, const ThetaPoint& pt);

/// g0-norm of ([X,Y], [X_k,Y_k], [X_p,Y_p]) stacked.
double conditionB_residual(const Sp3Element& x, const Sp3Element& y);

/// g0-norm of the k- and p-brackets of the Ad_p^-1 transported pair.
double conditionC_residual(const Sp3Element& x, const Sp3Element& y, const ThetaPoint& pt);
/// Same as conditionC_residual with p supplied directly (any unit-symplectic p).
double conditionC_residual(const Sp3Element& x, const Sp3Element& y, const QMatrix3& p);

/// Only the p-bracket half of condition (C).
double conditionC_p_residual(const Sp3Element& x, const Sp3Element& y, const ThetaPoint& pt);

/// Normal-form coordinates
///   X = [[x1, x2, 0], [-conj x2, x3, 0], [0, 0, x4]],
///   Y = [[0, 0, y1], [0, 0, y2], [-conj y1, -conj y2, y3]].
struct ReducedPair {
  ImQuaternion x1;
  Quaternion x2;
  ImQuaternion x3;
  ImQuaternion x4;
  Quaternion y1;
  Quaternion y2;
  ImQuaternion y3;

  Sp3Element x() const;
  Sp3Element y() const;
  ReducedPair scaled(double sx, double sy) const;
};

class ReductionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Replaces (X, Y) by a pair spanning the same plane with X'_p = 0 and
/// Y'_sp(2) = 0. Requires independent X, Y satisfying (A) and (B) to 1e-9
/// (after g0-normalization) and rho_rank(pt) = 3; throws std::invalid_argument
/// on those preconditions and ReductionError when an elimination step fails.
ReducedPair normal_form_reduce(const Sp3Element& x, const Sp3Element& y, const ThetaPoint& pt);

/// The real lambda with y3 = lambda x4, when x4 is nonzero and y3 is parallel
/// to it (relative tolerance 1e-6).
std::optional<double> lambda_case(const ReducedPair& rp);

enum class Eq : int { e1, e2, e3, e4, e5i, e5j, e5k, e6i, e6j, e6k, e7i, e7j, e7k, count };
inline constexpr int kEquationCount = static_cast<int>(Eq::count);
inline constexpr std::array<std::string_view, kEquationCount> kEquationLabels = {
    "(1)", "(2)", "(3)", "(4)", "(5i)", "(5j)", "(5k)", "(6i)", "(6j)", "(6k)", "(7i)", "(7j)", "(7k)"};

struct ConditionResiduals {
  double a_res = 0.0;
  double b_res = 0.0;
  double c_res = 0.0;
  double c_p_res = 0.0;
  std::array<double, kEquationCount> eq_res{};

  double operator[](Eq e) const { return eq_res[static_cast<int>(e)]; }
  double max_condition() const;
  double max_equation() const;
  /// Max over the listed equations.
  double max_of(std::initializer_list<Eq> eqs) const;
};

inline constexpr double kSolutionTolerance = 1e-9;

/// Evaluates the thirteen reduced equations (1)-(7k) as nonnegative
/// residuals, together with the (A), (B), (C) residuals of the
/// reconstructed pair. (3) and (4) use normalized Gram determinants.
/// Requires theta in (0, pi/4).
ConditionResiduals lemma_equations_residual(const ReducedPair& rp, const ThetaPoint& pt);

/// Closed forms
///   v = (cos sin (x1 - x4), -sin conj x2),
///   w = (Re y1 + (cos^2 - sin^2) Im y1 - sin cos y3, cos y2).
std::pair<PVector, PVector> vw_vectors(const ReducedPair& rp, const ThetaPoint& pt);

/// Sign convention for the point p. kPlusSine is point_p (the (1,3) entry is
/// +sin theta); kMinusSine is its inverse.
enum class PConvention { kPlusSine, kMinusSine };

std::string_view to_string(PConvention c);
QMatrix3 convention_matrix(const ThetaPoint& pt, PConvention c);

/// Max entrywise difference between vw_vectors and the p-parts of
/// Ad_q^-1 X, Ad_q^-1 Y, where q is pt under the given convention.
double vw_identity_error(const ReducedPair& rp, const ThetaPoint& pt, PConvention c);

/// Signed values of the nine (A) linear forms that do not vanish
/// identically on normal-form pairs: g0(X, h2_l), g0(X, Ad_p h1_l),
/// g0(Y, Ad_p h1_l) for l = i, j, k.
std::array<double, 9> condition_a_forms(const ReducedPair& rp, const ThetaPoint& pt);
/// Signed left-hand sides of (5i)..(7k) in the same order.
std::array<double, 9> linear_equation_values(const ReducedPair& rp, const ThetaPoint& pt);

// Generators of structured pairs, used by the equivalence checks.

ReducedPair random_reduced_pair(std::mt19937_64& rng);
/// Adjusts x3, x1, y3 of rp so that (5), (6), (7) hold, i.e. condition (A).
ReducedPair enforce_condition_a(ReducedPair rp, const ThetaPoint& pt);
/// A pair satisfying (A) and (B) exactly, with every entry in the
/// span of the unit `axis` (1 = j, 2 = k); root in {0, 1} selects one of
/// the two solution lines.
ReducedPair construct_ab_solution(const ThetaPoint& pt, int axis, int root);
/// Adjusts y1, y2 of rp so that w = mu * v, i.e. the p-bracket half of (C).
ReducedPair enforce_vw_dependence(ReducedPair rp, const ThetaPoint& pt, double mu);

}  // namespace biquot

#pragma once

#include <cstdint>
#include <functional>
#include <random>
#include <stdexcept>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "biquot/embeddings.hpp"
#include "biquot/liealg.hpp"

namespace biquot {

/// Stack of bilinear sp(3)-valued terms T_m(X, Y).
using PairTerms = std::function<std::vector<Sp3Element>(const Sp3Element&, const Sp3Element&)>;

/// F(a, b) = sum_m |T_m(X(a), Y(b))|^2 for X(a) = sum_i a_i E_i over a
/// g0-orthonormal basis E. The terms are evaluated once on every basis pair
/// and stored as a (dim*dim) x (21 * terms) table, so F and its gradient are
/// two small matrix products.
class PairObjective {
 public:
  PairObjective(std::vector<Sp3Element> basis, const PairTerms& terms);

  int dim() const { return static_cast<int>(basis_.size()); }
  const std::vector<Sp3Element>& basis() const { return basis_; }

  double value(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;
  double value_and_gradient(const Eigen::VectorXd& a, const Eigen::VectorXd& b, Eigen::VectorXd& grad_a,
                            Eigen::VectorXd& grad_b) const;

  Sp3Element element(const Eigen::VectorXd& coeffs) const;

 private:
  Eigen::VectorXd residual(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const;

  std::vector<Sp3Element> basis_;
  Eigen::MatrixXd table_;
};

struct DescentOptions {
  int iterations = 500;
  double armijo = 1e-4;
  double grad_tol = 1e-12;
  int max_halvings = 60;
};

struct DescentResult {
  Eigen::VectorXd a;
  Eigen::VectorXd b;
  double value = 0.0;
  int iterations = 0;
};

/// Gram-Schmidt on the pair (a, b), in place.
void orthonormalize(Eigen::VectorXd& a, Eigen::VectorXd& b);

/// Gaussian pair, orthonormalized.
std::pair<Eigen::VectorXd, Eigen::VectorXd> random_orthonormal_pair(int dim, std::mt19937_64& rng);

/// Projected gradient descent on orthonormal pairs: the Euclidean gradient is
/// projected onto the tangent space of the Stiefel manifold and steps are
/// retracted by Gram-Schmidt, with backtracking halving under the Armijo rule.
DescentResult descend(const PairObjective& f, Eigen::VectorXd a, Eigen::VectorXd b, const DescentOptions& opts);

/// g0-orthonormal basis of the orthogonal complement of the given vectors
/// (singular values above 1e-9 count toward their span).
std::vector<Sp3Element> orthocomplement(const std::vector<Coords21>& spanning);

class DegenerateSpaceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr int kHorizontalDim = 15;

/// g0-orthonormal basis of the complement of Ad_p h1 + h2: the pairs
/// allowed by condition (A). Throws DegenerateSpaceError unless its
/// dimension is 15.
std::vector<Sp3Element> horizontal_basis(const ThetaPoint& pt);

/// F = conditionB_residual^2 + conditionC_residual^2 on horizontal pairs.
PairObjective zero_plane_objective(const ThetaPoint& pt);

struct SearchOptions {
  int starts = 200;
  int iterations = 500;
  std::uint64_t seed = 0;
};

struct SearchReport {
  double theta = 0.0;
  int starts = 0;
  int iterations = 0;
  long long total_iterations = 0;
  /// Smallest conditionB^2 + conditionC^2 reached.
  double min_residual = 0.0;
  int best_start = -1;
  Sp3Element argmin_x;
  Sp3Element argmin_y;
};

/// Multi-start minimization; start s draws from a generator seeded with
/// seed + s, and ties are broken toward the lower start index, so the
/// report does not depend on the thread count. Requires theta in (0, pi/2)
/// and starts >= 1.
SearchReport search_zero_plane(double theta, const SearchOptions& opts);

/// Single-threaded reference for search_zero_plane.
SearchReport search_zero_plane_serial(double theta, const SearchOptions& opts);

/// p = {(1,3), (2,3) slots}, 8-dimensional.
std::vector<Sp3Element> p_basis();
/// Complement of h2 inside sp(2) + 0, 7-dimensional.
std::vector<Sp3Element> berger_complement_basis();

struct BracketFloor {
  double sampled_min = 0.0;
  double refined_min = 0.0;
  int samples = 0;
};

/// Minimum of |[X, Y]|^2 over g0-orthonormal pairs in span(basis): random
/// sampling followed by descent from the best `refine` samples.
BracketFloor bracket_floor(const std::vector<Sp3Element>& basis, int samples, int refine, std::uint64_t seed);

/// Thread count for parallel regions: BIQUOT_THREADS when set to a positive
/// integer, otherwise the OpenMP default.
int configured_threads();

}  // namespace biquot

#include "biquot/search.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <numeric>

#include <Eigen/SVD>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "biquot/zeroplane.hpp"

namespace biquot {

namespace {

using RowMajor = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

Eigen::VectorXd outer_flat(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  const Eigen::Index n = a.size();
  Eigen::VectorXd out(n * n);
  for (Eigen::Index i = 0; i < n; ++i) out.segment(i * n, n) = a[i] * b;
  return out;
}

std::vector<Coords21> unit_coords(std::initializer_list<int> indices) {
  std::vector<Coords21> out;
  for (int i : indices) {
    Coords21 x = Coords21::Zero();
    x[i] = 1.0;
    out.push_back(x);
  }
  return out;
}

SearchReport run_search(double theta, const SearchOptions& opts, bool parallel) {
  if (opts.starts < 1) throw std::invalid_argument("search_zero_plane: starts must be >= 1");
  if (opts.iterations < 0) throw std::invalid_argument("search_zero_plane: iterations must be >= 0");
  const ThetaPoint pt = point_p(theta);
  const PairObjective f = zero_plane_objective(pt);
  DescentOptions dopts;
  dopts.iterations = opts.iterations;

  std::vector<DescentResult> results(static_cast<std::size_t>(opts.starts));
  const auto run_start = [&](int s) {
    std::mt19937_64 rng(opts.seed + static_cast<std::uint64_t>(s));
    auto [a, b] = random_orthonormal_pair(f.dim(), rng);
    results[static_cast<std::size_t>(s)] = descend(f, std::move(a), std::move(b), dopts);
  };

  if (parallel) {
#pragma omp parallel for schedule(dynamic) num_threads(configured_threads())
    for (int s = 0; s < opts.starts; ++s) run_start(s);
  } else {
    for (int s = 0; s < opts.starts; ++s) run_start(s);
  }

  SearchReport report;
  report.theta = theta;
  report.starts = opts.starts;
  report.iterations = opts.iterations;
  report.min_residual = std::numeric_limits<double>::infinity();
  for (int s = 0; s < opts.starts; ++s) {
    const DescentResult& r = results[static_cast<std::size_t>(s)];
    report.total_iterations += r.iterations;
    if (r.value < report.min_residual) {
      report.min_residual = r.value;
      report.best_start = s;
    }
  }
  const DescentResult& best = results[static_cast<std::size_t>(report.best_start)];
  report.argmin_x = f.element(best.a);
  report.argmin_y = f.element(best.b);
  return report;
}

}  // namespace

PairObjective::PairObjective(std::vector<Sp3Element> basis, const PairTerms& terms) : basis_(std::move(basis)) {
  const int n = dim();
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const std::vector<Sp3Element> t = terms(basis_[i], basis_[j]);
      if (table_.size() == 0) table_.resize(static_cast<Eigen::Index>(n) * n, 21 * static_cast<Eigen::Index>(t.size()));
      for (std::size_t m = 0; m < t.size(); ++m)
        table_.row(i * n + j).segment(21 * static_cast<Eigen::Index>(m), 21) = t[m].coords().transpose();
    }
  }
}

Eigen::VectorXd PairObjective::residual(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
  return table_.transpose() * outer_flat(a, b);
}

double PairObjective::value(const Eigen::VectorXd& a, const Eigen::VectorXd& b) const {
  return residual(a, b).squaredNorm();
}

double PairObjective::value_and_gradient(const Eigen::VectorXd& a, const Eigen::VectorXd& b, Eigen::VectorXd& grad_a,
                                         Eigen::VectorXd& grad_b) const {
  const Eigen::VectorXd r = residual(a, b);
  const Eigen::VectorXd s = table_ * r;
  const Eigen::Map<const RowMajor> sm(s.data(), dim(), dim());
  grad_a = 2.0 * (sm * b);
  grad_b = 2.0 * (sm.transpose() * a);
  return r.squaredNorm();
}

Sp3Element PairObjective::element(const Eigen::VectorXd& coeffs) const {
  Sp3Element out;
  for (int i = 0; i < dim(); ++i) out += coeffs[i] * basis_[static_cast<std::size_t>(i)];
  return out;
}

void orthonormalize(Eigen::VectorXd& a, Eigen::VectorXd& b) {
  a.normalize();
  b -= a.dot(b) * a;
  b.normalize();
}

std::pair<Eigen::VectorXd, Eigen::VectorXd> random_orthonormal_pair(int dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  Eigen::VectorXd a(dim);
  Eigen::VectorXd b(dim);
  for (int i = 0; i < dim; ++i) a[i] = gauss(rng);
  for (int i = 0; i < dim; ++i) b[i] = gauss(rng);
  orthonormalize(a, b);
  return {std::move(a), std::move(b)};
}

DescentResult descend(const PairObjective& f, Eigen::VectorXd a, Eigen::VectorXd b, const DescentOptions& opts) {
  orthonormalize(a, b);
  Eigen::VectorXd ga;
  Eigen::VectorXd gb;
  double value = f.value_and_gradient(a, b, ga, gb);
  double step = 1.0;
  int it = 0;
  for (; it < opts.iterations; ++it) {
    // Tangent projection G - Q sym(Q^T G) for Q = [a b].
    const double s11 = a.dot(ga);
    const double s22 = b.dot(gb);
    const double s12 = 0.5 * (a.dot(gb) + b.dot(ga));
    const Eigen::VectorXd pa = ga - s11 * a - s12 * b;
    const Eigen::VectorXd pb = gb - s12 * a - s22 * b;
    const double gnorm2 = pa.squaredNorm() + pb.squaredNorm();
    if (std::sqrt(gnorm2) < opts.grad_tol) break;

    step = std::min(2.0 * step, 1e6);
    bool accepted = false;
    Eigen::VectorXd na;
    Eigen::VectorXd nb;
    for (int h = 0; h <= opts.max_halvings; ++h, step *= 0.5) {
      na = a - step * pa;
      nb = b - step * pb;
      orthonormalize(na, nb);
      if (f.value(na, nb) <= value - opts.armijo * step * gnorm2) {
        accepted = true;
        break;
      }
    }
    if (!accepted) break;
    a = std::move(na);
    b = std::move(nb);
    value = f.value_and_gradient(a, b, ga, gb);
  }
  return {std::move(a), std::move(b), value, it};
}

std::vector<Sp3Element> orthocomplement(const std::vector<Coords21>& spanning) {
  Eigen::MatrixXd m(static_cast<Eigen::Index>(spanning.size()), 21);
  for (std::size_t i = 0; i < spanning.size(); ++i) m.row(static_cast<Eigen::Index>(i)) = spanning[i].transpose();
  const Eigen::JacobiSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeFullV);
  int rank = 0;
  for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
    if (svd.singularValues()[i] > kRankThreshold) ++rank;
  std::vector<Sp3Element> out;
  for (int c = rank; c < 21; ++c) out.push_back(Sp3Element::from_coords(svd.matrixV().col(c)));
  return out;
}

std::vector<Sp3Element> horizontal_basis(const ThetaPoint& pt) {
  const BasisTriple adp = adp_h1_basis(pt);
  const BasisTriple h2 = h2_basis();
  std::vector<Coords21> spanning;
  for (int l = 0; l < 3; ++l) {
    spanning.push_back(adp[l].coords());
    spanning.push_back(h2[l].coords());
  }
  std::vector<Sp3Element> basis = orthocomplement(spanning);
  if (static_cast<int>(basis.size()) != kHorizontalDim)
    throw DegenerateSpaceError("horizontal space has dimension " + std::to_string(basis.size()) + ", expected 15");
  return basis;
}

PairObjective zero_plane_objective(const ThetaPoint& pt) {
  const QMatrix3 pinv = pt.inverse();
  return PairObjective(horizontal_basis(pt), [pinv](const Sp3Element& x, const Sp3Element& y) {
    const KPDecomposition xs = split_kp(x);
    const KPDecomposition ys = split_kp(y);
    const KPDecomposition ax = split_kp(adjoint(pinv, x));
    const KPDecomposition ay = split_kp(adjoint(pinv, y));
    return std::vector<Sp3Element>{bracket(x, y), bracket(xs.k_part, ys.k_part), bracket(xs.p_part, ys.p_part),
                                   bracket(ax.k_part, ay.k_part), bracket(ax.p_part, ay.p_part)};
  });
}

SearchReport search_zero_plane(double theta, const SearchOptions& opts) { return run_search(theta, opts, true); }

SearchReport search_zero_plane_serial(double theta, const SearchOptions& opts) {
  return run_search(theta, opts, false);
}

std::vector<Sp3Element> p_basis() { return orthocomplement(unit_coords({0, 1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12})); }

std::vector<Sp3Element> berger_complement_basis() {
  std::vector<Coords21> spanning = unit_coords({6, 7, 8, 13, 14, 15, 16, 17, 18, 19, 20});
  const BasisTriple h2 = h2_basis();
  for (int l = 0; l < 3; ++l) spanning.push_back(h2[l].coords());
  return orthocomplement(spanning);
}

BracketFloor bracket_floor(const std::vector<Sp3Element>& basis, int samples, int refine, std::uint64_t seed) {
  const PairObjective f(basis, [](const Sp3Element& x, const Sp3Element& y) {
    return std::vector<Sp3Element>{bracket(x, y)};
  });
  std::mt19937_64 rng(seed);
  std::vector<std::pair<Eigen::VectorXd, Eigen::VectorXd>> pairs;
  std::vector<double> values;
  pairs.reserve(static_cast<std::size_t>(samples));
  values.reserve(static_cast<std::size_t>(samples));
  for (int n = 0; n < samples; ++n) {
    pairs.push_back(random_orthonormal_pair(f.dim(), rng));
    values.push_back(f.value(pairs.back().first, pairs.back().second));
  }

  BracketFloor out;
  out.samples = samples;
  out.sampled_min = *std::min_element(values.begin(), values.end());
  out.refined_min = out.sampled_min;

  std::vector<std::size_t> order(values.size());
  std::iota(order.begin(), order.end(), 0);
  const std::size_t keep = std::min(order.size(), static_cast<std::size_t>(std::max(refine, 0)));
  std::partial_sort(order.begin(), order.begin() + static_cast<std::ptrdiff_t>(keep), order.end(),
                    [&](std::size_t l, std::size_t r) { return values[l] < values[r]; });
  DescentOptions dopts;
  dopts.iterations = 2000;
  for (std::size_t i = 0; i < keep; ++i) {
    const auto& [a, b] = pairs[order[i]];
    out.refined_min = std::min(out.refined_min, descend(f, a, b, dopts).value);
  }
  return out;
}

int configured_threads() {
  if (const char* env = std::getenv("BIQUOT_THREADS")) {
    char* end = nullptr;
    const long n = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && n > 0) return static_cast<int>(n);
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

}  // namespace biquot

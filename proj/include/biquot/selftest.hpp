#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "biquot/embeddings.hpp"
#include "biquot/zeroplane.hpp"

namespace biquot {

struct SuiteResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct SelftestOptions {
  Phi3Fn phi3 = &phi3_alg;
  std::uint64_t seed = 20240601;
  int samples = 1000;
  int floor_samples = 100000;
  int floor_refine = 20;
};

struct SelftestReport {
  std::vector<SuiteResult> suites;
  /// The p-sign convention under which the v, w closed forms hold.
  std::optional<PConvention> convention;

  bool passed() const;
  const SuiteResult* first_failure() const;
};

/// [phi(t), phi(s)] = phi([t, s]) for random imaginary t, s, relative to |t||s|.
SuiteResult representation_suite(Phi3Fn phi, int samples, std::uint64_t seed);
/// Ad-invariance of g0, Ad_p [X, Y] = [Ad_p X, Ad_p Y], and
/// [X, Y]_k = [X_k, Y_k] + [X_p, Y_p].
SuiteResult structural_suite(int samples, std::uint64_t seed);
/// Closed-form Ad_p h1 and v, w displays; sets `convention` to the unique
/// p-sign convention satisfying the v, w identity.
SuiteResult display_suite(std::uint64_t seed, std::optional<PConvention>& convention);
/// Condition residuals against the reduced equations, both directions.
SuiteResult equivalence_suite(int samples, std::uint64_t seed);
/// SVD kernel against the closed form on a grid of (0.01, pi/6 - 0.01).
SuiteResult kernel_suite(int grid);
/// y1 (x1 - x4) < 0 for both labels on a grid of (0.001, pi/6 - 0.001).
SuiteResult sign_suite(int grid);
SuiteResult identities_suite();
/// Bracket floors on p and on the h2-complement of sp(2).
SuiteResult positivity_suite(int samples, int refine, std::uint64_t seed);

SelftestReport run_selftest(const SelftestOptions& opts = {});

}  // namespace biquot

#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "biquot/certify.hpp"
#include "biquot/search.hpp"

namespace biquot {

/// Below this search residual a horizontal pair is treated as a candidate
/// zero-curvature plane.
inline constexpr double kZeroPlaneThreshold = 1e-8;

struct ScanRow {
  double theta = 0.0;
  int rho_rank = 0;
  int kernel_dim_j = 0;
  int kernel_dim_k = 0;
  double kernel_match_j = 0.0;
  double kernel_match_k = 0.0;
  bool sign_ok = false;
  double min_residual = 0.0;
  Verdict verdict = Verdict::inconclusive;
};

struct ScanOptions {
  double from = 0.0;
  double to = 0.0;
  int steps = 0;
  std::uint64_t seed = 0;
  int starts = 20;
  int iterations = 500;
};

inline constexpr std::string_view kScanCsvHeader =
    "theta,rho_rank,kernel_dim_j,kernel_dim_k,kernel_match_j,kernel_match_k,sign_ok,min_residual,verdict";

/// `steps` points from `from` to `to` inclusive. Throws std::invalid_argument
/// unless 0 < from < to < pi/2 and steps >= 2.
std::vector<double> theta_grid(double from, double to, int steps);

/// Certificate plus zero-plane search at one grid point. Row `index` seeds
/// its search with seed + index * starts.
ScanRow scan_row(double theta, int index, const ScanOptions& opts);

/// Rows are computed in parallel and returned in grid order.
std::vector<ScanRow> scan(const ScanOptions& opts);
std::vector<ScanRow> scan_serial(const ScanOptions& opts);

/// Combined verdict: the algebraic certificate is positive and the search
/// found no pair below kZeroPlaneThreshold.
Verdict combined_verdict(const Certificate& cert, const SearchReport& search);

/// 17 significant digits.
std::string format_double(double v);

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows);

nlohmann::json to_json(const Certificate& cert);
nlohmann::json to_json(const SearchReport& report);

}  // namespace biquot

#include "biquot/report.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <stdexcept>

namespace biquot {

std::vector<double> theta_grid(double from, double to, int steps) {
  if (!(std::isfinite(from) && std::isfinite(to) && 0.0 < from && from < to && to < std::numbers::pi / 2))
    throw std::invalid_argument("scan range must satisfy 0 < from < to < pi/2");
  if (steps < 2) throw std::invalid_argument("scan needs at least 2 steps");
  std::vector<double> grid(static_cast<std::size_t>(steps));
  for (int i = 0; i < steps; ++i) grid[static_cast<std::size_t>(i)] = from + (to - from) * i / (steps - 1);
  grid.back() = to;
  return grid;
}

Verdict combined_verdict(const Certificate& cert, const SearchReport& search) {
  return cert.verdict == Verdict::positive && search.min_residual >= kZeroPlaneThreshold ? Verdict::positive
                                                                                          : Verdict::inconclusive;
}

ScanRow scan_row(double theta, int index, const ScanOptions& opts) {
  const Certificate cert = certify_theta(theta);
  SearchOptions sopts;
  sopts.starts = opts.starts;
  sopts.iterations = opts.iterations;
  sopts.seed = opts.seed + static_cast<std::uint64_t>(index) * static_cast<std::uint64_t>(opts.starts);
  const SearchReport search = search_zero_plane_serial(theta, sopts);

  ScanRow row;
  row.theta = theta;
  row.rho_rank = cert.rho_rank;
  row.kernel_dim_j = cert.kernel_dim_j;
  row.kernel_dim_k = cert.kernel_dim_k;
  row.kernel_match_j = cert.kernel_match_j;
  row.kernel_match_k = cert.kernel_match_k;
  row.sign_ok = cert.sign_ok;
  row.min_residual = search.min_residual;
  row.verdict = combined_verdict(cert, search);
  return row;
}

std::vector<ScanRow> scan(const ScanOptions& opts) {
  const std::vector<double> grid = theta_grid(opts.from, opts.to, opts.steps);
  std::vector<ScanRow> rows(grid.size());
  const int n = static_cast<int>(grid.size());
#pragma omp parallel for schedule(dynamic) num_threads(configured_threads())
  for (int i = 0; i < n; ++i) rows[static_cast<std::size_t>(i)] = scan_row(grid[static_cast<std::size_t>(i)], i, opts);
  return rows;
}

std::vector<ScanRow> scan_serial(const ScanOptions& opts) {
  const std::vector<double> grid = theta_grid(opts.from, opts.to, opts.steps);
  std::vector<ScanRow> rows;
  rows.reserve(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) rows.push_back(scan_row(grid[i], static_cast<int>(i), opts));
  return rows;
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_scan_csv(std::ostream& os, const std::vector<ScanRow>& rows) {
  os << kScanCsvHeader << '\n';
  for (const ScanRow& r : rows) {
    os << format_double(r.theta) << ',' << r.rho_rank << ',' << r.kernel_dim_j << ',' << r.kernel_dim_k << ','
       << format_double(r.kernel_match_j) << ',' << format_double(r.kernel_match_k) << ','
       << (r.sign_ok ? "true" : "false") << ',' << format_double(r.min_residual) << ',' << to_string(r.verdict)
       << '\n';
  }
}

nlohmann::json to_json(const Certificate& cert) {
  nlohmann::json j;
  j["theta"] = cert.theta;
  j["rho_rank"] = cert.rho_rank;
  j["kernel_dim_j"] = cert.kernel_dim_j;
  j["kernel_dim_k"] = cert.kernel_dim_k;
  j["kernel_match_j"] = cert.kernel_match_j;
  j["kernel_match_k"] = cert.kernel_match_k;
  j["sign_ok"] = cert.sign_ok;
  j["lambda_case_note"] = cert.lambda_case_note ? nlohmann::json(*cert.lambda_case_note) : nlohmann::json(nullptr);
  j["verdict"] = std::string(to_string(cert.verdict));
  return j;
}

nlohmann::json to_json(const SearchReport& report) {
  nlohmann::json j;
  j["theta"] = report.theta;
  j["starts"] = report.starts;
  j["iterations"] = report.iterations;
  j["total_iterations"] = report.total_iterations;
  j["min_residual"] = report.min_residual;
  j["best_start"] = report.best_start;
  const auto coords = [](const Sp3Element& e) {
    const Coords21 c = e.coords();
    return std::vector<double>(c.data(), c.data() + c.size());
  };
  j["argmin_pair"] = {{"x", coords(report.argmin_x)}, {"y", coords(report.argmin_y)}};
  return j;
}

}  // namespace biquot

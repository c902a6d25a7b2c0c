#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "biquot/certify.hpp"
#include "biquot/report.hpp"
#include "biquot/search.hpp"
#include "biquot/selftest.hpp"
#include "biquot/zeroplane.hpp"

namespace {

using namespace biquot;

constexpr int kExitPositive = 0;
constexpr int kExitError = 1;
constexpr int kExitInconclusive = 2;

struct CheckArgs {
  double theta = 0.0;
  bool degrees = false;
  std::string mode = "both";
  std::uint64_t seed = 0;
  int starts = 200;
  int iterations = 500;
  std::string json_path;
};

struct ScanArgs {
  double from = 0.0;
  double to = 0.0;
  int steps = 0;
  std::string out;
  std::uint64_t seed = 0;
  int starts = 20;
  int iterations = 500;
};

void print_field(const char* name, const std::string& value) { std::printf("%-18s %s\n", name, value.c_str()); }

std::optional<double> try_lambda(const SearchReport& search, const ThetaPoint& pt) {
  try {
    return lambda_case(normal_form_reduce(search.argmin_x, search.argmin_y, pt));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

int run_check(const CheckArgs& args) {
  const double theta = args.degrees ? args.theta * std::numbers::pi / 180.0 : args.theta;
  const ThetaPoint pt = point_p(theta);

  Certificate cert = certify_theta(theta);
  std::optional<SearchReport> search;
  if (args.mode != "algebraic") {
    SearchOptions sopts;
    sopts.starts = args.starts;
    sopts.iterations = args.iterations;
    sopts.seed = args.seed;
    search = search_zero_plane(theta, sopts);
    cert.lambda_case_note = try_lambda(*search, pt);
  }

  Verdict verdict = cert.verdict;
  if (args.mode == "search")
    verdict = in_certified_range(theta) && search->min_residual >= kZeroPlaneThreshold ? Verdict::positive
                                                                                       : Verdict::inconclusive;
  else if (args.mode == "both")
    verdict = combined_verdict(cert, *search);

  print_field("theta", format_double(cert.theta));
  print_field("mode", args.mode);
  print_field("rho_rank", std::to_string(cert.rho_rank));
  print_field("kernel_dim_j", std::to_string(cert.kernel_dim_j));
  print_field("kernel_dim_k", std::to_string(cert.kernel_dim_k));
  print_field("kernel_match_j", format_double(cert.kernel_match_j));
  print_field("kernel_match_k", format_double(cert.kernel_match_k));
  print_field("sign_ok", cert.sign_ok ? "true" : "false");
  if (search) {
    print_field("search_starts", std::to_string(search->starts));
    print_field("min_residual", format_double(search->min_residual));
    print_field("lambda_case_note", cert.lambda_case_note ? format_double(*cert.lambda_case_note) : "none");
  }
  print_field("verdict", std::string(to_string(verdict)));

  if (!args.json_path.empty()) {
    nlohmann::json j = to_json(cert);
    j["mode"] = args.mode;
    j["verdict"] = std::string(to_string(verdict));
    if (search) j["search"] = to_json(*search);
    std::ofstream out(args.json_path);
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("cannot write " + args.json_path);
  }
  return verdict == Verdict::positive ? kExitPositive : kExitInconclusive;
}

int run_scan(const ScanArgs& args) {
  ScanOptions opts;
  opts.from = args.from;
  opts.to = args.to;
  opts.steps = args.steps;
  opts.seed = args.seed;
  opts.starts = args.starts;
  opts.iterations = args.iterations;
  theta_grid(opts.from, opts.to, opts.steps);

  std::ofstream out(args.out, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + args.out + " for writing");
  const std::vector<ScanRow> rows = scan(opts);
  write_scan_csv(out, rows);
  out.close();
  if (!out) throw std::runtime_error("cannot write " + args.out);

  int positive = 0;
  for (const ScanRow& r : rows) positive += r.verdict == Verdict::positive;
  std::printf("%zu rows written to %s (%d positive)\n", rows.size(), args.out.c_str(), positive);
  return kExitPositive;
}

int run_selftest_command() {
  const SelftestReport report = run_selftest();
  for (const SuiteResult& s : report.suites)
    std::printf("%s %-15s %s\n", s.passed ? "PASS" : "FAIL", s.name.c_str(), s.detail.c_str());
  std::printf("p-sign convention: %s\n",
              report.convention ? std::string(to_string(*report.convention)).c_str() : "unresolved");
  if (const SuiteResult* f = report.first_failure()) {
    std::fprintf(stderr, "selftest failed: first failing suite is %s\n", f->name.c_str());
    return kExitError;
  }
  return kExitPositive;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Certify positive curvature of the biquotient metric at points p(theta)"};
  app.require_subcommand(1);

  CheckArgs check;
  CLI::App* check_cmd = app.add_subcommand("check", "Certify a single theta");
  check_cmd->add_option("--theta", check.theta, "Angle in radians (degrees with --degrees)")->required();
  check_cmd->add_flag("--degrees", check.degrees, "Read --theta in degrees");
  check_cmd->add_option("--mode", check.mode, "algebraic, search or both")
      ->check(CLI::IsMember({"algebraic", "search", "both"}))
      ->capture_default_str();
  check_cmd->add_option("--seed", check.seed, "Search seed")->capture_default_str();
  check_cmd->add_option("--starts", check.starts, "Search starts")->check(CLI::PositiveNumber)->capture_default_str();
  check_cmd->add_option("--iterations", check.iterations, "Descent iterations per start")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();
  check_cmd->add_option("--json", check.json_path, "Write a JSON report to this path");

  ScanArgs scan_args;
  CLI::App* scan_cmd = app.add_subcommand("scan", "Certify a grid of theta values and write CSV");
  scan_cmd->add_option("--from", scan_args.from, "First angle (radians)")->required();
  scan_cmd->add_option("--to", scan_args.to, "Last angle (radians)")->required();
  scan_cmd->add_option("--steps", scan_args.steps, "Number of grid points")->required();
  scan_cmd->add_option("--out", scan_args.out, "CSV output path")->required();
  scan_cmd->add_option("--seed", scan_args.seed, "Search seed")->capture_default_str();
  scan_cmd->add_option("--starts", scan_args.starts, "Search starts per row")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  scan_cmd->add_option("--iterations", scan_args.iterations, "Descent iterations per start")
      ->check(CLI::NonNegativeNumber)
      ->capture_default_str();

  CLI::App* selftest_cmd = app.add_subcommand("selftest", "Run the property suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitError;
  }

  try {
    if (*check_cmd) return run_check(check);
    if (*scan_cmd) return run_scan(scan_args);
    if (*selftest_cmd) return run_selftest_command();
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitError;
  }
  return kExitError;
}

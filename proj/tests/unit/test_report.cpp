#include <cstdlib>
#include <numbers>
#include <sstream>

#include <gtest/gtest.h>

#include "biquot/report.hpp"

using namespace biquot;

namespace {

constexpr double kPi = std::numbers::pi;

std::string csv(const std::vector<ScanRow>& rows) {
  std::ostringstream os;
  write_scan_csv(os, rows);
  return os.str();
}

}  // namespace

TEST(ThetaGrid, EndpointsAndValidation) {
  const std::vector<double> g = theta_grid(0.1, 0.5, 5);
  ASSERT_EQ(g.size(), 5u);
  EXPECT_EQ(g.front(), 0.1);
  EXPECT_EQ(g.back(), 0.5);
  EXPECT_NEAR(g[2], 0.3, 1e-15);
  EXPECT_THROW(theta_grid(0.5, 0.1, 5), std::invalid_argument);
  EXPECT_THROW(theta_grid(0.0, 0.1, 5), std::invalid_argument);
  EXPECT_THROW(theta_grid(0.1, kPi / 2, 5), std::invalid_argument);
  EXPECT_THROW(theta_grid(0.1, 0.2, 1), std::invalid_argument);
}

TEST(FormatDouble, SeventeenDigitsRoundTrip) {
  for (double v : {0.1, kPi / 12, 1e-17, 123456.789, -2.5}) EXPECT_EQ(std::strtod(format_double(v).c_str(), nullptr), v);
  EXPECT_EQ(format_double(0.1), "0.10000000000000001");
}

TEST(ScanCsv, HeaderAndRowLayout) {
  ScanRow r;
  r.theta = 0.25;
  r.rho_rank = 3;
  r.kernel_dim_j = 1;
  r.kernel_dim_k = 1;
  r.kernel_match_j = 1.0;
  r.kernel_match_k = 0.5;
  r.sign_ok = true;
  r.min_residual = 0.125;
  r.verdict = Verdict::positive;
  EXPECT_EQ(csv({r}),
            "theta,rho_rank,kernel_dim_j,kernel_dim_k,kernel_match_j,kernel_match_k,sign_ok,min_residual,verdict\n"
            "0.25,3,1,1,1,0.5,true,0.125,positive\n");
}

TEST(Scan, ParallelMatchesSerialAndIsDeterministic) {
  ScanOptions opts;
  opts.from = 0.1;
  opts.to = 0.7;
  opts.steps = 4;
  opts.starts = 3;
  opts.iterations = 50;
  opts.seed = 5;
  const std::string serial = csv(scan_serial(opts));
  EXPECT_EQ(serial, csv(scan(opts)));
  setenv("BIQUOT_THREADS", "3", 1);
  EXPECT_EQ(serial, csv(scan(opts)));
  unsetenv("BIQUOT_THREADS");
}

TEST(Scan, VerdictsFollowCertifiedRange) {
  ScanOptions opts;
  opts.from = 0.05;
  opts.to = 0.5;
  opts.steps = 10;
  opts.starts = 4;
  const std::vector<ScanRow> rows = scan(opts);
  ASSERT_EQ(rows.size(), 10u);
  for (const ScanRow& r : rows) {
    if (r.theta < kPi / 6) EXPECT_EQ(r.verdict, Verdict::positive) << r.theta;
    EXPECT_EQ(r.rho_rank, 3);
  }
  const ScanRow outside = scan_row(0.7, 0, opts);
  EXPECT_EQ(outside.verdict, Verdict::inconclusive);
}

TEST(CombinedVerdict, SearchCanOnlyDemote) {
  Certificate cert = certify_theta(kPi / 12);
  SearchReport search;
  search.min_residual = 1.0;
  EXPECT_EQ(combined_verdict(cert, search), Verdict::positive);
  search.min_residual = kZeroPlaneThreshold / 2;
  EXPECT_EQ(combined_verdict(cert, search), Verdict::inconclusive);
  search.min_residual = 1.0;
  cert.verdict = Verdict::inconclusive;
  EXPECT_EQ(combined_verdict(cert, search), Verdict::inconclusive);
}

TEST(Json, MirrorsCertificateFields) {
  Certificate cert = certify_theta(kPi / 12);
  nlohmann::json j = to_json(cert);
  for (const char* key : {"theta", "rho_rank", "kernel_dim_j", "kernel_dim_k", "kernel_match_j", "kernel_match_k",
                          "sign_ok", "lambda_case_note", "verdict"})
    EXPECT_TRUE(j.contains(key)) << key;
  EXPECT_EQ(j.size(), 9u);
  EXPECT_TRUE(j["lambda_case_note"].is_null());
  EXPECT_EQ(j["verdict"], "positive");
  cert.lambda_case_note = 2.0;
  EXPECT_EQ(to_json(cert)["lambda_case_note"], 2.0);

  SearchOptions opts;
  opts.starts = 2;
  opts.iterations = 5;
  const nlohmann::json s = to_json(search_zero_plane(0.3, opts));
  EXPECT_EQ(s["starts"], 2);
  EXPECT_EQ(s["argmin_pair"]["x"].size(), 21u);
  EXPECT_EQ(s["argmin_pair"]["y"].size(), 21u);
}

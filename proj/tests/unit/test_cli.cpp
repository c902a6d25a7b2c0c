#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gtest/gtest.h>

#include "json.hpp"

namespace {

namespace fs = std::filesystem;

int run(const std::string& args) {
  const std::string cmd = std::string(BIQUOT_CLI) + " " + args + " > /dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

fs::path temp_path(const std::string& name) { return fs::temp_directory_path() / ("biquot_cli_test_" + name); }

}  // namespace

TEST(Cli, CheckExitCodes) {
  EXPECT_EQ(run("check --theta 0.2617993878 --mode both --starts 20"), 0);
  EXPECT_EQ(run("check --theta 1.0 --mode algebraic"), 2);
  EXPECT_EQ(run("check --theta 0.6 --mode search --starts 5"), 2);
  EXPECT_EQ(run("check --theta -1"), 1);
  EXPECT_EQ(run("check --theta 2.0"), 1);
  EXPECT_EQ(run("check --theta abc"), 1);
  EXPECT_EQ(run("check --theta 0.2 --mode sideways"), 1);
  EXPECT_EQ(run("check"), 1);
  EXPECT_EQ(run("check --theta 15 --degrees --mode algebraic"), 0);
  EXPECT_EQ(run("check --theta 45 --degrees --mode algebraic"), 2);
  EXPECT_EQ(run(""), 1);
}

TEST(Cli, CheckWritesJson) {
  const fs::path out = temp_path("check.json");
  ASSERT_EQ(run("check --theta 0.2617993878 --mode both --starts 4 --json " + out.string()), 0);
  const nlohmann::json j = nlohmann::json::parse(slurp(out));
  EXPECT_EQ(j["verdict"], "positive");
  EXPECT_EQ(j["rho_rank"], 3);
  EXPECT_TRUE(j.contains("lambda_case_note"));
  EXPECT_EQ(j["search"]["starts"], 4);
  EXPECT_GT(j["search"]["min_residual"].get<double>(), 1e-6);
  fs::remove(out);
}

TEST(Cli, ScanIsByteIdenticalAcrossRuns) {
  const fs::path a = temp_path("a.csv");
  const fs::path b = temp_path("b.csv");
  const std::string flags = "scan --from 0.05 --to 0.5 --steps 10 --starts 3 --seed 9 --out ";
  ASSERT_EQ(run(flags + a.string()), 0);
  ASSERT_EQ(run(flags + b.string()), 0);
  const std::string text = slurp(a);
  EXPECT_EQ(text, slurp(b));
  std::istringstream lines(text);
  std::string line;
  int rows = -1;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 10);
  fs::remove(a);
  fs::remove(b);
}

TEST(Cli, ScanRejectsBadInput) {
  EXPECT_EQ(run("scan --from 0.5 --to 0.05 --steps 10 --out " + temp_path("bad.csv").string()), 1);
  EXPECT_EQ(run("scan --from 0.05 --to 0.5 --steps 1 --out " + temp_path("bad.csv").string()), 1);
  EXPECT_EQ(run("scan --from 0.05 --to 0.5 --steps 3 --out /nonexistent_dir/x.csv"), 1);
  EXPECT_FALSE(fs::exists(temp_path("bad.csv")));
}

TEST(Cli, Selftest) { EXPECT_EQ(run("selftest"), 0); }

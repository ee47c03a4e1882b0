#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "bineg/serialize.hpp"
#include "bineg_cli/cli.hpp"

namespace {

namespace fs = std::filesystem;
using bineg::Json;

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = bineg::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

fs::path workdir() {
  const char* env = std::getenv("BINEG_CLI_WORKDIR");
  fs::path dir = env ? fs::path(env) : fs::path(testing::TempDir()) / "bineg_cli";
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return std::string(std::istreambuf_iterator<char>(f), {});
}

TEST(Compute, RhoOne) {
  const CliResult r = run({"compute", "--state", "rho1"});
  ASSERT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_NEAR(j.at("n2").get<double>(), 0.3675, 1e-10);
  EXPECT_NEAR(j.at("nu").get<double>(), 0.375, 1e-10);
  EXPECT_NEAR(j.at("c").get<double>(), 0.5, 1e-10);
  EXPECT_FALSE(j.at("is_ppt").get<bool>());
  EXPECT_NEAR(j.at("mu").get<double>(), 0.64, 1e-10);
}

TEST(Compute, MaximallyEntangledAndSeparable) {
  const Json m = Json::parse(run({"compute", "--state", "mems:1"}).out);
  for (const char* k : {"c", "nu", "n2"}) EXPECT_NEAR(m.at(k).get<double>(), 1.0, 1e-12);

  const Json s = Json::parse(run({"compute", "--state", "sigma_pqr:0.5,0.5,0.5"}).out);
  for (const char* k : {"c", "nu", "n2"}) EXPECT_EQ(s.at(k).get<double>(), 0.0);
  EXPECT_TRUE(s.at("is_ppt").get<bool>());
  EXPECT_TRUE(s.at("mu").is_null());
}

TEST(Compute, CsvFormat) {
  const CliResult r = run({"compute", "--state", "sigma_pqr:0.5,0.5,0.5", "--format", "csv"});
  EXPECT_EQ(r.out, "c,nu,n2,mu,is_ppt\n0,0,0,,true\n");
}

TEST(Compute, InvalidStateNamesInvariant) {
  const fs::path p = workdir() / "not_psd.json";
  {
    std::ofstream f(p);
    f << "[[[0.6,0],[0,0],[0,0],[0,0]],[[0,0],[0.6,0],[0,0],[0,0]],"
         "[[0,0],[0,0],[-0.2,0],[0,0]],[[0,0],[0,0],[0,0],[0,0]]]";
  }
  const CliResult r = run({"compute", "--state", p.string()});
  EXPECT_EQ(r.code, bineg::cli::kUsageError);
  EXPECT_NE(r.err.find("psd"), std::string::npos) << r.err;
}

TEST(Usage, Errors) {
  EXPECT_EQ(run({"compute", "--state", "nonsense"}).code, bineg::cli::kUsageError);
  EXPECT_EQ(run({"compute"}).code, bineg::cli::kUsageError);
  EXPECT_EQ(run({"compute", "--state", "rho1", "--bogus"}).code, bineg::cli::kUsageError);
  EXPECT_EQ(run({}).code, bineg::cli::kUsageError);
  EXPECT_EQ(run({"verify", "everything"}).code, bineg::cli::kUsageError);
  EXPECT_EQ(run({"verify", "ordering", "--samples", "1.5"}).code, bineg::cli::kUsageError);
  EXPECT_EQ(run({"verify", "ordering", "--rank", "5"}).code, bineg::cli::kUsageError);
}

TEST(Usage, HelpListsSubcommandsAndFlags) {
  const CliResult top = run({"--help"});
  EXPECT_EQ(top.code, 0);
  for (const char* s : {"compute", "verify", "monotonic", "search", "figure"}) {
    EXPECT_NE(top.out.find(s), std::string::npos) << s;
  }
  const CliResult verify = run({"verify", "--help"});
  for (const char* s : {"--seed", "--samples", "--rank", "--tol", "--grid", "--threads", "--format", "--out"}) {
    EXPECT_NE(verify.out.find(s), std::string::npos) << s;
  }
}

TEST(Usage, UnwritableOutputReportsPath) {
  const CliResult r = run({"compute", "--state", "rho1", "--out", "/nonexistent_dir/x.json"});
  EXPECT_EQ(r.code, bineg::cli::kUsageError);
  EXPECT_NE(r.err.find("/nonexistent_dir/x.json"), std::string::npos);
}

TEST(Verify, ClosedFormsGrid20) {
  const CliResult r = run({"verify", "closed-forms", "--grid", "20"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(Json::parse(r.out).at("n_violations"), 0);
}

TEST(Verify, SeedFromEnvironment) {
  ::setenv("BINEG_SEED", "1234", 1);
  const CliResult env = run({"verify", "ordering", "--samples", "10"});
  const CliResult flag = run({"verify", "ordering", "--samples", "10", "--seed", "7"});
  ::unsetenv("BINEG_SEED");
  EXPECT_EQ(Json::parse(env.out).at("seed"), 1234);
  EXPECT_EQ(Json::parse(flag.out).at("seed"), 7);
}

TEST(Verify, ScientificSampleCount) {
  const CliResult r = run({"verify", "ordering", "--samples", "1e2"});
  EXPECT_EQ(Json::parse(r.out).at("n_samples"), 100);
}

TEST(Verify, CsvSummary) {
  const CliResult r = run({"verify", "ordering", "--samples", "5", "--format", "csv"});
  EXPECT_EQ(r.out.substr(0, r.out.find('\n')), "n_samples,n_violations,max_gap,seed,hard");
}

TEST(Monotonic, SmallSweep) {
  const CliResult r = run({"monotonic", "--kind", "local", "--samples", "20"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(run({"monotonic", "--kind", "global"}).code, bineg::cli::kUsageError);
}

TEST(Search, SmallRun) {
  const CliResult r = run({"search", "--kind", "one_way_locc", "--restarts", "2", "--steps", "3"});
  EXPECT_EQ(r.code, 0) << r.err;
  const Json j = Json::parse(r.out);
  EXPECT_TRUE(j.contains("best_state"));
  EXPECT_LE(j.at("best_gap").get<double>(), 1e-8);
}

TEST(Figure, ReproducibleFiles) {
  const fs::path a = workdir() / "fig_a";
  const fs::path b = workdir() / "fig_b";
  ASSERT_EQ(run({"figure", "fig3", "--samples", "1000", "--seed", "7", "--out", a.string()}).code % 2, 0);
  ASSERT_EQ(run({"figure", "fig3", "--samples", "1000", "--seed", "7", "--out", b.string()}).code % 2, 0);
  int files = 0;
  for (const auto& entry : fs::directory_iterator(a)) {
    ++files;
    EXPECT_EQ(slurp(entry.path()), slurp(b / entry.path().filename())) << entry.path();
  }
  EXPECT_EQ(files, 5);
  EXPECT_TRUE(fs::exists(a / "fig3_segment.csv"));
  EXPECT_TRUE(fs::exists(a / "fig3_membership.json"));
}

}  // namespace

#include <gtest/gtest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "cli.hpp"
#include "kgz/errors.hpp"

namespace kgz::cli {
namespace {

namespace fs = std::filesystem;

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("kgz_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  fs::path dir_;
};

std::string read(const std::string& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

TEST(JsonToArgs, MapsKeysToFlags) {
  EXPECT_EQ(json_to_args(R"({"eps": 0.5, "paper_scale": true, "snapshots": [0.5, 1],
                            "preset": "bump", "levels": 3, "workers": false})"),
            (std::vector<std::string>{"--eps", "0.5", "--levels", "3", "--paper-scale",
                                      "--preset", "bump", "--snapshots", "0.5,1"}));
  EXPECT_THROW(json_to_args("[1, 2]"), ParameterError);
  EXPECT_THROW(json_to_args("{not json"), ParameterError);
  EXPECT_THROW(json_to_args(R"({"eps": null})"), ParameterError);
}

TEST(SnapshotPath, UsesShortestTime) {
  EXPECT_EQ(snapshot_path("run/out", 1.0), "run/out_t1.csv");
  EXPECT_EQ(snapshot_path("x", 0.25), "x_t0.25.csv");
}

TEST_F(CliTest, SolveWritesSnapshots) {
  const auto r = invoke({"solve", "--eps", "1", "--h", "0.5", "--tau", "0.05", "--T", "0.1",
                         "--snapshots", "0,0.1", "--out", path("run")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("domain [-31, 31], M = 124, h = 0.5, steps = 2"), std::string::npos)
      << r.out;
  const std::string text = read(path("run") + "_t0.1.csv");
  std::istringstream lines(text);
  std::string line;
  std::getline(lines, line);
  EXPECT_EQ(line, "x,E,F,N");
  std::size_t rows = 0;
  while (std::getline(lines, line)) ++rows;
  EXPECT_EQ(rows, 125u);
  EXPECT_TRUE(fs::exists(path("run") + "_t0.csv"));
}

TEST_F(CliTest, ParameterErrorsExitOne) {
  const std::string out = path("bad");
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"solve", "--eps", "0", "--out", out},
           {"solve", "--eps", "1/128", "--out", out},
           {"solve", "--eps", "abc", "--out", out},
           {"solve", "--eps", "1", "--tau", "0.03", "--T", "0.1", "--out", out},
           {"solve", "--eps", "1", "--tau", "0.05", "--T", "0.1", "--snapshots", "0.07", "--out",
            out},
           {"solve", "--preset", "nope", "--out", out},
           {"solve", "--case", "custom", "--alpha", "1", "--out", out},
           {"solve", "--case", "I", "--alpha", "1", "--beta", "0", "--out", out},
           {"solve", "--eps", "1"},
           {"sweep", "--mode", "diagonal"},
           {"frobnicate"},
           {}}) {
    const auto r = invoke(args);
    EXPECT_EQ(r.code, kExitParameter) << ::testing::PrintToString(args) << '\n' << r.err;
  }
}

TEST_F(CliTest, NumericalFailureExitsTwo) {
  const auto r = invoke({"solve", "--eps", "1", "--h", "0.5", "--tau", "4", "--T", "400",
                         "--out", path("blowup")});
  EXPECT_EQ(r.code, kExitNumerical) << r.out << r.err;
  EXPECT_NE(r.err.find("numerical failure"), std::string::npos) << r.err;
}

TEST_F(CliTest, CustomCaseAndLargeEpsWarning) {
  const auto r = invoke({"solve", "--eps", "2", "--case", "custom", "--alpha", "0.5", "--beta",
                         "0", "--h", "0.5", "--tau", "0.05", "--T", "0.05", "--out",
                         path("wide")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("warning: eps > 1"), std::string::npos);
}

TEST_F(CliTest, ConfigValuesYieldToLaterFlags) {
  const std::string cfg = path("cfg.json");
  std::ofstream(cfg) << R"({"eps": 0.5, "h": 0.5, "tau": 0.05, "T": 0.05, "out": ")" << path("c")
                     << "\"}";
  auto r = invoke({"solve", "--config", cfg});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("domain [-32, 32]"), std::string::npos) << r.out;
  r = invoke({"solve", "--config", cfg, "--eps", "1"});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("domain [-31, 31]"), std::string::npos) << r.out;
  EXPECT_EQ(invoke({"solve", "--config", path("missing.json")}).code, kExitParameter);
}

TEST_F(CliTest, HelpExitsZero) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"--help"}, {"solve", "--help"}, {"sweep", "--help"}, {"limit-study", "--help"}}) {
    const auto r = invoke(args);
    EXPECT_EQ(r.code, kExitOk);
    EXPECT_NE((r.out + r.err).find("--"), std::string::npos);
  }
}

TEST_F(CliTest, SweepPrintsAndWritesCsv) {
  const auto r = invoke({"sweep", "--mode", "temporal", "--eps-list", "1,1/2", "--h0", "0.5",
                         "--tau0", "0.05", "--levels", "2", "--T", "0.1", "--refine-time", "4",
                         "--workers", "1", "--out", path("rates.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("eps,h,tau,t,e_err,n_err,rate_e,rate_n"), std::string::npos);
  EXPECT_EQ(read(path("rates.csv")), r.out);
}

TEST_F(CliTest, LimitStudyWritesSeries) {
  const auto r = invoke({"limit-study", "--eps-list", "1/2,1/4", "--h", "0.5", "--tau", "0.01",
                         "--T", "0.05", "--workers", "1", "--out", path("series.csv")});
  ASSERT_EQ(r.code, kExitOk) << r.err;
  EXPECT_NE(r.out.find("slope of log2 max eta_e vs log2 eps"), std::string::npos) << r.out;
  const std::string series = read(path("series.csv"));
  EXPECT_EQ(series.rfind("eps,t,eta_e,eta_2,eta_inf,f_l2\n", 0), 0u);
  EXPECT_EQ(std::count(series.begin(), series.end(), '\n'), 1 + 2 * 6);
}

TEST_F(CliTest, CheckPasses) {
  const auto r = invoke({"check", "--seed", "7"});
  EXPECT_EQ(r.code, kExitOk) << r.out;
  EXPECT_EQ(r.out.find("FAIL"), std::string::npos);
}

}  // namespace
}  // namespace kgz::cli

#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"
#include "confdop/extended.hpp"
#include "confdop/manifest.hpp"

namespace confdop::cli {
namespace {

namespace fs = std::filesystem;
using nlohmann::json;

struct Result {
  int code;
  std::string out;
  std::string err;
};

Result invoke(const std::vector<std::string>& args) {
  std::ostringstream out;
  std::ostringstream err;
  const int code = run(args, out, err);
  return {code, out.str(), err.str()};
}

class CliTest : public ::testing::Test {
 protected:
  void SetUp() override {
    dir_ = fs::temp_directory_path() /
           ("confdop_cli_" + std::string(::testing::UnitTest::GetInstance()->current_test_info()->name()));
    fs::remove_all(dir_);
    fs::create_directories(dir_);
    unsetenv("CONFDOP_SEED");
  }
  void TearDown() override { fs::remove_all(dir_); }

  std::string path(const std::string& name) const { return (dir_ / name).string(); }

  std::string write_config(const json& j, const std::string& name = "config.json") const {
    std::ofstream(path(name)) << j.dump(2);
    return path(name);
  }

  static std::string slurp(const std::string& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }

  static json mission(double alpha, bool noise) {
    return {{"alpha_true", alpha}, {"r0", 20.0 * 1.495978707e11}, {"v_radial", 12000.0}, {"t_start", 0.0},
            {"t_end", 50.0 * 1.495978707e11 / 12000.0}, {"n_obs", 500}, {"sigma_frac", 1e-12},
            {"sigma_range", 1.0}, {"add_noise", noise}, {"seed", 42}};
  }

  fs::path dir_;
};

TEST_F(CliTest, TransformIdentity) {
  const auto r = invoke({"transform", "--alpha", "0", "--r", "1", "--t", "-10", "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["r_prime"], 1.0);
  EXPECT_EQ(j["t_prime"], -10.0);
  EXPECT_EQ(j["gamma"], 1.0);
}

TEST_F(CliTest, TransformMatchesFlowReference) {
  const auto r = invoke({"transform", "--beta4", "0.05", "--r", "1", "--x4", "2", "--c", "1", "--json", "--hill"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = json::parse(r.out);
  EXPECT_NEAR(j["r_prime"].get<double>(), 1.2383900928792569817, 1e-14);
  EXPECT_NEAR(j["x4_prime"].get<double>(), 2.2910216718266254058, 1e-14);
  EXPECT_NEAR(j["s2_over_r"].get<double>(), 3.0, 1e-15);
  EXPECT_TRUE(j.contains("hill"));
}

TEST_F(CliTest, TransformOriginAndText) {
  const auto r = invoke({"transform", "--beta4", "0.3", "--r", "0", "--x4", "0"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("r'        = 0 m\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("x4'       = 0 m\n"), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("undefined"), std::string::npos);
}

TEST_F(CliTest, TransformErrors) {
  EXPECT_EQ(invoke({"transform", "--beta4", "0.5", "--r", "0.5", "--x4", "1.5", "--c", "1"}).code, kExitDomain);
  EXPECT_EQ(invoke({"transform", "--beta4", "1", "--r", "1", "--x4", "1", "--c", "1"}).code, kExitDomain);
  EXPECT_EQ(invoke({"transform", "--r", "1", "--x4", "1"}).code, kExitUsage);
  EXPECT_EQ(invoke({"transform", "--alpha", "1", "--beta4", "1", "--r", "1", "--x4", "1"}).code, kExitUsage);
  EXPECT_EQ(invoke({"transform", "--alpha", "1", "--r", "1"}).code, kExitUsage);
  EXPECT_EQ(invoke({"transform", "--alpha", "0", "--r", "-1", "--x4", "1"}).code, kExitDomain);
}

TEST_F(CliTest, UsageErrors) {
  EXPECT_EQ(invoke({}).code, kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, kExitUsage);
  EXPECT_EQ(invoke({"check", "--suite", "nope"}).code, kExitUsage);
  EXPECT_EQ(invoke({"--help"}).code, kExitOk);
}

TEST_F(CliTest, CheckSuitesPass) {
  for (const char* suite : {"group", "metric", "invariant"}) {
    const auto r = invoke({"check", "--suite", suite, "--cases", "500", "--seed", "3"});
    EXPECT_EQ(r.code, 0) << suite << "\n" << r.out;
    EXPECT_NE(r.out.find("PASS"), std::string::npos);
  }
  const auto oracle = invoke({"check", "--suite", "oracle", "--cases", "5"});
  EXPECT_EQ(oracle.code, 0) << oracle.out;
  const auto hill = invoke({"check", "--suite", "hill"});
  EXPECT_EQ(hill.code, 0) << hill.out;
  EXPECT_NE(hill.out.find("order[3]"), std::string::npos);
}

TEST_F(CliTest, CheckFailsAtImpossibleTolerance) {
  const auto r = invoke({"check", "--suite", "oracle", "--cases", "3", "--tol", "1e-30"});
  EXPECT_EQ(r.code, kExitDomain);
  EXPECT_NE(r.out.find("FAIL"), std::string::npos);
  EXPECT_NE(r.out.find("at "), std::string::npos);
}

TEST_F(CliTest, SimulateIsDeterministicAndManifestVerifies) {
  const auto cfg = write_config(mission(2.19e-18, true));
  ASSERT_EQ(invoke({"simulate", "--config", cfg, "--out", path("a.csv")}).code, 0);
  ASSERT_EQ(invoke({"simulate", "--config", cfg, "--out", path("b.csv")}).code, 0);
  EXPECT_EQ(slurp(path("a.csv")), slurp(path("b.csv")));

  const auto manifest = json::parse(slurp(path("a.csv.manifest.json")));
  EXPECT_EQ(manifest["command"], "simulate");
  EXPECT_EQ(manifest["seed"], 42);
  EXPECT_EQ(manifest["rng_algorithm"], "splitmix64-counter/box-muller/v1");
  EXPECT_EQ(manifest["outputs"][0]["path"], "a.csv");
  EXPECT_EQ(manifest["outputs"][0]["sha256"], sha256_file(path("a.csv")));

  EXPECT_EQ(invoke({"verify", "--manifest", path("a.csv.manifest.json")}).code, 0);
  std::ofstream(path("a.csv"), std::ios::app) << "tampered\n";
  const auto bad = invoke({"verify", "--manifest", path("a.csv.manifest.json")});
  EXPECT_EQ(bad.code, kExitDomain);
  EXPECT_NE(bad.out.find("digest mismatch"), std::string::npos);
}

TEST_F(CliTest, SeedPrecedence) {
  const auto cfg = write_config(mission(0.0, true));
  ASSERT_EQ(invoke({"simulate", "--config", cfg, "--out", path("config.csv")}).code, 0);
  setenv("CONFDOP_SEED", "7", 1);
  ASSERT_EQ(invoke({"simulate", "--config", cfg, "--out", path("env.csv")}).code, 0);
  ASSERT_EQ(invoke({"simulate", "--config", cfg, "--out", path("flag.csv"), "--seed", "7"}).code, 0);
  ASSERT_EQ(invoke({"simulate", "--config", cfg, "--out", path("flag42.csv"), "--seed", "42"}).code, 0);
  unsetenv("CONFDOP_SEED");
  EXPECT_NE(slurp(path("config.csv")), slurp(path("env.csv")));
  EXPECT_EQ(slurp(path("env.csv")), slurp(path("flag.csv")));
  EXPECT_EQ(slurp(path("config.csv")), slurp(path("flag42.csv")));
  EXPECT_EQ(json::parse(slurp(path("env.csv.manifest.json")))["seed"], 7);
}

TEST_F(CliTest, SimulateNoiselessDopplerEqualsRangeRate) {
  auto j = mission(0.0, false);
  j["sigma_frac"] = 0.0;
  j["sigma_range"] = 0.0;
  ASSERT_EQ(invoke({"simulate", "--config", write_config(j), "--out", path("m.csv")}).code, 0);
  std::ifstream in(path("m.csv"));
  std::string line;
  std::getline(in, line);
  int rows = 0;
  while (std::getline(in, line)) {
    std::vector<std::string> f;
    std::stringstream ss(line);
    for (std::string cell; std::getline(ss, cell, ',');) f.push_back(cell);
    ASSERT_EQ(f.size(), 6u);
    const Extended frac(f[4]);
    EXPECT_EQ(static_cast<double>(frac * Extended(299792458.0)), std::stod(f[2]));
    ++rows;
  }
  EXPECT_EQ(rows, 500);
}

TEST_F(CliTest, SimulateRejectsBadConfig) {
  auto j = mission(0.0, true);
  j["n_obs"] = 1;
  const auto r = invoke({"simulate", "--config", write_config(j), "--out", path("x.csv")});
  EXPECT_EQ(r.code, kExitDomain);
  EXPECT_NE(r.err.find("n_obs"), std::string::npos);

  std::ofstream(path("broken.json")) << "{ not json";
  EXPECT_EQ(invoke({"simulate", "--config", path("broken.json"), "--out", path("x.csv")}).code, kExitDomain);
  EXPECT_EQ(invoke({"simulate", "--out", path("x.csv")}).code, kExitUsage);
}

TEST_F(CliTest, FitRecoversNoiselessAlpha) {
  ASSERT_EQ(invoke({"simulate", "--config", write_config(mission(2.19e-18, false)), "--out", path("n.csv")}).code, 0);
  ASSERT_EQ(invoke({"fit", "--input", path("n.csv"), "--out", path("fit.json")}).code, 0);
  const auto fit = json::parse(slurp(path("fit.json")));
  EXPECT_NEAR(fit["alpha_hat"].get<double>(), 2.19e-18, 1e-12 * 2.19e-18);
  EXPECT_EQ(fit["n_used"], 500);
  EXPECT_EQ(fit["dof"], 499);
  // 500 epochs at 1e-12 cannot resolve alpha at 5 sigma.
  EXPECT_LT(fit["z_score_alpha_zero"].get<double>(), 5.0);
  EXPECT_EQ(fit["decision"], "MinkowskiConsistent");
}

TEST_F(CliTest, FitZeroAlphaAndBootstrap) {
  ASSERT_EQ(invoke({"simulate", "--config", write_config(mission(0.0, false)), "--out", path("z.csv")}).code, 0);
  const auto r = invoke({"fit", "--input", path("z.csv"), "--bootstrap", "100"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto fit = json::parse(r.out);
  EXPECT_EQ(fit["alpha_hat"], 0.0);
  EXPECT_EQ(fit["alpha_stderr_bootstrap"], 0.0);
  EXPECT_EQ(fit["decision"], "MinkowskiConsistent");
}

TEST_F(CliTest, FitReportsMalformedLine) {
  std::ofstream(path("bad.csv")) << "epoch_s,range_m,range_rate_mps,range_meas_m,doppler_frac,sigma_frac\n"
                                 << "0,1e12,1,1e12,3e-9,1e-12\n"
                                 << "1,1e12,1,oops,3e-9,1e-12\n";
  const auto r = invoke({"fit", "--input", path("bad.csv")});
  EXPECT_EQ(r.code, kExitDomain);
  EXPECT_NE(r.err.find("line 3"), std::string::npos) << r.err;

  std::ofstream(path("flat.csv")) << "epoch_s,range_m,range_rate_mps,range_meas_m,doppler_frac,sigma_frac\n"
                                  << "0,1e12,1,1e12,3e-9,1e-12\n"
                                  << "1,1e12,1,1e12,3e-9,1e-12\n";
  const auto flat = invoke({"fit", "--input", path("flat.csv")});
  EXPECT_EQ(flat.code, kExitDomain);
  EXPECT_NE(flat.err.find("DegenerateDesign"), std::string::npos);
}

TEST_F(CliTest, ReportComparesRates) {
  const auto write_fit = [&](double alpha) {
    std::ofstream(path("fit.json")) << json{{"alpha_hat", alpha}, {"alpha_stderr", 1e-19}, {"chi2", 1.0},
                                             {"dof", 9},          {"z_score_alpha_zero", alpha / 1e-19},
                                             {"n_used", 10},      {"decision", "ConformalDetected"}}
                                           .dump();
  };
  write_fit(2.19e-18);
  auto r = invoke({"report", "--fit", path("fit.json"), "--json"});
  ASSERT_EQ(r.code, 0) << r.err;
  auto j = json::parse(r.out);
  EXPECT_TRUE(j["opposite_sign"].get<bool>());
  EXPECT_NEAR(j["anomaly_hubble_magnitude_ratio"].get<double>(), 1.28, 0.01);
  EXPECT_EQ(j["corrected_hubble_rate"], 0.0);

  write_fit(0.0);
  r = invoke({"report", "--fit", path("fit.json"), "--json"});
  j = json::parse(r.out);
  EXPECT_EQ(j["corrected_hubble_rate"], 2.19e-18);

  const auto text = invoke({"report", "--fit", path("fit.json")});
  EXPECT_NE(text.out.find("opposite_sign                  = true"), std::string::npos) << text.out;

  EXPECT_EQ(invoke({"report"}).code, kExitDomain);
  EXPECT_EQ(invoke({"report", "--fit", path("missing.json")}).code, kExitDomain);
}

}  // namespace
}  // namespace confdop::cli

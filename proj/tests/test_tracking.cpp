#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "confdop/errors.hpp"
#include "confdop/rng.hpp"
#include "confdop/tracking.hpp"

namespace confdop::tracking {
namespace {

SimConfig pioneer_like() {
  SimConfig cfg;
  cfg.alpha_true = 2.19e-18;
  cfg.r0 = 20.0 * kAstronomicalUnit;
  cfg.v_radial = 12000.0;
  cfg.t_start = 0.0;
  cfg.t_end = 50.0 * kAstronomicalUnit / 12000.0;
  cfg.n_obs = 200;
  cfg.seed = 7;
  return cfg;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorKind::InvalidArgument;
}

TEST(CounterRng, DeterministicAndOrderFree) {
  const CounterRng a(99);
  const CounterRng b(99);
  EXPECT_EQ(a.bits(3, 10), b.bits(3, 10));
  EXPECT_NE(a.bits(3, 10), a.bits(3, 11));
  EXPECT_NE(a.bits(3, 10), CounterRng(100).bits(3, 10));
  const double u = a.uniform(0, 5);
  EXPECT_GT(u, 0.0);
  EXPECT_LT(u, 1.0);
}

TEST(CounterRng, NormalMoments) {
  const CounterRng rng(2024);
  const int n = 200000;
  double sum = 0.0;
  double sum2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double z = rng.normal(0, i);
    sum += z;
    sum2 += z * z;
  }
  const double mean = sum / n;
  EXPECT_NEAR(mean, 0.0, 5.0 / std::sqrt(n));
  EXPECT_NEAR(sum2 / n - mean * mean, 1.0, 0.02);
}

TEST(SimConfig, Validation) {
  auto cfg = pioneer_like();
  EXPECT_NO_THROW(cfg.validate());
  cfg.n_obs = 1;
  EXPECT_EQ(kind_of([&] { cfg.validate(); }), ErrorKind::ConfigInvalid);
  cfg = pioneer_like();
  cfg.t_end = cfg.t_start;
  EXPECT_EQ(kind_of([&] { cfg.validate(); }), ErrorKind::ConfigInvalid);
  cfg = pioneer_like();
  cfg.sigma_frac = -1.0;
  EXPECT_EQ(kind_of([&] { cfg.validate(); }), ErrorKind::ConfigInvalid);
  cfg = pioneer_like();
  cfg.r0 = 0.0;
  EXPECT_EQ(kind_of([&] { cfg.validate(); }), ErrorKind::ConfigInvalid);
}

TEST(SimConfig, JsonNamesOffendingKey) {
  const auto j = pioneer_like().to_json();
  EXPECT_EQ(SimConfig::from_json(j).to_json(), j);

  auto bad = j;
  bad["n_obs"] = 1;
  try {
    SimConfig::from_json(bad);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ConfigInvalid);
    EXPECT_NE(std::string(e.what()).find("n_obs"), std::string::npos);
  }

  auto typo = j;
  typo["sigma_fract"] = 1e-12;
  EXPECT_EQ(kind_of([&] { SimConfig::from_json(typo); }), ErrorKind::ConfigInvalid);

  auto missing = j;
  missing.erase("r0");
  EXPECT_EQ(kind_of([&] { SimConfig::from_json(missing); }), ErrorKind::ConfigInvalid);
}

TEST(Trajectory, Endpoints) {
  const auto cfg = pioneer_like();
  const auto start = make_trajectory(cfg, cfg.t_start);
  EXPECT_EQ(start.range, cfg.r0);
  EXPECT_EQ(start.range_rate, cfg.v_radial);
  const auto end = make_trajectory(cfg, cfg.t_end);
  EXPECT_EQ(end.range, cfg.r0 + cfg.v_radial * (cfg.t_end - cfg.t_start));
  const auto mid = make_trajectory(cfg, 0.5 * (cfg.t_start + cfg.t_end));
  EXPECT_NEAR(mid.range, 0.5 * (start.range + end.range), 1e-15 * end.range);
  EXPECT_EQ(kind_of([&] { make_trajectory(cfg, cfg.t_end * 1.01); }), ErrorKind::EpochOutOfRange);
  EXPECT_EQ(kind_of([&] { make_trajectory(cfg, cfg.t_start - 1.0); }), ErrorKind::EpochOutOfRange);
}

TEST(Simulate, NoiselessMinkowskiIsExact) {
  auto cfg = pioneer_like();
  cfg.alpha_true = 0.0;
  cfg.sigma_frac = 0.0;
  cfg.sigma_range = 0.0;
  for (const auto& rec : simulate(cfg)) {
    EXPECT_EQ(static_cast<double>(Extended(cfg.c) * rec.doppler_frac_meas), rec.range_rate_true);
    EXPECT_EQ(rec.range_meas, rec.range_true);
  }
}

TEST(Simulate, NoiselessResidualVelocity) {
  SimConfig cfg;
  cfg.alpha_true = 2.19e-18;
  cfg.r0 = 4.5e12;
  cfg.v_radial = 12000.0;
  cfg.t_start = 0.0;
  cfg.t_end = 1000.0;
  cfg.n_obs = 2;
  cfg.add_noise = false;
  const auto records = simulate(cfg);
  const auto residuals = anomaly_residuals(records, cfg.c);
  EXPECT_NEAR(residuals.front().residual_velocity, 9.855e-6, 1e-20);
}

TEST(Simulate, GridAndMonotoneRange) {
  const auto cfg = pioneer_like();
  const auto records = simulate(cfg);
  ASSERT_EQ(records.size(), static_cast<std::size_t>(cfg.n_obs));
  EXPECT_EQ(records.front().epoch, cfg.t_start);
  EXPECT_EQ(records.back().epoch, cfg.t_end);
  for (std::size_t i = 1; i < records.size(); ++i) {
    EXPECT_GT(records[i].range_true, records[i - 1].range_true);
    EXPECT_GT(records[i].epoch, records[i - 1].epoch);
  }
}

TEST(Simulate, SameSeedSameBytes) {
  const auto cfg = pioneer_like();
  EXPECT_EQ(to_csv(simulate(cfg)), to_csv(simulate(cfg)));
  auto other = cfg;
  other.seed = 8;
  EXPECT_NE(to_csv(simulate(cfg)), to_csv(simulate(other)));
}

TEST(Simulate, NoiseStatistics) {
  auto cfg = pioneer_like();
  cfg.n_obs = 20000;
  cfg.sigma_range = 3.0;
  const auto records = simulate(cfg);
  const auto residuals = anomaly_residuals(records, cfg.c);
  double sum = 0.0;
  double sum2 = 0.0;
  double range_sum2 = 0.0;
  for (std::size_t i = 0; i < records.size(); ++i) {
    // Noise on the fractional shift, with the model part removed.
    const double model = cfg.alpha_true * records[i].range_true;
    const double noise = (residuals[i].residual_velocity - model) / cfg.c;
    sum += noise;
    sum2 += noise * noise;
    const double dr = records[i].range_meas - records[i].range_true;
    range_sum2 += dr * dr;
  }
  const double n = static_cast<double>(records.size());
  const double std_frac = std::sqrt(sum2 / n - (sum / n) * (sum / n));
  EXPECT_NEAR(std_frac, cfg.sigma_frac, 0.05 * cfg.sigma_frac);
  EXPECT_NEAR(std::sqrt(range_sum2 / n), cfg.sigma_range, 0.05 * cfg.sigma_range);
}

TEST(Residuals, NoiselessRateEqualsAlpha) {
  for (double alpha : {0.0, 2.19e-18, -2.80e-18}) {
    auto cfg = pioneer_like();
    cfg.alpha_true = alpha;
    cfg.add_noise = false;
    for (const auto& r : anomaly_residuals(simulate(cfg), cfg.c)) {
      if (alpha == 0.0) {
        EXPECT_EQ(r.residual_velocity, 0.0);
      } else {
        EXPECT_NEAR(r.residual_rate, alpha, 1e-12 * std::abs(alpha));
      }
    }
  }
}

TEST(Residuals, AnomalyValueMeanRate) {
  auto cfg = pioneer_like();
  cfg.alpha_true = kPioneerAnomalyRate;
  cfg.n_obs = 2000;
  double mean = 0.0;
  const auto residuals = anomaly_residuals(simulate(cfg), cfg.c);
  for (const auto& r : residuals) mean += r.residual_rate;
  mean /= static_cast<double>(residuals.size());
  // Per-epoch rate noise is c sigma / r ~ 5e-17 /s at 20-70 AU; the mean over
  // 2000 epochs is good to ~1e-18.
  EXPECT_NEAR(mean, kPioneerAnomalyRate, 3e-18);
}

TEST(Residuals, ZeroRange) {
  TrackingRecord rec{0.0, 0.0, 1.0, 0.0, Extended(1.0) / Extended(kSpeedOfLight), 1e-12};
  EXPECT_EQ(kind_of([&] { anomaly_residuals({rec}); }), ErrorKind::ZeroRange);
}

TEST(SignComparison, AnomalyAgainstHubble) {
  const auto s = sign_comparison_report(-2.80e-18, 2.19e-18);
  EXPECT_TRUE(s.opposite_sign);
  EXPECT_NEAR(s.magnitude_ratio, 1.28, 0.01);
  EXPECT_FALSE(s.caveat.empty());
}

TEST(SignComparison, Degenerate) {
  EXPECT_FALSE(sign_comparison_report(2e-18, 2e-18).opposite_sign);
  const auto zero = sign_comparison_report(0.0, 2e-18);
  EXPECT_FALSE(zero.opposite_sign);
  EXPECT_EQ(zero.magnitude_ratio, 0.0);
}

TEST(Csv, HeaderAndPrecision) {
  auto cfg = pioneer_like();
  cfg.n_obs = 3;
  const auto text = to_csv(simulate(cfg));
  EXPECT_EQ(text.substr(0, text.find('\n')), kCsvHeader);
  std::istringstream in(text);
  const auto back = read_csv(in);
  const auto orig = simulate(cfg);
  ASSERT_EQ(back.size(), orig.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    EXPECT_EQ(back[i].epoch, orig[i].epoch);
    EXPECT_EQ(back[i].range_true, orig[i].range_true);
    EXPECT_EQ(back[i].range_meas, orig[i].range_meas);
    EXPECT_EQ(back[i].sigma_frac, orig[i].sigma_frac);
    // 36 significant digits round-trip binary128 to within an ulp.
    EXPECT_LT(abs(back[i].doppler_frac_meas - orig[i].doppler_frac_meas), Extended("1e-40"));
  }
}

TEST(Csv, MalformedInputReportsLine) {
  const auto expect_line = [](const std::string& text, const std::string& where) {
    std::istringstream in(text);
    try {
      read_csv(in);
      ADD_FAILURE() << "accepted: " << text;
    } catch (const Error& e) {
      EXPECT_EQ(e.kind(), ErrorKind::MalformedInput);
      EXPECT_NE(std::string(e.what()).find(where), std::string::npos) << e.what();
    }
  };
  const std::string header(kCsvHeader);
  expect_line("epoch,range\n", "line 1");
  expect_line(header + "\n0,1,2,3,4e-5,1e-12\n0,1,2,3\n", "line 3");
  expect_line(header + "\n0,1,2,3,abc,1e-12\n", "line 2");
  expect_line(header + "\n0,1x,2,3,4e-5,1e-12\n", "line 2");
  expect_line("", "line 1");
}

}  // namespace
}  // namespace confdop::tracking

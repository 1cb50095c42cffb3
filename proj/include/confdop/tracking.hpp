#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "confdop/constants.hpp"
#include "confdop/extended.hpp"

// Seeded simulation of two-way Doppler and ranging for a spacecraft coasting
// radially, under the Minkowski (alpha = 0) or conformal model.
namespace confdop::tracking {

struct SimConfig {
  double c = kSpeedOfLight;
  double alpha_true = 0.0;
  double r0 = 0.0;
  double v_radial = 0.0;
  double t_start = 0.0;
  double t_end = 0.0;
  std::int64_t n_obs = 0;
  double sigma_frac = kDopplerAccuracy;
  double sigma_range = 0.0;
  // When false, records still carry sigma_frac as their stated accuracy but
  // no noise is drawn.
  bool add_noise = true;
  std::uint64_t seed = 0;

  // Throws ConfigInvalid naming the offending key.
  void validate() const;

  // Unknown keys are rejected. r0, v_radial, t_start, t_end and n_obs are
  // required; the rest default as above.
  static SimConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
};

struct TrajectoryPoint {
  double range;
  double range_rate;
};

struct TrackingRecord {
  double epoch;
  double range_true;
  double range_rate_true;
  double range_meas;
  Extended doppler_frac_meas;
  double sigma_frac;
};

struct AnomalyResidual {
  double epoch;
  double residual_velocity;  // m/s, observed minus Minkowski-expected
  double residual_rate;      // 1/s
};

struct SignComparison {
  double anomaly_rate;
  double hubble_rate;
  double magnitude_ratio;  // |anomaly| / |hubble|
  bool opposite_sign;
  std::string caveat;
};

// Constant-rate radial coast. Throws EpochOutOfRange outside [t_start, t_end].
TrajectoryPoint make_trajectory(const SimConfig& cfg, double epoch);

// n_obs records on a uniform grid. Noise for epoch i comes from the counter
// stream (seed, i) only, so the result is a pure function of cfg.
std::vector<TrackingRecord> simulate(const SimConfig& cfg);

// residual_velocity = c * doppler_frac - range_rate, formed in extended
// precision before rounding. Throws ZeroRange for a record at range 0.
std::vector<AnomalyResidual> anomaly_residuals(const std::vector<TrackingRecord>& records,
                                               double c = kSpeedOfLight);

SignComparison sign_comparison_report(double anomaly_rate, double hubble_rate);

// CSV interface.
inline constexpr std::string_view kCsvHeader =
    "epoch_s,range_m,range_rate_mps,range_meas_m,doppler_frac,sigma_frac";

void write_csv(std::ostream& out, const std::vector<TrackingRecord>& records);
std::string to_csv(const std::vector<TrackingRecord>& records);

// Throws MalformedInput with the 1-based line number on any defect.
std::vector<TrackingRecord> read_csv(std::istream& in);

}  // namespace confdop::tracking

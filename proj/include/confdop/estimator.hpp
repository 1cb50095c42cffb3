#pragma once

#include <cstdint>
#include <span>
#include <string_view>

#include <nlohmann/json.hpp>

#include "confdop/constants.hpp"
#include "confdop/tracking.hpp"

namespace confdop::estimate {

struct FitResult {
  double alpha_hat = 0.0;
  double alpha_stderr = 0.0;
  double chi2 = 0.0;
  std::int64_t dof = 0;
  double z_score_alpha_zero = 0.0;
  std::int64_t n_used = 0;
};

enum class MetricDecision { MinkowskiConsistent, ConformalDetected };

std::string_view to_string(MetricDecision d);

inline constexpr double kDefaultZThreshold = 5.0;

// Weighted least squares for y_i = alpha r_i with
//   y_i = c doppler_frac_i - range_rate_i,  w_i = 1 / (c sigma_frac_i)^2.
// Closed form: alpha = sum(w r y) / sum(w r^2), stderr = sum(w r^2)^(-1/2).
// Throws DegenerateDesign for n < 2 or a single distinct range, ZeroSigma for
// any sigma_frac <= 0.
FitResult fit_alpha(std::span<const tracking::TrackingRecord> records, double c = kSpeedOfLight);

// Pairs bootstrap: std of alpha_hat across resamples drawn from the counter
// stream (seed, resample). Degenerate resamples are redrawn under the next
// stream index. Throws InvalidArgument for n_resamples < 100.
double bootstrap_alpha(std::span<const tracking::TrackingRecord> records, std::int64_t n_resamples,
                       std::uint64_t seed, double c = kSpeedOfLight);

MetricDecision decide_metric(const FitResult& fit, double z_threshold = kDefaultZThreshold) noexcept;

// Keys: alpha_hat, alpha_stderr, chi2, dof, z_score_alpha_zero, n_used, decision.
nlohmann::json to_json(const FitResult& fit, MetricDecision decision);
FitResult fit_from_json(const nlohmann::json& j);

}  // namespace confdop::estimate

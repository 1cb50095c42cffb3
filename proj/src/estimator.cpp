#include "confdop/estimator.hpp"

#include <cmath>
#include <string>
#include <vector>

#include "confdop/errors.hpp"
#include "confdop/rng.hpp"

namespace confdop::estimate {

namespace {

struct Point {
  double range;
  double y;       // c * doppler_frac - range_rate
  double weight;  // 1 / (c sigma_frac)^2
};

std::vector<Point> design_points(std::span<const tracking::TrackingRecord> records, double c) {
  const Extended c_ext(c);
  std::vector<Point> points;
  points.reserve(records.size());
  for (const auto& rec : records) {
    if (!(rec.sigma_frac > 0.0)) {
      throw Error(ErrorKind::ZeroSigma, "record at epoch " + std::to_string(rec.epoch) + " has sigma_frac <= 0");
    }
    // Subtract like-magnitude velocities before anything is scaled by range.
    const double y = static_cast<double>(c_ext * rec.doppler_frac_meas - Extended(rec.range_rate_true));
    const double sigma_v = c * rec.sigma_frac;
    points.push_back({rec.range_true, y, 1.0 / (sigma_v * sigma_v)});
  }
  return points;
}

bool degenerate(const std::vector<Point>& points) {
  if (points.size() < 2) return true;
  for (const auto& p : points) {
    if (p.range != points.front().range) return false;
  }
  return true;
}

FitResult solve(const std::vector<Point>& points) {
  double swrr = 0.0;
  double swry = 0.0;
  for (const auto& p : points) {
    swrr += p.weight * p.range * p.range;
    swry += p.weight * p.range * p.y;
  }
  FitResult fit;
  fit.n_used = static_cast<std::int64_t>(points.size());
  fit.dof = fit.n_used - 1;
  fit.alpha_hat = swry / swrr;
  fit.alpha_stderr = 1.0 / std::sqrt(swrr);
  fit.z_score_alpha_zero = fit.alpha_hat / fit.alpha_stderr;
  for (const auto& p : points) {
    const double r = p.y - fit.alpha_hat * p.range;
    fit.chi2 += p.weight * r * r;
  }
  return fit;
}

}  // namespace

std::string_view to_string(MetricDecision d) {
  return d == MetricDecision::ConformalDetected ? "ConformalDetected" : "MinkowskiConsistent";
}

FitResult fit_alpha(std::span<const tracking::TrackingRecord> records, double c) {
  if (records.size() < 2) throw Error(ErrorKind::DegenerateDesign, "need at least two records");
  const auto points = design_points(records, c);
  if (degenerate(points)) throw Error(ErrorKind::DegenerateDesign, "all records share one range");
  return solve(points);
}

double bootstrap_alpha(std::span<const tracking::TrackingRecord> records, std::int64_t n_resamples,
                       std::uint64_t seed, double c) {
  if (n_resamples < 100) throw Error(ErrorKind::InvalidArgument, "bootstrap needs at least 100 resamples");
  if (records.size() < 2) throw Error(ErrorKind::DegenerateDesign, "need at least two records");
  const auto points = design_points(records, c);
  if (degenerate(points)) throw Error(ErrorKind::DegenerateDesign, "all records share one range");

  constexpr std::uint64_t kMaxAttempts = 64;
  const CounterRng rng(seed);
  const std::uint64_t n = points.size();
  std::vector<Point> sample(n);
  std::vector<double> estimates;
  estimates.reserve(static_cast<std::size_t>(n_resamples));

  for (std::int64_t b = 0; b < n_resamples; ++b) {
    bool drawn = false;
    for (std::uint64_t attempt = 0; attempt < kMaxAttempts && !drawn; ++attempt) {
      const std::uint64_t stream = (static_cast<std::uint64_t>(b) << 8) | attempt;
      for (std::uint64_t i = 0; i < n; ++i) {
        sample[i] = points[rng.bits(stream, i) % n];
      }
      drawn = !degenerate(sample);
    }
    if (!drawn) throw Error(ErrorKind::DegenerateDesign, "could not draw a non-degenerate resample");
    estimates.push_back(solve(sample).alpha_hat);
  }

  double mean = 0.0;
  for (double a : estimates) mean += a;
  mean /= static_cast<double>(estimates.size());
  double ss = 0.0;
  for (double a : estimates) ss += (a - mean) * (a - mean);
  return std::sqrt(ss / static_cast<double>(estimates.size() - 1));
}

MetricDecision decide_metric(const FitResult& fit, double z_threshold) noexcept {
  return std::abs(fit.z_score_alpha_zero) > z_threshold ? MetricDecision::ConformalDetected
                                                         : MetricDecision::MinkowskiConsistent;
}

nlohmann::json to_json(const FitResult& fit, MetricDecision decision) {
  return {{"alpha_hat", fit.alpha_hat},
          {"alpha_stderr", fit.alpha_stderr},
          {"chi2", fit.chi2},
          {"dof", fit.dof},
          {"z_score_alpha_zero", fit.z_score_alpha_zero},
          {"n_used", fit.n_used},
          {"decision", std::string(to_string(decision))}};
}

FitResult fit_from_json(const nlohmann::json& j) {
  FitResult fit;
  try {
    fit.alpha_hat = j.at("alpha_hat").get<double>();
    fit.alpha_stderr = j.at("alpha_stderr").get<double>();
    fit.chi2 = j.at("chi2").get<double>();
    fit.dof = j.at("dof").get<std::int64_t>();
    fit.z_score_alpha_zero = j.at("z_score_alpha_zero").get<double>();
    fit.n_used = j.at("n_used").get<std::int64_t>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::MalformedInput, std::string("fit result: ") + e.what());
  }
  return fit;
}

}  // namespace confdop::estimate

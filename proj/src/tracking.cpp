#include "confdop/tracking.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <istream>
#include <limits>
#include <optional>
#include <ostream>
#include <set>
#include <sstream>

#include "confdop/errors.hpp"
#include "confdop/rng.hpp"
#include "confdop/wave.hpp"

namespace confdop::tracking {

namespace {

constexpr std::uint64_t kDopplerStream = 0;
constexpr std::uint64_t kRangeStream = 1;

[[noreturn]] void invalid(const std::string& key, const std::string& why) {
  throw Error(ErrorKind::ConfigInvalid, key + ": " + why);
}

const std::set<std::string, std::less<>>& known_keys() {
  static const std::set<std::string, std::less<>> keys = {
      "c", "alpha_true", "r0", "v_radial", "t_start", "t_end", "n_obs",
      "sigma_frac", "sigma_range", "add_noise", "seed"};
  return keys;
}

double get_number(const nlohmann::json& j, const char* key, std::optional<double> fallback) {
  if (!j.contains(key)) {
    if (fallback) return *fallback;
    invalid(key, "missing required key");
  }
  const auto& v = j.at(key);
  if (!v.is_number()) invalid(key, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) invalid(key, "must be finite");
  return x;
}

std::string format_double(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

double parse_double(std::string_view field, std::size_t line, const char* column) {
  double value = 0.0;
  const auto* end = field.data() + field.size();
  auto [ptr, ec] = std::from_chars(field.data(), end, value);
  if (ec != std::errc() || ptr != end || field.empty()) {
    throw Error(ErrorKind::MalformedInput,
                "line " + std::to_string(line) + ": bad " + column + " value '" + std::string(field) + "'");
  }
  return value;
}

}  // namespace

void SimConfig::validate() const {
  if (!(c > 0.0) || !std::isfinite(c)) invalid("c", "must be positive");
  if (!std::isfinite(alpha_true)) invalid("alpha_true", "must be finite");
  if (!(r0 > 0.0) || !std::isfinite(r0)) invalid("r0", "must be positive");
  if (!std::isfinite(v_radial)) invalid("v_radial", "must be finite");
  if (!(std::abs(v_radial) < c)) invalid("v_radial", "must be below c");
  if (!std::isfinite(t_start)) invalid("t_start", "must be finite");
  if (!std::isfinite(t_end) || !(t_end > t_start)) invalid("t_end", "must exceed t_start");
  if (n_obs < 2) invalid("n_obs", "must be at least 2");
  if (!(sigma_frac >= 0.0) || !std::isfinite(sigma_frac)) invalid("sigma_frac", "must be >= 0");
  if (!(sigma_range >= 0.0) || !std::isfinite(sigma_range)) invalid("sigma_range", "must be >= 0");
  if (r0 + v_radial * (t_end - t_start) <= 0.0) invalid("v_radial", "trajectory reaches the origin");
}

SimConfig SimConfig::from_json(const nlohmann::json& j) {
  if (!j.is_object()) throw Error(ErrorKind::ConfigInvalid, "config must be a JSON object");
  for (const auto& [key, _] : j.items()) {
    if (!known_keys().contains(key)) invalid(key, "unknown key");
  }
  SimConfig cfg;
  cfg.c = get_number(j, "c", kSpeedOfLight);
  cfg.alpha_true = get_number(j, "alpha_true", 0.0);
  cfg.r0 = get_number(j, "r0", std::nullopt);
  cfg.v_radial = get_number(j, "v_radial", std::nullopt);
  cfg.t_start = get_number(j, "t_start", std::nullopt);
  cfg.t_end = get_number(j, "t_end", std::nullopt);
  cfg.sigma_frac = get_number(j, "sigma_frac", kDopplerAccuracy);
  cfg.sigma_range = get_number(j, "sigma_range", 0.0);

  if (!j.contains("n_obs")) invalid("n_obs", "missing required key");
  if (!j.at("n_obs").is_number_integer()) invalid("n_obs", "expected an integer");
  cfg.n_obs = j.at("n_obs").get<std::int64_t>();

  if (j.contains("add_noise")) {
    if (!j.at("add_noise").is_boolean()) invalid("add_noise", "expected true or false");
    cfg.add_noise = j.at("add_noise").get<bool>();
  }
  if (j.contains("seed")) {
    const auto& s = j.at("seed");
    if (!s.is_number_integer()) invalid("seed", "expected an integer");
    if (s.is_number_unsigned()) {
      cfg.seed = s.get<std::uint64_t>();
    } else {
      const auto v = s.get<std::int64_t>();
      if (v < 0) invalid("seed", "must be >= 0");
      cfg.seed = static_cast<std::uint64_t>(v);
    }
  }
  cfg.validate();
  return cfg;
}

nlohmann::json SimConfig::to_json() const {
  return {{"c", c},
          {"alpha_true", alpha_true},
          {"r0", r0},
          {"v_radial", v_radial},
          {"t_start", t_start},
          {"t_end", t_end},
          {"n_obs", n_obs},
          {"sigma_frac", sigma_frac},
          {"sigma_range", sigma_range},
          {"add_noise", add_noise},
          {"seed", seed}};
}

TrajectoryPoint make_trajectory(const SimConfig& cfg, double epoch) {
  if (!(epoch >= cfg.t_start && epoch <= cfg.t_end)) {
    throw Error(ErrorKind::EpochOutOfRange,
                "epoch " + format_double(epoch) + " outside [" + format_double(cfg.t_start) + ", " +
                    format_double(cfg.t_end) + "]");
  }
  return {cfg.r0 + cfg.v_radial * (epoch - cfg.t_start), cfg.v_radial};
}

std::vector<TrackingRecord> simulate(const SimConfig& cfg) {
  cfg.validate();
  const CounterRng rng(cfg.seed);
  const auto n = static_cast<std::size_t>(cfg.n_obs);
  const double span = cfg.t_end - cfg.t_start;
  const Extended alpha(cfg.alpha_true);
  const Extended c(cfg.c);

  std::vector<TrackingRecord> records;
  records.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double epoch =
        (i + 1 == n) ? cfg.t_end : cfg.t_start + span * (static_cast<double>(i) / static_cast<double>(n - 1));
    const auto traj = make_trajectory(cfg, epoch);

    Extended frac = wave::doppler_model_conformal(alpha, Extended(traj.range), Extended(traj.range_rate)) / c;
    double range_meas = traj.range;
    if (cfg.add_noise) {
      frac += Extended(cfg.sigma_frac * rng.normal(kDopplerStream, i));
      range_meas += cfg.sigma_range * rng.normal(kRangeStream, i);
    }
    records.push_back({epoch, traj.range, traj.range_rate, range_meas, frac, cfg.sigma_frac});
  }
  return records;
}

std::vector<AnomalyResidual> anomaly_residuals(const std::vector<TrackingRecord>& records, double c) {
  const Extended c_ext(c);
  std::vector<AnomalyResidual> out;
  out.reserve(records.size());
  for (const auto& rec : records) {
    if (rec.range_true == 0.0) {
      throw Error(ErrorKind::ZeroRange, "record at epoch " + format_double(rec.epoch) + " has zero range");
    }
    const Extended expected(wave::doppler_model_minkowski(rec.range_rate_true));
    const double residual = static_cast<double>(c_ext * rec.doppler_frac_meas - expected);
    out.push_back({rec.epoch, residual, residual / rec.range_true});
  }
  return out;
}

SignComparison sign_comparison_report(double anomaly_rate, double hubble_rate) {
  SignComparison out;
  out.anomaly_rate = anomaly_rate;
  out.hubble_rate = hubble_rate;
  if (hubble_rate == 0.0) {
    out.magnitude_ratio = anomaly_rate == 0.0 ? 0.0 : std::numeric_limits<double>::infinity();
  } else {
    out.magnitude_ratio = std::abs(anomaly_rate) / std::abs(hubble_rate);
  }
  out.opposite_sign = (anomaly_rate < 0.0 && hubble_rate > 0.0) || (anomaly_rate > 0.0 && hubble_rate < 0.0);
  out.caveat =
      "the anomaly rate was referred to the unprimed time t; measured against t' the outgoing and "
      "incoming legs of the two-way link shift differently, and that effect is not modeled here";
  return out;
}

void write_csv(std::ostream& out, const std::vector<TrackingRecord>& records) {
  out << kCsvHeader << '\n';
  for (const auto& rec : records) {
    out << format_double(rec.epoch) << ',' << format_double(rec.range_true) << ','
        << format_double(rec.range_rate_true) << ',' << format_double(rec.range_meas) << ','
        << format_extended(rec.doppler_frac_meas) << ',' << format_double(rec.sigma_frac) << '\n';
  }
}

std::string to_csv(const std::vector<TrackingRecord>& records) {
  std::ostringstream out;
  write_csv(out, records);
  return out.str();
}

std::vector<TrackingRecord> read_csv(std::istream& in) {
  std::string line;
  std::size_t line_no = 0;
  const auto strip_cr = [](std::string& s) {
    if (!s.empty() && s.back() == '\r') s.pop_back();
  };

  if (!std::getline(in, line)) throw Error(ErrorKind::MalformedInput, "line 1: empty input");
  ++line_no;
  strip_cr(line);
  if (line != kCsvHeader) {
    throw Error(ErrorKind::MalformedInput, "line 1: unexpected header '" + line + "'");
  }

  std::vector<TrackingRecord> records;
  while (std::getline(in, line)) {
    ++line_no;
    strip_cr(line);
    if (line.empty()) continue;

    std::vector<std::string_view> fields;
    std::string_view rest(line);
    while (true) {
      const auto comma = rest.find(',');
      fields.push_back(rest.substr(0, comma));
      if (comma == std::string_view::npos) break;
      rest.remove_prefix(comma + 1);
    }
    if (fields.size() != 6) {
      throw Error(ErrorKind::MalformedInput, "line " + std::to_string(line_no) + ": expected 6 fields, got " +
                                                 std::to_string(fields.size()));
    }
    TrackingRecord rec;
    rec.epoch = parse_double(fields[0], line_no, "epoch_s");
    rec.range_true = parse_double(fields[1], line_no, "range_m");
    rec.range_rate_true = parse_double(fields[2], line_no, "range_rate_mps");
    rec.range_meas = parse_double(fields[3], line_no, "range_meas_m");
    try {
      rec.doppler_frac_meas = parse_extended(std::string(fields[4]));
    } catch (const Error&) {
      throw Error(ErrorKind::MalformedInput, "line " + std::to_string(line_no) + ": bad doppler_frac value '" +
                                                 std::string(fields[4]) + "'");
    }
    rec.sigma_frac = parse_double(fields[5], line_no, "sigma_frac");
    records.push_back(rec);
  }
  return records;
}

}  // namespace confdop::tracking

#include "confdop/checks.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <limits>
#include <numbers>
#include <string>

#include "confdop/conformal.hpp"
#include "confdop/errors.hpp"
#include "confdop/rng.hpp"

namespace confdop::checks {

namespace {

using conformal::Direction;
using conformal::Event;
using conformal::GroupParameter;

// Geometric units: c = 1 keeps beta4 exactly representable.
constexpr double kGeometricC = 1.0;
constexpr double kCoordinateBox = 10.0;
constexpr double kInf = std::numeric_limits<double>::infinity();

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  double uniform(double lo, double hi) { return lo + (hi - lo) * rng_.uniform(0, next_++); }

  Direction direction() {
    const double z = uniform(-1.0, 1.0);
    const double phi = uniform(0.0, 2.0 * std::numbers::pi);
    const double s = std::sqrt(1.0 - z * z);
    return {s * std::cos(phi), s * std::sin(phi), z};
  }

  Event event(double min_r = 0.0) {
    return Event(uniform(min_r, kCoordinateBox), uniform(-kCoordinateBox, kCoordinateBox), direction());
  }

  // |beta4| (|x4| + r) <= reach keeps both light-cone factors >= 1 - reach.
  double beta_for(const Event& e, double reach) {
    const double extent = std::abs(e.x4()) + e.r();
    return uniform(-reach, reach) / (extent > 0.0 ? extent : 1.0);
  }

 private:
  CounterRng rng_;
  std::uint64_t next_ = 0;
};

double vector_rel_error(const Event& got, const Event& want) {
  const double diff = std::hypot(got.r() - want.r(), got.x4() - want.x4());
  const double norm = std::hypot(want.r(), want.x4());
  return norm > 0.0 ? diff / norm : diff;
}

std::string fmt(const char* format, auto... args) {
  char buf[256];
  std::snprintf(buf, sizeof buf, format, args...);
  return buf;
}

SuiteReport start(std::string_view name, const SuiteOptions& options, std::int64_t cases, double tol) {
  SuiteReport report;
  report.suite = std::string(name);
  report.cases = options.cases > 0 ? options.cases : cases;
  report.tol = options.tol.value_or(tol);
  return report;
}

void track(SuiteReport& report, double err, const std::string& where) {
  if (std::isnan(err)) err = kInf;
  if (report.worst_case.empty() || err > report.worst) {
    report.worst = err;
    report.worst_case = where;
  }
}

}  // namespace

SuiteReport run_group(const SuiteOptions& options) {
  auto report = start("group", options, 10000, 1e-12);
  Sampler sample(options.seed);
  for (std::int64_t k = 0; k < report.cases; ++k) {
    const Event e = sample.event();
    const auto p1 = GroupParameter::from_beta4(sample.beta_for(e, 0.3), kGeometricC);
    const Event mid = conformal::transform_finite(p1, e);
    const auto p2 = GroupParameter::from_beta4(sample.beta_for(mid, 0.3), kGeometricC);
    const Event composed = conformal::transform_finite(p2, mid);
    const Event direct = conformal::transform_finite(GroupParameter::from_beta4(p1.beta4() + p2.beta4(), kGeometricC), e);
    double err = vector_rel_error(composed, direct);
    if (composed.direction() != e.direction()) err = kInf;
    track(report, err,
          fmt("beta1=%.17g beta2=%.17g r=%.17g x4=%.17g", p1.beta4(), p2.beta4(), e.r(), e.x4()));
  }
  report.passed = report.worst <= report.tol;
  return report;
}

SuiteReport run_oracle(const SuiteOptions& options) {
  auto report = start("oracle", options, 100, 1e-9);
  Sampler sample(options.seed);
  for (std::int64_t k = 0; k < report.cases; ++k) {
    const Event e = sample.event();
    const auto p = GroupParameter::from_beta4(sample.beta_for(e, 0.3), kGeometricC);
    const double err = vector_rel_error(conformal::transform_finite(p, e), conformal::flow_oracle(p, e));
    track(report, err, fmt("beta4=%.17g r=%.17g x4=%.17g", p.beta4(), e.r(), e.x4()));
  }
  report.passed = report.worst <= report.tol;
  return report;
}

SuiteReport run_hill(const SuiteOptions& options) {
  // Fixed grid in SI units with time scale 1 s; alpha_0 (|t| + r/c) <= 0.08.
  auto report = start("hill", options, 3, 1.9);
  const double c = kSpeedOfLight;
  const std::array<double, 4> radii = {0.0, 0.5 * c, 1.0 * c, 2.0 * c};
  const std::array<double, 6> times = {-2.0, -1.0, -0.5, 0.5, 1.0, 2.0};
  const double length_scale = c;  // c * 1 s

  const auto deviation = [&](double alpha) {
    const auto p = GroupParameter::from_alpha(alpha, c);
    double worst = 0.0;
    for (double r : radii) {
      for (double t : times) {
        const auto hill = conformal::hill_transform(p, r, t);
        const Event exact = conformal::transform_finite(p, Event::from_time(r, t, c));
        const double dr = std::abs(hill.r - exact.r());
        const double dx4 = c * std::abs(hill.t - exact.time(c));
        worst = std::max(worst, std::max(dr, dx4) / length_scale);
      }
    }
    return worst;
  };

  double alpha = 0.02;
  double previous = deviation(alpha);
  report.worst = kInf;
  for (std::int64_t h = 0; h < report.cases; ++h) {
    alpha /= 2.0;
    const double current = deviation(alpha);
    const double order = std::log2(previous / current);
    report.orders.push_back(order);
    if (order < report.worst) {
      report.worst = order;
      report.worst_case = fmt("halving %lld: alpha=%.6g deviation %.6g -> %.6g", static_cast<long long>(h + 1),
                              alpha, previous, current);
    }
    previous = current;
  }
  report.passed = report.worst >= report.tol;
  return report;
}

SuiteReport run_metric(const SuiteOptions& options) {
  // Errors are measured against gamma^2 (dr^2 + dx4^2), the natural size of
  // the quadratic form, so nearly-null samples do not divide by ~0.
  auto report = start("metric", options, 10000, 1e-12);
  Sampler sample(options.seed);
  for (std::int64_t k = 0; k < report.cases; ++k) {
    const Event e = sample.event();
    const auto p = GroupParameter::from_beta4(sample.beta_for(e, 0.5), kGeometricC);
    conformal::Displacement d{sample.uniform(-1.0, 1.0), sample.uniform(-1.0, 1.0)};
    const bool null = k % 4 == 0;
    if (null) d.dx4 = (sample.uniform(0.0, 1.0) < 0.5 ? -1.0 : 1.0) * d.dr;

    const auto scale = conformal::interval_scale(p, e);
    const auto mapped = conformal::differential_map(p, e, d);
    const double ds2 = conformal::line_element(d);
    const double ds2_mapped = conformal::line_element(mapped);
    const double norm = scale.line_element * (d.dr * d.dr + d.dx4 * d.dx4);
    const double err = null ? ds2_mapped / norm : std::abs(ds2_mapped - scale.line_element * ds2) / norm;
    track(report, err,
          fmt("%sbeta4=%.17g r=%.17g x4=%.17g dr=%.17g dx4=%.17g", null ? "null " : "", p.beta4(), e.r(), e.x4(),
              d.dr, d.dx4));
  }
  report.passed = report.worst <= report.tol;
  return report;
}

SuiteReport run_invariant(const SuiteOptions& options) {
  // Measured against (x4^2 + r^2)/r, the size of the terms in s^2/r.
  auto report = start("invariant", options, 10000, 1e-12);
  Sampler sample(options.seed);
  for (std::int64_t k = 0; k < report.cases; ++k) {
    const Event e = sample.event(1e-6);
    const auto p = GroupParameter::from_beta4(sample.beta_for(e, 0.3), kGeometricC);
    const Event moved = conformal::transform_finite(p, e);
    const double before = conformal::invariant_ratio(e);
    const double after = conformal::invariant_ratio(moved);
    const double scale = (e.x4() * e.x4() + e.r() * e.r()) / e.r();
    track(report, std::abs(after - before) / scale, fmt("beta4=%.17g r=%.17g x4=%.17g", p.beta4(), e.r(), e.x4()));
  }
  report.passed = report.worst <= report.tol;
  return report;
}

std::vector<std::string_view> suite_names() { return {"group", "oracle", "hill", "metric", "invariant"}; }

SuiteReport run_suite(std::string_view name, const SuiteOptions& options) {
  if (name == "group") return run_group(options);
  if (name == "oracle") return run_oracle(options);
  if (name == "hill") return run_hill(options);
  if (name == "metric") return run_metric(options);
  if (name == "invariant") return run_invariant(options);
  throw Error(ErrorKind::InvalidArgument, "unknown suite '" + std::string(name) + "'");
}

}  // namespace confdop::checks

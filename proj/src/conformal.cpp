#include "confdop/conformal.hpp"

#include <cmath>
#include <string>

#include "confdop/errors.hpp"

namespace confdop::conformal {

namespace {

std::string describe(const GroupParameter& p, const Event& e) {
  return "beta4=" + std::to_string(p.beta4()) + " r=" + std::to_string(e.r()) +
         " x4=" + std::to_string(e.x4());
}

}  // namespace

Event::Event(double r, double x4, std::optional<Direction> direction)
    : r_(r), x4_(x4), direction_(direction) {
  if (!std::isfinite(r) || !std::isfinite(x4)) {
    throw Error(ErrorKind::InvalidArgument, "event coordinates must be finite");
  }
  if (r < 0.0) {
    throw Error(ErrorKind::InvalidArgument, "radial distance must be >= 0, got " + std::to_string(r));
  }
  if (direction_) {
    const auto& d = *direction_;
    const double norm = std::sqrt(d[0] * d[0] + d[1] * d[1] + d[2] * d[2]);
    if (!(std::abs(norm - 1.0) <= 1e-12)) {
      throw Error(ErrorKind::InvalidArgument, "direction must be a unit vector");
    }
  }
}

GroupParameter GroupParameter::from_alpha(double alpha, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw Error(ErrorKind::InvalidArgument, "speed of light must be positive");
  }
  if (!std::isfinite(alpha)) {
    throw Error(ErrorKind::InvalidArgument, "alpha must be finite");
  }
  return GroupParameter(alpha, c);
}

GroupParameter GroupParameter::from_beta4(double beta4, double c) {
  if (!(c > 0.0) || !std::isfinite(c)) {
    throw Error(ErrorKind::InvalidArgument, "speed of light must be positive");
  }
  return from_alpha(2.0 * c * beta4, c);
}

IntervalSquared interval_of(const Event& e) { return {e.s2(), 0.0}; }

IntervalSquared interval_of(const Event& e, const Displacement& d) {
  return {e.s2(), line_element(d)};
}

double line_element(const Displacement& d) noexcept {
  return std::abs((d.dr - d.dx4) * (d.dr + d.dx4));
}

double gamma(const GroupParameter& p, const Event& e, double eps) {
  const double beta = p.beta4();
  const double r = e.r();
  const double x4 = e.x4();
  const double s2 = e.s2();
  // Light-cone factors; their product is 1 - 2 beta x4 + beta^2 s^2.
  const double outer = 1.0 - beta * (x4 + r);
  const double inner = 1.0 - beta * (x4 - r);
  const double denom = outer * inner;
  const double scale = 1.0 + std::abs(2.0 * beta * x4) + std::abs(beta * beta * s2);
  if (std::abs(denom) < eps * scale) {
    throw Error(ErrorKind::SingularTransform, "denominator vanishes at " + describe(p, e));
  }
  if (outer < 0.0 || inner < 0.0) {
    throw Error(ErrorKind::DomainCrossing, "event lies beyond the singular surface at " + describe(p, e));
  }
  return 1.0 / denom;
}

Event transform_finite(const GroupParameter& p, const Event& e) {
  const double g = gamma(p, e);
  return Event(g * e.r(), g * (e.x4() - p.beta4() * e.s2()), e.direction());
}

Event transform_inverse_finite(const GroupParameter& p, const Event& e_primed) {
  return transform_finite(p.inverse(), e_primed);
}

DifferentialCoeffs differential_coeffs(const GroupParameter& p, const Event& e) noexcept {
  const double beta = p.beta4();
  const double r = e.r();
  const double x4 = e.x4();
  const double a = 1.0 - 2.0 * beta * x4 + beta * beta * (r * r + x4 * x4);
  const double b = 2.0 * beta * r * (1.0 - beta * x4);
  const double denom = (1.0 - beta * (x4 + r)) * (1.0 - beta * (x4 - r));
  return {a, b, 1.0 / (denom * denom)};
}

Displacement differential_map(const GroupParameter& p, const Event& e, const Displacement& d) {
  const double g = gamma(p, e);
  const double g2 = g * g;
  const auto k = differential_coeffs(p, e);
  return {g2 * (k.a * d.dr + k.b * d.dx4), g2 * (k.b * d.dr + k.a * d.dx4)};
}

double slope_transform(const GroupParameter& p, const Event& e, double slope, double eps) {
  const auto k = differential_coeffs(p, e);
  const double den = k.b * slope + k.a;
  if (std::abs(den) < eps * (std::abs(k.a) + std::abs(k.b * slope))) {
    throw Error(ErrorKind::SlopeSingular, "B*slope + A vanishes at " + describe(p, e));
  }
  return (k.a * slope + k.b) / den;
}

double invariant_ratio(const Event& e) {
  if (e.r() == 0.0) {
    throw Error(ErrorKind::ZeroRadius, "s^2/r is undefined at r = 0");
  }
  return e.s2() / e.r();
}

IntervalScale interval_scale(const GroupParameter& p, const Event& e) {
  const double g = gamma(p, e);
  return {g, g * g};
}

HillEvent hill_transform(const GroupParameter& p, double r, double t) noexcept {
  const double alpha = p.alpha();
  const double c = p.c();
  return {(1.0 + alpha * t) * r, t + alpha * ((r * r) / (c * c) + t * t) / 2.0};
}

HillDifferential hill_differential(const GroupParameter& p, double r, double t,
                                   const HillDifferential& d) noexcept {
  const double alpha = p.alpha();
  const double c = p.c();
  return {d.dr * (1.0 + alpha * t) + alpha * r * d.dt,
          d.dt * (1.0 + alpha * t) + alpha * r * d.dr / (c * c)};
}

double hill_velocity(const GroupParameter& p, double r, double v) noexcept {
  const double c = p.c();
  return v + p.alpha() * r * (1.0 - (v / c) * (v / c));
}

Event flow_oracle(const GroupParameter& p, const Event& e, const FlowOptions& options) {
  if (options.steps == 0) {
    throw Error(ErrorKind::InvalidArgument, "flow oracle needs at least one step");
  }
  const double beta = p.beta4();
  if (beta == 0.0) return e;

  struct State {
    double r;
    double x4;
  };
  const auto field = [](const State& s) -> State {
    return {2.0 * s.x4 * s.r, s.r * s.r + s.x4 * s.x4};
  };

  const double h = beta / static_cast<double>(options.steps);
  State s{e.r(), e.x4()};
  for (std::size_t i = 0; i < options.steps; ++i) {
    const State k1 = field(s);
    const State k2 = field({s.r + 0.5 * h * k1.r, s.x4 + 0.5 * h * k1.x4});
    const State k3 = field({s.r + 0.5 * h * k2.r, s.x4 + 0.5 * h * k2.x4});
    const State k4 = field({s.r + h * k3.r, s.x4 + h * k3.x4});
    s.r += h / 6.0 * (k1.r + 2.0 * k2.r + 2.0 * k3.r + k4.r);
    s.x4 += h / 6.0 * (k1.x4 + 2.0 * k2.x4 + 2.0 * k3.x4 + k4.x4);
    const double norm = std::hypot(s.r, s.x4);
    if (!std::isfinite(norm) || norm > options.divergence_bound) {
      throw Error(ErrorKind::StepDivergence,
                  "flow left the bounded region at step " + std::to_string(i) + " from " + describe(p, e));
    }
  }
  return Event(s.r, s.x4, e.direction());
}

}  // namespace confdop::conformal

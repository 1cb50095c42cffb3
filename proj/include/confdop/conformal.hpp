#pragma once

#include <array>
#include <cstddef>
#include <optional>

#include "confdop/constants.hpp"

// One-parameter special conformal group generated by the time-translation
// conjugate C4 = (r^2 + x4^2) d/dx4 + 2 x4 r d/dr, acting on (r, x4 = ct).
//
// Everything here works in geometric units: lengths for r and x4, 1/length for
// beta4. GroupParameter converts to the rate alpha = 2 c beta4 (1/s).
namespace confdop::conformal {

using Direction = std::array<double, 3>;

class Event {
 public:
  // Throws InvalidArgument if r < 0 or r/x4 not finite, or the direction is
  // not a unit vector to 1e-12.
  Event(double r, double x4, std::optional<Direction> direction = std::nullopt);

  static Event from_time(double r, double t, double c = kSpeedOfLight) {
    return Event(r, c * t);
  }

  double r() const noexcept { return r_; }
  double x4() const noexcept { return x4_; }
  const std::optional<Direction>& direction() const noexcept { return direction_; }

  double time(double c = kSpeedOfLight) const noexcept { return x4_ / c; }

  // s^2 = (x4)^2 - r^2, signed.
  double s2() const noexcept { return (x4_ - r_) * (x4_ + r_); }

 private:
  double r_;
  double x4_;
  std::optional<Direction> direction_;
};

// Stores alpha (1/s) and c; beta4 is derived so alpha == 2 c beta4 holds by
// construction.
class GroupParameter {
 public:
  static GroupParameter from_alpha(double alpha, double c = kSpeedOfLight);
  static GroupParameter from_beta4(double beta4, double c = kSpeedOfLight);

  double alpha() const noexcept { return alpha_; }
  double c() const noexcept { return c_; }
  double beta4() const noexcept { return alpha_ / (2.0 * c_); }

  GroupParameter inverse() const noexcept { return GroupParameter(-alpha_, c_); }

 private:
  GroupParameter(double alpha, double c) : alpha_(alpha), c_(c) {}

  double alpha_;
  double c_;
};

struct IntervalSquared {
  double s2;   // (x4)^2 - r^2, signed
  double ds2;  // |(dr)^2 - (dx4)^2|, zero when no displacement was supplied
};

struct DifferentialCoeffs {
  double a;
  double b;
  double gamma2;
};

struct Displacement {
  double dr;
  double dx4;
};

struct IntervalScale {
  double gamma;         // finite s^2 -> gamma s^2
  double line_element;  // ds^2 -> gamma^2 ds^2
};

struct HillEvent {
  double r;
  double t;
};

struct HillDifferential {
  double dr;
  double dt;
};

IntervalSquared interval_of(const Event& e);
IntervalSquared interval_of(const Event& e, const Displacement& d);

// |(dr)^2 - (dx4)^2|, factored to avoid cancellation.
double line_element(const Displacement& d) noexcept;

// gamma = 1 / (1 - 2 beta4 x4 + beta4^2 s^2).
//
// The denominator factors as (1 - beta4 (x4 + r)) (1 - beta4 (x4 - r)); the
// flow from the identity reaches the event only while both factors stay
// positive. Throws SingularTransform when |denominator| < eps relative to
// 1 + |2 beta4 x4| + |beta4^2 s^2|, DomainCrossing when a factor is negative.
double gamma(const GroupParameter& p, const Event& e, double eps = kSingularEpsilon);

Event transform_finite(const GroupParameter& p, const Event& e);
Event transform_inverse_finite(const GroupParameter& p, const Event& e_primed);

DifferentialCoeffs differential_coeffs(const GroupParameter& p, const Event& e) noexcept;

Displacement differential_map(const GroupParameter& p, const Event& e, const Displacement& d);

// Moebius map of dr/dx4; +1 and -1 are fixed points.
double slope_transform(const GroupParameter& p, const Event& e, double slope,
                       double eps = kSingularEpsilon);

// s^2 / r, preserved by the finite transform. Throws ZeroRadius at r = 0.
double invariant_ratio(const Event& e);

IntervalScale interval_scale(const GroupParameter& p, const Event& e);

// First-order (Hill) relations in SI units: r' = (1 + alpha t) r,
// t' = t + alpha (r^2/c^2 + t^2) / 2.
HillEvent hill_transform(const GroupParameter& p, double r, double t) noexcept;

// dr' = dr (1 + alpha t) + alpha r dt, dt' = dt (1 + alpha t) + alpha r dr / c^2.
HillDifferential hill_differential(const GroupParameter& p, double r, double t,
                                   const HillDifferential& d) noexcept;

// v' = v + alpha r (1 - v^2/c^2).
double hill_velocity(const GroupParameter& p, double r, double v) noexcept;

struct FlowOptions {
  std::size_t steps = 100000;
  // StepDivergence once |(r, x4)| exceeds this.
  double divergence_bound = 1e12;
};

// Classical RK4 on dr/dtau = 2 x4 r, dx4/dtau = r^2 + x4^2 over tau in
// [0, beta4]. Independent of the closed form; used to check it.
Event flow_oracle(const GroupParameter& p, const Event& e, const FlowOptions& options = {});

}  // namespace confdop::conformal

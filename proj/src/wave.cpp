#include "confdop/wave.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "confdop/errors.hpp"

namespace confdop::wave {

namespace {

constexpr int kFixedPointPasses = 2;

void require_past_cone(double t_prime) {
  if (!(t_prime < 0.0)) {
    throw Error(ErrorKind::NotPastCone, "inbound ray needs t' < 0, got " + std::to_string(t_prime));
  }
}

}  // namespace

InboundRay inbound_ray_coords(const GroupParameter& p, RayPoint primed) {
  require_past_cone(primed.t);
  const double alpha = p.alpha();
  const double c = p.c();
  const double abs_tp = std::abs(primed.t);

  const auto r_of = [&](double t) { return (1.0 + alpha * std::abs(t)) * primed.r; };
  const auto t_of = [&](double r, double t) {
    return -abs_tp - alpha * ((r * r) / (c * c) + t * t) / 2.0;
  };

  double r = primed.r;
  double t = primed.t;
  for (int pass = 0; pass < kFixedPointPasses; ++pass) {
    const double r_next = r_of(t);
    const double t_next = t_of(r, t);
    r = r_next;
    t = t_next;
  }

  InboundRay out{r, t, r - r_of(t), t - t_of(r, t)};

  // The relations only hold to first order; a residual that is not O(alpha^2)
  // means the caller is outside that regime.
  const double span = abs_tp + primed.r / c;
  const double eps = std::abs(alpha) * span;
  const double rounding = 16.0 * std::numeric_limits<double>::epsilon();
  const double bound_r = (eps * eps + rounding) * primed.r;
  const double bound_t = (eps * eps + rounding) * span;
  if (std::abs(out.residual_r) > bound_r || std::abs(out.residual_t) > bound_t) {
    throw Error(ErrorKind::OutsideFirstOrderRegime,
                "alpha*(|t'| + r'/c) = " + std::to_string(eps) + " is too large for the first-order relations");
  }
  return out;
}

EmissionEvent EmissionEvent::from_primed(const GroupParameter& p, RayPoint primed) {
  require_past_cone(primed.t);
  const double c = p.c();
  const auto unprimed = conformal::transform_inverse_finite(p, conformal::Event(primed.r, c * primed.t));
  const double t = unprimed.x4() / c;
  if (!(t < 0.0)) {
    throw Error(ErrorKind::NotPastCone, "emission event maps outside the past light cone");
  }
  return EmissionEvent({unprimed.r(), t}, primed);
}

RayDifferential inbound_ray_differentials(const GroupParameter& p, RayPoint primed,
                                          RayDifferential d) noexcept {
  const double alpha = p.alpha();
  const double c = p.c();
  const double stretch = 1.0 - alpha * primed.t;
  return {d.dr * stretch - alpha * primed.r * d.dt,
          d.dt * stretch - alpha * primed.r * d.dr / (c * c)};
}

double wavelength_map(const GroupParameter& p, double lambda_primed, double r_prime, double t_prime) {
  if (t_prime > 0.0 || (t_prime == 0.0 && r_prime > 0.0)) {
    throw Error(ErrorKind::NotPastCone,
                "wavelength map needs t' < 0 (or the origin), got t'=" + std::to_string(t_prime));
  }
  return lambda_primed * (1.0 + p.alpha() * (std::abs(t_prime) + r_prime / p.c()));
}

WaveSample sample_wave(const GroupParameter& p, double lambda_primed, double r_prime, double t_prime) {
  return {wavelength_map(p, lambda_primed, r_prime, t_prime), lambda_primed, r_prime, t_prime};
}

DopplerObservable::DopplerObservable(double lambda_ref, double lambda_obs)
    : lambda_ref_(lambda_ref), lambda_obs_(lambda_obs), frac_shift_((lambda_obs - lambda_ref) / lambda_ref) {
  if (!(lambda_ref > 0.0) || !std::isfinite(lambda_ref)) {
    throw Error(ErrorKind::InvalidArgument, "reference wavelength must be positive");
  }
}

double doppler_velocity(const DopplerObservable& obs, double c) noexcept { return c * obs.frac_shift(); }

double doppler_model_conformal(const GroupParameter& p, double r, double v) {
  if (!(std::abs(v) < p.c())) {
    throw Error(ErrorKind::InvalidArgument, "source speed must be below c");
  }
  if (p.alpha() == 0.0) return doppler_model_minkowski(v);
  return v + p.alpha() * r;
}

Extended doppler_model_conformal(const Extended& alpha, const Extended& r, const Extended& v) {
  return v + alpha * r;
}

double doppler_model_minkowski(double v) noexcept { return v; }

double hubble_prediction(const HubbleInputs& h) noexcept { return h.velocity + h.h0 * h.distance; }

double hubble_alpha_correction(double h0, double alpha) noexcept { return h0 - alpha; }

}  // namespace confdop::wave

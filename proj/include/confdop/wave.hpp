#pragma once

#include "confdop/conformal.hpp"
#include "confdop/extended.hpp"

// Null rays arriving at an observer at the origin, wavelength bookkeeping
// between the conformal and Minkowski descriptions, and the Doppler/Hubble
// relations built on them. SI units throughout.
namespace confdop::wave {

using conformal::GroupParameter;

// Point on an inbound ray; t < 0 on the past light cone.
struct RayPoint {
  double r;
  double t;
};

struct InboundRay {
  double r;
  double t;
  // Residuals of the implicit first-order relations after the final pass.
  double residual_r;
  double residual_t;
};

struct RayDifferential {
  double dr;
  double dt;
};

class EmissionEvent {
 public:
  // Builds the unprimed coordinates from the primed ones via inbound_ray_coords.
  static EmissionEvent from_primed(const GroupParameter& p, RayPoint primed);

  RayPoint unprimed() const noexcept { return unprimed_; }
  RayPoint primed() const noexcept { return primed_; }

 private:
  EmissionEvent(RayPoint unprimed, RayPoint primed) : unprimed_(unprimed), primed_(primed) {}

  RayPoint unprimed_;
  RayPoint primed_;
};

struct WaveSample {
  double lambda_unprimed;
  double lambda_primed;
  double r_prime;
  double t_prime;
};

class DopplerObservable {
 public:
  DopplerObservable(double lambda_ref, double lambda_obs);

  double lambda_ref() const noexcept { return lambda_ref_; }
  double lambda_obs() const noexcept { return lambda_obs_; }
  double frac_shift() const noexcept { return frac_shift_; }

 private:
  double lambda_ref_;
  double lambda_obs_;
  double frac_shift_;
};

struct HubbleInputs {
  double velocity;  // V, m/s
  double distance;  // R, m
  double h0;        // 1/s
  double alpha;     // 1/s
};

// Unprimed coordinates of a point on an inbound ray given its primed ones:
//   r = (1 + alpha |t|) r',  -|t| = -|t'| - alpha (r^2/c^2 + t^2) / 2.
// The relation is implicit in (r, t); two fixed-point passes seeded at
// (r', t') resolve it to the first-order regime. Throws NotPastCone for
// t' >= 0 and OutsideFirstOrderRegime if the residual is not O(alpha^2).
InboundRay inbound_ray_coords(const GroupParameter& p, RayPoint primed);

// dr = dr'(1 - alpha t') - alpha r' dt',  dt = dt'(1 - alpha t') - alpha r' dr'/c^2.
RayDifferential inbound_ray_differentials(const GroupParameter& p, RayPoint primed,
                                          RayDifferential d) noexcept;

// lambda = lambda' (1 + alpha (|t'| + r'/c)), t' <= 0.
double wavelength_map(const GroupParameter& p, double lambda_primed, double r_prime,
                      double t_prime);

WaveSample sample_wave(const GroupParameter& p, double lambda_primed, double r_prime,
                       double t_prime);

// c * (delta Lambda / Lambda_ref): source velocity in conformal spacetime.
double doppler_velocity(const DopplerObservable& obs, double c = kSpeedOfLight) noexcept;

// c dLambda/Lambda_ref = dr/dt + alpha r, dropping the O(alpha v^2/c^2) term.
// Throws InvalidArgument for |v| >= c.
double doppler_model_conformal(const GroupParameter& p, double r, double v);
Extended doppler_model_conformal(const Extended& alpha, const Extended& r, const Extended& v);

// The alpha = 0 predictor: c dLambda/Lambda_ref = dr/dt.
double doppler_model_minkowski(double v) noexcept;

// V + H0 R.
double hubble_prediction(const HubbleInputs& h) noexcept;

// H0 - alpha, the rate that replaces H0 once Doppler shifts are reinterpreted.
double hubble_alpha_correction(double h0, double alpha) noexcept;

}  // namespace confdop::wave

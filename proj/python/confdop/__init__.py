"""Special conformal transform, Doppler tracking simulation and alpha estimation."""

from ._core import (
    ConfdopError,
    DopplerObservable,
    Event,
    FitResult,
    GroupParameter,
    SimConfig,
    TrackingRecord,
    __version__,
    anomaly_residuals,
    bootstrap_alpha,
    decide_metric,
    differential_coeffs,
    differential_map,
    doppler_model_conformal,
    doppler_velocity,
    fit_alpha,
    flow_oracle,
    gamma,
    hill_transform,
    hill_velocity,
    hubble_alpha_correction,
    hubble_prediction,
    inbound_ray_coords,
    inbound_ray_differentials,
    interval_scale,
    invariant_ratio,
    read_csv,
    run_suite,
    sign_comparison_report,
    simulate,
    slope_transform,
    to_csv,
    transform_finite,
    transform_inverse_finite,
    wavelength_map,
)

SPEED_OF_LIGHT = 299792458.0
HUBBLE_RATE = 2.19e-18
PIONEER_ANOMALY_RATE = -2.80e-18

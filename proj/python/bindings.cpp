#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <sstream>

#include "confdop/checks.hpp"
#include "confdop/conformal.hpp"
#include "confdop/errors.hpp"
#include "confdop/estimator.hpp"
#include "confdop/tracking.hpp"
#include "confdop/wave.hpp"

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace py = pybind11;
using namespace confdop;

namespace {

tracking::SimConfig config_from_kwargs(const py::dict& kwargs) {
  // Round-trip through JSON so Python callers get the same key validation as
  // config files.
  const auto json_module = py::module_::import("json");
  const std::string text = py::str(json_module.attr("dumps")(kwargs));
  return tracking::SimConfig::from_json(nlohmann::json::parse(text));
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Special conformal transform, Doppler tracking simulation and alpha estimation";

  static py::exception<Error> error_type(m, "ConfdopError", PyExc_ValueError);
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::set_error(error_type, e.what());
    }
  });

  using conformal::Event;
  using conformal::GroupParameter;

  py::class_<Event>(m, "Event")
      .def(py::init<double, double, std::optional<conformal::Direction>>(), py::arg("r"), py::arg("x4"),
           py::arg("direction") = std::nullopt)
      .def_static("from_time", &Event::from_time, py::arg("r"), py::arg("t"), py::arg("c") = kSpeedOfLight)
      .def_property_readonly("r", &Event::r)
      .def_property_readonly("x4", &Event::x4)
      .def_property_readonly("direction", &Event::direction)
      .def_property_readonly("s2", &Event::s2)
      .def("time", &Event::time, py::arg("c") = kSpeedOfLight)
      .def("__repr__", [](const Event& e) {
        std::ostringstream ss;
        ss.precision(17);
        ss << "Event(r=" << e.r() << ", x4=" << e.x4() << ")";
        return ss.str();
      });

  py::class_<GroupParameter>(m, "GroupParameter")
      .def_static("from_alpha", &GroupParameter::from_alpha, py::arg("alpha"), py::arg("c") = kSpeedOfLight)
      .def_static("from_beta4", &GroupParameter::from_beta4, py::arg("beta4"), py::arg("c") = kSpeedOfLight)
      .def_property_readonly("alpha", &GroupParameter::alpha)
      .def_property_readonly("beta4", &GroupParameter::beta4)
      .def_property_readonly("c", &GroupParameter::c)
      .def("inverse", &GroupParameter::inverse);

  m.def("gamma", [](const GroupParameter& p, const Event& e) { return conformal::gamma(p, e); });
  m.def("transform_finite", &conformal::transform_finite);
  m.def("transform_inverse_finite", &conformal::transform_inverse_finite);
  m.def("differential_coeffs", [](const GroupParameter& p, const Event& e) {
    const auto k = conformal::differential_coeffs(p, e);
    return py::make_tuple(k.a, k.b, k.gamma2);
  });
  m.def("differential_map", [](const GroupParameter& p, const Event& e, double dr, double dx4) {
    const auto d = conformal::differential_map(p, e, {dr, dx4});
    return py::make_tuple(d.dr, d.dx4);
  });
  m.def("slope_transform", [](const GroupParameter& p, const Event& e, double slope) {
    return conformal::slope_transform(p, e, slope);
  });
  m.def("invariant_ratio", &conformal::invariant_ratio);
  m.def("interval_scale", [](const GroupParameter& p, const Event& e) {
    const auto s = conformal::interval_scale(p, e);
    return py::make_tuple(s.gamma, s.line_element);
  });
  m.def("hill_transform", [](const GroupParameter& p, double r, double t) {
    const auto h = conformal::hill_transform(p, r, t);
    return py::make_tuple(h.r, h.t);
  });
  m.def("hill_velocity", &conformal::hill_velocity);
  m.def(
      "flow_oracle",
      [](const GroupParameter& p, const Event& e, std::size_t steps) {
        conformal::FlowOptions options;
        options.steps = steps;
        return conformal::flow_oracle(p, e, options);
      },
      py::arg("p"), py::arg("e"), py::arg("steps") = 100000);

  m.def("inbound_ray_coords", [](const GroupParameter& p, double r_prime, double t_prime) {
    const auto ray = wave::inbound_ray_coords(p, {r_prime, t_prime});
    return py::make_tuple(ray.r, ray.t);
  });
  m.def("inbound_ray_differentials",
        [](const GroupParameter& p, double r_prime, double t_prime, double dr_prime, double dt_prime) {
          const auto d = wave::inbound_ray_differentials(p, {r_prime, t_prime}, {dr_prime, dt_prime});
          return py::make_tuple(d.dr, d.dt);
        });
  m.def("wavelength_map", &wave::wavelength_map, py::arg("p"), py::arg("lambda_primed"), py::arg("r_prime"),
        py::arg("t_prime"));

  py::class_<wave::DopplerObservable>(m, "DopplerObservable")
      .def(py::init<double, double>(), py::arg("lambda_ref"), py::arg("lambda_obs"))
      .def_property_readonly("frac_shift", &wave::DopplerObservable::frac_shift);
  m.def("doppler_velocity", &wave::doppler_velocity, py::arg("obs"), py::arg("c") = kSpeedOfLight);
  m.def("doppler_model_conformal", [](const GroupParameter& p, double r, double v) {
    return wave::doppler_model_conformal(p, r, v);
  });
  m.def(
      "hubble_prediction",
      [](double velocity, double distance, double h0) {
        return wave::hubble_prediction({velocity, distance, h0, 0.0});
      },
      py::arg("velocity"), py::arg("distance"), py::arg("h0"));
  m.def("hubble_alpha_correction", &wave::hubble_alpha_correction, py::arg("h0"), py::arg("alpha"));

  py::class_<tracking::SimConfig>(m, "SimConfig")
      .def(py::init([](const py::kwargs& kwargs) { return config_from_kwargs(kwargs); }))
      .def_readonly("c", &tracking::SimConfig::c)
      .def_readonly("alpha_true", &tracking::SimConfig::alpha_true)
      .def_readonly("n_obs", &tracking::SimConfig::n_obs)
      .def_readonly("seed", &tracking::SimConfig::seed);

  py::class_<tracking::TrackingRecord>(m, "TrackingRecord")
      .def_readonly("epoch", &tracking::TrackingRecord::epoch)
      .def_readonly("range_true", &tracking::TrackingRecord::range_true)
      .def_readonly("range_rate_true", &tracking::TrackingRecord::range_rate_true)
      .def_readonly("range_meas", &tracking::TrackingRecord::range_meas)
      .def_readonly("sigma_frac", &tracking::TrackingRecord::sigma_frac)
      .def_property_readonly("doppler_frac",
                             [](const tracking::TrackingRecord& r) { return static_cast<double>(r.doppler_frac_meas); })
      .def_property_readonly("doppler_frac_text",
                             [](const tracking::TrackingRecord& r) { return format_extended(r.doppler_frac_meas); });

  m.def("simulate", &tracking::simulate);
  m.def("to_csv", &tracking::to_csv);
  m.def("read_csv", [](const std::string& text) {
    std::istringstream in(text);
    return tracking::read_csv(in);
  });
  m.def(
      "anomaly_residuals",
      [](const std::vector<tracking::TrackingRecord>& records, double c) {
        py::list out;
        for (const auto& r : tracking::anomaly_residuals(records, c)) {
          out.append(py::make_tuple(r.epoch, r.residual_velocity, r.residual_rate));
        }
        return out;
      },
      py::arg("records"), py::arg("c") = kSpeedOfLight);
  m.def("sign_comparison_report", [](double anomaly_rate, double hubble_rate) {
    const auto s = tracking::sign_comparison_report(anomaly_rate, hubble_rate);
    py::dict d;
    d["anomaly_rate"] = s.anomaly_rate;
    d["hubble_rate"] = s.hubble_rate;
    d["magnitude_ratio"] = s.magnitude_ratio;
    d["opposite_sign"] = s.opposite_sign;
    d["caveat"] = s.caveat;
    return d;
  });

  py::class_<estimate::FitResult>(m, "FitResult")
      .def_readonly("alpha_hat", &estimate::FitResult::alpha_hat)
      .def_readonly("alpha_stderr", &estimate::FitResult::alpha_stderr)
      .def_readonly("chi2", &estimate::FitResult::chi2)
      .def_readonly("dof", &estimate::FitResult::dof)
      .def_readonly("z_score_alpha_zero", &estimate::FitResult::z_score_alpha_zero)
      .def_readonly("n_used", &estimate::FitResult::n_used);

  m.def(
      "fit_alpha",
      [](const std::vector<tracking::TrackingRecord>& records, double c) { return estimate::fit_alpha(records, c); },
      py::arg("records"), py::arg("c") = kSpeedOfLight);
  m.def(
      "bootstrap_alpha",
      [](const std::vector<tracking::TrackingRecord>& records, std::int64_t n, std::uint64_t seed, double c) {
        return estimate::bootstrap_alpha(records, n, seed, c);
      },
      py::arg("records"), py::arg("n_resamples"), py::arg("seed"), py::arg("c") = kSpeedOfLight);
  m.def(
      "decide_metric",
      [](const estimate::FitResult& fit, double z) { return std::string(estimate::to_string(estimate::decide_metric(fit, z))); },
      py::arg("fit"), py::arg("z_threshold") = estimate::kDefaultZThreshold);

  m.def(
      "run_suite",
      [](const std::string& name, std::uint64_t seed, std::int64_t cases, std::optional<double> tol) {
        const auto r = checks::run_suite(name, {seed, cases, tol});
        py::dict d;
        d["suite"] = r.suite;
        d["cases"] = r.cases;
        d["tol"] = r.tol;
        d["worst"] = r.worst;
        d["worst_case"] = r.worst_case;
        d["passed"] = r.passed;
        d["orders"] = r.orders;
        return d;
      },
      py::arg("name"), py::arg("seed") = 1, py::arg("cases") = 0, py::arg("tol") = std::nullopt);

#ifdef VERSION_INFO
  m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
#else
  m.attr("__version__") = "dev";
#endif
}

#include "cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "confdop/checks.hpp"
#include "confdop/conformal.hpp"
#include "confdop/errors.hpp"
#include "confdop/estimator.hpp"
#include "confdop/manifest.hpp"
#include "confdop/rng.hpp"
#include "confdop/tracking.hpp"
#include "confdop/wave.hpp"

namespace confdop::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr const char* kSeedEnv = "CONFDOP_SEED";

std::string num(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::MalformedInput, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::InvalidArgument, "write failed for " + path.string());
}

std::uint64_t parse_seed(const std::string& text, const char* source) {
  std::size_t used = 0;
  unsigned long long v = 0;
  try {
    v = std::stoull(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty() || text.front() == '-') {
    throw Error(ErrorKind::InvalidArgument, std::string(source) + " is not a non-negative integer: '" + text + "'");
  }
  return v;
}

// flag > CONFDOP_SEED > fallback
std::uint64_t resolve_seed(const std::optional<std::uint64_t>& flag, std::uint64_t fallback) {
  if (flag) return *flag;
  if (const char* env = std::getenv(kSeedEnv); env != nullptr && *env != '\0') {
    return parse_seed(env, kSeedEnv);
  }
  return fallback;
}

struct TransformArgs {
  std::optional<double> beta4;
  std::optional<double> alpha;
  double r = 0.0;
  std::optional<double> x4;
  std::optional<double> t;
  double c = kSpeedOfLight;
  bool hill = false;
  bool json_out = false;
};

int cmd_transform(const TransformArgs& a, std::ostream& out, std::ostream& err) {
  if (a.beta4.has_value() == a.alpha.has_value()) {
    err << "transform: give exactly one of --beta4 or --alpha\n";
    return kExitUsage;
  }
  if (a.x4.has_value() == a.t.has_value()) {
    err << "transform: give exactly one of --x4 or --t\n";
    return kExitUsage;
  }
  const auto p = a.beta4 ? conformal::GroupParameter::from_beta4(*a.beta4, a.c)
                         : conformal::GroupParameter::from_alpha(*a.alpha, a.c);
  const double x4 = a.x4 ? *a.x4 : a.c * *a.t;
  const conformal::Event e(a.r, x4);

  const auto scale = conformal::interval_scale(p, e);
  const auto moved = conformal::transform_finite(p, e);
  const double s2 = e.s2();
  std::optional<double> ratio;
  if (e.r() > 0.0) ratio = conformal::invariant_ratio(e);

  json j = {{"beta4", p.beta4()},     {"alpha", p.alpha()},          {"r", e.r()},
            {"x4", e.x4()},           {"r_prime", moved.r()},        {"x4_prime", moved.x4()},
            {"t_prime", moved.time(a.c)}, {"gamma", scale.gamma},    {"s2", s2},
            {"s2_prime", moved.s2()}, {"s2_over_r", ratio ? json(*ratio) : json(nullptr)}};
  std::optional<conformal::HillEvent> hill;
  if (a.hill) {
    hill = conformal::hill_transform(p, e.r(), e.time(a.c));
    j["hill"] = {{"r_prime", hill->r}, {"t_prime", hill->t}};
  }

  if (a.json_out) {
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << "beta4     = " << num(p.beta4()) << " 1/m\n"
      << "alpha     = " << num(p.alpha()) << " 1/s\n"
      << "r'        = " << num(moved.r()) << " m\n"
      << "x4'       = " << num(moved.x4()) << " m\n"
      << "t'        = " << num(moved.time(a.c)) << " s\n"
      << "gamma     = " << num(scale.gamma) << '\n'
      << "s2        = " << num(s2) << " m^2\n"
      << "s2'       = " << num(moved.s2()) << " m^2\n"
      << "s2/r      = " << (ratio ? num(*ratio) + " m" : std::string("undefined (r = 0)")) << '\n';
  if (hill) {
    out << "hill r'   = " << num(hill->r) << " m\n"
        << "hill t'   = " << num(hill->t) << " s\n";
  }
  return kExitOk;
}

struct CheckArgs {
  std::string suite;
  std::optional<double> tol;
  std::optional<std::uint64_t> seed;
  std::int64_t cases = 0;
};

int cmd_check(const CheckArgs& a, std::ostream& out) {
  checks::SuiteOptions options;
  options.seed = resolve_seed(a.seed, 1);
  options.cases = a.cases;
  options.tol = a.tol;
  const auto report = checks::run_suite(a.suite, options);
  out << "suite     " << report.suite << '\n'
      << "seed      " << options.seed << '\n'
      << "cases     " << report.cases << '\n';
  if (report.suite == "hill") {
    out << "min order " << num(report.tol) << '\n';
    for (std::size_t i = 0; i < report.orders.size(); ++i) {
      out << "order[" << i + 1 << "]  " << num(report.orders[i]) << '\n';
    }
    out << "lowest    " << num(report.worst) << '\n';
  } else {
    out << "tol       " << num(report.tol) << '\n' << "worst     " << num(report.worst) << '\n';
  }
  out << "at        " << report.worst_case << '\n' << (report.passed ? "PASS" : "FAIL") << '\n';
  return report.passed ? kExitOk : kExitDomain;
}

struct SimulateArgs {
  std::string config;
  std::string out;
  std::string manifest;
  std::optional<std::uint64_t> seed;
};

int cmd_simulate(const SimulateArgs& a, std::ostream& out) {
  json raw;
  try {
    raw = json::parse(read_text(a.config));
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ConfigInvalid, a.config + ": " + e.what());
  }
  auto cfg = tracking::SimConfig::from_json(raw);
  cfg.seed = resolve_seed(a.seed, cfg.seed);

  const auto records = tracking::simulate(cfg);
  const fs::path csv_path(a.out);
  write_text(csv_path, tracking::to_csv(records));

  const fs::path manifest_path = a.manifest.empty() ? fs::path(a.out + ".manifest.json") : fs::path(a.manifest);
  const fs::path manifest_dir = fs::absolute(manifest_path).parent_path();

  RunManifest m;
  m.command = "simulate";
  m.config = cfg.to_json();
  m.config_digest = config_digest(m.config);
  m.seed = cfg.seed;
  m.rng_algorithm = CounterRng::kAlgorithmId;
  m.outputs.push_back({fs::absolute(csv_path).lexically_relative(manifest_dir).generic_string(),
                       sha256_file(csv_path)});
  write_text(manifest_path, m.to_json().dump(2) + "\n");

  out << "wrote " << records.size() << " records to " << csv_path.string() << '\n'
      << "manifest " << manifest_path.string() << '\n';
  return kExitOk;
}

struct FitArgs {
  std::string input;
  std::string out;
  std::int64_t bootstrap = 0;
  double z_threshold = estimate::kDefaultZThreshold;
  double c = kSpeedOfLight;
  std::optional<std::uint64_t> seed;
};

int cmd_fit(const FitArgs& a, std::ostream& out) {
  std::ifstream in(a.input, std::ios::binary);
  if (!in) throw Error(ErrorKind::MalformedInput, "cannot open " + a.input);
  std::vector<tracking::TrackingRecord> records;
  try {
    records = tracking::read_csv(in);
  } catch (const Error& e) {
    throw Error(e.kind(), a.input + ": " + e.what());
  }
  const auto fit = estimate::fit_alpha(records, a.c);
  auto j = estimate::to_json(fit, estimate::decide_metric(fit, a.z_threshold));
  if (a.bootstrap > 0) {
    j["alpha_stderr_bootstrap"] = estimate::bootstrap_alpha(records, a.bootstrap, resolve_seed(a.seed, 0), a.c);
  }
  const std::string text = j.dump(2) + "\n";
  if (a.out.empty()) {
    out << text;
  } else {
    write_text(a.out, text);
    out << "alpha_hat = " << num(fit.alpha_hat) << " +/- " << num(fit.alpha_stderr) << " 1/s ("
        << j["decision"].get<std::string>() << ")\n";
  }
  return kExitOk;
}

struct ReportArgs {
  std::string fit;
  double hubble = kHubbleRate;
  double anomaly = kPioneerAnomalyRate;
  double z_threshold = estimate::kDefaultZThreshold;
  bool json_out = false;
};

int cmd_report(const ReportArgs& a, std::ostream& out, std::ostream& err) {
  if (a.fit.empty()) {
    err << "report: missing input, pass --fit <json>\n";
    return kExitDomain;
  }
  json fj;
  try {
    fj = json::parse(read_text(a.fit));
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::MalformedInput, a.fit + ": " + e.what());
  }
  const auto fit = estimate::fit_from_json(fj);
  const std::string decision = fj.contains("decision") && fj["decision"].is_string()
                                   ? fj["decision"].get<std::string>()
                                   : std::string(estimate::to_string(estimate::decide_metric(fit, a.z_threshold)));
  const auto cmp = tracking::sign_comparison_report(a.anomaly, a.hubble);
  const double corrected = wave::hubble_alpha_correction(a.hubble, fit.alpha_hat);
  const double alpha_over_h0 = a.hubble != 0.0 ? fit.alpha_hat / a.hubble : 0.0;

  if (a.json_out) {
    json j = {{"alpha_hat", fit.alpha_hat},
              {"alpha_stderr", fit.alpha_stderr},
              {"hubble_rate", a.hubble},
              {"anomaly_rate", a.anomaly},
              {"corrected_hubble_rate", corrected},
              {"alpha_over_hubble", alpha_over_h0},
              {"anomaly_hubble_magnitude_ratio", cmp.magnitude_ratio},
              {"opposite_sign", cmp.opposite_sign},
              {"decision", decision},
              {"caveat", cmp.caveat}};
    out << j.dump(2) << '\n';
    return kExitOk;
  }
  out << "alpha_hat                      = " << num(fit.alpha_hat) << " 1/s\n"
      << "alpha_stderr                   = " << num(fit.alpha_stderr) << " 1/s\n"
      << "hubble_rate                    = " << num(a.hubble) << " 1/s\n"
      << "anomaly_rate                   = " << num(a.anomaly) << " 1/s\n"
      << "corrected_hubble_rate          = " << num(corrected) << " 1/s\n"
      << "alpha_over_hubble              = " << num(alpha_over_h0) << '\n'
      << "anomaly_hubble_magnitude_ratio = " << num(cmp.magnitude_ratio) << '\n'
      << "opposite_sign                  = " << (cmp.opposite_sign ? "true" : "false") << '\n'
      << "decision                       = " << decision << '\n'
      << "caveat: " << cmp.caveat << '\n';
  return kExitOk;
}

int cmd_verify(const std::string& manifest_path, std::ostream& out) {
  json j;
  try {
    j = json::parse(read_text(manifest_path));
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::MalformedInput, manifest_path + ": " + e.what());
  }
  const auto m = RunManifest::from_json(j);
  const auto check = verify_manifest(m, fs::absolute(manifest_path).parent_path());
  for (const auto& problem : check.problems) out << "problem: " << problem << '\n';
  out << (check.ok ? "OK" : "FAIL") << '\n';
  return check.ok ? kExitOk : kExitDomain;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Special conformal transform, Doppler tracking simulation and alpha estimation", "confdop"};
  app.require_subcommand(1);
  app.set_version_flag("--version", kToolVersion);

  TransformArgs ta;
  auto* transform = app.add_subcommand("transform", "Apply the finite transform to one event");
  transform->add_option("--beta4", ta.beta4, "Group parameter beta4 (1/m)");
  transform->add_option("--alpha", ta.alpha, "Group parameter alpha = 2 c beta4 (1/s)");
  transform->add_option("--r", ta.r, "Radial distance (m)")->required();
  transform->add_option("--x4", ta.x4, "Time coordinate ct (m)");
  transform->add_option("--t", ta.t, "Time (s)");
  transform->add_option("--c", ta.c, "Speed of light (m/s)")->capture_default_str();
  transform->add_flag("--hill", ta.hill, "Also print the first-order relations");
  transform->add_flag("--json", ta.json_out, "Emit JSON");

  CheckArgs ca;
  auto* check = app.add_subcommand("check", "Run a randomized property suite");
  check->add_option("--suite", ca.suite, "group|oracle|hill|metric|invariant")
      ->required()
      ->check(CLI::IsMember({"group", "oracle", "hill", "metric", "invariant"}));
  check->add_option("--tol", ca.tol, "Tolerance (minimum order for hill)");
  check->add_option("--seed", ca.seed, "Seed for the input generator");
  check->add_option("--cases", ca.cases, "Number of cases (suite default when omitted)");

  SimulateArgs sa;
  auto* simulate = app.add_subcommand("simulate", "Simulate tracking records from a JSON config");
  simulate->add_option("--config", sa.config, "SimConfig JSON")->required();
  simulate->add_option("--out", sa.out, "Output CSV")->required();
  simulate->add_option("--manifest", sa.manifest, "Manifest path (default <out>.manifest.json)");
  simulate->add_option("--seed", sa.seed, "Override the config seed");

  FitArgs fa;
  auto* fit = app.add_subcommand("fit", "Estimate alpha from a tracking CSV");
  fit->add_option("--input", fa.input, "Tracking CSV")->required();
  fit->add_option("--out", fa.out, "Output JSON (stdout when omitted)");
  fit->add_option("--bootstrap", fa.bootstrap, "Bootstrap resamples (>= 100)");
  fit->add_option("--z-threshold", fa.z_threshold, "Detection threshold on |z|")->capture_default_str();
  fit->add_option("--c", fa.c, "Speed of light (m/s)")->capture_default_str();
  fit->add_option("--seed", fa.seed, "Bootstrap seed");

  ReportArgs ra;
  auto* report = app.add_subcommand("report", "Compare alpha with the Hubble and anomaly rates");
  report->add_option("--fit", ra.fit, "FitResult JSON");
  report->add_option("--hubble", ra.hubble, "Hubble rate (1/s)")->capture_default_str();
  report->add_option("--anomaly", ra.anomaly, "Anomaly rate (1/s)")->capture_default_str();
  report->add_option("--z-threshold", ra.z_threshold, "Used when the fit carries no decision");
  report->add_flag("--json", ra.json_out, "Emit JSON");

  std::string manifest_path;
  auto* verify = app.add_subcommand("verify", "Recompute the digests recorded in a run manifest");
  verify->add_option("--manifest", manifest_path, "Manifest JSON")->required();

  std::vector<std::string> argv_storage;
  argv_storage.reserve(args.size() + 1);
  argv_storage.emplace_back("confdop");
  argv_storage.insert(argv_storage.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& s : argv_storage) argv.push_back(s.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (transform->parsed()) return cmd_transform(ta, out, err);
    if (check->parsed()) return cmd_check(ca, out);
    if (simulate->parsed()) return cmd_simulate(sa, out);
    if (fit->parsed()) return cmd_fit(fa, out);
    if (report->parsed()) return cmd_report(ra, out, err);
    if (verify->parsed()) return cmd_verify(manifest_path, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitDomain;
  }
  return kExitUsage;
}

}  // namespace confdop::cli

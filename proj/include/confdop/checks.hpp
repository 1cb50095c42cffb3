#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

// Randomized property suites over admissible inputs. Shared by the CLI
// `check` command and the acceptance tests.
namespace confdop::checks {

struct SuiteOptions {
  std::uint64_t seed = 1;
  std::int64_t cases = 0;  // 0 selects the suite default
  std::optional<double> tol;
};

struct SuiteReport {
  std::string suite;
  std::int64_t cases = 0;
  double tol = 0.0;
  double worst = 0.0;  // largest observed error (or lowest order for "hill")
  std::string worst_case;
  bool passed = false;
  std::vector<double> orders;  // hill only: order per halving
};

// group: composition law, 1e4 cases, tol 1e-12.
SuiteReport run_group(const SuiteOptions& options = {});
// oracle: closed form vs RK4 flow, 100 cases with |beta4| (|x4| + r) <= 0.3, tol 1e-9.
SuiteReport run_oracle(const SuiteOptions& options = {});
// hill: O(alpha^2) deviation of the first-order relations, three halvings,
// passes when every order >= tol (default 1.9).
SuiteReport run_hill(const SuiteOptions& options = {});
// metric: ds'^2 == gamma^2 ds^2 and null -> null, 1e4 cases, tol 1e-12.
SuiteReport run_metric(const SuiteOptions& options = {});
// invariant: s^2/r preserved, 1e4 cases with r > 1e-6, tol 1e-12.
SuiteReport run_invariant(const SuiteOptions& options = {});

std::vector<std::string_view> suite_names();

// Throws InvalidArgument for an unknown name.
SuiteReport run_suite(std::string_view name, const SuiteOptions& options = {});

}  // namespace confdop::checks

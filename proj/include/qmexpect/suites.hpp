#pragma once

// Named verification suites: each check pairs a quadrature result with a
// closed form or a qualitative expectation.

#include <complex>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qmexpect/states.hpp"

namespace qmexpect {

struct Check {
  std::string id;
  std::string claim;
  std::complex<double> computed;
  /// Empty for qualitative and errored checks.
  std::optional<std::complex<double>> reference;
  double tolerance = 0.0;
  bool passed = false;
  /// The check raised a numerical error; computed is NaN and note holds the reason.
  bool errored = false;
  /// Failure reason or annotation (empty when there is nothing to add).
  std::string note;
};

struct VerificationReport {
  std::string suite;
  std::vector<std::pair<std::string, double>> config;
  std::vector<Check> checks;
  bool all_passed = false;
};

/// Suite parameters. Every physical scale has a default; the optional fields
/// narrow the default parameter grid.
struct SuiteConfig {
  Units units;
  double rel_tol = 1e-9;
  double zero_tol = 1e-10;
  double phi_tol = 1e-12;
  std::size_t node_budget = 2'000'000;

  double omega = 1.0;
  double well_width = 1.0;
  double finite_depth = 10.0;
  double finite_half_width = 1.0;
  double delta_strength = 1.0;
  double pt_a = 1.0;
  double morse_beta = 1.0;
  double morse_r0 = 1.0;
  double a0 = 1.0;

  std::optional<int> angular_m;
  std::optional<double> morse_lambda;
  std::optional<int> morse_n;
  std::optional<double> pt_lambda;

  /// Sets a field from a "key=value" style pair. Throws DomainError for an
  /// unknown key or a malformed value.
  void set(const std::string& key, const std::string& value);
  std::vector<std::pair<std::string, double>> snapshot() const;
};

/// reality, wells, oscillator, poschl_teller, morse, position, hydrogen,
/// angular, heisenberg, all.
const std::vector<std::string>& suite_names();

/// Runs a suite. Numerical errors inside a check mark that check failed with
/// the reason in its note; they do not abort the suite. Throws DomainError for
/// an unknown suite name.
VerificationReport run_suite(const std::string& name, const SuiteConfig& config = {});

}  // namespace qmexpect

#pragma once

#include <string>
#include <vector>

#include "stratoflow/norms.hpp"

namespace stratoflow {

// sharp discrete constant in ||f||^2 <= (1/c) ||grad_h f||^2 for
// zero-horizontal-mean fields: min over nonzero n_h of |nch_h|^2
double poincare_constant_h(const TorusSpec& t);

struct HarmonicCheck {
  std::string name;
  bool pass = false;
  double fitted_constant = 0.0;
  std::string note;
};

struct HarmonicReport {
  std::vector<HarmonicCheck> checks;
  bool all_pass() const {
    for (const auto& c : checks)
      if (!c.pass) return false;
    return true;
  }
};

struct HarmonicSuiteConfig {
  std::uint64_t seed = 1;
  int trials = 100;
  bool run_commutator = true;  // optional check, reported either way
};

// Bernstein two-sided bounds on shell-localized fields, the
// Gagliardo-Nirenberg interpolation for zero-horizontal-average fields,
// the L^p_h L^q_v ordering inequality, horizontal Poincare, and the
// (optional) commutator decay ||[Delta_q, u] v|| <~ 2^-q. Fitted constants
// are reported; failures are reported, never silently ignored.
HarmonicReport property_suite_harmonic(const TorusSpec& t, const HarmonicSuiteConfig& cfg);

}  // namespace stratoflow

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mfdbsde/problem.hpp"

namespace mfdbsde {

struct AssumptionSamplerConfig {
  std::size_t pairs = 256;
  std::uint64_t seed = 20240601;
  std::size_t law_points = 16;
  std::size_t terminal_samples = 20000;
  double eps_stat = 1e-6;
};

struct AssumptionReport {
  // (i) xi square integrable: Monte-Carlo estimate of E[xi^2].
  double terminal_second_moment = 0.0;
  bool terminal_passed = false;

  // (ii) |f(t, 0, 0, 0, P_0)| < c on every grid node.
  double zero_bound_observed = 0.0;
  double zero_bound_c = 0.0;
  bool zero_bound_passed = false;

  // (iii) |f1 - f2|^2 / (C * rhs) over randomized segment/law pairs.
  double lipschitz_C = 0.0;
  std::vector<double> lipschitz_ratios;
  double max_ratio = 0.0;
  bool lipschitz_passed = false;

  bool passed = false;
};

/// Numerical check of the standing assumptions on (xi, f). The Lipschitz
/// bound integrates the squared segment differences and the per-offset law
/// distances against the delay measure on the window grid.
AssumptionReport validate_assumptions(const ProblemSpec& problem,
                                      const AssumptionSamplerConfig& cfg = {});

}  // namespace mfdbsde

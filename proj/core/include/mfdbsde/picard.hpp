#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mfdbsde/levy_sim.hpp"
#include "mfdbsde/solver.hpp"

namespace mfdbsde {

struct PicardConfig {
  std::size_t max_iters = 50;
  double tol = 1e-6;  // on the beta-norm (not squared) of the iterate difference
  double rho = 2.0;   // must exceed the delay atom at zero
  std::optional<double> beta_override;
  /// Stop early once a difference exceeds this multiple of the first one.
  double divergence_factor = 1e8;
};

struct PicardDiagnostics {
  /// ||X^{k+1} - X^k||_beta for k = 0, 1, ...; multiplied by
  /// exp(-norm_log_scale / 2) when beta T is too large to represent.
  std::vector<double> iterate_diff_beta_norms;
  /// Successive quotients of the squared differences, comparable with
  /// theoretical_factor.
  std::vector<double> observed_ratios;
  double theoretical_factor = 0.0;
  double beta_used = 0.0;
  double beta_default = 0.0;
  double c_prime_sq = 0.0;
  double norm_log_scale = 0.0;
  /// Largest delay (same measure shape, bisection on [0, T]) for which the
  /// theoretical factor at beta_used stays below one.
  double delta_threshold_estimate = 0.0;
  bool converged = false;
  bool diverged = false;
  std::size_t iters = 0;
  double y0_mean = 0.0;
  double y0_standard_error = 0.0;
  std::string warning;
};

struct PicardResult {
  TripleProcess solution;
  PicardDiagnostics diagnostics;
};

/// Squared constant used in the choice of beta: C^2 (1 + g)^2 with
/// g = integral over R^3 of |y|^2 exp(-|y|^2) dy. Requires C >= 0.
double c_prime_sq(double C);

/// 1 + 12 rho c'^2. Requires rho > 0.
double beta_choice(double rho, double c_prime_sq);

/// (1 / rho) * integral exp(-beta r) mu(dr).
double contraction_factor(double rho, double beta, const DelayMeasure& delay);

/// Checks rho > 0, rho > mu({0}), tol > 0 and max_iters > 0.
void check_picard_config(const PicardConfig& cfg, const DelayMeasure& delay);

PicardResult picard_solve(const ProblemSpec& problem, const PathEnsemble& ensemble,
                          const RegressionConfig& reg, const PicardConfig& cfg);

/// Same loop on an already prepared solver.
PicardResult picard_solve(const BackwardSolver& solver, const PicardConfig& cfg);

struct SweepRow {
  double delta = 0.0;
  bool converged = false;
  std::size_t iters = 0;
  /// Geometric mean of the observed squared-difference quotients.
  double observed_ratio = 0.0;
  double theoretical_factor = 0.0;
};

struct SweepResult {
  std::vector<SweepRow> rows;
  /// observed_ratio non-decreasing in delta (rows sorted by delta).
  bool observed_ratio_monotone = true;
};

/// One Picard solve per delay, the template's delay measure rescaled to each
/// value. A single ensemble is shared by every row.
SweepResult delta_sweep(const ProblemSpec& problem_template, std::span<const double> deltas,
                        const SimConfig& sim, const RegressionConfig& reg,
                        const PicardConfig& cfg);

double geometric_mean_ratio(std::span<const double> diff_norms);

}  // namespace mfdbsde

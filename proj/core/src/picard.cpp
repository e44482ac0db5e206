#include "mfdbsde/picard.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "mfdbsde/lemma1.hpp"
#include "mfdbsde/norms.hpp"

namespace mfdbsde {

namespace {

// Beyond this beta T the weight exp(beta T) is scaled out of the norm.
constexpr double kMaxExponent = 600.0;

double threshold_estimate(double rho, double beta, const DelayMeasure& delay, double horizon) {
  if (delay.cell_masses().empty()) {
    return contraction_factor(rho, beta, delay) < 1.0 ? horizon : 0.0;
  }
  auto factor_at = [&](double d) { return contraction_factor(rho, beta, delay.rescaled(d)); };
  if (factor_at(0.0) >= 1.0) return 0.0;
  if (factor_at(horizon) < 1.0) return horizon;
  double lo = 0.0, hi = horizon;
  for (int it = 0; it < 80; ++it) {
    const double mid = 0.5 * (lo + hi);
    (factor_at(mid) < 1.0 ? lo : hi) = mid;
  }
  return lo;
}

}  // namespace

double c_prime_sq(double C) {
  if (!(C >= 0.0)) throw std::invalid_argument("c_prime_sq: C must be >= 0");
  const double g = gaussian_second_moment_3d();
  return C * C * (1.0 + g) * (1.0 + g);
}

double beta_choice(double rho, double cps) {
  if (!(rho > 0.0)) throw std::invalid_argument("beta_choice: rho must be > 0");
  return 1.0 + 12.0 * rho * cps;
}

double contraction_factor(double rho, double beta, const DelayMeasure& delay) {
  if (!(rho > 0.0)) throw std::invalid_argument("contraction_factor: rho must be > 0");
  if (!(beta >= 0.0)) throw std::invalid_argument("contraction_factor: beta must be >= 0");
  return delay.exp_moment(beta) / rho;
}

void check_picard_config(const PicardConfig& cfg, const DelayMeasure& delay) {
  if (!(cfg.rho > 0.0)) throw ConfigError("picard: rho must be > 0");
  if (!(cfg.rho > delay.atom_at_zero())) {
    std::ostringstream os;
    os << "picard: rho = " << cfg.rho << " must exceed the delay atom at zero ("
       << delay.atom_at_zero() << ")";
    throw ConfigError(os.str());
  }
  if (!(cfg.tol > 0.0)) throw ConfigError("picard: tol must be > 0");
  if (cfg.max_iters == 0) throw ConfigError("picard: max_iters must be > 0");
  if (cfg.beta_override && !(*cfg.beta_override >= 0.0)) {
    throw ConfigError("picard: beta override must be >= 0");
  }
}

double geometric_mean_ratio(std::span<const double> d) {
  std::size_t first = d.size(), last = d.size();
  for (std::size_t k = 0; k < d.size(); ++k) {
    if (d[k] > 0.0 && std::isfinite(d[k])) {
      if (first == d.size()) first = k;
      last = k;
    }
  }
  if (first == d.size() || last == first) return 0.0;
  const double span = static_cast<double>(last - first);
  return std::exp(2.0 * (std::log(d[last]) - std::log(d[first])) / span);
}

PicardResult picard_solve(const ProblemSpec& problem, const PathEnsemble& ensemble,
                          const RegressionConfig& reg, const PicardConfig& cfg) {
  check_picard_config(cfg, problem.delay);
  const BackwardSolver solver(problem, ensemble, reg);
  return picard_solve(solver, cfg);
}

PicardResult picard_solve(const BackwardSolver& solver, const PicardConfig& cfg) {
  const ProblemSpec& problem = solver.problem();
  check_picard_config(cfg, problem.delay);
  const TimeGrid& grid = problem.grid;

  PicardResult res;
  PicardDiagnostics& dg = res.diagnostics;
  dg.c_prime_sq = c_prime_sq(problem.lipschitz_C);
  dg.beta_default = beta_choice(cfg.rho, dg.c_prime_sq);
  dg.beta_used = cfg.beta_override.value_or(dg.beta_default);
  dg.theoretical_factor = contraction_factor(cfg.rho, dg.beta_used, problem.delay);
  dg.norm_log_scale = dg.beta_used * grid.horizon() > kMaxExponent
                          ? dg.beta_used * grid.horizon()
                          : 0.0;
  dg.delta_threshold_estimate =
      threshold_estimate(cfg.rho, dg.beta_used, problem.delay, grid.horizon());
  if (dg.theoretical_factor >= 1.0) {
    std::ostringstream os;
    os << "theoretical contraction factor " << dg.theoretical_factor
       << " >= 1: convergence is not guaranteed";
    dg.warning = os.str();
  }

  const double log_tol = std::log(cfg.tol);
  TripleProcess x = solver.zero_triple();
  PhiOutput out;
  for (std::size_t k = 0; k <= cfg.max_iters; ++k) {
    out = solver.apply(x);
    const double d2 = scaled_beta_norm_sq(out.triple - x, dg.beta_used, dg.norm_log_scale,
                                          grid, problem.levy);
    const double d = std::sqrt(std::max(0.0, d2));
    dg.iterate_diff_beta_norms.push_back(d);
    if (k > 0) {
      const double prev = dg.iterate_diff_beta_norms[k - 1];
      dg.observed_ratios.push_back(prev > 0.0 ? (d * d) / (prev * prev) : 0.0);
    }
    x = std::move(out.triple);
    const bool small = d == 0.0 || std::log(d) + 0.5 * dg.norm_log_scale <= log_tol;
    if (small) {
      dg.converged = true;
      dg.iters = k;
      break;
    }
    const double d0 = dg.iterate_diff_beta_norms.front();
    if (!std::isfinite(d) || (k > 0 && d > cfg.divergence_factor * d0)) {
      dg.diverged = true;
      dg.iters = k;
      break;
    }
    dg.iters = k;
  }
  dg.y0_mean = out.y0_mean;
  dg.y0_standard_error = out.y0_standard_error;
  res.solution = std::move(x);
  return res;
}

SweepResult delta_sweep(const ProblemSpec& problem_template, std::span<const double> deltas,
                        const SimConfig& sim, const RegressionConfig& reg,
                        const PicardConfig& cfg) {
  if (deltas.empty()) throw ConfigError("delta sweep: empty delta list");
  std::vector<double> sorted(deltas.begin(), deltas.end());
  std::sort(sorted.begin(), sorted.end());
  for (double d : sorted) {
    if (!(d >= 0.0)) throw ConfigError("delta sweep: delays must be >= 0");
  }
  const PathEnsemble ens = simulate_ensemble(problem_template.levy, problem_template.grid, sim);

  SweepResult out;
  for (double d : sorted) {
    ProblemSpec p = problem_template;
    try {
      p.delay = problem_template.delay.rescaled(d);
      p.validate();
      check_picard_config(cfg, p.delay);
    } catch (const std::invalid_argument& e) {
      throw ConfigError(std::string("delta sweep: delta = ") + std::to_string(d) + ": " +
                        e.what());
    }
    const BackwardSolver solver(p, ens, reg);
    const PicardResult r = picard_solve(solver, cfg);
    SweepRow row;
    row.delta = d;
    row.converged = r.diagnostics.converged;
    row.iters = r.diagnostics.iters;
    row.observed_ratio = geometric_mean_ratio(r.diagnostics.iterate_diff_beta_norms);
    row.theoretical_factor = r.diagnostics.theoretical_factor;
    out.rows.push_back(row);
  }
  for (std::size_t k = 1; k < out.rows.size(); ++k) {
    if (out.rows[k].observed_ratio < out.rows[k - 1].observed_ratio) {
      out.observed_ratio_monotone = false;
    }
  }
  return out;
}

}  // namespace mfdbsde

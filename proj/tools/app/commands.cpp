#include "commands.hpp"

#include <sstream>

#include "csv.hpp"
#include "mfdbsde/levy_sim.hpp"
#include "mfdbsde/solver.hpp"

namespace mfdbsde::app {

namespace {

const char* pass(bool ok) { return ok ? "PASS" : "FAIL"; }

std::string describe(const RunConfig& cfg) {
  const ProblemSpec& p = cfg.problem;
  std::ostringstream os;
  os << "config: " << cfg.source << '\n'
     << "horizon: " << fmt17(p.grid.horizon()) << '\n'
     << "n_steps: " << p.grid.n_steps() << '\n'
     << "delta: " << fmt17(p.delay.delta()) << '\n'
     << "delay_atom_at_zero: " << fmt17(p.delay.atom_at_zero()) << '\n'
     << "jump_atoms: " << p.levy.size() << '\n'
     << "generator: " << generator_name(p.generator) << '\n'
     << "terminal: " << p.terminal.name() << '\n'
     << "lipschitz_C: " << fmt17(p.lipschitz_C) << '\n'
     << "zero_bound_c: " << fmt17(p.zero_bound_c) << '\n'
     << "n_particles: " << cfg.sim.n_particles << '\n'
     << "seed: " << cfg.sim.seed << '\n'
     << "regression_degree: " << cfg.regression.degree << '\n'
     << "rho: " << fmt17(cfg.picard.rho) << '\n';
  return os.str();
}

template <class Body>
int guarded(std::ostream& err, Body body) {
  try {
    return body();
  } catch (const ConfigFileError& e) {
    err << "config error: " << e.what() << '\n';
  } catch (const ConfigError& e) {
    err << "config error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "config error: " << e.what() << '\n';
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
  }
  return kExitConfigError;
}

RunConfig load(const std::filesystem::path& path, const Overrides& ov) {
  RunConfig cfg = load_config(path);
  apply_overrides(cfg, ov);
  return cfg;
}

}  // namespace

std::string format_assumption_report(const AssumptionReport& rep) {
  std::ostringstream os;
  os << "assumption (i) terminal value square integrable: " << pass(rep.terminal_passed)
     << " (E[xi^2] ~ " << fmt17(rep.terminal_second_moment) << ")\n"
     << "assumption (ii) |f(t,0,0,0,P0)| < c: " << pass(rep.zero_bound_passed)
     << " (observed " << fmt17(rep.zero_bound_observed) << ", c = " << fmt17(rep.zero_bound_c)
     << ")\n"
     << "assumption (iii) Lipschitz bound: " << pass(rep.lipschitz_passed) << " (max ratio "
     << fmt17(rep.max_ratio) << " over " << rep.lipschitz_ratios.size()
     << " pairs, C = " << fmt17(rep.lipschitz_C) << ")\n";
  return os.str();
}

std::string format_diagnostics(const PicardDiagnostics& dg) {
  std::ostringstream os;
  os << "converged: " << (dg.converged ? "true" : "false") << '\n'
     << "diverged: " << (dg.diverged ? "true" : "false") << '\n'
     << "iters: " << dg.iters << '\n'
     << "y0: " << fmt17(dg.y0_mean) << '\n'
     << "y0_standard_error: " << fmt17(dg.y0_standard_error) << '\n'
     << "c_prime_sq: " << fmt17(dg.c_prime_sq) << '\n'
     << "beta_default: " << fmt17(dg.beta_default) << '\n'
     << "beta_used: " << fmt17(dg.beta_used) << '\n'
     << "norm_log_scale: " << fmt17(dg.norm_log_scale) << '\n'
     << "theoretical_factor: " << fmt17(dg.theoretical_factor) << '\n'
     << "delta_threshold_estimate: " << fmt17(dg.delta_threshold_estimate) << '\n';
  if (!dg.warning.empty()) os << "warning: " << dg.warning << '\n';
  os << "iteration,beta_norm_diff,observed_ratio\n";
  for (std::size_t k = 0; k < dg.iterate_diff_beta_norms.size(); ++k) {
    os << k << ',' << fmt17(dg.iterate_diff_beta_norms[k]) << ',';
    if (k > 0) os << fmt17(dg.observed_ratios[k - 1]);
    os << '\n';
  }
  return os.str();
}

std::vector<double> parse_delta_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t used = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &used);
    } catch (const std::exception&) {
      throw ConfigFileError("--deltas: '" + item + "' is not a number");
    }
    while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) ++used;
    if (used != item.size()) throw ConfigFileError("--deltas: '" + item + "' is not a number");
    if (!(v >= 0.0)) throw ConfigFileError("--deltas: delays must be >= 0");
    out.push_back(v);
  }
  if (out.empty()) throw ConfigFileError("--deltas: the delay list is empty");
  return out;
}

int cmd_solve(const std::filesystem::path& config, const Overrides& ov, std::ostream& out,
              std::ostream& err) {
  return guarded(err, [&] {
    const RunConfig cfg = load(config, ov);
    const PathEnsemble ens = simulate_ensemble(cfg.problem.levy, cfg.problem.grid, cfg.sim);
    const BackwardSolver solver(cfg.problem, ens, cfg.regression);
    const PicardResult res = picard_solve(solver, cfg.picard);
    const AssumptionReport rep = validate_assumptions(cfg.problem, cfg.validation);

    std::ostringstream csv;
    write_solution_csv(csv, res.solution, cfg.problem.grid);
    std::ostringstream report;
    report << "mfdbsde solve report\n"
           << describe(cfg) << "\n[picard]\n"
           << format_diagnostics(res.diagnostics) << "\n[assumptions]\n"
           << format_assumption_report(rep);
    write_file(cfg.output.dir / cfg.output.solution_csv, csv.str());
    write_file(cfg.output.dir / cfg.output.report, report.str());

    const PicardDiagnostics& dg = res.diagnostics;
    out << "Y(0) = " << fmt17(dg.y0_mean) << " +- " << fmt17(dg.y0_standard_error) << '\n'
        << "converged: " << (dg.converged ? "true" : "false") << " after " << dg.iters
        << " iterations\n"
        << "wrote " << (cfg.output.dir / cfg.output.solution_csv).string() << " and "
        << (cfg.output.dir / cfg.output.report).string() << '\n';
    if (!dg.warning.empty()) err << "warning: " << dg.warning << '\n';
    return dg.converged ? kExitOk : kExitNotConverged;
  });
}

int cmd_validate(const std::filesystem::path& config, const Overrides& ov, std::ostream& out,
                 std::ostream& err) {
  return guarded(err, [&] {
    RunConfig cfg = load(config, ov);
    if (ov.seed) cfg.validation.seed = *ov.seed;
    const AssumptionReport rep = validate_assumptions(cfg.problem, cfg.validation);
    const double cps = c_prime_sq(cfg.problem.lipschitz_C);
    const double beta = cfg.picard.beta_override.value_or(beta_choice(cfg.picard.rho, cps));
    const double factor = contraction_factor(cfg.picard.rho, beta, cfg.problem.delay);
    out << format_assumption_report(rep) << "contraction factor: " << fmt17(factor)
        << " (beta = " << fmt17(beta) << ", rho = " << fmt17(cfg.picard.rho) << "): "
        << pass(factor < 1.0) << '\n';
    return rep.passed && factor < 1.0 ? kExitOk : kExitAssumptionFailed;
  });
}

int cmd_sweep_delta(const std::filesystem::path& config, const std::vector<double>& deltas,
                    const Overrides& ov, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (deltas.empty()) throw ConfigFileError("--deltas: the delay list is empty");
    const RunConfig cfg = load(config, ov);
    const SweepResult sw = delta_sweep(cfg.problem, deltas, cfg.sim, cfg.regression, cfg.picard);
    std::ostringstream csv;
    write_sweep_csv(csv, sw);
    write_file(cfg.output.dir / cfg.output.sweep_csv, csv.str());
    out << csv.str() << "observed_ratio monotone in delta: "
        << (sw.observed_ratio_monotone ? "yes" : "no") << '\n';
    return kExitOk;
  });
}

}  // namespace mfdbsde::app

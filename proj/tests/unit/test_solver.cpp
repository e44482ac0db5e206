#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "mfdbsde/levy_sim.hpp"
#include "mfdbsde/norms.hpp"
#include "mfdbsde/parallel.hpp"
#include "mfdbsde/picard.hpp"
#include "mfdbsde/solver.hpp"

using namespace mfdbsde;

namespace {

ProblemSpec make_problem(GeneratorSpec g, TerminalCondition xi, LevyModel levy = {},
                         std::size_t steps = 50, DelayMeasure mu = DelayMeasure::dirac()) {
  return ProblemSpec{make_grid(1.0, steps), std::move(mu), std::move(levy), std::move(xi),
                     std::move(g), 1.0, 1.0};
}

PathEnsemble ensemble_for(const ProblemSpec& p, std::size_t n, std::uint64_t seed) {
  return simulate_ensemble(p.levy, p.grid, SimConfig{n, seed, false});
}

double mean_z(const TripleProcess& x, std::size_t i) {
  double s = 0.0;
  for (std::size_t p = 0; p < x.n_particles(); ++p) s += x.z(p, i);
  return s / static_cast<double>(x.n_particles());
}

double mean_k(const TripleProcess& x, std::size_t i, std::size_t j) {
  double s = 0.0;
  for (std::size_t p = 0; p < x.n_particles(); ++p) s += x.k(p, i, j);
  return s / static_cast<double>(x.n_particles());
}

}  // namespace

TEST_CASE("c_prime_sq and beta_choice") {
  const double g = 1.5 * std::pow(std::numbers::pi, 1.5);
  CHECK(c_prime_sq(1.0) == doctest::Approx((1.0 + g) * (1.0 + g)).epsilon(1e-14));
  CHECK(std::abs(c_prime_sq(1.0) - 87.469) < 1e-3);
  CHECK(c_prime_sq(0.0) == 0.0);
  CHECK(c_prime_sq(2.0) == doctest::Approx(4.0 * c_prime_sq(1.0)).epsilon(1e-14));
  CHECK_THROWS_AS(c_prime_sq(-1.0), std::invalid_argument);

  CHECK(beta_choice(1.0, 0.0) == 1.0);
  CHECK(beta_choice(2.0, 0.5) == 13.0);
  CHECK(std::abs(beta_choice(1.0, c_prime_sq(1.0)) - 1050.6) < 0.1);
  CHECK_THROWS_AS(beta_choice(0.0, 1.0), std::invalid_argument);
}

TEST_CASE("contraction_factor") {
  CHECK(contraction_factor(2.0, 5.0, DelayMeasure::dirac()) == 0.5);
  CHECK(contraction_factor(2.0, 2.0, DelayMeasure::uniform(0.1)) ==
        doctest::Approx((std::exp(0.2) - 1.0) / (2.0 * 2.0 * 0.1)).epsilon(1e-13));
  CHECK(std::abs(contraction_factor(2.0, 2.0, DelayMeasure::uniform(0.1)) - 0.55351) < 1e-5);
  for (double d : {0.3, 1.0}) {
    CHECK(contraction_factor(4.0, 0.0, DelayMeasure::uniform(d, 0.2)) ==
          doctest::Approx(0.25).epsilon(1e-14));
  }
  // Brute-force midpoint integration against the piecewise density.
  const auto mu = DelayMeasure::piecewise(0.4, 0.3, {0.1, 0.4, 0.2});
  const double beta = 3.0;
  double s = 0.3;
  const int n = 300000;
  for (int i = 0; i < n; ++i) {
    const double r = -0.4 + (i + 0.5) * 0.4 / n;
    const int cell = std::min(2, static_cast<int>((r + 0.4) / (0.4 / 3.0)));
    const double dens = std::array<double, 3>{0.1, 0.4, 0.2}[cell] / (0.4 / 3.0);
    s += std::exp(-beta * r) * dens * 0.4 / n;
  }
  CHECK(contraction_factor(1.5, beta, mu) == doctest::Approx(s / 1.5).epsilon(1e-8));
}

TEST_CASE("picard configuration checks") {
  PicardConfig cfg;
  cfg.rho = 0.5;
  CHECK_THROWS_AS(check_picard_config(cfg, DelayMeasure::uniform(0.2, 0.5)), ConfigError);
  CHECK_NOTHROW(check_picard_config(cfg, DelayMeasure::uniform(0.2, 0.4)));
  cfg.rho = 1.0;
  CHECK_THROWS_AS(check_picard_config(cfg, DelayMeasure::dirac()), ConfigError);
  cfg.rho = 2.0;
  cfg.tol = 0.0;
  CHECK_THROWS_AS(check_picard_config(cfg, DelayMeasure::dirac()), ConfigError);
}

TEST_CASE("apply_phi with a constant terminal value") {
  const auto p = make_problem(ZeroGen{}, TerminalCondition::constant(3.25), LevyModel({{1.0, 1.0}}),
                              20);
  const auto ens = ensemble_for(p, 2000, 1);
  const auto out = apply_phi(p, TripleProcess(2000, 20, 1), ens);
  for (std::size_t q = 0; q < 2000; q += 97) {
    for (std::size_t i = 0; i <= 20; ++i) CHECK(out.y(q, i) == doctest::Approx(3.25).epsilon(1e-12));
    for (std::size_t i = 0; i < 20; ++i) {
      CHECK(std::abs(out.z(q, i)) < 1e-10);
      CHECK(std::abs(out.k(q, i, 0)) < 1e-10);
    }
  }
}

TEST_CASE("apply_phi recovers the Brownian martingale representation") {
  const auto p = make_problem(ZeroGen{}, TerminalCondition::brownian());
  const auto ens = ensemble_for(p, 10000, 2);
  const auto out = apply_phi(p, TripleProcess(10000, 50, 0), ens);
  // Root-mean-square error of Y(t_i) - B(t_i) over the particles, per node.
  std::vector<double> sq(51, 0.0);
  for (std::size_t q = 0; q < 10000; ++q) {
    const auto b = ens.brownian_path(q);
    for (std::size_t i = 0; i <= 50; ++i) sq[i] += (out.y(q, i) - b[i]) * (out.y(q, i) - b[i]);
  }
  for (std::size_t i = 0; i <= 50; ++i) CHECK(std::sqrt(sq[i] / 10000.0) < 5e-2);
  for (std::size_t i = 0; i < 50; ++i) CHECK(std::abs(mean_z(out, i) - 1.0) < 5e-2);
}

TEST_CASE("apply_phi recovers the compensated Poisson representation") {
  const auto p = make_problem(ZeroGen{}, TerminalCondition::compensated_count(0),
                              LevyModel({{1.0, 1.0}}));
  const auto ens = ensemble_for(p, 10000, 3);
  const auto out = apply_phi(p, TripleProcess(10000, 50, 1), ens);
  for (std::size_t i = 0; i < 50; ++i) {
    CHECK(std::abs(mean_k(out, i, 0) - 1.0) < 5e-2);
    CHECK(std::abs(mean_z(out, i)) < 5e-2);
  }
}

TEST_CASE("terminal match and discrete martingale property") {
  const LevyModel l({{1.0, 1.5}, {-0.5, 0.7}});
  const auto p = make_problem(ZeroGen{}, TerminalCondition::call(0.1), l, 25);
  const std::size_t n = 8000;
  const auto ens = ensemble_for(p, n, 4);
  const BackwardSolver solver(p, ens, {});
  const auto out = solver.apply(solver.zero_triple()).triple;
  const auto xi = solver.terminal_values();
  for (std::size_t q = 0; q < n; ++q) CHECK_EQ(out.y(q, 25), xi[q]);

  const double dt = p.grid.dt();
  for (std::size_t i = 0; i < 25; ++i) {
    // The value regression forces a zero sample mean on Y(t_{i+1}) - Y(t_i),
    // so the statistic is the sample mean of the fitted martingale increment M
    // and its standard error is sd(M) / sqrt(n).
    double s = 0.0, m1 = 0.0, m2 = 0.0;
    for (std::size_t q = 0; q < n; ++q) {
      double incr = out.z(q, i) * ens.dB(q, i);
      for (std::size_t j = 0; j < 2; ++j) {
        incr += out.k(q, i, j) * compensated_increment(ens.jumps(q, i, j), l.atom(j).intensity, dt);
      }
      s += out.y(q, i + 1) - out.y(q, i) - incr;
      m1 += incr;
      m2 += incr * incr;
    }
    const double mean = s / n;
    const double sd = std::sqrt(std::max(0.0, m2 / n - (m1 / n) * (m1 / n)));
    CHECK(std::abs(mean) <= 4.0 * sd / std::sqrt(static_cast<double>(n)) + 1e-14);
  }
}

TEST_CASE("zero generator: apply_phi is idempotent") {
  const auto p = make_problem(ZeroGen{}, TerminalCondition::brownian_square(), LevyModel({{1.0, 1.0}}),
                              20);
  const auto ens = ensemble_for(p, 3000, 5);
  const auto once = apply_phi(p, TripleProcess(3000, 20, 1), ens);
  const auto twice = apply_phi(p, once, ens);
  CHECK(once == twice);
}

TEST_CASE("linear generators are scaling equivariant in the terminal value") {
  const LevyModel l({{1.0, 1.0}});
  const auto mu = DelayMeasure::uniform(0.2, 0.5);
  for (const GeneratorSpec& g :
       {GeneratorSpec{LinearStateGen{0.5, 0.3, {0.2}}}, GeneratorSpec{DelayedAverageGen{0.8}}}) {
    auto p1 = make_problem(g, TerminalCondition::linear(0.5, 1.0, {0.7}), l, 20, mu);
    auto p2 = make_problem(g, TerminalCondition::linear(1.0, 2.0, {1.4}), l, 20, mu);
    const auto ens = ensemble_for(p1, 3000, 6);
    PicardConfig cfg;
    cfg.rho = 2.0;
    cfg.beta_override = 1.0;
    cfg.max_iters = 6;
    cfg.tol = 1e-300;
    const auto r1 = picard_solve(p1, ens, {}, cfg);
    const auto r2 = picard_solve(p2, ens, {}, cfg);
    const auto& a = r1.solution;
    const auto& b = r2.solution;
    double err = 0.0;
    for (std::size_t q = 0; q < 3000; ++q) {
      for (std::size_t i = 0; i <= 20; ++i) err = std::max(err, std::abs(b.y(q, i) - 2.0 * a.y(q, i)));
      for (std::size_t i = 0; i < 20; ++i) {
        err = std::max(err, std::abs(b.z(q, i) - 2.0 * a.z(q, i)));
        err = std::max(err, std::abs(b.k(q, i, 0) - 2.0 * a.k(q, i, 0)));
      }
    }
    CHECK(err < 1e-10);
  }
}

TEST_CASE("picard: zero generator converges after one application") {
  const auto p = make_problem(ZeroGen{}, TerminalCondition::brownian(), {}, 20);
  const auto ens = ensemble_for(p, 2000, 7);
  PicardConfig cfg;
  cfg.beta_override = 1.0;
  const auto r = picard_solve(p, ens, {}, cfg);
  CHECK(r.diagnostics.converged);
  CHECK(r.diagnostics.iters == 1);
  CHECK(r.diagnostics.iterate_diff_beta_norms.size() == 2);
  CHECK(r.diagnostics.iterate_diff_beta_norms.back() == 0.0);
}

TEST_CASE("picard: mean-field moment generator reaches e") {
  auto p = make_problem(MeanFieldMomentGen{1.0, Moment::mean_y, 0}, TerminalCondition::constant(1.0));
  const auto ens = ensemble_for(p, 10000, 11);
  PicardConfig cfg;
  cfg.rho = 2.0;
  cfg.tol = 1e-8;
  cfg.max_iters = 20;
  cfg.beta_override = 1.0;
  const auto r = picard_solve(p, ens, {}, cfg);
  CHECK(r.diagnostics.converged);
  CHECK(r.diagnostics.iters <= 20);
  CHECK(std::abs(r.diagnostics.y0_mean - std::numbers::e) < 2e-2);
  CHECK(r.diagnostics.theoretical_factor == 0.5);
  CHECK(r.diagnostics.beta_used == 1.0);
  CHECK(r.diagnostics.c_prime_sq == doctest::Approx(c_prime_sq(1.0)));
  CHECK(r.diagnostics.beta_default == doctest::Approx(beta_choice(2.0, c_prime_sq(1.0))));
  const auto& d = r.diagnostics.iterate_diff_beta_norms;
  CHECK(d.back() <= cfg.tol);
  REQUIRE(r.diagnostics.observed_ratios.size() + 1 == d.size());
  for (std::size_t k = 0; k < r.diagnostics.observed_ratios.size(); ++k) {
    CHECK(r.diagnostics.observed_ratios[k] == doctest::Approx(d[k + 1] * d[k + 1] / (d[k] * d[k])));
  }
}

TEST_CASE("picard: Z drift is a Girsanov shift") {
  auto p = make_problem(LinearStateGen{0.0, 0.5, {}}, TerminalCondition::brownian());
  const auto ens = ensemble_for(p, 10000, 12);
  PicardConfig cfg;
  cfg.rho = 2.0;
  cfg.tol = 1e-8;
  cfg.max_iters = 30;
  cfg.beta_override = 1.0;
  const auto r = picard_solve(p, ens, {}, cfg);
  CHECK(r.diagnostics.converged);
  CHECK(std::abs(r.diagnostics.y0_mean - 0.5) < 5e-2);
  for (std::size_t i = 0; i < 50; i += 7) CHECK(std::abs(mean_z(r.solution, i) - 1.0) < 5e-2);
}

TEST_CASE("picard: default beta is representable through the scaled norm") {
  auto p = make_problem(LinearStateGen{0.2, 0.0, {}}, TerminalCondition::brownian(), {}, 20);
  const auto ens = ensemble_for(p, 2000, 13);
  PicardConfig cfg;
  cfg.rho = 2.0;
  const auto r = picard_solve(p, ens, {}, cfg);
  CHECK(r.diagnostics.beta_used == r.diagnostics.beta_default);
  CHECK(r.diagnostics.norm_log_scale == doctest::Approx(r.diagnostics.beta_used));
  for (double v : r.diagnostics.iterate_diff_beta_norms) CHECK(std::isfinite(v));
  CHECK(r.diagnostics.converged);
}

TEST_CASE("picard: warning when the theoretical factor is not below one") {
  auto p = make_problem(DelayedAverageGen{0.5}, TerminalCondition::constant(1.0), {}, 20,
                        DelayMeasure::uniform(0.5));
  const auto ens = ensemble_for(p, 500, 14);
  PicardConfig cfg;
  cfg.rho = 1.0;
  cfg.beta_override = 4.0;
  const auto r = picard_solve(p, ens, {}, cfg);
  CHECK(r.diagnostics.theoretical_factor > 1.0);
  CHECK_FALSE(r.diagnostics.warning.empty());
  CHECK(r.diagnostics.delta_threshold_estimate == 0.0);
}

TEST_CASE("picard: non-convergence is reported, not thrown") {
  auto p = make_problem(LinearStateGen{1.0, 0.0, {}}, TerminalCondition::brownian(), {}, 20);
  const auto ens = ensemble_for(p, 1000, 15);
  PicardConfig cfg;
  cfg.max_iters = 2;
  cfg.tol = 1e-14;
  cfg.beta_override = 1.0;
  const auto r = picard_solve(p, ens, {}, cfg);
  CHECK_FALSE(r.diagnostics.converged);
}

TEST_CASE("underdetermined regression is a configuration error") {
  const auto p = make_problem(ZeroGen{}, TerminalCondition::brownian(), LevyModel({{1.0, 1.0}}), 10);
  const auto ens = ensemble_for(p, 50, 16);
  CHECK_THROWS_AS(BackwardSolver(p, ens, RegressionConfig{}), ConfigError);
}

TEST_CASE("delta_sweep") {
  auto p = make_problem(DelayedAverageGen{0.5}, TerminalCondition::constant(1.0), {}, 20,
                        DelayMeasure::uniform(0.5));
  PicardConfig cfg;
  cfg.rho = 2.0;
  cfg.beta_override = 2.0;
  cfg.tol = 1e-8;
  cfg.max_iters = 40;
  const std::vector<double> deltas{0.5, 0.0, 0.25};
  const auto res = delta_sweep(p, deltas, SimConfig{1000, 3, false}, {}, cfg);
  REQUIRE(res.rows.size() == 3);
  CHECK(res.rows[0].delta == 0.0);
  CHECK(res.rows[1].delta == 0.25);
  CHECK(res.rows[2].delta == 0.5);
  CHECK(res.rows[0].converged);
  CHECK(res.rows[0].theoretical_factor == 0.5);
  for (const auto& row : res.rows) {
    CHECK(row.theoretical_factor ==
          contraction_factor(2.0, 2.0, p.delay.rescaled(row.delta)));
  }
  const std::vector<double> bad{0.13};
  CHECK_THROWS(delta_sweep(p, bad, SimConfig{1000, 3, false}, {}, cfg));
}

TEST_CASE("geometric_mean_ratio") {
  const std::vector<double> d{1.0, 0.5, 0.25, 0.125};
  CHECK(geometric_mean_ratio(d) == doctest::Approx(0.25));
  const std::vector<double> one{1.0};
  CHECK(geometric_mean_ratio(one) == 0.0);
}

TEST_CASE("results do not depend on the worker count") {
  const LevyModel l({{1.0, 1.0}});
  const auto p = make_problem(LinearStateGen{0.3, 0.2, {0.1}}, TerminalCondition::call(0.0), l, 20);
  const auto ens = ensemble_for(p, 4000, 17);
  PicardConfig cfg;
  cfg.beta_override = 1.0;
  cfg.max_iters = 4;
  set_thread_count(1);
  const auto a = picard_solve(p, ens, {}, cfg);
  set_thread_count(4);
  const auto b = picard_solve(p, ens, {}, cfg);
  set_thread_count(0);
  CHECK(a.solution == b.solution);
  CHECK(a.diagnostics.iterate_diff_beta_norms == b.diagnostics.iterate_diff_beta_norms);
}

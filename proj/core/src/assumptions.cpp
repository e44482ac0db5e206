#include "mfdbsde/assumptions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <stdexcept>

#include "mfdbsde/rng.hpp"

namespace mfdbsde {

namespace {

constexpr std::uint32_t kSegmentStream = 0;
constexpr std::uint32_t kLawStream = 1;
constexpr std::uint32_t kTerminalStream = 2;

double log_uniform(CounterRng& rng, double lo_exp, double hi_exp) {
  return std::pow(10.0, lo_exp + (hi_exp - lo_exp) * rng.uniform());
}

// Perturbation of one coordinate: either the shared shift (constant mode)
// or a fresh draw.
struct Perturb {
  bool constant = false;
  double shift = 0.0;
  double scale = 0.0;
  double draw(CounterRng& rng) const { return constant ? shift : scale * rng.normal(); }
};

Perturb make_perturb(CounterRng& rng, double s, bool off) {
  Perturb p;
  p.constant = rng.uniform() < 0.25;
  p.scale = off ? 0.0 : s * log_uniform(rng, -3.0, 0.0);
  p.shift = p.scale * rng.normal();
  return p;
}

EmpiricalMeasure random_law(CounterRng& rng, std::size_t n, std::size_t m, double s) {
  std::vector<double> pts(2 * n), marks(n * m);
  for (double& v : pts) v = s * rng.normal();
  for (double& v : marks) v = s * rng.normal();
  return EmpiricalMeasure(2, std::move(pts), {}, m, std::move(marks));
}

EmpiricalMeasure perturbed_law(const EmpiricalMeasure& base, CounterRng& rng,
                               const Perturb& pert) {
  std::vector<double> pts(base.points().begin(), base.points().end());
  std::vector<double> marks(base.marks().begin(), base.marks().end());
  for (double& v : pts) v += pert.draw(rng);
  for (double& v : marks) v += pert.draw(rng);
  return EmpiricalMeasure(2, std::move(pts), {}, base.n_marks(), std::move(marks));
}

}  // namespace

AssumptionReport validate_assumptions(const ProblemSpec& problem,
                                      const AssumptionSamplerConfig& cfg) {
  problem.validate();
  if (cfg.law_points == 0) throw std::invalid_argument("assumptions: law_points must be > 0");
  if (!(cfg.eps_stat >= 0.0)) throw std::invalid_argument("assumptions: eps_stat must be >= 0");

  const TimeGrid& grid = problem.grid;
  const LevyModel& levy = problem.levy;
  const std::size_t m = levy.size();
  const double dt = grid.dt();
  const GeneratorEvaluator f(problem.generator, problem.delay, levy, dt);
  const std::size_t lags = f.lags();
  const std::vector<double>& w = f.window_weights();
  const bool needs_law = f.needs_law();

  AssumptionReport rep;
  rep.zero_bound_c = problem.zero_bound_c;
  rep.lipschitz_C = problem.lipschitz_C;

  // (i) Monte-Carlo second moment of xi.
  {
    double acc = 0.0;
    std::vector<double> counts(m);
    for (std::size_t s = 0; s < cfg.terminal_samples; ++s) {
      CounterRng rng(cfg.seed, s, 0, kTerminalStream);
      const double b = std::sqrt(grid.horizon()) * rng.normal();
      for (std::size_t j = 0; j < m; ++j) {
        counts[j] = rng.poisson(levy.atom(j).intensity * grid.horizon());
      }
      const double xi = problem.terminal(b, counts, levy, grid.horizon());
      acc += xi * xi;
    }
    rep.terminal_second_moment =
        cfg.terminal_samples > 0 ? acc / static_cast<double>(cfg.terminal_samples) : 0.0;
    rep.terminal_passed = std::isfinite(rep.terminal_second_moment);
  }

  // (ii) generator at the zero triple and the Dirac law, on every node.
  {
    const EmpiricalMeasure p0 = dirac_law(m);
    const auto prepared = f.prepare(p0);
    double worst = 0.0;
    for (std::size_t i = 0; i <= grid.n_steps(); ++i) {
      const SegmentTriple zero = SegmentTriple::zero(lags, dt, m, grid.node(i));
      worst = std::max(worst, std::abs(f.evaluate(grid.node(i), zero, prepared)));
    }
    rep.zero_bound_observed = worst;
    rep.zero_bound_passed = worst < problem.zero_bound_c;
  }

  // (iii) randomized pairs. Laws are drawn per offset only when f reads
  // them; otherwise both sides share one law and the law term vanishes.
  std::unique_ptr<LawMetric> metric;
  if (needs_law) metric = std::make_unique<LawMetric>(levy, 12);
  const EmpiricalMeasure shared_law = dirac_law(m);

  rep.lipschitz_ratios.reserve(cfg.pairs);
  for (std::size_t q = 0; q < cfg.pairs; ++q) {
    CounterRng rng(cfg.seed, q, 0, kSegmentStream);
    const double s = log_uniform(rng, -2.0, 1.0);
    // Segment and law move independently; a third of the pairs hold one
    // of them fixed so that neither term can mask the other.
    const double mode = rng.uniform();
    const Perturb pert = make_perturb(rng, s, mode < 1.0 / 3.0);
    const Perturb law_pert = make_perturb(rng, s, mode >= 2.0 / 3.0);
    const std::size_t node =
        std::min(grid.n_steps(), static_cast<std::size_t>(rng.uniform() * (grid.n_steps() + 1)));
    const double t = grid.node(node);

    SegmentTriple a = SegmentTriple::zero(lags, dt, m, t);
    for (double& v : a.y) v = s * rng.normal();
    for (double& v : a.z) v = s * rng.normal();
    for (double& v : a.k) v = s * rng.normal();
    SegmentTriple b = a;
    for (double& v : b.y) v += pert.draw(rng);
    for (double& v : b.z) v += pert.draw(rng);
    for (double& v : b.k) v += pert.draw(rng);

    double rhs = 0.0;
    for (std::size_t e = 0; e <= lags; ++e) {
      if (w[e] == 0.0) continue;
      double v = (a.y[e] - b.y[e]) * (a.y[e] - b.y[e]) + (a.z[e] - b.z[e]) * (a.z[e] - b.z[e]);
      for (std::size_t j = 0; j < m; ++j) {
        const double dk = a.k_at(e, j) - b.k_at(e, j);
        v += levy.atom(j).intensity * dk * dk;
      }
      rhs += w[e] * v;
    }

    double fa = 0.0, fb = 0.0;
    if (needs_law) {
      CounterRng lrng(cfg.seed, q, 0, kLawStream);
      EmpiricalMeasure la_now, lb_now;
      for (std::size_t e = 0; e <= lags; ++e) {
        EmpiricalMeasure la = random_law(lrng, cfg.law_points, m, s);
        EmpiricalMeasure lb = perturbed_law(la, lrng, law_pert);
        if (w[e] != 0.0) rhs += w[e] * metric->distance_sq(la, lb);
        if (e == lags) {
          la_now = std::move(la);
          lb_now = std::move(lb);
        }
      }
      fa = f(t, a, la_now);
      fb = f(t, b, lb_now);
    } else {
      fa = f(t, a, shared_law);
      fb = f(t, b, shared_law);
    }

    const double df2 = (fa - fb) * (fa - fb);
    double ratio = 0.0;
    if (df2 > 0.0) {
      ratio = rhs > 0.0 ? df2 / (problem.lipschitz_C * rhs)
                        : std::numeric_limits<double>::infinity();
    }
    rep.lipschitz_ratios.push_back(ratio);
    rep.max_ratio = std::max(rep.max_ratio, ratio);
  }
  rep.lipschitz_passed = rep.max_ratio <= 1.0 + cfg.eps_stat;
  rep.passed = rep.terminal_passed && rep.zero_bound_passed && rep.lipschitz_passed;
  return rep;
}

}  // namespace mfdbsde

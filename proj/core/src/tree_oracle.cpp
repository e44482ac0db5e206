#include "mfdbsde/tree_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace mfdbsde {

TreeModel::TreeModel(const TimeGrid& grid, const LevyModel& levy)
    : n_steps_(grid.n_steps()),
      n_atoms_(levy.size()),
      branching_(std::size_t{2} << levy.size()),
      dt_(grid.dt()),
      sqrt_dt_(std::sqrt(grid.dt())) {
  if (n_steps_ > kMaxSteps) {
    throw ConfigError("tree: " + std::to_string(n_steps_) + " steps exceed the limit of " +
                      std::to_string(kMaxSteps));
  }
  double leaves = 1.0;
  for (std::size_t i = 0; i < n_steps_; ++i) leaves *= static_cast<double>(branching_);
  if (leaves > static_cast<double>(kMaxLeaves)) {
    throw ConfigError("tree: too many leaves (" + std::to_string(leaves) + ")");
  }
  for (std::size_t j = 0; j < n_atoms_; ++j) {
    const double p = levy.atom(j).intensity * dt_;
    if (!(p < 1.0)) throw ConfigError("tree: lambda * dt must be < 1 for every atom");
    jump_prob_.push_back(p);
  }
  child_prob_.resize(branching_);
  for (std::size_t c = 0; c < branching_; ++c) {
    double pr = 0.5;
    for (std::size_t j = 0; j < n_atoms_; ++j) {
      pr *= ((c >> (1 + j)) & 1u) ? jump_prob_[j] : 1.0 - jump_prob_[j];
    }
    child_prob_[c] = pr;
  }

  levels_.resize(n_steps_ + 1);
  levels_[0].prob = {1.0};
  levels_[0].b = {0.0};
  levels_[0].counts.assign(n_atoms_, 0.0);
  for (std::size_t l = 0; l < n_steps_; ++l) {
    const Level& cur = levels_[l];
    Level& nxt = levels_[l + 1];
    const std::size_t sz = cur.prob.size() * branching_;
    nxt.prob.resize(sz);
    nxt.b.resize(sz);
    nxt.counts.resize(sz * n_atoms_);
    for (std::size_t nd = 0; nd < cur.prob.size(); ++nd) {
      for (std::size_t c = 0; c < branching_; ++c) {
        const std::size_t ch = nd * branching_ + c;
        nxt.prob[ch] = cur.prob[nd] * child_prob_[c];
        nxt.b[ch] = cur.b[nd] + child_dB(c);
        for (std::size_t j = 0; j < n_atoms_; ++j) {
          nxt.counts[ch * n_atoms_ + j] =
              cur.counts[nd * n_atoms_ + j] + static_cast<double>((c >> (1 + j)) & 1u);
        }
      }
    }
  }
}

double TreeModel::child_dN(std::size_t c, std::size_t j) const {
  return static_cast<double>((c >> (1 + j)) & 1u) - jump_prob_[j];
}

double TreeModel::total_probability(std::size_t level) const {
  double s = 0.0, comp = 0.0;
  for (double p : levels_[level].prob) {
    const double y = p - comp;
    const double t = s + y;
    comp = (t - s) - y;
    s = t;
  }
  return s;
}

namespace {

struct TreeState {
  std::vector<std::vector<double>> y, z, k;
};

TreeState zero_state(const TreeModel& tree) {
  TreeState s;
  const std::size_t m = tree.n_atoms();
  for (std::size_t l = 0; l <= tree.n_steps(); ++l) {
    s.y.emplace_back(tree.level_size(l), 0.0);
    s.z.emplace_back(tree.level_size(l), 0.0);
    s.k.emplace_back(tree.level_size(l) * m, 0.0);
  }
  return s;
}

double implicit_weight(DriverRule r) {
  switch (r) {
    case DriverRule::left: return 1.0;
    case DriverRule::right: return 0.0;
    case DriverRule::trapezoid: return 0.5;
  }
  return 0.0;
}

}  // namespace

TreeSolution tree_solve(const ProblemSpec& problem, const TreeModel& tree,
                        const TreeSolveConfig& cfg) {
  problem.validate();
  if (tree.n_steps() != problem.grid.n_steps() || tree.n_atoms() != problem.levy.size() ||
      std::abs(tree.dt() - problem.grid.dt()) > 1e-15 * problem.grid.dt()) {
    throw ConfigError("tree: tree does not match the problem grid or Levy model");
  }
  const std::size_t N = tree.n_steps();
  const std::size_t m = tree.n_atoms();
  const std::size_t B = tree.branching();
  const double dt = problem.grid.dt();
  const double theta = implicit_weight(cfg.driver_rule);
  const GeneratorEvaluator gen(problem.generator, problem.delay, problem.levy, dt);
  const std::size_t lags = gen.lags();
  const bool needs_law = gen.needs_law();
  const bool active = generator_depends_on_solution(problem.generator);

  std::vector<double> var(m);
  for (std::size_t j = 0; j < m; ++j) {
    const double p = problem.levy.atom(j).intensity * dt;
    var[j] = p * (1.0 - p);
  }

  TreeState frozen = zero_state(tree);
  TreeSolution sol;
  std::vector<std::vector<double>> F(N + 1);
  SegmentTriple seg = SegmentTriple::zero(lags, dt, m);
  std::vector<std::size_t> anc(lags + 1);
  const EmpiricalMeasure no_law = dirac_law(m);

  for (std::size_t sweep = 1; sweep <= cfg.max_sweeps; ++sweep) {
    // Driver on the frozen state.
    for (std::size_t l = 0; l <= N; ++l) {
      F[l].assign(tree.level_size(l), 0.0);
      if (!active) continue;
      EmpiricalMeasure law;
      if (needs_law) {
        const std::size_t n = tree.level_size(l);
        std::vector<double> pts(2 * n), w(n), marks(n * m);
        for (std::size_t nd = 0; nd < n; ++nd) {
          pts[2 * nd] = frozen.y[l][nd];
          pts[2 * nd + 1] = frozen.z[l][nd];
          w[nd] = tree.probability(l, nd);
          for (std::size_t j = 0; j < m; ++j) marks[nd * m + j] = frozen.k[l][nd * m + j];
        }
        law = EmpiricalMeasure(2, std::move(pts), std::move(w), m, std::move(marks));
      }
      const auto prepared = gen.prepare(needs_law ? law : no_law);
      const double t = problem.grid.node(l);
      for (std::size_t nd = 0; nd < tree.level_size(l); ++nd) {
        anc[0] = nd;
        for (std::size_t b = 1; b <= std::min(lags, l); ++b) anc[b] = tree.parent(anc[b - 1]);
        seg.base_time = t;
        for (std::size_t e = 0; e <= lags; ++e) {
          const std::size_t back = lags - e;
          if (back > l) {
            seg.y[e] = frozen.y[0][0];
            seg.z[e] = 0.0;
            for (std::size_t j = 0; j < m; ++j) seg.k[e * m + j] = 0.0;
            seg.extended[e] = 1;
            continue;
          }
          const std::size_t lv = l - back;
          const std::size_t a = anc[back];
          seg.y[e] = frozen.y[lv][a];
          seg.z[e] = frozen.z[lv][a];
          for (std::size_t j = 0; j < m; ++j) seg.k[e * m + j] = frozen.k[lv][a * m + j];
          seg.extended[e] = 0;
        }
        F[l][nd] = gen.evaluate(t, seg, prepared);
      }
    }

    // Backward induction with exact conditional expectations.
    TreeState next = zero_state(tree);
    std::vector<double> counts(m);
    for (std::size_t nd = 0; nd < tree.level_size(N); ++nd) {
      for (std::size_t j = 0; j < m; ++j) counts[j] = tree.count(N, nd, j);
      next.y[N][nd] =
          problem.terminal(tree.brownian(N, nd), counts, problem.levy, problem.grid.horizon());
    }
    for (std::size_t l = N; l-- > 0;) {
      for (std::size_t nd = 0; nd < tree.level_size(l); ++nd) {
        double ey = 0.0, ez = 0.0;
        std::vector<double> ek(m, 0.0);
        for (std::size_t c = 0; c < B; ++c) {
          const std::size_t ch = nd * B + c;
          const double pc = tree.child_probability(c);
          const double yc = next.y[l + 1][ch];
          ey += pc * (yc + (1.0 - theta) * dt * F[l + 1][ch]);
          ez += pc * yc * tree.child_dB(c);
          for (std::size_t j = 0; j < m; ++j) ek[j] += pc * yc * tree.child_dN(c, j);
        }
        next.y[l][nd] = ey + theta * dt * F[l][nd];
        next.z[l][nd] = ez / dt;
        for (std::size_t j = 0; j < m; ++j) next.k[l][nd * m + j] = ek[j] / var[j];
      }
    }
    for (std::size_t nd = 0; nd < tree.level_size(N) && N > 0; ++nd) {
      const std::size_t par = tree.parent(nd);
      next.z[N][nd] = next.z[N - 1][par];
      for (std::size_t j = 0; j < m; ++j) next.k[N][nd * m + j] = next.k[N - 1][par * m + j];
    }

    double diff = 0.0, scale = 1.0;
    for (std::size_t l = 0; l <= N; ++l) {
      for (std::size_t i = 0; i < next.y[l].size(); ++i) {
        diff = std::max(diff, std::abs(next.y[l][i] - frozen.y[l][i]));
        diff = std::max(diff, std::abs(next.z[l][i] - frozen.z[l][i]));
        scale = std::max({scale, std::abs(next.y[l][i]), std::abs(next.z[l][i])});
      }
      for (std::size_t i = 0; i < next.k[l].size(); ++i) {
        diff = std::max(diff, std::abs(next.k[l][i] - frozen.k[l][i]));
        scale = std::max(scale, std::abs(next.k[l][i]));
      }
    }
    frozen = std::move(next);
    sol.sweeps = sweep;
    if (diff <= cfg.tol * scale) {
      sol.converged = true;
      break;
    }
    if (!std::isfinite(diff)) break;
  }

  sol.y = std::move(frozen.y);
  sol.z = std::move(frozen.z);
  sol.k = std::move(frozen.k);
  sol.y0 = sol.y[0][0];
  return sol;
}

}  // namespace mfdbsde

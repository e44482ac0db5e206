#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mfdbsde/closed_form.hpp"
#include "mfdbsde/tree_oracle.hpp"

using namespace mfdbsde;

namespace {

ProblemSpec tree_problem(std::size_t steps, GeneratorSpec g, TerminalCondition xi,
                         LevyModel levy = {}, DelayMeasure mu = DelayMeasure::dirac()) {
  return ProblemSpec{make_grid(1.0, steps), std::move(mu), std::move(levy), std::move(xi),
                     std::move(g), 1.0, 1.0};
}

TreeSolution solve_on_tree(const ProblemSpec& p, TreeSolveConfig cfg = {}) {
  return tree_solve(p, TreeModel(p.grid, p.levy), cfg);
}

}  // namespace

TEST_CASE("tree model structure") {
  const LevyModel l({{1.0, 2.0}, {0.5, 1.0}});
  const TreeModel t(make_grid(1.0, 5), l);
  CHECK(t.branching() == 8);
  CHECK(t.level_size(5) == 32768);
  for (std::size_t lv = 0; lv <= 5; ++lv) CHECK(std::abs(t.total_probability(lv) - 1.0) < 1e-15);
  double s = 0.0;
  for (std::size_t c = 0; c < 8; ++c) s += t.child_probability(c);
  CHECK(std::abs(s - 1.0) < 1e-15);
  // One-step moments of the surrogate increments.
  double eb = 0.0, eb2 = 0.0, en = 0.0;
  for (std::size_t c = 0; c < 8; ++c) {
    eb += t.child_probability(c) * t.child_dB(c);
    eb2 += t.child_probability(c) * t.child_dB(c) * t.child_dB(c);
    en += t.child_probability(c) * t.child_dN(c, 0);
  }
  CHECK(std::abs(eb) < 1e-16);
  CHECK(eb2 == doctest::Approx(0.2).epsilon(1e-14));
  CHECK(std::abs(en) < 1e-16);
  CHECK(t.parent(17) == 2);
}

TEST_CASE("tree size limits") {
  CHECK_THROWS_AS(TreeModel(make_grid(1.0, 13), LevyModel{}), ConfigError);
  CHECK_THROWS_AS(TreeModel(make_grid(12.0, 12), LevyModel({{1.0, 0.5}, {2.0, 0.5}})),
                  ConfigError);
  CHECK_NOTHROW(TreeModel(make_grid(1.0, 12), LevyModel({{1.0, 1.0}})));
  CHECK_THROWS_AS(TreeModel(make_grid(1.0, 2), LevyModel({{1.0, 3.0}})), ConfigError);
}

TEST_CASE("tree: Brownian terminal value has zero root value") {
  const auto s = solve_on_tree(tree_problem(10, ZeroGen{}, TerminalCondition::brownian()));
  CHECK(s.y0 == 0.0);
  CHECK(s.converged);
  for (double z : s.z[3]) CHECK(z == doctest::Approx(1.0).epsilon(1e-13));
}

TEST_CASE("tree: mean-field compounding") {
  const auto p = tree_problem(8, MeanFieldMomentGen{1.0, Moment::mean_y, 0},
                              TerminalCondition::constant(1.0));
  const auto s = solve_on_tree(p);
  CHECK(s.converged);
  CHECK(std::abs(s.y0 - std::pow(9.0 / 8.0, 8)) < 1e-12);
  CHECK(std::abs(s.y0 - 2.565785) < 1e-6);
  // More steps approach e.
  const auto s12 =
      solve_on_tree(tree_problem(12, MeanFieldMomentGen{1.0, Moment::mean_y, 0},
                                 TerminalCondition::constant(1.0)));
  CHECK(std::abs(s12.y0 - std::numbers::e) < std::abs(s.y0 - std::numbers::e));
  // The trapezoid rule on the same tree is the (1 + dt/2)/(1 - dt/2) recursion.
  TreeSolveConfig trap;
  trap.driver_rule = DriverRule::trapezoid;
  const auto st = solve_on_tree(p, trap);
  double expect = 1.0;
  for (int i = 0; i < 8; ++i) expect *= (1.0 + 1.0 / 16.0) / (1.0 - 1.0 / 16.0);
  CHECK(std::abs(st.y0 - expect) < 1e-12);
}

TEST_CASE("tree: compensated count has K = 1 on every node") {
  const auto s = solve_on_tree(tree_problem(8, ZeroGen{}, TerminalCondition::compensated_count(0),
                                            LevyModel({{1.0, 1.0}})));
  for (const auto& level : s.k) {
    for (double k : level) CHECK(std::abs(k - 1.0) < 1e-12);
  }
  for (const auto& level : s.z) {
    for (double z : level) CHECK(std::abs(z) < 1e-12);
  }
}

TEST_CASE("tree reproduces the step-exact closed forms") {
  SUBCASE("constant") {
    const auto cf = closed_form("constant_zero_f", {.c = 1.75});
    const auto s = solve_on_tree(tree_problem(6, ZeroGen{}, TerminalCondition::constant(1.75),
                                              LevyModel({{1.0, 1.0}})));
    const TreeModel t(make_grid(1.0, 6), LevyModel({{1.0, 1.0}}));
    for (std::size_t lv = 0; lv <= 6; ++lv) {
      for (std::size_t nd = 0; nd < t.level_size(lv); nd += 5) {
        const double c = t.count(lv, nd, 0);
        CHECK(std::abs(s.y[lv][nd] - cf.y(lv / 6.0, t.brownian(lv, nd), {&c, 1})) < 1e-12);
        CHECK(std::abs(s.z[lv][nd] - cf.z(lv / 6.0)) < 1e-12);
        CHECK(std::abs(s.k[lv][nd] - cf.k(lv / 6.0, 0)) < 1e-12);
      }
    }
  }
  SUBCASE("pure jump") {
    const LevyModel l({{1.0, 1.5}});
    const auto cf = closed_form("pure_jump", {.lambda = 1.5});
    const auto s = solve_on_tree(tree_problem(7, ZeroGen{}, TerminalCondition::compensated_count(0), l));
    const TreeModel t(make_grid(1.0, 7), l);
    for (std::size_t lv = 0; lv <= 7; ++lv) {
      for (std::size_t nd = 0; nd < t.level_size(lv); nd += 3) {
        const double c = t.count(lv, nd, 0);
        CHECK(std::abs(s.y[lv][nd] - cf.y(lv / 7.0, t.brownian(lv, nd), {&c, 1})) < 1e-12);
        CHECK(std::abs(s.k[lv][nd] - cf.k(lv / 7.0, 0)) < 1e-12);
      }
    }
  }
  SUBCASE("Z drift") {
    const auto cf = closed_form("z_drift", {.b = 0.5});
    const auto s = solve_on_tree(
        tree_problem(10, LinearStateGen{0.0, 0.5, {}}, TerminalCondition::brownian()));
    const TreeModel t(make_grid(1.0, 10), LevyModel{});
    CHECK(std::abs(s.y0 - 0.5) < 1e-12);
    for (std::size_t lv = 0; lv <= 10; ++lv) {
      for (std::size_t nd = 0; nd < t.level_size(lv); nd += 7) {
        CHECK(std::abs(s.y[lv][nd] - cf.y(lv / 10.0, t.brownian(lv, nd), {})) < 1e-12);
        CHECK(std::abs(s.z[lv][nd] - 1.0) < 1e-12);
      }
    }
  }
}

TEST_CASE("closed forms") {
  const auto c = closed_form("constant_zero_f", {.c = 2.0});
  CHECK(c.y(0.3, 1.0, {}) == 2.0);
  CHECK(c.z(0.3) == 0.0);
  CHECK(c.k(0.3, 0) == 0.0);

  const auto m = closed_form("linear_mean_field", {.a = 1.0, .horizon = 1.0, .mean_xi = 1.0});
  CHECK(m.mean_y(0.0) == doctest::Approx(std::numbers::e).epsilon(1e-15));
  CHECK(m.mean_y(1.0) == 1.0);

  const auto z = closed_form("z_drift", {.b = 0.5, .horizon = 1.0});
  CHECK(z.y(0.0, 0.0, {}) == 0.5);
  CHECK(z.y(0.5, 0.2, {}) == doctest::Approx(0.45));
  CHECK(z.z(0.7) == 1.0);

  const auto j = closed_form("pure_jump", {.lambda = 2.0});
  const double n[] = {3.0};
  CHECK(j.y(0.5, 0.0, n) == 2.0);
  CHECK(j.k(0.1, 0) == 1.0);
  CHECK_THROWS_AS(j.y(0.5, 0.0, {}), std::invalid_argument);

  CHECK_THROWS_AS(closed_form("quadratic", {}), std::invalid_argument);
}

TEST_CASE("tree with a delayed generator and a mean-field law distance") {
  const LevyModel l({{1.0, 1.0}});
  const auto p = tree_problem(6, DelayedAverageGen{0.5}, TerminalCondition::call(0.0), l,
                              DelayMeasure::uniform(1.0 / 3.0, 0.5));
  const auto s = solve_on_tree(p);
  CHECK(s.converged);
  CHECK(std::isfinite(s.y0));
  // The mean-field m-norm law enters through the exact node distribution.
  MeanFieldMNormGen g{0.5, EmpiricalMeasure::point_mass({0.0, 0.0}, {0.0}), 6};
  const auto s2 = solve_on_tree(tree_problem(5, g, TerminalCondition::constant(0.0), l));
  CHECK(s2.converged);
  CHECK(std::abs(s2.y0) < 1e-12);  // the zero law is the reference, so f vanishes along the fixed point
}

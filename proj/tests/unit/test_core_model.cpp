#include <doctest.h>

#include <cmath>
#include <numbers>

#include "mfdbsde/delay_measure.hpp"
#include "mfdbsde/levy_model.hpp"
#include "mfdbsde/levy_sim.hpp"
#include "mfdbsde/norms.hpp"
#include "mfdbsde/processes.hpp"
#include "mfdbsde/segment.hpp"
#include "mfdbsde/time_grid.hpp"

using namespace mfdbsde;

TEST_CASE("make_grid nodes and step") {
  const TimeGrid g = make_grid(1.0, 4);
  const std::vector<double> expect{0.0, 0.25, 0.5, 0.75, 1.0};
  CHECK(g.nodes() == expect);
  const TimeGrid g2 = make_grid(2.0, 1);
  CHECK(g2.dt() == 2.0);
  CHECK(g2.nodes() == std::vector<double>{0.0, 2.0});
  CHECK_THROWS_AS(make_grid(1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(0.0, 3), std::invalid_argument);
  CHECK_THROWS_AS(make_grid(-1.0, 3), std::invalid_argument);
}

TEST_CASE("grid alignment helpers") {
  const TimeGrid g = make_grid(1.0, 50);
  CHECK(g.steps_for(0.1) == 5);
  CHECK(g.steps_for(0.0) == 0);
  CHECK_THROWS_AS(g.steps_for(0.03), std::invalid_argument);
  CHECK(g.node_index(0.5) == 25);
  CHECK_THROWS_AS(g.node_index(0.511), std::invalid_argument);
  CHECK(g.node(50) == 1.0);
}

TEST_CASE("delay measure basics") {
  const DelayMeasure d = DelayMeasure::dirac();
  CHECK(d.delta() == 0.0);
  CHECK(d.atom_at_zero() == 1.0);
  CHECK(d.exp_moment(7.0) == 1.0);

  const DelayMeasure u = DelayMeasure::uniform(0.1);
  CHECK(u.exp_moment(2.0) == doctest::Approx(std::expm1(0.2) / 0.2).epsilon(1e-14));
  CHECK(u.exp_moment(0.0) == doctest::Approx(1.0).epsilon(1e-15));

  const auto w = DelayMeasure::uniform(0.5, 0.5).window_weights(0.25);
  REQUIRE(w.size() == 3);
  CHECK(w[0] == doctest::Approx(0.25));
  CHECK(w[1] == doctest::Approx(0.25));
  CHECK(w[2] == doctest::Approx(0.5));

  CHECK_THROWS_AS(DelayMeasure::uniform(0.1, 1.5), std::invalid_argument);
  CHECK_THROWS_AS(DelayMeasure::piecewise(0.2, 0.5, {0.2, 0.2}), std::invalid_argument);
  CHECK_THROWS_AS(DelayMeasure::uniform(0.3).window_weights(0.2), std::invalid_argument);
  CHECK(DelayMeasure::uniform(0.3, 0.2).rescaled(0.0).atom_at_zero() == 1.0);
}

TEST_CASE("levy model validation") {
  CHECK_THROWS_AS(LevyModel({{0.0, 1.0}}), std::invalid_argument);
  CHECK_THROWS_AS(LevyModel({{1.0, 0.0}}), std::invalid_argument);
  CHECK_THROWS_AS(LevyModel({{1.0, 1.0}, {1.0, 2.0}}), std::invalid_argument);
  const LevyModel l({{0.5, 2.0}, {-2.0, 1.0}});
  CHECK(l.total_intensity() == 3.0);
  CHECK(l.truncated_weight(0) == doctest::Approx(0.5));
  CHECK(l.truncated_weight(1) == doctest::Approx(1.0));
  CHECK(l.truncated_second_moment() == doctest::Approx(1.5));
}

namespace {

TripleProcess constant_y(std::size_t np, std::size_t n, std::size_t m, double v) {
  TripleProcess p(np, n, m);
  for (std::size_t q = 0; q < np; ++q) {
    for (std::size_t i = 0; i <= n; ++i) p.y(q, i) = v;
  }
  return p;
}

}  // namespace

TEST_CASE("segment_at at the origin uses the extension") {
  const TimeGrid g = make_grid(1.0, 4);
  TripleProcess p(1, 4, 1);
  for (std::size_t i = 0; i <= 4; ++i) p.y(0, i) = 1.0 + static_cast<double>(i);
  for (std::size_t i = 0; i < 4; ++i) {
    p.z(0, i) = 10.0 + static_cast<double>(i);
    p.k(0, i, 0) = 20.0 + static_cast<double>(i);
  }
  const SegmentTriple s = segment_at(p, 0, 0.0, DelayMeasure::uniform(0.5), g);
  REQUIRE(s.size() == 3);
  for (std::size_t e = 0; e < 3; ++e) CHECK(s.y[e] == 1.0);
  CHECK(s.z[0] == 0.0);
  CHECK(s.z[1] == 0.0);
  CHECK(s.k_at(0, 0) == 0.0);
  CHECK(s.k_at(1, 0) == 0.0);
  CHECK(s.extended[0] == 1);
  CHECK(s.extended[2] == 0);
  CHECK(s.z_now() == 10.0);
}

TEST_CASE("segment_at degenerate and interior windows") {
  const TimeGrid g = make_grid(1.0, 4);
  const TripleProcess p = constant_y(1, 4, 0, 5.0);
  const SegmentTriple s = segment_at(p, 0, 0.5, DelayMeasure::uniform(0.25), g);
  CHECK(s.y == std::vector<double>{5.0, 5.0});
  CHECK(s.extended == std::vector<std::uint8_t>{0, 0});

  TripleProcess q(1, 4, 1);
  for (std::size_t i = 0; i <= 4; ++i) q.y(0, i) = static_cast<double>(i);
  for (std::size_t i = 0; i < 4; ++i) q.z(0, i) = -static_cast<double>(i);
  const SegmentTriple d = segment_at(q, 0, 0.75, DelayMeasure::dirac(), g);
  REQUIRE(d.size() == 1);
  CHECK(d.y_now() == 3.0);
  CHECK(d.z_now() == -3.0);

  // Identity restriction once t >= delta.
  const SegmentTriple r = segment_at(q, 0, 1.0, DelayMeasure::uniform(0.5), g);
  CHECK(r.y == std::vector<double>{2.0, 3.0, 4.0});
  CHECK(r.z == std::vector<double>{-2.0, -3.0, -3.0});  // terminal node holds the last step
  CHECK_THROWS_AS(segment_at(q, 0, 0.5, DelayMeasure::uniform(0.3), g), std::invalid_argument);
}

TEST_CASE("seg_norm_sq examples and scaling") {
  const LevyModel none;
  SegmentTriple zero = SegmentTriple::zero(4, 0.125, 0);
  const SegmentNorms zn = seg_norm_sq(zero, none);
  CHECK(zn.y == 0.0);
  CHECK(zn.z == 0.0);
  CHECK(zn.k == 0.0);

  SegmentTriple one = SegmentTriple::zero(4, 0.125, 0);  // delta = 0.5
  for (double& v : one.y) v = 1.0;
  const SegmentNorms on = seg_norm_sq(one, none);
  CHECK(on.y == doctest::Approx(0.5).epsilon(1e-15));
  CHECK(on.z == 0.0);

  const LevyModel l({{1.0, 2.0}});
  SegmentTriple kk = SegmentTriple::zero(10, 0.1, 1);  // delta = 1
  for (double& v : kk.k) v = 1.0;
  const SegmentNorms kn = seg_norm_sq(kk, l);
  CHECK(kn.y == 0.0);
  CHECK(kn.k == doctest::Approx(2.0).epsilon(1e-14));

  SegmentTriple mixed = SegmentTriple::zero(3, 0.2, 1);
  mixed.y = {1.0, -2.0, 0.5, 3.0};
  mixed.z = {0.3, 0.1, -1.0, 2.0};
  mixed.k = {1.0, 2.0, -1.0, 0.0};
  const SegmentNorms a = seg_norm_sq(mixed, l);
  mixed *= 3.0;
  const SegmentNorms b = seg_norm_sq(mixed, l);
  CHECK(b.y == doctest::Approx(9.0 * a.y));
  CHECK(b.z == doctest::Approx(9.0 * a.z));
  CHECK(b.k == doctest::Approx(9.0 * a.k));
}

TEST_CASE("beta_norm_sq examples and monotonicity") {
  const LevyModel none;
  const TimeGrid g = make_grid(1.0, 10);
  CHECK(beta_norm_sq(TripleProcess(3, 10, 0), 1.0, g, none) == 0.0);
  const TripleProcess one = constant_y(1, 10, 0, 1.0);
  CHECK(beta_norm_sq(one, 0.0, g, none) == doctest::Approx(2.0).epsilon(1e-14));

  const TimeGrid fine = make_grid(1.0, 20000);
  const TripleProcess onef = constant_y(1, 20000, 0, 1.0);
  const double b = std::numbers::ln2;
  CHECK(std::abs(beta_norm_sq(onef, b, fine, none) - (1.0 + 1.0 / b)) < 1e-4);

  TripleProcess p(2, 10, 0);
  p.z(1, 3) = 0.7;
  double prev = 0.0;
  for (double beta : {0.0, 0.5, 1.0, 3.0, 10.0}) {
    const double v = beta_norm_sq(p, beta, g, none);
    CHECK(v > 0.0);
    CHECK(v >= prev);
    prev = v;
  }
  CHECK(scaled_beta_norm_sq(p, 5.0, 5.0, g, none) ==
        doctest::Approx(beta_norm_sq(p, 5.0, g, none) * std::exp(-5.0)).epsilon(1e-13));
  // Early entries fall below the double range after scaling; late ones survive.
  TripleProcess late(2, 10, 0);
  late.z(1, 9) = 0.7;
  const double big = scaled_beta_norm_sq(late, 2000.0, 2000.0, g, none);
  CHECK(std::isfinite(big));
  CHECK(big == doctest::Approx(0.5 * 0.49 * 0.1 * std::exp(-200.0)).epsilon(1e-12));
}

TEST_CASE("sup_norm_sq examples") {
  CHECK(sup_norm_sq(TripleProcess(4, 5, 0)) == 0.0);
  TripleProcess p(1, 10, 0);
  for (std::size_t i = 0; i <= 10; ++i) p.y(0, i) = static_cast<double>(i) / 10.0;
  CHECK(sup_norm_sq(p) == doctest::Approx(1.0).epsilon(1e-15));
}

namespace {

// E[max_i B(t_i)^2] for a symmetric +-sqrt(dt) walk, by enumerating all paths.
double tree_sup_b2(std::size_t n, double horizon) {
  const double s = std::sqrt(horizon / static_cast<double>(n));
  double acc = 0.0;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    double b = 0.0, best = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      b += ((mask >> i) & 1u) ? s : -s;
      best = std::max(best, b * b);
    }
    acc += best;
  }
  return acc / static_cast<double>(std::size_t{1} << n);
}

}  // namespace

TEST_CASE("sup_norm_sq of Brownian paths against tree enumeration") {
  // Both discretize E[sup B^2] on [0, 1] with 16 steps: Gaussian increments
  // in the ensemble, +-sqrt(dt) moves on the tree. They share mean and
  // variance per step, so they agree to within a few percent.
  const std::size_t n = 16;
  const TimeGrid g = make_grid(1.0, n);
  const PathEnsemble ens = simulate_ensemble(LevyModel{}, g, {200000, 99, false});
  TripleProcess p(ens.n_particles(), n, 0);
  for (std::size_t q = 0; q < ens.n_particles(); ++q) {
    const auto path = ens.brownian_path(q);
    for (std::size_t i = 0; i <= n; ++i) p.y(q, i) = path[i];
  }
  const double mc = sup_norm_sq(p);
  const double tree = tree_sup_b2(n, 1.0);
  CHECK(std::abs(mc - tree) / tree < 0.04);
}

TEST_CASE("triple process arithmetic") {
  TripleProcess a(2, 3, 1), b(2, 3, 1);
  a.y(1, 2) = 2.0;
  b.y(1, 2) = 0.5;
  b.k(0, 1, 0) = 1.0;
  const TripleProcess d = a - b;
  CHECK(d.y(1, 2) == 1.5);
  CHECK(d.k(0, 1, 0) == -1.0);
  CHECK((2.0 * a).y(1, 2) == 4.0);
  CHECK(TripleProcess(2, 3, 1).is_zero());
  CHECK_FALSE(a.is_zero());
  TripleProcess c(1, 3, 1);
  CHECK_THROWS(a -= c);
}

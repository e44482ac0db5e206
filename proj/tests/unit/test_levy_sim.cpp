#include <doctest.h>

#include <cmath>

#include "mfdbsde/levy_sim.hpp"
#include "mfdbsde/parallel.hpp"
#include "mfdbsde/rng.hpp"

using namespace mfdbsde;

TEST_CASE("Philox4x32-10 known-answer vectors") {
  // Reference vectors of the Random123 distribution.
  const auto zero = Philox4x32::generate({0, 0, 0, 0}, {0, 0});
  CHECK(zero == Philox4x32::Counter{0x6627e8d5u, 0xe169c58du, 0xbc57ac4cu, 0x9b00dbd8u});
  const auto ones = Philox4x32::generate({0xffffffffu, 0xffffffffu, 0xffffffffu, 0xffffffffu},
                                         {0xffffffffu, 0xffffffffu});
  CHECK(ones == Philox4x32::Counter{0x408f276du, 0x41c83b0eu, 0xa20bc7c6u, 0x6d5451fdu});
  const auto pi = Philox4x32::generate({0x243f6a88u, 0x85a308d3u, 0x13198a2eu, 0x03707344u},
                                       {0xa4093822u, 0x299f31d0u});
  CHECK(pi == Philox4x32::Counter{0xd16cfe09u, 0x94fdccebu, 0x5001e420u, 0x24126ea1u});
}

TEST_CASE("counter rng is addressable and mirrored") {
  CounterRng a(5, 3, 7, 1), b(5, 3, 7, 1), c(5, 3, 8, 1), m(5, 3, 7, 1, true);
  for (int i = 0; i < 10; ++i) {
    const double ua = a.uniform();
    CHECK(ua == b.uniform());
    CHECK(ua != c.uniform());
    CHECK(m.uniform() == doctest::Approx(1.0 - ua).epsilon(1e-15));
    CHECK(ua > 0.0);
    CHECK(ua < 1.0);
  }
  CounterRng n1(9, 1, 2, 0), n2(9, 1, 2, 0, true);
  for (int i = 0; i < 8; ++i) CHECK(n1.normal() == -n2.normal());
}

TEST_CASE("compensated_increment examples") {
  CHECK(compensated_increment(0, 2.0, 0.5) == -1.0);
  CHECK(compensated_increment(1, 2.0, 0.5) == 0.0);
  CHECK(compensated_increment(3, 1.0, 0.1) == doctest::Approx(2.9).epsilon(1e-15));
}

TEST_CASE("Brownian increments without atoms") {
  const TimeGrid g = make_grid(1.0, 10);
  const std::size_t n = 20000;
  const PathEnsemble e = simulate_ensemble(LevyModel{}, g, {n, 3, false});
  CHECK(e.n_atoms() == 0);
  CHECK(e.jump_counts().empty());
  for (std::size_t i = 0; i < 10; ++i) {
    double s = 0.0, s2 = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      s += e.dB(p, i);
      s2 += e.dB(p, i) * e.dB(p, i);
    }
    const double mean = s / static_cast<double>(n);
    CHECK(std::abs(mean) < 4.0 * std::sqrt(g.dt() / static_cast<double>(n)));
    // Var of the sample second moment is 2 dt^2 / n.
    CHECK(std::abs(s2 / static_cast<double>(n) - g.dt()) <
          4.0 * std::sqrt(2.0 / static_cast<double>(n)) * g.dt());
  }
}

TEST_CASE("single particle single step is reproducible") {
  const TimeGrid g = make_grid(1.0, 1);
  const LevyModel l({{1.0, 1.0}});
  CHECK(simulate_ensemble(l, g, {1, 17, false}) == simulate_ensemble(l, g, {1, 17, false}));
}

TEST_CASE("Poisson mean of the jump counts") {
  const TimeGrid g = make_grid(1.0, 1);
  const LevyModel l({{1.0, 2.0}});
  const std::size_t n = 100000;
  const PathEnsemble e = simulate_ensemble(l, g, {n, 5, false});
  double s = 0.0;
  for (std::size_t p = 0; p < n; ++p) s += e.jumps(p, 0, 0);
  CHECK(std::abs(s / static_cast<double>(n) - 2.0) < 4.0 * std::sqrt(2.0 / static_cast<double>(n)));
}

TEST_CASE("Poisson sampler above the inversion threshold") {
  double s = 0.0, s2 = 0.0;
  const int n = 40000;
  for (int p = 0; p < n; ++p) {
    CounterRng r(77, static_cast<std::uint64_t>(p), 0, 0);
    const double k = r.poisson(30.0);
    s += k;
    s2 += k * k;
  }
  const double mean = s / n;
  const double var = s2 / n - mean * mean;
  CHECK(std::abs(mean - 30.0) < 4.0 * std::sqrt(30.0 / n));
  CHECK(std::abs(var - 30.0) < 1.0);
}

TEST_CASE("compensated increments are centered and independent of dB") {
  const TimeGrid g = make_grid(1.0, 20);
  const LevyModel l({{0.5, 3.0}});
  const std::size_t n = 50000;
  const PathEnsemble e = simulate_ensemble(l, g, {n, 8, false});
  for (std::size_t i : {0u, 7u, 19u}) {
    double s = 0.0, sbn = 0.0, sb2 = 0.0, sn2 = 0.0;
    for (std::size_t p = 0; p < n; ++p) {
      const double dn = compensated_increment(e.jumps(p, i, 0), 3.0, g.dt());
      s += dn;
      sbn += dn * e.dB(p, i);
      sb2 += e.dB(p, i) * e.dB(p, i);
      sn2 += dn * dn;
    }
    const double nn = static_cast<double>(n);
    CHECK(std::abs(s / nn) < 4.0 * std::sqrt(3.0 * g.dt() / nn));
    const double corr = sbn / std::sqrt(sb2 * sn2);
    CHECK(std::abs(corr) < 4.0 / std::sqrt(nn));
  }
}

TEST_CASE("ensembles do not depend on the worker count") {
  const TimeGrid g = make_grid(1.0, 12);
  const LevyModel l({{1.0, 1.0}, {-0.5, 2.0}});
  set_thread_count(1);
  const PathEnsemble a = simulate_ensemble(l, g, {3000, 21, true});
  set_thread_count(4);
  const PathEnsemble b = simulate_ensemble(l, g, {3000, 21, true});
  set_thread_count(0);
  CHECK(a == b);
}

TEST_CASE("antithetic pairs") {
  const TimeGrid g = make_grid(1.0, 4);
  const PathEnsemble e = simulate_ensemble(LevyModel{}, g, {6, 4, true});
  for (std::size_t p = 0; p < 6; p += 2) {
    for (std::size_t i = 0; i < 4; ++i) CHECK(e.dB(p + 1, i) == -e.dB(p, i));
  }
}

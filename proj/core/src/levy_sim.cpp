#include "mfdbsde/levy_sim.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

#include "mfdbsde/parallel.hpp"
#include "mfdbsde/rng.hpp"

namespace mfdbsde {

PathEnsemble simulate_ensemble(const LevyModel& levy, const TimeGrid& grid,
                               const SimConfig& cfg) {
  if (cfg.n_particles == 0) {
    throw std::invalid_argument("simulation: n_particles must be at least 1");
  }
  const std::size_t np = cfg.n_particles;
  const std::size_t n = grid.n_steps();
  const std::size_t m = levy.size();
  const double sqrt_dt = std::sqrt(grid.dt());

  std::vector<double> dB(np * n);
  std::vector<std::int32_t> counts(np * n * m);

  parallel_for(np, [&](std::size_t p) {
    const bool mirrored = cfg.antithetic && (p % 2 == 1);
    const std::uint64_t address = mirrored ? p - 1 : p;
    for (std::size_t i = 0; i < n; ++i) {
      CounterRng g(cfg.seed, address, i, kBrownianStream, mirrored);
      dB[p * n + i] = sqrt_dt * g.normal();
      for (std::size_t j = 0; j < m; ++j) {
        CounterRng h(cfg.seed, address, i, jump_stream(j), mirrored);
        counts[(p * n + i) * m + j] = h.poisson(levy.atom(j).intensity * grid.dt());
      }
    }
  });

  return PathEnsemble(grid, np, m, std::move(dB), std::move(counts));
}

}  // namespace mfdbsde

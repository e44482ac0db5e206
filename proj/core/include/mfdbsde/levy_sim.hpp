#pragma once

#include <cstddef>
#include <cstdint>

#include "mfdbsde/levy_model.hpp"
#include "mfdbsde/processes.hpp"
#include "mfdbsde/time_grid.hpp"

namespace mfdbsde {

struct SimConfig {
  std::size_t n_particles = 1000;
  std::uint64_t seed = 1;
  /// Pair particle 2q+1 with 2q: negated Brownian increments, mirrored
  /// uniforms for the jump counts.
  bool antithetic = false;
};

/// Stream ids of the counter-based generator.
inline constexpr std::uint32_t kBrownianStream = 0;
inline constexpr std::uint32_t jump_stream(std::size_t atom) {
  return static_cast<std::uint32_t>(1 + atom);
}

/// Brownian increments ~ N(0, dt) and jump counts ~ Poisson(lambda_j dt),
/// each drawn from its own (seed, particle, step, stream) address.
PathEnsemble simulate_ensemble(const LevyModel& levy, const TimeGrid& grid,
                               const SimConfig& cfg);

/// Increment of the compensated Poisson measure over one step: count - lambda dt.
inline double compensated_increment(std::int64_t count, double lambda, double dt) {
  return static_cast<double>(count) - lambda * dt;
}

}  // namespace mfdbsde

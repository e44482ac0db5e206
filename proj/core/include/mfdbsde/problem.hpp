#pragma once

#include "mfdbsde/delay_measure.hpp"
#include "mfdbsde/generator.hpp"
#include "mfdbsde/levy_model.hpp"
#include "mfdbsde/terminal.hpp"
#include "mfdbsde/time_grid.hpp"

namespace mfdbsde {

/// One mean-field delayed BSDE with jumps:
///   Y(t) = xi + int_t^T f(s, Y_s, Z_s, K_s, P_(Y_s,Z_s,K_s)) ds
///          - int_t^T Z dB - int_t^T int K(s, z) N~(ds, dz),
///   Y(t) = Y(0), Z(t) = 0, K(t, .) = 0 for t < 0.
struct ProblemSpec {
  TimeGrid grid;
  DelayMeasure delay;
  LevyModel levy;
  TerminalCondition terminal;
  GeneratorSpec generator;
  double lipschitz_C = 1.0;   // > 0
  double zero_bound_c = 1.0;  // >= 0

  /// Throws std::invalid_argument on violated invariants (constants, delay
  /// alignment, generator wiring).
  void validate() const;
};

}  // namespace mfdbsde

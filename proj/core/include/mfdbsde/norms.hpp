#pragma once

#include "mfdbsde/levy_model.hpp"
#include "mfdbsde/processes.hpp"
#include "mfdbsde/segment.hpp"
#include "mfdbsde/time_grid.hpp"

namespace mfdbsde {

struct SegmentNorms {
  double y = 0.0;
  double z = 0.0;
  double k = 0.0;
};

/// Squared L2 norms of the window over [-delta, 0] (left-rectangle rule);
/// the K part integrates against nu.
SegmentNorms seg_norm_sq(const SegmentTriple& seg, const LevyModel& levy);

/// E|U(0)|^2 + E int_0^T e^{beta s}(|U|^2 + |V|^2 + int |Q|^2 nu(dz)) ds,
/// particle average, left-rectangle rule in time.
double beta_norm_sq(const TripleProcess& proc, double beta, const TimeGrid& grid,
                    const LevyModel& levy);

/// e^{-log_scale} * beta_norm_sq, evaluated without forming e^{beta T}.
/// Used when beta T is large enough to overflow.
double scaled_beta_norm_sq(const TripleProcess& proc, double beta, double log_scale,
                           const TimeGrid& grid, const LevyModel& levy);

/// E[max_i |Y(t_i)|^2]
double sup_norm_sq(const TripleProcess& proc);

/// E[max_i e^{beta t_i} |Y(t_i)|^2]
double sup_norm_sq(const TripleProcess& proc, const TimeGrid& grid, double beta);

}  // namespace mfdbsde

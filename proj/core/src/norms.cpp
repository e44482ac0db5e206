#include "mfdbsde/norms.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mfdbsde {

SegmentNorms seg_norm_sq(const SegmentTriple& seg, const LevyModel& levy) {
  if (seg.n_atoms != levy.size()) {
    throw std::invalid_argument("segment norm: atom count mismatch");
  }
  SegmentNorms out;
  const std::size_t m = seg.n_atoms;
  for (std::size_t e = 0; e < seg.lags(); ++e) {
    out.y += seg.y[e] * seg.y[e];
    out.z += seg.z[e] * seg.z[e];
    for (std::size_t j = 0; j < m; ++j) {
      const double kj = seg.k[e * m + j];
      out.k += kj * kj * levy.atom(j).intensity;
    }
  }
  out.y *= seg.dt;
  out.z *= seg.dt;
  out.k *= seg.dt;
  return out;
}

double scaled_beta_norm_sq(const TripleProcess& proc, double beta, double log_scale,
                           const TimeGrid& grid, const LevyModel& levy) {
  if (!(beta >= 0.0)) throw std::invalid_argument("beta norm: beta must be >= 0");
  if (proc.n_steps() != grid.n_steps() || proc.n_atoms() != levy.size()) {
    throw std::invalid_argument("beta norm: shape mismatch");
  }
  const std::size_t n = proc.n_steps();
  const std::size_t m = proc.n_atoms();
  const double dt = grid.dt();
  std::vector<double> weight(n);
  for (std::size_t i = 0; i < n; ++i) {
    weight[i] = std::exp(beta * grid.node(i) - log_scale) * dt;
  }
  const double w0 = std::exp(-log_scale);

  double total = 0.0;
  for (std::size_t p = 0; p < proc.n_particles(); ++p) {
    double acc = w0 * proc.y0(p) * proc.y0(p);
    for (std::size_t i = 0; i < n; ++i) {
      double v = proc.y(p, i) * proc.y(p, i) + proc.z(p, i) * proc.z(p, i);
      for (std::size_t j = 0; j < m; ++j) {
        v += proc.k(p, i, j) * proc.k(p, i, j) * levy.atom(j).intensity;
      }
      acc += weight[i] * v;
    }
    total += acc;
  }
  return total / static_cast<double>(proc.n_particles());
}

double beta_norm_sq(const TripleProcess& proc, double beta, const TimeGrid& grid,
                    const LevyModel& levy) {
  return scaled_beta_norm_sq(proc, beta, 0.0, grid, levy);
}

double sup_norm_sq(const TripleProcess& proc) {
  if (proc.n_particles() == 0) return 0.0;
  double total = 0.0;
  for (std::size_t p = 0; p < proc.n_particles(); ++p) {
    double best = 0.0;
    for (std::size_t i = 0; i <= proc.n_steps(); ++i) {
      best = std::max(best, proc.y(p, i) * proc.y(p, i));
    }
    total += best;
  }
  return total / static_cast<double>(proc.n_particles());
}

double sup_norm_sq(const TripleProcess& proc, const TimeGrid& grid, double beta) {
  if (proc.n_particles() == 0) return 0.0;
  double total = 0.0;
  for (std::size_t p = 0; p < proc.n_particles(); ++p) {
    double best = 0.0;
    for (std::size_t i = 0; i <= proc.n_steps(); ++i) {
      best = std::max(best, std::exp(beta * grid.node(i)) * proc.y(p, i) * proc.y(p, i));
    }
    total += best;
  }
  return total / static_cast<double>(proc.n_particles());
}

}  // namespace mfdbsde

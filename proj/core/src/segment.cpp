#include "mfdbsde/segment.hpp"

#include <stdexcept>

namespace mfdbsde {

SegmentTriple SegmentTriple::zero(std::size_t lags, double dt, std::size_t n_atoms,
                                  double base_time) {
  SegmentTriple s;
  s.base_time = base_time;
  s.dt = dt;
  s.n_atoms = n_atoms;
  s.y.assign(lags + 1, 0.0);
  s.z.assign(lags + 1, 0.0);
  s.k.assign((lags + 1) * n_atoms, 0.0);
  s.extended.assign(lags + 1, 0);
  return s;
}

SegmentTriple& SegmentTriple::operator*=(double a) {
  for (double& v : y) v *= a;
  for (double& v : z) v *= a;
  for (double& v : k) v *= a;
  return *this;
}

void fill_segment(const TripleProcess& proc, std::size_t particle, std::size_t node,
                  std::size_t lags, double dt, SegmentTriple& out) {
  const std::size_t n = proc.n_steps();
  const std::size_t m = proc.n_atoms();
  if (node > n) throw std::out_of_range("segment: node index out of range");
  if (particle >= proc.n_particles()) {
    throw std::out_of_range("segment: particle index out of range");
  }
  out.base_time = static_cast<double>(node) * dt;
  out.dt = dt;
  out.n_atoms = m;
  out.y.resize(lags + 1);
  out.z.resize(lags + 1);
  out.k.resize((lags + 1) * m);
  out.extended.resize(lags + 1);

  for (std::size_t e = 0; e <= lags; ++e) {
    const std::size_t back = lags - e;
    if (back > node) {
      out.y[e] = proc.y0(particle);
      out.z[e] = 0.0;
      for (std::size_t j = 0; j < m; ++j) out.k[e * m + j] = 0.0;
      out.extended[e] = 1;
      continue;
    }
    const std::size_t idx = node - back;
    out.y[e] = proc.y(particle, idx);
    // Z and K are step quantities; at the terminal node hold the last step.
    const std::size_t step = (idx == n && n > 0) ? n - 1 : idx;
    if (n == 0) {
      out.z[e] = 0.0;
      for (std::size_t j = 0; j < m; ++j) out.k[e * m + j] = 0.0;
    } else {
      out.z[e] = proc.z(particle, step);
      for (std::size_t j = 0; j < m; ++j) out.k[e * m + j] = proc.k(particle, step, j);
    }
    out.extended[e] = 0;
  }
}

SegmentTriple segment_at(const TripleProcess& proc, std::size_t particle, double t,
                         const DelayMeasure& delay, const TimeGrid& grid) {
  if (proc.n_steps() != grid.n_steps()) {
    throw std::invalid_argument("segment: process and grid disagree on step count");
  }
  const std::size_t node = grid.node_index(t);
  const std::size_t lags = grid.steps_for(delay.delta());
  SegmentTriple out;
  fill_segment(proc, particle, node, lags, grid.dt(), out);
  out.base_time = grid.node(node);
  return out;
}

}  // namespace mfdbsde

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "mfdbsde/delay_measure.hpp"
#include "mfdbsde/processes.hpp"
#include "mfdbsde/time_grid.hpp"

namespace mfdbsde {

/// The delayed window (Y(t+r), Z(t+r), K(t+r, .)) for r = -L dt, ..., -dt, 0.
/// Entry e corresponds to offset r_e = -(L - e) dt; the last entry is r = 0.
/// Entries with t + r < 0 carry the pre-zero extension Y(0), 0, 0.
struct SegmentTriple {
  double base_time = 0.0;
  double dt = 0.0;
  std::size_t n_atoms = 0;
  std::vector<double> y;
  std::vector<double> z;
  std::vector<double> k;  // entry-major, n_atoms per entry
  std::vector<std::uint8_t> extended;

  /// All-zero window with `lags` + 1 entries.
  static SegmentTriple zero(std::size_t lags, double dt, std::size_t n_atoms,
                            double base_time = 0.0);

  std::size_t size() const { return y.size(); }
  std::size_t lags() const { return y.size() - 1; }
  double offset(std::size_t e) const {
    return -static_cast<double>(lags() - e) * dt;
  }

  double y_now() const { return y.back(); }
  double z_now() const { return z.back(); }
  double k_now(std::size_t j) const { return k[lags() * n_atoms + j]; }
  double k_at(std::size_t e, std::size_t j) const { return k[e * n_atoms + j]; }

  SegmentTriple& operator*=(double a);
};

/// Extract the window at grid time t for one particle.
/// Throws std::invalid_argument if t is not a node or delta is not aligned.
SegmentTriple segment_at(const TripleProcess& proc, std::size_t particle, double t,
                         const DelayMeasure& delay, const TimeGrid& grid);

/// Index form used by the solver; writes into `out` without reallocating
/// once sized. Z and K at node N (not stored) repeat the last step's value.
void fill_segment(const TripleProcess& proc, std::size_t particle, std::size_t node,
                  std::size_t lags, double dt, SegmentTriple& out);

}  // namespace mfdbsde

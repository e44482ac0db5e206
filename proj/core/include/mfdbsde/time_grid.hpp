#pragma once

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace mfdbsde {

/// Uniform time grid t_i = i * T / N on [0, T].
class TimeGrid {
 public:
  TimeGrid(double horizon, std::size_t n_steps);

  double horizon() const { return horizon_; }
  std::size_t n_steps() const { return n_steps_; }
  double dt() const { return dt_; }

  double node(std::size_t i) const;
  std::vector<double> nodes() const;

  /// Index of t if t is a grid node (relative tolerance 1e-9), otherwise throws.
  std::size_t node_index(double t) const;

  /// Number of whole steps spanned by `duration`; throws std::invalid_argument
  /// if the duration is not an integer multiple of dt.
  std::size_t steps_for(double duration) const;

  bool operator==(const TimeGrid&) const = default;

 private:
  double horizon_;
  std::size_t n_steps_;
  double dt_;
};

TimeGrid make_grid(double horizon, std::size_t n_steps);

}  // namespace mfdbsde

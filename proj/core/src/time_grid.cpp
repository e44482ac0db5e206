#include "mfdbsde/time_grid.hpp"

#include <cmath>
#include <string>

namespace mfdbsde {

namespace {

constexpr double kAlignTol = 1e-9;

}  // namespace

TimeGrid::TimeGrid(double horizon, std::size_t n_steps)
    : horizon_(horizon), n_steps_(n_steps), dt_(0.0) {
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    throw std::invalid_argument("time grid: horizon must be positive and finite");
  }
  if (n_steps == 0) {
    throw std::invalid_argument("time grid: n_steps must be at least 1");
  }
  dt_ = horizon / static_cast<double>(n_steps);
}

double TimeGrid::node(std::size_t i) const {
  if (i > n_steps_) {
    throw std::out_of_range("time grid: node index out of range");
  }
  if (i == n_steps_) return horizon_;
  return horizon_ * static_cast<double>(i) / static_cast<double>(n_steps_);
}

std::vector<double> TimeGrid::nodes() const {
  std::vector<double> out(n_steps_ + 1);
  for (std::size_t i = 0; i <= n_steps_; ++i) out[i] = node(i);
  return out;
}

std::size_t TimeGrid::node_index(double t) const {
  const double x = t / dt_;
  const double r = std::round(x);
  if (r < 0.0 || r > static_cast<double>(n_steps_) ||
      std::abs(x - r) > kAlignTol * std::max(1.0, std::abs(x))) {
    throw std::invalid_argument("time grid: t = " + std::to_string(t) +
                                " is not a grid node");
  }
  return static_cast<std::size_t>(r);
}

std::size_t TimeGrid::steps_for(double duration) const {
  if (!(duration >= 0.0)) {
    throw std::invalid_argument("time grid: negative duration");
  }
  const double x = duration / dt_;
  const double r = std::round(x);
  if (std::abs(x - r) > kAlignTol * std::max(1.0, x)) {
    throw std::invalid_argument("delay " + std::to_string(duration) +
                                " is not an integer multiple of dt = " +
                                std::to_string(dt_));
  }
  return static_cast<std::size_t>(r);
}

TimeGrid make_grid(double horizon, std::size_t n_steps) {
  return TimeGrid(horizon, n_steps);
}

}  // namespace mfdbsde

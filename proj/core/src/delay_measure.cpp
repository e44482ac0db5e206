#include "mfdbsde/delay_measure.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace mfdbsde {

namespace {

constexpr double kMassTol = 1e-12;

// Mean of e^{-beta r} over [a, b] with a < b <= 0.
double mean_exp(double beta, double a, double b) {
  const double w = b - a;
  const double x = beta * w;
  if (x == 0.0) return std::exp(-beta * b);
  return std::exp(-beta * b) * std::expm1(x) / x;
}

}  // namespace

DelayMeasure::DelayMeasure(double delta, double atom, std::vector<double> cells)
    : delta_(delta), atom_(atom), cells_(std::move(cells)) {
  if (!(delta >= 0.0) || !std::isfinite(delta)) {
    throw std::invalid_argument("delay measure: delta must be >= 0");
  }
  if (!(atom >= 0.0 && atom <= 1.0)) {
    throw std::invalid_argument("delay measure: atom at zero must lie in [0, 1]");
  }
  for (double m : cells_) {
    if (!(m >= 0.0) || !std::isfinite(m)) {
      throw std::invalid_argument("delay measure: cell masses must be nonnegative");
    }
  }
  if (delta == 0.0 && !cells_.empty()) {
    throw std::invalid_argument("delay measure: delta = 0 admits no density part");
  }
  const double total = atom + std::accumulate(cells_.begin(), cells_.end(), 0.0);
  if (std::abs(total - 1.0) > kMassTol) {
    throw std::invalid_argument("delay measure: total mass is " +
                                std::to_string(total) + ", expected 1");
  }
}

DelayMeasure DelayMeasure::dirac() { return DelayMeasure(0.0, 1.0, {}); }

DelayMeasure DelayMeasure::uniform(double delta, double atom_at_zero) {
  if (delta == 0.0) {
    if (atom_at_zero != 1.0) {
      throw std::invalid_argument(
          "delay measure: delta = 0 requires all mass at zero");
    }
    return dirac();
  }
  std::vector<double> cells;
  if (atom_at_zero < 1.0) cells.push_back(1.0 - atom_at_zero);
  return DelayMeasure(delta, atom_at_zero, std::move(cells));
}

DelayMeasure DelayMeasure::piecewise(double delta, double atom_at_zero,
                                     std::vector<double> cell_masses) {
  return DelayMeasure(delta, atom_at_zero, std::move(cell_masses));
}

double DelayMeasure::density_mass(double a, double b) const {
  if (cells_.empty() || !(b > a)) return 0.0;
  const double w = delta_ / static_cast<double>(cells_.size());
  double mass = 0.0;
  for (std::size_t j = 0; j < cells_.size(); ++j) {
    const double lo = -delta_ + w * static_cast<double>(j);
    const double hi = (j + 1 == cells_.size()) ? 0.0 : lo + w;
    const double overlap = std::min(b, hi) - std::max(a, lo);
    if (overlap > 0.0) mass += cells_[j] * overlap / (hi - lo);
  }
  return mass;
}

double DelayMeasure::exp_moment(double beta) const {
  double out = atom_;
  if (cells_.empty()) return out;
  const double w = delta_ / static_cast<double>(cells_.size());
  for (std::size_t j = 0; j < cells_.size(); ++j) {
    const double lo = -delta_ + w * static_cast<double>(j);
    const double hi = (j + 1 == cells_.size()) ? 0.0 : lo + w;
    out += cells_[j] * mean_exp(beta, lo, hi);
  }
  return out;
}

std::vector<double> DelayMeasure::window_weights(double dt) const {
  if (!(dt > 0.0)) throw std::invalid_argument("delay measure: dt must be > 0");
  const double x = delta_ / dt;
  const double r = std::round(x);
  if (std::abs(x - r) > 1e-9 * std::max(1.0, x)) {
    throw std::invalid_argument("delay " + std::to_string(delta_) +
                                " is not an integer multiple of dt = " +
                                std::to_string(dt));
  }
  const auto lags = static_cast<std::size_t>(r);
  std::vector<double> weights(lags + 1, 0.0);
  for (std::size_t k = 0; k < lags; ++k) {
    const double lo = -delta_ + dt * static_cast<double>(k);
    const double hi = (k + 1 == lags) ? 0.0 : lo + dt;
    weights[k] = density_mass(lo, hi);
  }
  weights[lags] += atom_;
  return weights;
}

DelayMeasure DelayMeasure::rescaled(double delta) const {
  if (delta == 0.0) return dirac();
  if (cells_.empty()) {
    // Pure atom on a nonzero support: keep it an atom.
    return DelayMeasure(delta, atom_, {});
  }
  return DelayMeasure(delta, atom_, cells_);
}

}  // namespace mfdbsde

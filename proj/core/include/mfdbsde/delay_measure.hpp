#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "mfdbsde/time_grid.hpp"

namespace mfdbsde {

/// Probability measure on [-delta, 0]: an atom at 0 plus a piecewise-constant
/// density on equal-width cells of [-delta, 0).
class DelayMeasure {
 public:
  /// The unit point mass at r = 0 (delta = 0).
  static DelayMeasure dirac();

  /// Atom `atom_at_zero` at 0, remaining mass spread uniformly on [-delta, 0).
  static DelayMeasure uniform(double delta, double atom_at_zero = 0.0);

  /// Cell masses are listed from the leftmost cell [-delta, -delta + w) on.
  static DelayMeasure piecewise(double delta, double atom_at_zero,
                                std::vector<double> cell_masses);

  double delta() const { return delta_; }
  double atom_at_zero() const { return atom_; }
  std::span<const double> cell_masses() const { return cells_; }

  /// Mass of the density part on [a, b).
  double density_mass(double a, double b) const;

  /// Closed form of  integral e^{-beta r} mu(dr).
  double exp_moment(double beta) const;

  /// Weights for the window offsets r_k = -delta + k dt, k = 0..L, where
  /// L = delta/dt. The density mass of grid cell [r_k, r_k + dt) goes to the
  /// left endpoint r_k; the atom goes to r_L = 0. Sums to one.
  std::vector<double> window_weights(double dt) const;
  std::vector<double> window_weights(const TimeGrid& grid) const {
    return window_weights(grid.dt());
  }

  /// The same shape (atom and relative cell masses) on a different support.
  /// delta = 0 collapses to the Dirac measure.
  DelayMeasure rescaled(double delta) const;

 private:
  DelayMeasure(double delta, double atom, std::vector<double> cells);

  double delta_;
  double atom_;
  std::vector<double> cells_;
};

}  // namespace mfdbsde

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "mfdbsde/time_grid.hpp"

namespace mfdbsde {

/// Discretized driving noise: Brownian increments and per-atom jump counts.
/// Storage is particle-major.
class PathEnsemble {
 public:
  PathEnsemble(TimeGrid grid, std::size_t n_particles, std::size_t n_atoms,
               std::vector<double> brownian_increments,
               std::vector<std::int32_t> jump_counts);

  const TimeGrid& grid() const { return grid_; }
  std::size_t n_particles() const { return n_particles_; }
  std::size_t n_steps() const { return grid_.n_steps(); }
  std::size_t n_atoms() const { return n_atoms_; }

  double dB(std::size_t p, std::size_t i) const {
    return dB_[p * n_steps() + i];
  }
  std::int32_t jumps(std::size_t p, std::size_t i, std::size_t j) const {
    return counts_[(p * n_steps() + i) * n_atoms_ + j];
  }

  std::span<const double> brownian_increments() const { return dB_; }
  std::span<const std::int32_t> jump_counts() const { return counts_; }

  /// B(t_i) for one particle, i = 0..N.
  std::vector<double> brownian_path(std::size_t p) const;

  bool operator==(const PathEnsemble&) const = default;

 private:
  TimeGrid grid_;
  std::size_t n_particles_;
  std::size_t n_atoms_;
  std::vector<double> dB_;
  std::vector<std::int32_t> counts_;
};

/// Discretized solution candidate (Y, Z, K). Y lives on nodes 0..N, Z and K
/// on steps 0..N-1 (value on [t_i, t_{i+1})).
class TripleProcess {
 public:
  TripleProcess() = default;
  TripleProcess(std::size_t n_particles, std::size_t n_steps, std::size_t n_atoms);

  std::size_t n_particles() const { return n_particles_; }
  std::size_t n_steps() const { return n_steps_; }
  std::size_t n_atoms() const { return n_atoms_; }

  double& y(std::size_t p, std::size_t i) { return y_[p * (n_steps_ + 1) + i]; }
  double y(std::size_t p, std::size_t i) const { return y_[p * (n_steps_ + 1) + i]; }
  double& z(std::size_t p, std::size_t i) { return z_[p * n_steps_ + i]; }
  double z(std::size_t p, std::size_t i) const { return z_[p * n_steps_ + i]; }
  double& k(std::size_t p, std::size_t i, std::size_t j) {
    return k_[(p * n_steps_ + i) * n_atoms_ + j];
  }
  double k(std::size_t p, std::size_t i, std::size_t j) const {
    return k_[(p * n_steps_ + i) * n_atoms_ + j];
  }
  double y0(std::size_t p) const { return y(p, 0); }

  std::span<const double> y_values() const { return y_; }
  std::span<const double> z_values() const { return z_; }
  std::span<const double> k_values() const { return k_; }

  /// True when every stored entry is exactly zero.
  bool is_zero() const;

  TripleProcess& operator+=(const TripleProcess& other);
  TripleProcess& operator-=(const TripleProcess& other);
  TripleProcess& operator*=(double a);

  friend TripleProcess operator-(TripleProcess a, const TripleProcess& b) {
    a -= b;
    return a;
  }
  friend TripleProcess operator*(double s, TripleProcess a) {
    a *= s;
    return a;
  }

  bool operator==(const TripleProcess&) const = default;

 private:
  void check_shape(const TripleProcess& other) const;

  std::size_t n_particles_ = 0;
  std::size_t n_steps_ = 0;
  std::size_t n_atoms_ = 0;
  std::vector<double> y_;
  std::vector<double> z_;
  std::vector<double> k_;
};

}  // namespace mfdbsde

#include "mfdbsde/processes.hpp"

#include <algorithm>
#include <stdexcept>

namespace mfdbsde {

PathEnsemble::PathEnsemble(TimeGrid grid, std::size_t n_particles,
                           std::size_t n_atoms,
                           std::vector<double> brownian_increments,
                           std::vector<std::int32_t> jump_counts)
    : grid_(grid),
      n_particles_(n_particles),
      n_atoms_(n_atoms),
      dB_(std::move(brownian_increments)),
      counts_(std::move(jump_counts)) {
  if (n_particles_ == 0) {
    throw std::invalid_argument("path ensemble: need at least one particle");
  }
  if (dB_.size() != n_particles_ * grid_.n_steps()) {
    throw std::invalid_argument("path ensemble: Brownian increment array has wrong shape");
  }
  if (counts_.size() != n_particles_ * grid_.n_steps() * n_atoms_) {
    throw std::invalid_argument("path ensemble: jump count array has wrong shape");
  }
  if (std::any_of(counts_.begin(), counts_.end(), [](std::int32_t c) { return c < 0; })) {
    throw std::invalid_argument("path ensemble: jump counts must be nonnegative");
  }
}

std::vector<double> PathEnsemble::brownian_path(std::size_t p) const {
  std::vector<double> b(n_steps() + 1, 0.0);
  for (std::size_t i = 0; i < n_steps(); ++i) b[i + 1] = b[i] + dB(p, i);
  return b;
}

TripleProcess::TripleProcess(std::size_t n_particles, std::size_t n_steps,
                             std::size_t n_atoms)
    : n_particles_(n_particles),
      n_steps_(n_steps),
      n_atoms_(n_atoms),
      y_(n_particles * (n_steps + 1), 0.0),
      z_(n_particles * n_steps, 0.0),
      k_(n_particles * n_steps * n_atoms, 0.0) {}

bool TripleProcess::is_zero() const {
  auto zero = [](double v) { return v == 0.0; };
  return std::all_of(y_.begin(), y_.end(), zero) &&
         std::all_of(z_.begin(), z_.end(), zero) &&
         std::all_of(k_.begin(), k_.end(), zero);
}

void TripleProcess::check_shape(const TripleProcess& other) const {
  if (n_particles_ != other.n_particles_ || n_steps_ != other.n_steps_ ||
      n_atoms_ != other.n_atoms_) {
    throw std::invalid_argument("triple process: shape mismatch");
  }
}

TripleProcess& TripleProcess::operator+=(const TripleProcess& other) {
  check_shape(other);
  for (std::size_t i = 0; i < y_.size(); ++i) y_[i] += other.y_[i];
  for (std::size_t i = 0; i < z_.size(); ++i) z_[i] += other.z_[i];
  for (std::size_t i = 0; i < k_.size(); ++i) k_[i] += other.k_[i];
  return *this;
}

TripleProcess& TripleProcess::operator-=(const TripleProcess& other) {
  check_shape(other);
  for (std::size_t i = 0; i < y_.size(); ++i) y_[i] -= other.y_[i];
  for (std::size_t i = 0; i < z_.size(); ++i) z_[i] -= other.z_[i];
  for (std::size_t i = 0; i < k_.size(); ++i) k_[i] -= other.k_[i];
  return *this;
}

TripleProcess& TripleProcess::operator*=(double a) {
  for (double& v : y_) v *= a;
  for (double& v : z_) v *= a;
  for (double& v : k_) v *= a;
  return *this;
}

}  // namespace mfdbsde

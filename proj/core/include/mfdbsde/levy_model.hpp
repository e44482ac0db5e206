#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace mfdbsde {

struct JumpAtom {
  double size;       // zeta_j != 0
  double intensity;  // lambda_j > 0
};

/// Finite-activity Levy measure nu = sum_j lambda_j delta_{zeta_j}.
class LevyModel {
 public:
  LevyModel() = default;
  explicit LevyModel(std::vector<JumpAtom> atoms);

  std::size_t size() const { return atoms_.size(); }
  bool empty() const { return atoms_.empty(); }
  const JumpAtom& atom(std::size_t j) const { return atoms_.at(j); }
  std::span<const JumpAtom> atoms() const { return atoms_; }

  double total_intensity() const;

  /// sum_j min(1, zeta_j^2) lambda_j
  double truncated_second_moment() const;

  /// min(1, zeta_j^2) lambda_j for one atom.
  double truncated_weight(std::size_t j) const;

  /// integral |k(zeta)|^2 nu(dzeta) = sum_j k_j^2 lambda_j
  double nu_norm_sq(std::span<const double> k) const;

 private:
  std::vector<JumpAtom> atoms_;
};

}  // namespace mfdbsde

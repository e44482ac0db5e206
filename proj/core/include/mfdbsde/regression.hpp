#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

namespace mfdbsde {

/// How the driver is integrated over one step of the backward recursion,
/// with F_i the generator on the frozen iterate at node i:
///   left       Y_i = E_i[Y_{i+1}] + F_i dt
///   right      Y_i = E_i[Y_{i+1} + F_{i+1} dt]
///   trapezoid  Y_i = E_i[Y_{i+1} + F_{i+1} dt / 2] + F_i dt / 2
enum class DriverRule { left, right, trapezoid };

struct RegressionConfig {
  std::size_t degree = 2;
  double ridge = 0.0;
  std::size_t min_particles_per_coeff = 10;
  DriverRule driver_rule = DriverRule::trapezoid;
};

/// Monomials of total degree <= `degree` in the standardized columns of a
/// state matrix. Columns with zero sample variance are dropped.
class PolynomialBasis {
 public:
  PolynomialBasis() = default;
  PolynomialBasis(const Eigen::MatrixXd& state, std::size_t degree);

  /// Number of basis functions.
  std::size_t size() const { return exponents_.size(); }
  std::size_t n_vars() const { return keep_.size(); }

  /// n x size() design matrix for a state matrix with the fitted column layout.
  Eigen::MatrixXd design(const Eigen::MatrixXd& state) const;

  /// Basis size with d informative variables.
  static std::size_t full_size(std::size_t d, std::size_t degree);

 private:
  std::size_t n_cols_ = 0;
  std::vector<std::size_t> keep_;
  std::vector<double> mean_;
  std::vector<double> inv_scale_;
  std::vector<std::vector<unsigned>> exponents_;
};

/// Least-squares coefficients through the pseudo-inverse of the normalized
/// Gram matrix X'X/n + ridge I. The factorization is computed once and
/// reused for every right-hand side.
class GramSolver {
 public:
  GramSolver() = default;
  GramSolver(const Eigen::MatrixXd& X, double ridge);

  Eigen::MatrixXd coefficients(const Eigen::MatrixXd& X, const Eigen::MatrixXd& Y) const;
  std::size_t rank() const { return rank_; }

 private:
  Eigen::MatrixXd pinv_;
  std::size_t rank_ = 0;
};

}  // namespace mfdbsde

#pragma once

#include <cstddef>
#include <span>
#include <stdexcept>
#include <vector>

#include <Eigen/Dense>

#include "mfdbsde/processes.hpp"
#include "mfdbsde/problem.hpp"
#include "mfdbsde/regression.hpp"

namespace mfdbsde {

/// Invalid or unusable configuration (for example an underdetermined
/// regression). Maps to the CLI's configuration-error exit code.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct PhiOutput {
  TripleProcess triple;
  /// xi + integrated driver along each path; their mean is Y(0).
  std::vector<double> pathwise_y0;
  double y0_mean = 0.0;
  double y0_standard_error = 0.0;
};

/// The frozen-driver map on one ensemble. Everything that depends only on
/// the ensemble (terminal values, running states, regression factorizations)
/// is computed once so repeated application inside a Picard loop is cheap.
/// The ensemble must outlive the solver.
class BackwardSolver {
 public:
  BackwardSolver(ProblemSpec problem, const PathEnsemble& ensemble, RegressionConfig reg);

  PhiOutput apply(const TripleProcess& frozen) const;

  /// Zero triple of the right shape.
  TripleProcess zero_triple() const;

  const ProblemSpec& problem() const { return problem_; }
  const PathEnsemble& ensemble() const { return ens_; }
  const RegressionConfig& regression() const { return reg_; }
  std::span<const double> terminal_values() const { return xi_; }

  /// Generator values on the frozen iterate, node-major ((N+1) x n).
  std::vector<double> driver_values(const TripleProcess& frozen) const;

 private:
  struct Step {
    PolynomialBasis basis;
    GramSolver value;
    GramSolver increments;
  };

  Eigen::MatrixXd state(std::size_t node) const;
  Eigen::MatrixXd increment_design(const Eigen::MatrixXd& X, std::size_t step) const;

  ProblemSpec problem_;
  const PathEnsemble& ens_;
  RegressionConfig reg_;
  GeneratorEvaluator gen_;
  std::size_t lags_;
  std::vector<double> xi_;
  std::vector<double> b_;       // n x (N+1), particle-major
  std::vector<double> counts_;  // n x (N+1) x m
  std::vector<Step> steps_;
};

TripleProcess apply_phi(const ProblemSpec& problem, const TripleProcess& frozen,
                        const PathEnsemble& ensemble, const RegressionConfig& reg = {});

PhiOutput apply_phi_detailed(const ProblemSpec& problem, const TripleProcess& frozen,
                             const PathEnsemble& ensemble, const RegressionConfig& reg = {});

/// Empirical law of (Y(t_i), Z(t_i), K(t_i, .)) across particles.
EmpiricalMeasure empirical_law(const TripleProcess& proc, std::size_t node);

}  // namespace mfdbsde

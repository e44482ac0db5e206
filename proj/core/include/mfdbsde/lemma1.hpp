#pragma once

#include "mfdbsde/levy_model.hpp"
#include "mfdbsde/measure.hpp"
#include "mfdbsde/quadrature.hpp"

namespace mfdbsde {

/// int_{R^3} |y|^2 e^{-|y|^2} dy = (3/2) pi^{3/2}
double gaussian_second_moment_3d();

struct Lemma1Report {
  double lhs = 0.0;            // triple-norm distance of the two empirical laws
  double rhs = 0.0;            // moment bound assembled term by term
  double constant_used = 0.0;  // g * sum_j min(1, zeta_j^2) lambda_j
  bool holds = false;
};

/// Checks  ||L(X) - L(X~)||^2 <= g * ( W E(dX1)^2 + W E(dX2)^2
///                                    + sum_j w_j E(dX3_j)^2 )
/// with w_j = min(1, zeta_j^2) lambda_j, W = sum_j w_j and g the Gaussian
/// second moment. `x` and `x_tilde` are paired samples: same size, same
/// weights, dim 2 plus one mark per atom. holds <=> lhs <= rhs (1 + eps_stat).
Lemma1Report lemma1_check(const EmpiricalMeasure& x, const EmpiricalMeasure& x_tilde,
                          const LevyModel& levy, const FourierQuadrature& quad,
                          double eps_stat = 0.05);

}  // namespace mfdbsde

#include "mfdbsde/problem.hpp"

#include <cmath>
#include <stdexcept>

namespace mfdbsde {

void ProblemSpec::validate() const {
  if (!(lipschitz_C > 0.0) || !std::isfinite(lipschitz_C)) {
    throw std::invalid_argument("problem: lipschitz_C must be positive and finite");
  }
  if (!(zero_bound_c >= 0.0) || !std::isfinite(zero_bound_c)) {
    throw std::invalid_argument("problem: zero_bound_c must be nonnegative and finite");
  }
  grid.steps_for(delay.delta());
  if (delay.delta() > grid.horizon()) {
    throw std::invalid_argument("problem: delay longer than the horizon is not supported");
  }
  // Building an evaluator checks the generator wiring (reference measure,
  // atom indices, callbacks).
  GeneratorEvaluator probe(generator, delay, levy, grid.dt());
  (void)probe;
  std::vector<double> counts(levy.size(), 0.0);
  const double xi0 = terminal(0.0, counts, levy, grid.horizon());
  if (!std::isfinite(xi0)) {
    throw std::invalid_argument("problem: terminal condition is not finite at the origin");
  }
}

}  // namespace mfdbsde

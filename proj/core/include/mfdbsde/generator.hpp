#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "mfdbsde/delay_measure.hpp"
#include "mfdbsde/levy_model.hpp"
#include "mfdbsde/measure.hpp"
#include "mfdbsde/quadrature.hpp"
#include "mfdbsde/segment.hpp"

namespace mfdbsde {

/// Distance between laws of (Y, Z, K(.)) used by the mean-field generators
/// and by the Lipschitz validator: the triple norm when nu has atoms, the
/// 2-d norm of the (Y, Z) marginal when nu = 0 (the triple norm would vanish).
class LawMetric {
 public:
  LawMetric(LevyModel levy, std::size_t quad_order);

  double distance_sq(const EmpiricalMeasure& a, const EmpiricalMeasure& b) const;
  double distance(const EmpiricalMeasure& a, const EmpiricalMeasure& b) const;
  const LevyModel& levy() const { return levy_; }
  std::size_t quad_order() const { return order_; }

 private:
  LevyModel levy_;
  std::size_t order_;
  FourierQuadrature quad_;
};

/// Law of (Y, Z, K) concentrated at zero, with one zero mark per atom.
EmpiricalMeasure dirac_law(std::size_t n_atoms);

enum class Moment { mean_y, mean_z, mean_k };

struct ZeroGen {};
struct LinearStateGen {
  double a = 0.0;
  double b = 0.0;
  std::vector<double> k_weights;  // one per atom (missing entries are 0)
};
struct DelayedAverageGen {
  double a = 0.0;
};
struct MeanFieldMomentGen {
  double a = 0.0;
  Moment moment = Moment::mean_y;
  std::size_t atom = 0;
};
struct MeanFieldMNormGen {
  double a = 0.0;
  EmpiricalMeasure reference;  // dim 2, one mark per atom
  std::size_t quad_order = 12;
};
/// Must be a pure function of its arguments.
struct CustomGen {
  std::function<double(double t, const SegmentTriple& seg, const EmpiricalMeasure& law)> fn;
  bool needs_law = true;
  bool linear = false;
};

using GeneratorSpec = std::variant<ZeroGen, LinearStateGen, DelayedAverageGen,
                                   MeanFieldMomentGen, MeanFieldMNormGen, CustomGen>;

std::string generator_name(const GeneratorSpec& g);

/// Whether f reads the law argument.
bool generator_needs_law(const GeneratorSpec& g);

/// Whether f reads any argument at all (false only for the zero generator).
bool generator_depends_on_solution(const GeneratorSpec& g);

/// Smallest C with |f(x) - f(x')|^2 <= C * (Lipschitz form of the
/// growth condition) when that constant is known analytically; 0 if unknown.
double analytic_lipschitz_constant(const GeneratorSpec& g, const DelayMeasure& delay,
                                   const LevyModel& levy);

/// Generator bound to a delay measure, Levy model and grid step. Caches
/// window weights and the law metric so repeated evaluation is cheap.
class GeneratorEvaluator {
 public:
  GeneratorEvaluator(GeneratorSpec g, DelayMeasure delay, LevyModel levy, double dt);

  /// f(t, Y_t, Z_t, K_t(.), law). Throws std::invalid_argument if the
  /// segment length does not match the delay.
  double operator()(double t, const SegmentTriple& seg, const EmpiricalMeasure& law) const;

  /// Law-dependent part computed once per law, reused across particles.
  struct PreparedLaw {
    const EmpiricalMeasure* law = nullptr;
    double scalar = 0.0;
  };
  PreparedLaw prepare(const EmpiricalMeasure& law) const;
  double evaluate(double t, const SegmentTriple& seg, const PreparedLaw& law) const;

  const GeneratorSpec& spec() const { return spec_; }
  bool needs_law() const { return generator_needs_law(spec_); }
  std::size_t lags() const { return window_.size() - 1; }
  const std::vector<double>& window_weights() const { return window_; }

 private:
  GeneratorSpec spec_;
  DelayMeasure delay_;
  LevyModel levy_;
  double dt_;
  std::vector<double> window_;
  std::shared_ptr<const LawMetric> metric_;
};

/// One-shot evaluation; builds a GeneratorEvaluator internally.
double eval_generator(const GeneratorSpec& g, double t, const SegmentTriple& seg,
                      const EmpiricalMeasure& law, const DelayMeasure& delay,
                      const LevyModel& levy);

}  // namespace mfdbsde

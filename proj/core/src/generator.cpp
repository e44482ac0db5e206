#include "mfdbsde/generator.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mfdbsde {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

LawMetric::LawMetric(LevyModel levy, std::size_t quad_order)
    : levy_(std::move(levy)),
      order_(quad_order),
      quad_(FourierQuadrature::gauss_hermite(quad_order, levy_.empty() ? 2 : 3)) {}

double LawMetric::distance_sq(const EmpiricalMeasure& a, const EmpiricalMeasure& b) const {
  if (levy_.empty()) return m_dist_sq(a, b, quad_);
  return m_dist_triple_sq(a, b, levy_, quad_);
}

double LawMetric::distance(const EmpiricalMeasure& a, const EmpiricalMeasure& b) const {
  return std::sqrt(std::max(0.0, distance_sq(a, b)));
}

EmpiricalMeasure dirac_law(std::size_t n_atoms) {
  return EmpiricalMeasure::point_mass({0.0, 0.0}, std::vector<double>(n_atoms, 0.0));
}

std::string generator_name(const GeneratorSpec& g) {
  return std::visit(overloaded{
                        [](const ZeroGen&) { return std::string("zero"); },
                        [](const LinearStateGen&) { return std::string("linear_state"); },
                        [](const DelayedAverageGen&) { return std::string("delayed_average"); },
                        [](const MeanFieldMomentGen&) { return std::string("mean_field_moment"); },
                        [](const MeanFieldMNormGen&) { return std::string("mean_field_mnorm"); },
                        [](const CustomGen&) { return std::string("custom"); },
                    },
                    g);
}

bool generator_needs_law(const GeneratorSpec& g) {
  return std::visit(overloaded{
                        [](const MeanFieldMomentGen&) { return true; },
                        [](const MeanFieldMNormGen&) { return true; },
                        [](const CustomGen& c) { return c.needs_law; },
                        [](const auto&) { return false; },
                    },
                    g);
}

bool generator_depends_on_solution(const GeneratorSpec& g) {
  return !std::holds_alternative<ZeroGen>(g);
}

double analytic_lipschitz_constant(const GeneratorSpec& g, const DelayMeasure& delay,
                                   const LevyModel& levy) {
  const double p0 = delay.atom_at_zero();
  return std::visit(
      overloaded{
          [](const ZeroGen&) { return 0.0; },
          [&](const LinearStateGen& s) {
            double c = s.a * s.a + s.b * s.b;
            for (std::size_t j = 0; j < s.k_weights.size() && j < levy.size(); ++j) {
              c += s.k_weights[j] * s.k_weights[j] / levy.atom(j).intensity;
            }
            if (c == 0.0) return 0.0;
            return p0 > 0.0 ? c / p0 : kInf;
          },
          [](const DelayedAverageGen& s) { return s.a * s.a; },
          // A moment is not Lipschitz for the bounded Fourier metric.
          [](const MeanFieldMomentGen& s) { return s.a == 0.0 ? 0.0 : kInf; },
          [&](const MeanFieldMNormGen& s) {
            if (s.a == 0.0) return 0.0;
            return p0 > 0.0 ? s.a * s.a / p0 : kInf;
          },
          [](const CustomGen&) { return 0.0; },
      },
      g);
}

GeneratorEvaluator::GeneratorEvaluator(GeneratorSpec g, DelayMeasure delay, LevyModel levy,
                                       double dt)
    : spec_(std::move(g)),
      delay_(std::move(delay)),
      levy_(std::move(levy)),
      dt_(dt),
      window_(delay_.window_weights(dt)) {
  if (const auto* s = std::get_if<MeanFieldMNormGen>(&spec_)) {
    if (s->reference.empty()) {
      throw std::invalid_argument("mean_field_mnorm: reference measure is required");
    }
    if (s->reference.dim() != 2 || s->reference.n_marks() != levy_.size()) {
      throw std::invalid_argument(
          "mean_field_mnorm: reference must carry (Y, Z) and one mark per atom");
    }
    metric_ = std::make_shared<LawMetric>(levy_, s->quad_order);
  }
  if (const auto* s = std::get_if<MeanFieldMomentGen>(&spec_)) {
    if (s->moment == Moment::mean_k && s->atom >= levy_.size()) {
      throw std::invalid_argument("mean_field_moment: atom index out of range");
    }
  }
  if (const auto* s = std::get_if<CustomGen>(&spec_)) {
    if (!s->fn) throw std::invalid_argument("custom generator: empty callback");
  }
}

double GeneratorEvaluator::operator()(double t, const SegmentTriple& seg,
                                      const EmpiricalMeasure& law) const {
  return evaluate(t, seg, prepare(law));
}

GeneratorEvaluator::PreparedLaw GeneratorEvaluator::prepare(const EmpiricalMeasure& law) const {
  PreparedLaw out;
  out.law = &law;
  if (const auto* s = std::get_if<MeanFieldMomentGen>(&spec_)) {
    double v = 0.0;
    for (std::size_t i = 0; i < law.size(); ++i) {
      double x = 0.0;
      switch (s->moment) {
        case Moment::mean_y: x = law.point(i)[0]; break;
        case Moment::mean_z: x = law.point(i)[1]; break;
        case Moment::mean_k:
          if (s->atom >= law.n_marks()) {
            throw std::invalid_argument("mean_field_moment: law carries no mark for the atom");
          }
          x = law.mark(i, s->atom);
          break;
      }
      v += law.weight(i) * x;
    }
    out.scalar = v;
  } else if (const auto* s = std::get_if<MeanFieldMNormGen>(&spec_)) {
    out.scalar = metric_->distance(law, s->reference);
  }
  return out;
}

double GeneratorEvaluator::evaluate(double t, const SegmentTriple& seg,
                                    const PreparedLaw& law) const {
  if (seg.size() != window_.size()) {
    throw std::invalid_argument("generator: segment length does not match the delay window");
  }
  if (seg.n_atoms != levy_.size()) {
    throw std::invalid_argument("generator: segment atom count does not match the Levy model");
  }
  return std::visit(
      overloaded{
          [](const ZeroGen&) { return 0.0; },
          [&](const LinearStateGen& s) {
            double v = s.a * seg.y_now() + s.b * seg.z_now();
            for (std::size_t j = 0; j < s.k_weights.size() && j < seg.n_atoms; ++j) {
              v += s.k_weights[j] * seg.k_now(j);
            }
            return v;
          },
          [&](const DelayedAverageGen& s) {
            double v = 0.0;
            for (std::size_t e = 0; e < window_.size(); ++e) {
              if (window_[e] != 0.0) v += window_[e] * seg.y[e];
            }
            return s.a * v;
          },
          [&](const MeanFieldMomentGen& s) { return s.a * law.scalar; },
          [&](const MeanFieldMNormGen& s) { return s.a * law.scalar; },
          [&](const CustomGen& s) {
            if (law.law == nullptr) throw std::invalid_argument("custom generator: no law");
            return s.fn(t, seg, *law.law);
          },
      },
      spec_);
}

double eval_generator(const GeneratorSpec& g, double t, const SegmentTriple& seg,
                      const EmpiricalMeasure& law, const DelayMeasure& delay,
                      const LevyModel& levy) {
  const double dt = seg.dt > 0.0 ? seg.dt : 1.0;
  GeneratorEvaluator ev(g, delay, levy, dt);
  return ev(t, seg, law);
}

}  // namespace mfdbsde

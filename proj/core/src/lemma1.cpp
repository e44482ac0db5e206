#include "mfdbsde/lemma1.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace mfdbsde {

namespace {
constexpr double kEps = std::numeric_limits<double>::epsilon();
}  // namespace

double gaussian_second_moment_3d() { return 1.5 * std::pow(std::numbers::pi, 1.5); }

Lemma1Report lemma1_check(const EmpiricalMeasure& x, const EmpiricalMeasure& x_tilde,
                          const LevyModel& levy, const FourierQuadrature& quad,
                          double eps_stat) {
  if (x.size() != x_tilde.size() || x.dim() != x_tilde.dim() ||
      x.n_marks() != x_tilde.n_marks()) {
    throw std::invalid_argument("lemma1_check: samples are not paired");
  }
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x.weight(i) != x_tilde.weight(i)) {
      throw std::invalid_argument("lemma1_check: paired samples must share weights");
    }
  }
  if (!x.empty() && std::abs(x.total_mass() - 1.0) > 1e-9) {
    throw std::invalid_argument("lemma1_check: samples must describe probability laws");
  }

  Lemma1Report rep;
  rep.lhs = m_dist_triple_sq(x, x_tilde, levy, quad);

  const double g = gaussian_second_moment_3d();
  const double w_total = levy.truncated_second_moment();
  double e1 = 0.0;
  double e2 = 0.0;
  double e3 = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const auto a = x.point(i);
    const auto b = x_tilde.point(i);
    const double w = x.weight(i);
    e1 += w * (a[0] - b[0]) * (a[0] - b[0]);
    e2 += w * (a[1] - b[1]) * (a[1] - b[1]);
    for (std::size_t j = 0; j < levy.size(); ++j) {
      const double d = x.mark(i, j) - x_tilde.mark(i, j);
      e3 += w * d * d * levy.truncated_weight(j);
    }
  }
  rep.constant_used = g * w_total;
  rep.rhs = rep.constant_used * (e1 + e2) + g * e3;
  // Cancellation in the signed transform leaves an absolute residue of
  // order (n eps)^2 even for identical samples.
  const double n_eps = 2.0 * static_cast<double>(x.size() + 1) * kEps;
  const double rounding = n_eps * n_eps * std::pow(std::numbers::pi, 1.5) * w_total;
  rep.holds = rep.lhs <= rep.rhs * (1.0 + eps_stat) + rounding;
  return rep;
}

}  // namespace mfdbsde

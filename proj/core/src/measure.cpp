#include "mfdbsde/measure.hpp"

#include <cmath>
#include <stdexcept>

namespace mfdbsde {

EmpiricalMeasure::EmpiricalMeasure(std::size_t dim, std::vector<double> points,
                                   std::vector<double> weights, std::size_t n_marks,
                                   std::vector<double> marks)
    : dim_(dim),
      n_marks_(n_marks),
      points_(std::move(points)),
      weights_(std::move(weights)),
      marks_(std::move(marks)) {
  if (dim_ == 0) throw std::invalid_argument("empirical measure: dim must be >= 1");
  if (points_.size() % dim_ != 0) {
    throw std::invalid_argument("empirical measure: point array is not a multiple of dim");
  }
  const std::size_t n = points_.size() / dim_;
  if (weights_.empty() && n > 0) {
    weights_.assign(n, 1.0 / static_cast<double>(n));
  }
  if (weights_.size() != n) {
    throw std::invalid_argument("empirical measure: point and weight counts differ");
  }
  for (double w : weights_) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw std::invalid_argument("empirical measure: weights must be nonnegative");
    }
  }
  if (marks_.size() != n * n_marks_) {
    throw std::invalid_argument("empirical measure: mark array has wrong shape");
  }
}

EmpiricalMeasure EmpiricalMeasure::point_mass(std::vector<double> x,
                                              std::vector<double> marks, double mass) {
  const std::size_t d = x.size();
  const std::size_t m = marks.size();
  return EmpiricalMeasure(d, std::move(x), {mass}, m, std::move(marks));
}

double EmpiricalMeasure::total_mass() const {
  double s = 0.0;
  for (double w : weights_) s += w;
  return s;
}

std::complex<double> char_fn(const EmpiricalMeasure& mu, std::span<const double> y) {
  if (y.size() != mu.dim()) {
    throw std::invalid_argument("char_fn: argument dimension does not match the measure");
  }
  std::complex<double> acc{0.0, 0.0};
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const auto x = mu.point(i);
    double ph = 0.0;
    for (std::size_t a = 0; a < y.size(); ++a) ph += x[a] * y[a];
    acc += mu.weight(i) * std::complex<double>(std::cos(ph), std::sin(ph));
  }
  return acc;
}

double m_norm_sq(const EmpiricalMeasure& mu, const FourierQuadrature& quad) {
  if (mu.empty()) return 0.0;
  if (mu.dim() != quad.dim()) {
    throw std::invalid_argument("m_norm_sq: quadrature dimension does not match the measure");
  }
  return quad.weighted_sq_modulus(mu.points(), mu.weights());
}

double m_dist_sq(const EmpiricalMeasure& mu, const EmpiricalMeasure& eta,
                 const FourierQuadrature& quad) {
  if (!mu.empty() && !eta.empty() && mu.dim() != eta.dim()) {
    throw std::invalid_argument("m_dist_sq: measures have different dimensions");
  }
  const std::size_t d = mu.empty() ? eta.dim() : mu.dim();
  if (mu.empty() && eta.empty()) return 0.0;
  if (d != quad.dim()) {
    throw std::invalid_argument("m_dist_sq: quadrature dimension does not match the measures");
  }
  std::vector<double> pts(mu.points().begin(), mu.points().end());
  pts.insert(pts.end(), eta.points().begin(), eta.points().end());
  std::vector<double> coef(mu.weights().begin(), mu.weights().end());
  for (double w : eta.weights()) coef.push_back(-w);
  return quad.weighted_sq_modulus(pts, coef);
}

namespace {

void check_triple(const EmpiricalMeasure& mu, const LevyModel& levy,
                  const FourierQuadrature& quad) {
  if (mu.empty()) return;
  if (mu.dim() != 2) {
    throw std::invalid_argument("triple norm: measure must carry (Y, Z) coordinates");
  }
  if (mu.n_marks() != levy.size()) {
    throw std::invalid_argument("triple norm: measure needs one mark component per Levy atom");
  }
  if (quad.dim() != 3) throw std::invalid_argument("triple norm: quadrature must be 3-d");
}

// Appends (Y, Z, K_j) rows of mu.
void append_lifted(const EmpiricalMeasure& mu, std::size_t atom, double sign,
                   std::vector<double>& pts, std::vector<double>& coef) {
  for (std::size_t i = 0; i < mu.size(); ++i) {
    const auto x = mu.point(i);
    pts.push_back(x[0]);
    pts.push_back(x[1]);
    pts.push_back(mu.mark(i, atom));
    coef.push_back(sign * mu.weight(i));
  }
}

}  // namespace

double m_dist_triple_sq(const EmpiricalMeasure& mu, const EmpiricalMeasure& eta,
                        const LevyModel& levy, const FourierQuadrature& quad) {
  check_triple(mu, levy, quad);
  check_triple(eta, levy, quad);
  double total = 0.0;
  for (std::size_t j = 0; j < levy.size(); ++j) {
    std::vector<double> pts;
    std::vector<double> coef;
    pts.reserve(3 * (mu.size() + eta.size()));
    append_lifted(mu, j, 1.0, pts, coef);
    append_lifted(eta, j, -1.0, pts, coef);
    if (coef.empty()) continue;
    total += levy.truncated_weight(j) * quad.weighted_sq_modulus(pts, coef);
  }
  return total;
}

double m_norm_triple_sq(const EmpiricalMeasure& mu, const LevyModel& levy,
                        const FourierQuadrature& quad) {
  return m_dist_triple_sq(mu, EmpiricalMeasure(), levy, quad);
}

double m_delta_norm(std::span<const OffsetMeasure> segment, const LevyModel& levy,
                    const FourierQuadrature& quad) {
  double total = 0.0;
  for (std::size_t e = 0; e < segment.size(); ++e) {
    const double r = segment[e].offset;
    if (r > 0.0) throw std::invalid_argument("m_delta_norm: offsets must be <= 0");
    if (e > 0 && !(r > segment[e - 1].offset)) {
      throw std::invalid_argument("m_delta_norm: offsets must be strictly increasing");
    }
    if (r == 0.0) continue;
    const double next = (e + 1 < segment.size()) ? segment[e + 1].offset : 0.0;
    const double width = next - r;
    total += width * std::sqrt(m_norm_triple_sq(segment[e].measure, levy, quad));
  }
  return total;
}

}  // namespace mfdbsde

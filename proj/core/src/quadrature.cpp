#include "mfdbsde/quadrature.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "mfdbsde/rng.hpp"

namespace mfdbsde {

namespace {

constexpr std::size_t kChunk = 512;

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  for (std::size_t i = 0; i < e; ++i) r *= b;
  return r;
}

}  // namespace

// Newton iteration on the orthonormal Hermite recurrence, with the usual
// asymptotic starting guesses for the largest roots.
GaussHermiteRule gauss_hermite_rule(std::size_t order) {
  if (order == 0) throw std::invalid_argument("gauss-hermite: order must be >= 1");
  const int n = static_cast<int>(order);
  const double pim4 = 1.0 / std::pow(std::numbers::pi, 0.25);
  GaussHermiteRule rule;
  rule.nodes.assign(order, 0.0);
  rule.weights.assign(order, 0.0);

  const int half = (n + 1) / 2;
  double z = 0.0;
  for (int i = 0; i < half; ++i) {
    if (i == 0) {
      z = std::sqrt(2.0 * n + 1.0) - 1.85575 * std::pow(2.0 * n + 1.0, -0.16667);
    } else if (i == 1) {
      z -= 1.14 * std::pow(static_cast<double>(n), 0.426) / z;
    } else if (i == 2) {
      z = 1.86 * z - 0.86 * rule.nodes[0];
    } else if (i == 3) {
      z = 1.91 * z - 0.91 * rule.nodes[1];
    } else {
      z = 2.0 * z - rule.nodes[static_cast<std::size_t>(i - 2)];
    }
    double pp = 0.0;
    for (int it = 0; it < 200; ++it) {
      double p1 = pim4;
      double p2 = 0.0;
      for (int j = 0; j < n; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = z * std::sqrt(2.0 / (j + 1)) * p2 - std::sqrt(static_cast<double>(j) / (j + 1)) * p3;
      }
      pp = std::sqrt(2.0 * n) * p2;
      const double z1 = z;
      z = z1 - p1 / pp;
      if (std::abs(z - z1) <= 1e-15 * std::max(1.0, std::abs(z))) break;
    }
    const auto lo = static_cast<std::size_t>(i);
    const auto hi = static_cast<std::size_t>(n - 1 - i);
    rule.nodes[lo] = z;
    rule.nodes[hi] = -z;
    rule.weights[lo] = 2.0 / (pp * pp);
    rule.weights[hi] = rule.weights[lo];
  }
  if (n % 2 == 1) rule.nodes[static_cast<std::size_t>(half - 1)] = 0.0;
  return rule;
}

FourierQuadrature FourierQuadrature::gauss_hermite(std::size_t order, std::size_t dim) {
  if (dim == 0) throw std::invalid_argument("fourier quadrature: dim must be >= 1");
  FourierQuadrature q;
  q.dim_ = dim;
  q.tensor_ = true;
  q.rule_ = gauss_hermite_rule(order);
  const std::size_t total = ipow(order, dim);
  q.weights_.assign(total, 1.0);
  for (std::size_t k = 0; k < total; ++k) {
    std::size_t rem = k;
    double w = 1.0;
    for (std::size_t a = dim; a-- > 0;) {
      w *= q.rule_.weights[rem % order];
      rem /= order;
    }
    q.weights_[k] = w;
  }
  return q;
}

FourierQuadrature FourierQuadrature::monte_carlo(std::size_t n_nodes, std::size_t dim,
                                                 std::uint64_t seed) {
  if (dim == 0 || n_nodes == 0) {
    throw std::invalid_argument("fourier quadrature: empty Monte-Carlo rule");
  }
  FourierQuadrature q;
  q.dim_ = dim;
  q.tensor_ = false;
  q.nodes_.resize(n_nodes * dim);
  CounterRng g(seed, 0, 0, 0xFA11u);
  const double s = std::sqrt(0.5);
  for (double& v : q.nodes_) v = s * g.normal();
  q.weights_.assign(n_nodes, std::pow(std::numbers::pi, 0.5 * static_cast<double>(dim)) /
                                 static_cast<double>(n_nodes));
  return q;
}

std::vector<double> FourierQuadrature::node(std::size_t k) const {
  if (k >= size()) throw std::out_of_range("fourier quadrature: node index");
  std::vector<double> y(dim_);
  if (!tensor_) {
    for (std::size_t a = 0; a < dim_; ++a) y[a] = nodes_[k * dim_ + a];
    return y;
  }
  const std::size_t order = rule_.nodes.size();
  std::size_t rem = k;
  for (std::size_t a = dim_; a-- > 0;) {
    y[a] = rule_.nodes[rem % order];
    rem /= order;
  }
  return y;
}

double FourierQuadrature::integrate(
    const std::function<double(std::span<const double>)>& g) const {
  double s = 0.0;
  for (std::size_t k = 0; k < size(); ++k) {
    const auto y = node(k);
    s += weights_[k] * g(y);
  }
  return s;
}

std::vector<std::complex<double>> FourierQuadrature::transform(
    std::span<const double> points, std::span<const double> coeffs) const {
  const std::size_t n = coeffs.size();
  if (points.size() != n * dim_) {
    throw std::invalid_argument("fourier quadrature: point array does not match dimension");
  }
  std::vector<std::complex<double>> out(size(), {0.0, 0.0});
  if (n == 0) return out;

  if (!tensor_) {
    for (std::size_t k = 0; k < size(); ++k) {
      std::complex<double> acc{0.0, 0.0};
      for (std::size_t p = 0; p < n; ++p) {
        double phase = 0.0;
        for (std::size_t a = 0; a < dim_; ++a) phase += points[p * dim_ + a] * nodes_[k * dim_ + a];
        acc += coeffs[p] * std::complex<double>(std::cos(phase), std::sin(phase));
      }
      out[k] = acc;
    }
    return out;
  }

  // Separable evaluation: prod_a exp(i x_a y_{k_a}); the last axis is
  // contracted with a complex matrix product per particle chunk.
  using Mat = Eigen::Matrix<std::complex<double>, Eigen::Dynamic, Eigen::Dynamic>;
  const std::size_t order = rule_.nodes.size();
  const std::size_t rows = ipow(order, dim_ - 1);
  const auto K = static_cast<Eigen::Index>(order);
  Mat acc = Mat::Zero(static_cast<Eigen::Index>(rows), K);

  for (std::size_t start = 0; start < n; start += kChunk) {
    const std::size_t c = std::min(kChunk, n - start);
    const auto C = static_cast<Eigen::Index>(c);
    std::vector<Mat> axis(dim_, Mat(C, K));
    for (std::size_t a = 0; a < dim_; ++a) {
      for (Eigen::Index p = 0; p < C; ++p) {
        const double x = points[(start + static_cast<std::size_t>(p)) * dim_ + a];
        for (Eigen::Index k = 0; k < K; ++k) {
          const double ph = x * rule_.nodes[static_cast<std::size_t>(k)];
          axis[a](p, k) = {std::cos(ph), std::sin(ph)};
        }
      }
    }
    Mat partial(C, 1);
    for (Eigen::Index p = 0; p < C; ++p) partial(p, 0) = coeffs[start + static_cast<std::size_t>(p)];
    for (std::size_t a = 0; a + 1 < dim_; ++a) {
      Mat next(C, partial.cols() * K);
      for (Eigen::Index r = 0; r < partial.cols(); ++r) {
        for (Eigen::Index k = 0; k < K; ++k) {
          next.col(r * K + k) = partial.col(r).cwiseProduct(axis[a].col(k));
        }
      }
      partial = std::move(next);
    }
    acc.noalias() += partial.transpose() * axis[dim_ - 1];
  }

  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t k = 0; k < order; ++k) {
      out[r * order + k] = acc(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(k));
    }
  }
  return out;
}

double FourierQuadrature::weighted_sq_modulus(std::span<const double> points,
                                              std::span<const double> coeffs) const {
  const auto values = transform(points, coeffs);
  double s = 0.0;
  for (std::size_t k = 0; k < values.size(); ++k) s += weights_[k] * std::norm(values[k]);
  return s;
}

}  // namespace mfdbsde

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

namespace mfdbsde {

/// One-dimensional Gauss-Hermite rule: sum_k w_k g(y_k) ~ int g(y) e^{-y^2} dy,
/// exact for polynomials of degree <= 2 * order - 1.
struct GaussHermiteRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

GaussHermiteRule gauss_hermite_rule(std::size_t order);

/// Quadrature for  int_{R^d} g(y) e^{-|y|^2} dy. Either a tensorized
/// Gauss-Hermite rule (node index with axis 0 slowest) or a Monte-Carlo rule
/// with y ~ N(0, I/2) and equal weights pi^{d/2}/n.
class FourierQuadrature {
 public:
  static FourierQuadrature gauss_hermite(std::size_t order, std::size_t dim);
  static FourierQuadrature monte_carlo(std::size_t n_nodes, std::size_t dim,
                                       std::uint64_t seed);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return weights_.size(); }
  /// Points per axis for tensor rules, 0 for Monte-Carlo rules.
  std::size_t order() const { return tensor_ ? rule_.nodes.size() : 0; }
  bool is_tensor() const { return tensor_; }

  std::vector<double> node(std::size_t k) const;
  double weight(std::size_t k) const { return weights_.at(k); }

  double integrate(const std::function<double(std::span<const double>)>& g) const;

  /// Values of  sum_p c_p exp(i <x_p, y_k>)  at every node; `points` is
  /// row-major with dim() columns.
  std::vector<std::complex<double>> transform(std::span<const double> points,
                                              std::span<const double> coeffs) const;

  /// sum_k w_k |sum_p c_p exp(i <x_p, y_k>)|^2
  double weighted_sq_modulus(std::span<const double> points,
                             std::span<const double> coeffs) const;

 private:
  FourierQuadrature() = default;

  std::size_t dim_ = 0;
  bool tensor_ = false;
  GaussHermiteRule rule_;      // tensor rules
  std::vector<double> nodes_;  // Monte-Carlo rules, row-major
  std::vector<double> weights_;
};

}  // namespace mfdbsde

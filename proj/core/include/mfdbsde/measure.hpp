#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "mfdbsde/levy_model.hpp"
#include "mfdbsde/quadrature.hpp"

namespace mfdbsde {

/// Weighted sample-point measure on R^d, optionally carrying one mark value
/// per Levy atom at every point (the L2(nu) coordinate of a (Y, Z, K) triple).
class EmpiricalMeasure {
 public:
  EmpiricalMeasure() = default;

  /// `points` is row-major (n x dim). Empty `weights` means 1/n each.
  /// `marks` is row-major (n x n_marks).
  EmpiricalMeasure(std::size_t dim, std::vector<double> points,
                   std::vector<double> weights = {}, std::size_t n_marks = 0,
                   std::vector<double> marks = {});

  static EmpiricalMeasure point_mass(std::vector<double> x, std::vector<double> marks = {},
                                     double mass = 1.0);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return weights_.size(); }
  bool empty() const { return weights_.empty(); }
  std::size_t n_marks() const { return n_marks_; }

  std::span<const double> points() const { return points_; }
  std::span<const double> weights() const { return weights_; }
  std::span<const double> marks() const { return marks_; }
  std::span<const double> point(std::size_t i) const {
    return std::span<const double>(points_).subspan(i * dim_, dim_);
  }
  double weight(std::size_t i) const { return weights_[i]; }
  double mark(std::size_t i, std::size_t j) const { return marks_[i * n_marks_ + j]; }

  double total_mass() const;

 private:
  std::size_t dim_ = 0;
  std::size_t n_marks_ = 0;
  std::vector<double> points_;
  std::vector<double> weights_;
  std::vector<double> marks_;
};

/// mu^(y) = sum_i w_i exp(i <x_i, y>)
std::complex<double> char_fn(const EmpiricalMeasure& mu, std::span<const double> y);

/// sum_k w_k |mu^(y_k)|^2
double m_norm_sq(const EmpiricalMeasure& mu, const FourierQuadrature& quad);

/// sum_k w_k |mu^(y_k) - eta^(y_k)|^2
double m_dist_sq(const EmpiricalMeasure& mu, const EmpiricalMeasure& eta,
                 const FourierQuadrature& quad);

/// Norm on measures over (Y, Z, K(.)): for every atom the 3-d transform of
/// (Y, Z, K(zeta_j)) is normed and weighted by min(1, zeta_j^2) lambda_j.
/// `mu` must have dim 2 and one mark per atom; `quad` must be 3-d.
double m_norm_triple_sq(const EmpiricalMeasure& mu, const LevyModel& levy,
                        const FourierQuadrature& quad);

double m_dist_triple_sq(const EmpiricalMeasure& mu, const EmpiricalMeasure& eta,
                        const LevyModel& levy, const FourierQuadrature& quad);

struct OffsetMeasure {
  double offset;  // r in [-delta, 0]
  EmpiricalMeasure measure;
};

/// integral over [-delta, 0] of ||mu(r)|| dr: entries sorted by offset, each
/// entry with r < 0 covers the cell up to the next offset (or 0).
double m_delta_norm(std::span<const OffsetMeasure> segment, const LevyModel& levy,
                    const FourierQuadrature& quad);

}  // namespace mfdbsde

#include "mfdbsde/regression.hpp"

#include <cmath>
#include <stdexcept>

#include "mfdbsde/parallel.hpp"

namespace mfdbsde {

namespace {

void enumerate(std::size_t d, std::size_t degree, std::vector<unsigned>& cur, std::size_t var,
               std::size_t left, std::vector<std::vector<unsigned>>& out) {
  if (var == d) {
    out.push_back(cur);
    return;
  }
  for (std::size_t e = 0; e <= left; ++e) {
    cur[var] = static_cast<unsigned>(e);
    enumerate(d, degree, cur, var + 1, left - e, out);
  }
  cur[var] = 0;
}

}  // namespace

std::size_t PolynomialBasis::full_size(std::size_t d, std::size_t degree) {
  // binomial(d + degree, degree)
  std::size_t r = 1;
  for (std::size_t k = 1; k <= degree; ++k) r = r * (d + k) / k;
  return r;
}

PolynomialBasis::PolynomialBasis(const Eigen::MatrixXd& state, std::size_t degree)
    : n_cols_(static_cast<std::size_t>(state.cols())) {
  const auto n = static_cast<double>(state.rows());
  if (state.rows() == 0) throw std::invalid_argument("basis: empty state matrix");
  for (Eigen::Index c = 0; c < state.cols(); ++c) {
    const double mean = state.col(c).sum() / n;
    const double var = (state.col(c).array() - mean).square().sum() / n;
    const double scale = std::max(1.0, std::abs(mean));
    if (var > 1e-24 * scale * scale) {
      keep_.push_back(static_cast<std::size_t>(c));
      mean_.push_back(mean);
      inv_scale_.push_back(1.0 / std::sqrt(var));
    }
  }
  std::vector<unsigned> cur(keep_.size(), 0);
  enumerate(keep_.size(), degree, cur, 0, degree, exponents_);
}

Eigen::MatrixXd PolynomialBasis::design(const Eigen::MatrixXd& state) const {
  if (static_cast<std::size_t>(state.cols()) != n_cols_) {
    throw std::invalid_argument("basis: state column count changed");
  }
  const auto n = static_cast<std::size_t>(state.rows());
  const std::size_t q = size();
  const std::size_t d = keep_.size();
  Eigen::MatrixXd X(state.rows(), static_cast<Eigen::Index>(q));
  parallel_for(n, [&](std::size_t p) {
    const auto row = static_cast<Eigen::Index>(p);
    double x[16];
    std::vector<double> heap;
    double* xs = x;
    if (d > 16) {
      heap.resize(d);
      xs = heap.data();
    }
    for (std::size_t v = 0; v < d; ++v) {
      xs[v] = (state(row, static_cast<Eigen::Index>(keep_[v])) - mean_[v]) * inv_scale_[v];
    }
    for (std::size_t b = 0; b < q; ++b) {
      double m = 1.0;
      for (std::size_t v = 0; v < d; ++v) {
        for (unsigned e = 0; e < exponents_[b][v]; ++e) m *= xs[v];
      }
      X(row, static_cast<Eigen::Index>(b)) = m;
    }
  });
  return X;
}

GramSolver::GramSolver(const Eigen::MatrixXd& X, double ridge) {
  if (!(ridge >= 0.0)) throw std::invalid_argument("regression: ridge must be >= 0");
  const auto n = static_cast<double>(X.rows());
  Eigen::MatrixXd G = X.transpose() * X / n;
  G.diagonal().array() += ridge;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(G);
  const Eigen::VectorXd& ev = es.eigenvalues();
  const double top = ev.size() > 0 ? ev.maxCoeff() : 0.0;
  const double cut = top * 1e-12 * static_cast<double>(std::max<Eigen::Index>(1, ev.size()));
  Eigen::VectorXd inv = Eigen::VectorXd::Zero(ev.size());
  for (Eigen::Index k = 0; k < ev.size(); ++k) {
    if (ev(k) > cut && ev(k) > 0.0) {
      inv(k) = 1.0 / ev(k);
      ++rank_;
    }
  }
  pinv_ = es.eigenvectors() * inv.asDiagonal() * es.eigenvectors().transpose();
}

Eigen::MatrixXd GramSolver::coefficients(const Eigen::MatrixXd& X,
                                         const Eigen::MatrixXd& Y) const {
  const auto n = static_cast<double>(X.rows());
  return pinv_ * (X.transpose() * Y / n);
}

}  // namespace mfdbsde

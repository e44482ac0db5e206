#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <string_view>

namespace mfdbsde {

struct ClosedFormParams {
  double c = 0.0;        // constant terminal value
  double a = 0.0;        // mean-field coefficient
  double b = 0.0;        // Z coefficient of the drift case
  double horizon = 1.0;
  double mean_xi = 1.0;  // E[xi] for the mean-field case
  double lambda = 1.0;   // intensity of the single atom in the pure-jump case
};

/// Analytic solutions of special cases.
///   constant_zero_f    f = 0, xi = c:                Y = c, Z = 0, K = 0
///   linear_mean_field  f = a E[Y], deterministic xi: Y = E[Y] = E[xi] e^{a (T - t)}
///   z_drift            f = b Z, xi = B(T):           Y = B(t) + b (T - t), Z = 1
///   pure_jump          f = 0, xi = N(T) - lambda T:  Y = N(t) - lambda t, K = 1
struct ClosedForm {
  std::function<double(double t, double b_t, std::span<const double> counts_t)> y;
  std::function<double(double t)> z;
  std::function<double(double t, std::size_t atom)> k;
  std::function<double(double t)> mean_y;
};

/// Throws std::invalid_argument for an unknown case id.
ClosedForm closed_form(std::string_view case_id, const ClosedFormParams& params);

}  // namespace mfdbsde

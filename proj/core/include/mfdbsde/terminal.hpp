#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "mfdbsde/levy_model.hpp"

namespace mfdbsde {

/// Terminal value xi as a function of the path summary at T: B(T) and the
/// cumulative jump count of every atom.
class TerminalCondition {
 public:
  enum class Kind { constant, linear, brownian_square, call, custom };

  using Custom = std::function<double(double b_T, std::span<const double> counts_T)>;

  static TerminalCondition constant(double c);
  /// c0 + cb B(T) + sum_j cj (N_j(T) - lambda_j T)
  static TerminalCondition linear(double c0, double cb, std::vector<double> cj = {});
  static TerminalCondition brownian(double scale = 1.0) { return linear(0.0, scale); }
  static TerminalCondition compensated_count(std::size_t atom, double scale = 1.0);
  /// scale * B(T)^2
  static TerminalCondition brownian_square(double scale = 1.0);
  /// max(B(T) - strike, 0)
  static TerminalCondition call(double strike);
  static TerminalCondition custom(Custom fn);

  Kind kind() const { return kind_; }
  std::string name() const;

  double operator()(double b_T, std::span<const double> counts_T, const LevyModel& levy,
                    double horizon) const;

 private:
  Kind kind_ = Kind::constant;
  double c0_ = 0.0;
  double cb_ = 0.0;
  std::vector<double> cj_;
  Custom fn_;
};

}  // namespace mfdbsde

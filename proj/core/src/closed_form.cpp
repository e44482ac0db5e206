#include "mfdbsde/closed_form.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace mfdbsde {

ClosedForm closed_form(std::string_view case_id, const ClosedFormParams& p) {
  ClosedForm cf;
  cf.z = [](double) { return 0.0; };
  cf.k = [](double, std::size_t) { return 0.0; };
  if (case_id == "constant_zero_f") {
    cf.y = [c = p.c](double, double, std::span<const double>) { return c; };
    cf.mean_y = [c = p.c](double) { return c; };
  } else if (case_id == "linear_mean_field") {
    auto m = [p](double t) { return p.mean_xi * std::exp(p.a * (p.horizon - t)); };
    cf.y = [m](double t, double, std::span<const double>) { return m(t); };
    cf.mean_y = m;
  } else if (case_id == "z_drift") {
    cf.y = [p](double t, double b, std::span<const double>) { return b + p.b * (p.horizon - t); };
    cf.z = [](double) { return 1.0; };
    cf.mean_y = [p](double t) { return p.b * (p.horizon - t); };
  } else if (case_id == "pure_jump") {
    cf.y = [p](double t, double, std::span<const double> n) {
      if (n.empty()) throw std::invalid_argument("pure_jump: one jump count is required");
      return n[0] - p.lambda * t;
    };
    cf.k = [](double, std::size_t atom) { return atom == 0 ? 1.0 : 0.0; };
    cf.mean_y = [](double) { return 0.0; };
  } else {
    throw std::invalid_argument("closed form: unknown case id '" + std::string(case_id) + "'");
  }
  return cf;
}

}  // namespace mfdbsde

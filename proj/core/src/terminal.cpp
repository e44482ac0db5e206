#include "mfdbsde/terminal.hpp"

#include <algorithm>
#include <stdexcept>

namespace mfdbsde {

TerminalCondition TerminalCondition::constant(double c) {
  TerminalCondition t;
  t.kind_ = Kind::constant;
  t.c0_ = c;
  return t;
}

TerminalCondition TerminalCondition::linear(double c0, double cb, std::vector<double> cj) {
  TerminalCondition t;
  t.kind_ = Kind::linear;
  t.c0_ = c0;
  t.cb_ = cb;
  t.cj_ = std::move(cj);
  return t;
}

TerminalCondition TerminalCondition::compensated_count(std::size_t atom, double scale) {
  std::vector<double> cj(atom + 1, 0.0);
  cj[atom] = scale;
  return linear(0.0, 0.0, std::move(cj));
}

TerminalCondition TerminalCondition::brownian_square(double scale) {
  TerminalCondition t;
  t.kind_ = Kind::brownian_square;
  t.cb_ = scale;
  return t;
}

TerminalCondition TerminalCondition::call(double strike) {
  TerminalCondition t;
  t.kind_ = Kind::call;
  t.c0_ = strike;
  return t;
}

TerminalCondition TerminalCondition::custom(Custom fn) {
  if (!fn) throw std::invalid_argument("terminal condition: empty callback");
  TerminalCondition t;
  t.kind_ = Kind::custom;
  t.fn_ = std::move(fn);
  return t;
}

std::string TerminalCondition::name() const {
  switch (kind_) {
    case Kind::constant: return "constant";
    case Kind::linear: return "linear";
    case Kind::brownian_square: return "brownian_square";
    case Kind::call: return "call";
    case Kind::custom: return "custom";
  }
  return "unknown";
}

double TerminalCondition::operator()(double b_T, std::span<const double> counts_T,
                                     const LevyModel& levy, double horizon) const {
  switch (kind_) {
    case Kind::constant: return c0_;
    case Kind::linear: {
      if (cj_.size() > levy.size()) {
        throw std::invalid_argument("terminal condition: refers to a missing jump atom");
      }
      double v = c0_ + cb_ * b_T;
      for (std::size_t j = 0; j < cj_.size(); ++j) {
        v += cj_[j] * (counts_T[j] - levy.atom(j).intensity * horizon);
      }
      return v;
    }
    case Kind::brownian_square: return cb_ * b_T * b_T;
    case Kind::call: return std::max(b_T - c0_, 0.0);
    case Kind::custom: return fn_(b_T, counts_T);
  }
  return 0.0;
}

}  // namespace mfdbsde

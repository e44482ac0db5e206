#include "mfdbsde/levy_model.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace mfdbsde {

LevyModel::LevyModel(std::vector<JumpAtom> atoms) : atoms_(std::move(atoms)) {
  for (std::size_t j = 0; j < atoms_.size(); ++j) {
    const auto& a = atoms_[j];
    if (!(a.size != 0.0) || !std::isfinite(a.size)) {
      throw std::invalid_argument("levy model: jump sizes must be finite and nonzero");
    }
    if (!(a.intensity > 0.0) || !std::isfinite(a.intensity)) {
      throw std::invalid_argument("levy model: intensities must be positive");
    }
    for (std::size_t l = 0; l < j; ++l) {
      if (atoms_[l].size == a.size) {
        throw std::invalid_argument("levy model: jump sizes must be distinct");
      }
    }
  }
}

double LevyModel::total_intensity() const {
  double s = 0.0;
  for (const auto& a : atoms_) s += a.intensity;
  return s;
}

double LevyModel::truncated_weight(std::size_t j) const {
  const auto& a = atoms_.at(j);
  return std::min(1.0, a.size * a.size) * a.intensity;
}

double LevyModel::truncated_second_moment() const {
  double s = 0.0;
  for (std::size_t j = 0; j < atoms_.size(); ++j) s += truncated_weight(j);
  return s;
}

double LevyModel::nu_norm_sq(std::span<const double> k) const {
  if (k.size() != atoms_.size()) {
    throw std::invalid_argument("levy model: mark vector has wrong length");
  }
  double s = 0.0;
  for (std::size_t j = 0; j < atoms_.size(); ++j) {
    s += k[j] * k[j] * atoms_[j].intensity;
  }
  return s;
}

}  // namespace mfdbsde

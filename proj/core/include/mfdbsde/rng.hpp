#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <numbers>

namespace mfdbsde {

/// Philox4x32-10 block function (Salmon et al., "Parallel random numbers:
/// as easy as 1, 2, 3", SC'11).
class Philox4x32 {
 public:
  using Counter = std::array<std::uint32_t, 4>;
  using Key = std::array<std::uint32_t, 2>;

  static constexpr Counter generate(Counter ctr, Key key) {
    for (int r = 0; r < 10; ++r) {
      if (r > 0) {
        key[0] += kW0;
        key[1] += kW1;
      }
      ctr = round(ctr, key);
    }
    return ctr;
  }

 private:
  static constexpr std::uint32_t kW0 = 0x9E3779B9u;
  static constexpr std::uint32_t kW1 = 0xBB67AE85u;
  static constexpr std::uint32_t kM0 = 0xD2511F53u;
  static constexpr std::uint32_t kM1 = 0xCD9E8D57u;

  static constexpr Counter round(const Counter& c, const Key& k) {
    const std::uint64_t p0 = static_cast<std::uint64_t>(kM0) * c[0];
    const std::uint64_t p1 = static_cast<std::uint64_t>(kM1) * c[2];
    const auto hi0 = static_cast<std::uint32_t>(p0 >> 32);
    const auto lo0 = static_cast<std::uint32_t>(p0);
    const auto hi1 = static_cast<std::uint32_t>(p1 >> 32);
    const auto lo1 = static_cast<std::uint32_t>(p1);
    return {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  }
};

/// Stream of variates addressed by (seed, particle, step, stream id).
/// Every address yields the same sequence regardless of evaluation order.
/// With `mirrored` set, uniforms u become 1 - u and normals change sign,
/// which gives the antithetic partner of the same address.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t particle, std::uint64_t step,
             std::uint32_t stream, bool mirrored = false)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        ctr_{0u, stream, static_cast<std::uint32_t>(step),
             static_cast<std::uint32_t>(particle)},
        mirrored_(mirrored) {}

  /// Uniform on the open interval (0, 1) with 53 random bits.
  double uniform() {
    if (pos_ >= 4) refill();
    const std::uint32_t a = block_[pos_++];
    const std::uint32_t b = block_[pos_++];
    const double u = (static_cast<double>(a >> 5) * 67108864.0 +
                      static_cast<double>(b >> 6) + 0.5) *
                     (1.0 / 9007199254740992.0);
    return mirrored_ ? 1.0 - u : u;
  }

  /// Standard normal (Box-Muller, both outputs used).
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    const double u1 = raw_uniform();
    const double u2 = raw_uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double th = 2.0 * std::numbers::pi * u2;
    const double sign = mirrored_ ? -1.0 : 1.0;
    spare_ = sign * r * std::sin(th);
    has_spare_ = true;
    return sign * r * std::cos(th);
  }

  /// Poisson(mean): inversion below mean 12, PTRS (Hoermann 1993) above.
  std::int32_t poisson(double mean);

 private:
  double raw_uniform() {
    const bool m = mirrored_;
    mirrored_ = false;
    const double u = uniform();
    mirrored_ = m;
    return u;
  }

  void refill() {
    block_ = Philox4x32::generate(ctr_, key_);
    ++ctr_[0];
    pos_ = 0;
  }

  Philox4x32::Key key_;
  Philox4x32::Counter ctr_;
  Philox4x32::Counter block_{};
  int pos_ = 4;
  bool mirrored_;
  bool has_spare_ = false;
  double spare_ = 0.0;
};

inline std::int32_t CounterRng::poisson(double mean) {
  if (!(mean > 0.0)) return 0;
  if (mean < 12.0) {
    const double u = uniform();
    double p = std::exp(-mean);
    double cdf = p;
    std::int32_t k = 0;
    while (u > cdf && k < 10000) {
      ++k;
      p *= mean / static_cast<double>(k);
      cdf += p;
      if (p == 0.0) break;
    }
    return k;
  }
  const double slam = std::sqrt(mean);
  const double loglam = std::log(mean);
  const double b = 0.931 + 2.53 * slam;
  const double a = -0.059 + 0.02483 * b;
  const double invalpha = 1.1239 + 1.1328 / (b - 3.4);
  const double vr = 0.9277 - 3.6224 / (b - 2.0);
  for (;;) {
    const double u = uniform() - 0.5;
    const double v = uniform();
    const double us = 0.5 - std::abs(u);
    const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
    if (us >= 0.07 && v <= vr) return static_cast<std::int32_t>(k);
    if (k < 0.0 || (us < 0.013 && v > us)) continue;
    if (std::log(v) + std::log(invalpha) - std::log(a / (us * us) + b) <=
        -mean + k * loglam - std::lgamma(k + 1.0)) {
      return static_cast<std::int32_t>(k);
    }
  }
}

}  // namespace mfdbsde

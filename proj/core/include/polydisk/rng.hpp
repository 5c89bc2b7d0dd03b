#pragma once

#include <array>
#include <complex>
#include <cstdint>
#include <string_view>

namespace polydisk {

/// Philox4x32-10 counter-based generator (Salmon, Moraes, Dror, Shaw 2011).
///
/// The 64-bit seed forms the key; the 128-bit counter is split into a 64-bit
/// draw counter and a 64-bit stream id. Streams with the same seed are
/// statistically independent, which lets one generator per range cell produce
/// output that does not depend on generation order.
class PhiloxRng {
 public:
  explicit PhiloxRng(std::uint64_t seed, std::uint64_t stream = 0)
      : key_{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32)},
        stream_(stream) {}

  /// One keyed 10-round block; exposed so known-answer vectors can be checked.
  static std::array<std::uint32_t, 4> block(std::array<std::uint32_t, 4> counter,
                                            std::array<std::uint32_t, 2> key);

  std::uint32_t next_u32();
  std::uint64_t next_u64();

  /// Uniform integer in [0, bound) by rejection sampling; bound >= 1.
  std::uint64_t next_below(std::uint64_t bound);

  /// Uniform double in [0, 1) with 53 random bits.
  double next_double();

  /// Standard real Gaussian N(0, 1) via Box-Muller.
  double next_gaussian();

  /// Circular complex Gaussian with E|w|^2 = 1 (re and im are N(0, 1/2)).
  std::complex<double> next_complex_gaussian();

  /// Gamma(shape, scale 1) via Marsaglia-Tsang; shape > 0.
  double next_gamma(double shape);

 private:
  void refill();

  std::array<std::uint32_t, 2> key_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
  std::array<std::uint32_t, 4> buffer_{};
  int buffered_ = 0;
};

/// Fmix-style 64-bit finalizer (Vigna's splitmix64 step).
std::uint64_t splitmix64(std::uint64_t x);

/// Derived seed for a numbered substream, e.g. clustering restarts:
/// splitmix64(master ^ (0x9E3779B97F4A7C15 * (salt + 1))).
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t salt);

/// Derived seed for a named pipeline stage: the name is hashed with FNV-1a 64
/// and used as the salt above. This keeps stages reproducible in isolation.
std::uint64_t derive_seed(std::uint64_t master, std::string_view stage);

}  // namespace polydisk

#include "polydisk/rng.hpp"

#include <cmath>
#include <numbers>

#include "polydisk/errors.hpp"

namespace polydisk {

namespace {

constexpr std::uint32_t kPhiloxM0 = 0xD2511F53u;
constexpr std::uint32_t kPhiloxM1 = 0xCD9E8D57u;
constexpr std::uint32_t kPhiloxW0 = 0x9E3779B9u;
constexpr std::uint32_t kPhiloxW1 = 0xBB67AE85u;

inline void philox_round(std::array<std::uint32_t, 4>& c, const std::array<std::uint32_t, 2>& k) {
  const std::uint64_t p0 = static_cast<std::uint64_t>(kPhiloxM0) * c[0];
  const std::uint64_t p1 = static_cast<std::uint64_t>(kPhiloxM1) * c[2];
  const std::uint32_t hi0 = static_cast<std::uint32_t>(p0 >> 32);
  const std::uint32_t lo0 = static_cast<std::uint32_t>(p0);
  const std::uint32_t hi1 = static_cast<std::uint32_t>(p1 >> 32);
  const std::uint32_t lo1 = static_cast<std::uint32_t>(p1);
  c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
}

}  // namespace

std::array<std::uint32_t, 4> PhiloxRng::block(std::array<std::uint32_t, 4> counter,
                                              std::array<std::uint32_t, 2> key) {
  for (int round = 0; round < 10; ++round) {
    philox_round(counter, key);
    key[0] += kPhiloxW0;
    key[1] += kPhiloxW1;
  }
  return counter;
}

void PhiloxRng::refill() {
  const std::array<std::uint32_t, 4> counter = {
      static_cast<std::uint32_t>(counter_), static_cast<std::uint32_t>(counter_ >> 32),
      static_cast<std::uint32_t>(stream_), static_cast<std::uint32_t>(stream_ >> 32)};
  buffer_ = block(counter, key_);
  ++counter_;
  buffered_ = 4;
}

std::uint32_t PhiloxRng::next_u32() {
  if (buffered_ == 0) refill();
  return buffer_[4 - buffered_--];
}

std::uint64_t PhiloxRng::next_u64() {
  const std::uint64_t lo = next_u32();
  const std::uint64_t hi = next_u32();
  return (hi << 32) | lo;
}

std::uint64_t PhiloxRng::next_below(std::uint64_t bound) {
  require(bound >= 1, ErrorKind::InvalidShape, "next_below bound must be positive");
  const std::uint64_t zone =
      ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
  std::uint64_t x;
  do {
    x = next_u64();
  } while (x > zone);
  return x % bound;
}

double PhiloxRng::next_double() {
  return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double PhiloxRng::next_gaussian() {
  const double u1 = next_double();
  const double u2 = next_double();
  return std::sqrt(-2.0 * std::log1p(-u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

std::complex<double> PhiloxRng::next_complex_gaussian() {
  const double u1 = next_double();
  const double u2 = next_double();
  const double r = std::sqrt(-std::log1p(-u1));
  const double theta = 2.0 * std::numbers::pi * u2;
  return {r * std::cos(theta), r * std::sin(theta)};
}

double PhiloxRng::next_gamma(double shape) {
  require(shape > 0.0, ErrorKind::InvalidShape, "gamma shape must be positive");
  if (shape < 1.0) {
    // Boost to shape + 1 and scale back by a uniform power.
    const double u = 1.0 - next_double();
    return next_gamma(shape + 1.0) * std::pow(u, 1.0 / shape);
  }
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x;
    double v;
    do {
      x = next_gaussian();
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = 1.0 - next_double();
    if (u < 1.0 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1.0 - v + std::log(v))) return d * v;
  }
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t salt) {
  return splitmix64(master ^ (0x9E3779B97F4A7C15ull * (salt + 1)));
}

std::uint64_t derive_seed(std::uint64_t master, std::string_view stage) {
  std::uint64_t h = 0xCBF29CE484222325ull;  // FNV-1a 64
  for (const char ch : stage) {
    h ^= static_cast<unsigned char>(ch);
    h *= 0x100000001B3ull;
  }
  return derive_seed(master, h);
}

}  // namespace polydisk

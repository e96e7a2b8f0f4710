#include "uqpt/rng.hpp"

#include <cmath>
#include <numbers>

namespace uqpt {

std::uint64_t splitmix64(std::uint64_t& state) {
  std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b) {
  std::uint64_t state = master;
  splitmix64(state);
  state ^= 0xA0761D6478BD642FULL * (a + 1);
  splitmix64(state);
  state ^= 0xE7037ED1A0B428DBULL * (b + 1);
  return splitmix64(state);
}

double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

double gaussian(Rng& rng) {
  // offset keeps u1 strictly inside (0, 1) so log() is finite
  const double u1 = (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
  const double u2 = static_cast<double>(rng() >> 11) * 0x1.0p-53;
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

Complex complex_normal(Rng& rng) {
  const double s = std::numbers::sqrt2;
  return Complex(gaussian(rng) / s, gaussian(rng) / s);
}

}  // namespace uqpt

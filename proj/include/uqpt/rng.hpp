#pragma once

#include <cstdint>
#include <random>

#include "uqpt/types.hpp"

namespace uqpt {

using Rng = std::mt19937_64;

/// splitmix64 step; used to turn (master seed, counter) pairs into
/// independent stream seeds so parallel trials never share state.
std::uint64_t splitmix64(std::uint64_t& state);

/// Counter-based seed split: stable under reordering and parallel execution.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t a, std::uint64_t b = 0);

inline Rng make_rng(std::uint64_t seed) { return Rng(seed); }

/// Uniform double in [0, 1). Built from the top 53 bits of the generator so
/// the sequence does not depend on the standard library's distribution
/// implementation.
double uniform01(Rng& rng);

/// Standard normal via Box-Muller (two uniforms per draw, no cached state).
double gaussian(Rng& rng);

/// Circularly-symmetric complex normal with E|z|^2 = 1
/// (real and imaginary parts each N(0, 1/2)).
Complex complex_normal(Rng& rng);

}  // namespace uqpt

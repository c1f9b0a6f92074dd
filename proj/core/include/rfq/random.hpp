#pragma once

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <random>

namespace rfq {

using Rng = std::mt19937_64;

/// Independent stream derived from a master seed and a tag path, e.g.
/// make_rng(seed, {kRollout, iteration, episode}). Same inputs, same stream.
Rng make_rng(std::uint64_t seed, std::initializer_list<std::uint64_t> tags);

inline std::size_t uniform_index(Rng& rng, std::size_t n) {
  return std::uniform_int_distribution<std::size_t>(0, n - 1)(rng);
}

inline double uniform01(Rng& rng) { return std::uniform_real_distribution<double>(0.0, 1.0)(rng); }

}  // namespace rfq

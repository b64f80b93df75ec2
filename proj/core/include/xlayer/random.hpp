#pragma once

#include <cstdint>
#include <random>

namespace xlayer {

using Rng = std::mt19937_64;

/// SplitMix64 finalizer; decorrelates nearby seeds.
constexpr std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Generator for one trial. Depends only on (seed, stream, trial), so results
/// do not depend on how trials are spread across threads.
inline Rng trial_rng(std::uint64_t seed, std::uint64_t trial, std::uint64_t stream = 0) {
  std::seed_seq seq{static_cast<std::uint32_t>(mix64(seed)), static_cast<std::uint32_t>(mix64(seed) >> 32),
                    static_cast<std::uint32_t>(mix64(stream)), static_cast<std::uint32_t>(trial),
                    static_cast<std::uint32_t>(trial >> 32)};
  return Rng(seq);
}

}  // namespace xlayer

#pragma once

#include <cstdint>
#include <random>

namespace wilber {

// mt19937_64's output sequence is pinned by the standard, so seeded draws are
// reproducible across platforms. std::uniform_int_distribution is not; use
// rejection sampling instead.
using Rng = std::mt19937_64;

inline std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  if (bound <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % bound;
}

// Uniform integer in [lo, hi], inclusive.
inline std::int64_t uniform_range(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return lo + std::int64_t(uniform_below(rng, std::uint64_t(hi - lo + 1)));
}

}  // namespace wilber

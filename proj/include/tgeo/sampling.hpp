#pragma once

#include <Eigen/Core>
#include <algorithm>
#include <cstdint>
#include <vector>

namespace tgeo {

/// splitmix64. Used instead of <random> engines wherever sampled output is
/// part of a report, so identical seeds give identical bytes on every
/// platform and compiler.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed = 0) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Unbiased integer in [0, n); n > 0.
  Eigen::Index below(Eigen::Index n) {
    const std::uint64_t bound = static_cast<std::uint64_t>(n);
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
    std::uint64_t v = next();
    while (v >= limit) v = next();
    return static_cast<Eigen::Index>(v % bound);
  }

  /// Uniform double in [lo, hi).
  double real(double lo, double hi) {
    const double unit = static_cast<double>(next() >> 11) * 0x1.0p-53;
    return lo + unit * (hi - lo);
  }
};

/// k distinct indices out of [0, n), ascending.
inline std::vector<Eigen::Index> sample_subset(SplitMix64& rng, Eigen::Index n, int k) {
  std::vector<Eigen::Index> out;
  out.reserve(static_cast<std::size_t>(k));
  while (static_cast<int>(out.size()) < k) {
    const Eigen::Index v = rng.below(n);
    bool seen = false;
    for (const Eigen::Index u : out) seen = seen || (u == v);
    if (!seen) out.push_back(v);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// First size-k combination of [0, n) in lexicographic order.
inline std::vector<Eigen::Index> first_combination(int k) {
  std::vector<Eigen::Index> c(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) c[static_cast<std::size_t>(i)] = i;
  return c;
}

/// Advances `c` to the next size-k combination of [0, n); false when done.
inline bool next_combination(std::vector<Eigen::Index>& c, Eigen::Index n) {
  const int k = static_cast<int>(c.size());
  for (int i = k - 1; i >= 0; --i) {
    if (c[static_cast<std::size_t>(i)] < n - (k - i)) {
      ++c[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < k; ++j)
        c[static_cast<std::size_t>(j)] = c[static_cast<std::size_t>(j - 1)] + 1;
      return true;
    }
  }
  return false;
}

/// C(n, k) saturated at 2^53; callers only branch on counts far below that.
inline std::uint64_t combination_count(Eigen::Index n, int k) {
  if (k < 0 || static_cast<Eigen::Index>(k) > n) return 0;
  constexpr double cap = 9007199254740992.0;
  double c = 1.0;
  for (int i = 1; i <= k; ++i) {
    c = c * static_cast<double>(n - k + i) / static_cast<double>(i);
    if (c >= cap) return static_cast<std::uint64_t>(cap);
  }
  return static_cast<std::uint64_t>(c + 0.5);
}

}  // namespace tgeo

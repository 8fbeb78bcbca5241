#pragma once

#include <cstdint>
#include <vector>

namespace capcond {

/// Advances idx to the next k-combination of {0, ..., n-1} in lexicographic
/// order; returns false after the last one.
inline bool next_combination(std::vector<int>& idx, int n) {
  const int k = static_cast<int>(idx.size());
  for (int i = k - 1; i >= 0; --i) {
    auto& slot = idx[static_cast<std::size_t>(i)];
    if (slot < n - k + i) {
      ++slot;
      for (int j = i + 1; j < k; ++j) {
        idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
      }
      return true;
    }
  }
  return false;
}

/// Binomial coefficient, saturating at UINT64_MAX.
inline std::uint64_t binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) {
    return 0;
  }
  k = k < n - k ? k : n - k;
  unsigned __int128 r = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    r = r * (n - k + i) / i;
    if (r > UINT64_MAX) {
      return UINT64_MAX;
    }
  }
  return static_cast<std::uint64_t>(r);
}

} // namespace capcond

#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <span>
#include <vector>

namespace gecscore::detail {

// Unit-cost Levenshtein distance. Strips the common prefix and suffix, then
// runs a diagonal-band DP whose half-width doubles until the result fits
// inside the band (exact once distance <= band). Falls back to the full
// two-row DP when the band would cover the shorter sequence. Memory is
// O(min(|a|, |b|)) throughout.
template <class T>
std::size_t levenshtein(std::span<const T> a, std::span<const T> b) {
  while (!a.empty() && !b.empty() && a.front() == b.front()) {
    a = a.subspan(1);
    b = b.subspan(1);
  }
  while (!a.empty() && !b.empty() && a.back() == b.back()) {
    a = a.first(a.size() - 1);
    b = b.first(b.size() - 1);
  }
  if (a.size() > b.size()) std::swap(a, b);
  const std::size_t m = a.size();
  const std::size_t n = b.size();
  if (m == 0) return n;

  constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max() / 2;
  std::vector<std::size_t> prev;
  std::vector<std::size_t> cur;

  for (std::size_t k = std::max<std::size_t>(n - m, 1); k < m; k *= 2) {
    const std::size_t width = 2 * k + 1;
    prev.assign(width, kInf);
    cur.assign(width, kInf);
    // Index d = j - i + k holds cell (i, j).
    for (std::size_t j = 0; j <= std::min(n, k); ++j) prev[j + k] = j;
    for (std::size_t i = 1; i <= m; ++i) {
      std::fill(cur.begin(), cur.end(), kInf);
      const std::size_t j_lo = i > k ? i - k : 0;
      const std::size_t j_hi = std::min(n, i + k);
      for (std::size_t j = j_lo; j <= j_hi; ++j) {
        const std::size_t d = j + k - i;
        std::size_t best = kInf;
        if (j == 0) {
          best = i;
        } else {
          best = prev[d] + (a[i - 1] == b[j - 1] ? 0 : 1);
          if (d > 0) best = std::min(best, cur[d - 1] + 1);
        }
        if (d + 1 < width) best = std::min(best, prev[d + 1] + 1);
        cur[d] = best;
      }
      std::swap(prev, cur);
    }
    const std::size_t result = prev[n - m + k];
    if (result <= k) return result;
  }

  // Full DP over the shorter sequence.
  prev.resize(m + 1);
  cur.resize(m + 1);
  for (std::size_t i = 0; i <= m; ++i) prev[i] = i;
  for (std::size_t j = 1; j <= n; ++j) {
    cur[0] = j;
    for (std::size_t i = 1; i <= m; ++i) {
      const std::size_t sub = prev[i - 1] + (a[i - 1] == b[j - 1] ? 0 : 1);
      cur[i] = std::min({sub, prev[i] + 1, cur[i - 1] + 1});
    }
    std::swap(prev, cur);
  }
  return prev[m];
}

}  // namespace gecscore::detail

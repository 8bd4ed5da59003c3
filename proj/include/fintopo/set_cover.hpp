#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace fintopo {

namespace detail {

struct CoverSearch {
  int universe;
  std::uint64_t full;
  const std::vector<std::uint64_t>& sets;
  std::vector<int> best;
  bool has_best = false;

  int max_gain(std::uint64_t covered) const {
    int g = 0;
    for (const auto& s : sets) g = std::max(g, std::popcount(s & ~covered & full));
    return g;
  }

  void dfs(std::uint64_t covered, std::vector<int>& chosen) {
    if ((covered & full) == full) {
      if (!has_best || chosen.size() < best.size()) {
        best = chosen;
        has_best = true;
      }
      return;
    }
    int remaining = std::popcount(full & ~covered);
    int gain = max_gain(covered);
    if (gain == 0) return;
    std::size_t bound = chosen.size() + static_cast<std::size_t>((remaining + gain - 1) / gain);
    if (has_best && bound >= best.size()) return;
    // Branch on the uncovered element with the fewest candidate sets.
    int pick = -1, pick_count = -1;
    for (int e = 0; e < universe; ++e) {
      if (covered & (std::uint64_t{1} << e)) continue;
      int c = 0;
      for (const auto& s : sets)
        if (s & (std::uint64_t{1} << e)) ++c;
      if (pick < 0 || c < pick_count) {
        pick = e;
        pick_count = c;
      }
    }
    for (int i = 0; i < static_cast<int>(sets.size()); ++i) {
      if (!(sets[static_cast<std::size_t>(i)] & (std::uint64_t{1} << pick))) continue;
      chosen.push_back(i);
      dfs(covered | sets[static_cast<std::size_t>(i)], chosen);
      chosen.pop_back();
    }
  }
};

}  // namespace detail

// Exact minimum set cover over a universe of at most 64 elements.
// Deterministic: greedy upper bound, then branch and bound in ascending
// set-index order. Returns indices of a minimum cover, or nullopt if the
// union of the sets misses an element.
inline std::optional<std::vector<int>> min_set_cover(int universe, const std::vector<std::uint64_t>& sets) {
  if (universe < 0 || universe > 64) throw std::invalid_argument("set cover universe out of range");
  if (universe == 0) return std::vector<int>{};
  std::uint64_t full = universe == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << universe) - 1;
  std::uint64_t all = 0;
  for (const auto& s : sets) all |= s;
  if ((all & full) != full) return std::nullopt;

  detail::CoverSearch search{universe, full, sets, {}, false};
  // Greedy seed, smallest index on ties.
  {
    std::uint64_t covered = 0;
    std::vector<int> chosen;
    while ((covered & full) != full) {
      int pick = -1, gain = 0;
      for (int i = 0; i < static_cast<int>(sets.size()); ++i) {
        int g = std::popcount(sets[static_cast<std::size_t>(i)] & ~covered & full);
        if (g > gain) {
          gain = g;
          pick = i;
        }
      }
      covered |= sets[static_cast<std::size_t>(pick)];
      chosen.push_back(pick);
    }
    search.best = chosen;
    search.has_best = true;
  }
  std::vector<int> chosen;
  search.dfs(0, chosen);
  std::sort(search.best.begin(), search.best.end());
  return search.best;
}

}  // namespace fintopo

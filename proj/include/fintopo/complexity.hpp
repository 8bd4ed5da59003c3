#pragma once

#include <algorithm>
#include <cstdint>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <utility>
#include <vector>

#include "fintopo/bits.hpp"
#include "fintopo/certificate.hpp"
#include "fintopo/errors.hpp"
#include "fintopo/homotopy.hpp"
#include "fintopo/poset.hpp"
#include "fintopo/poset_io.hpp"
#include "fintopo/set_cover.hpp"

namespace fintopo {

struct SectionTable {
  std::vector<int> open;                // ids in P x P, ascending
  std::vector<std::vector<int>> paths;  // paths[i] assigned to open[i], m+1 values in P
};

struct CcResult {
  int lower = 1;
  std::optional<int> upper;
  std::optional<int> m_at_upper;
  std::vector<std::optional<int>> trace;  // trace[m] = cc_m(P, m), none encodes infinity
  bool exact = false;
  std::optional<SectionCertificate> certificate;
};

struct CatResult {
  int value = 0;
  CatCertificate certificate;
};

inline CatResult cat_of(const FinitePoset& p, const Limits& lim = {});

namespace detail {

// Maximal members of a downward-closed family over {0, ..., g-1} given a
// membership oracle. DFS in ascending element order; a branch whose head can
// absorb its whole tail is closed greedily; candidates are filtered by a full
// single-extension maximality check and deduplicated.
template <typename Oracle>
std::vector<std::uint64_t> maximal_members(int g, Oracle&& feas) {
  std::vector<std::uint64_t> cands;
  auto bit = [](int i) { return std::uint64_t{1} << i; };
  struct Rec {
    int g;
    Oracle& feas;
    std::vector<std::uint64_t>& cands;
    void operator()(std::uint64_t head, int next) {
      std::uint64_t with_tail = head;
      for (int t = next; t < g; ++t) with_tail |= std::uint64_t{1} << t;
      if (with_tail != head && feas(with_tail)) {
        cands.push_back(with_tail);
        return;
      }
      bool any = false;
      for (int t = next; t < g; ++t)
        if (feas(head | (std::uint64_t{1} << t))) {
          any = true;
          (*this)(head | (std::uint64_t{1} << t), t + 1);
        }
      if (!any && head != 0) cands.push_back(head);
    }
  };
  Rec rec{g, feas, cands};
  rec(0, 0);
  std::vector<std::uint64_t> out;
  for (std::uint64_t x : cands) {
    bool maximal = true;
    for (int e = 0; e < g && maximal; ++e)
      if (!(x & bit(e)) && feas(x | bit(e))) maximal = false;
    if (maximal) out.push_back(x);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

// Kahn order on the induced subposet, smallest ambient id first.
inline std::vector<int> linear_extension(const FinitePoset& q, const std::vector<int>& subset) {
  std::vector<int> out;
  std::vector<char> used(subset.size(), 0);
  for (std::size_t step = 0; step < subset.size(); ++step) {
    for (std::size_t i = 0; i < subset.size(); ++i) {
      if (used[i]) continue;
      bool minimal = true;
      for (std::size_t j = 0; j < subset.size() && minimal; ++j)
        if (!used[j] && j != i && q.leq(subset[j], subset[i])) minimal = false;
      if (minimal) {
        used[i] = 1;
        out.push_back(subset[i]);
        break;
      }
    }
  }
  return out;
}

}  // namespace detail

// Exact engine for cc_m, CC brackets and the stable lower bound on one poset.
// All public queries are memoized; the caches admit concurrent idempotent use.
class ComplexityEngine {
 public:
  explicit ComplexityEngine(FinitePoset p, Limits lim = {})
      : p_(std::move(p)), lim_(lim), pp_(product(p_, p_)) {
    Bits mx = pp_.maximal();
    ground_ = bit_list(mx);
    if (ground_.size() > 64)
      throw SizeLimitError("maximal pairs of P x P", static_cast<std::uint64_t>(ground_.size()), 64);
  }

  const FinitePoset& poset() const { return p_; }
  const FinitePoset& product_poset() const { return pp_; }
  const std::vector<int>& ground() const { return ground_; }
  const Limits& limits() const { return lim_; }

  // CSP search for an order-preserving endpoint section over the open set
  // generated by S (a set of maximal pairs, given as ids in P x P).
  // Returns the lexicographically least table, or nullopt.
  std::optional<SectionTable> section_feasible(const Bits& s, int m) {
    check_ground_subset(s);
    if (!ever_feasible(bits_to_mask(s))) return std::nullopt;
    return csp_search(s, m);
  }

  bool feasible(std::uint64_t mask, int m) {
    {
      std::lock_guard<std::mutex> g(mu_);
      auto it = feasible_cache_.find({mask, m});
      if (it != feasible_cache_.end()) return it->second;
    }
    bool value = ever_feasible(mask) && csp_search(mask_to_bits(mask), m).has_value();
    std::lock_guard<std::mutex> g(mu_);
    feasible_cache_.emplace(std::make_pair(mask, m), value);
    return value;
  }

  // S admits a section at some fence length iff the two projections of the
  // generated open set are homotopic.
  bool ever_feasible(std::uint64_t mask) {
    {
      std::lock_guard<std::mutex> g(mu_);
      auto it = ever_cache_.find(mask);
      if (it != ever_cache_.end()) return it->second;
    }
    bool value = projections_homotopic(mask_to_bits(mask));
    std::lock_guard<std::mutex> g(mu_);
    ever_cache_.emplace(mask, value);
    return value;
  }

  std::optional<int> cc_m(int m, SectionCertificate* cert = nullptr) {
    int g = static_cast<int>(ground_.size());
    for (int i = 0; i < g; ++i)
      if (!feasible(std::uint64_t{1} << i, m)) return std::nullopt;
    auto sets = detail::maximal_members(g, [&](std::uint64_t mask) { return feasible(mask, m); });
    auto cover = min_set_cover(g, sets);
    if (!cover) return std::nullopt;
    if (cert) {
      *cert = make_certificate(sets, *cover, m);
      auto check = verify_certificate(p_, *cert);
      if (!check.ok) throw std::logic_error("emitted certificate failed verification: " + check.reason);
    }
    return static_cast<int>(cover->size());
  }

  // Minimum cover of the maximal pairs by sets feasible at some fence length.
  // By monotonicity in m this equals the limit of cc_m; no cover exists iff
  // some pair of points cannot be joined by a fence, and then every cc_m is
  // infinite as well.
  std::optional<int> cc_stable() {
    {
      std::lock_guard<std::mutex> g(mu_);
      if (stable_computed_) return stable_;
    }
    int g = static_cast<int>(ground_.size());
    auto sets = detail::maximal_members(g, [&](std::uint64_t mask) { return ever_feasible(mask); });
    auto cover = min_set_cover(g, sets);
    std::optional<int> value;
    if (cover) value = static_cast<int>(cover->size());
    std::lock_guard<std::mutex> guard(mu_);
    stable_ = value;
    stable_computed_ = true;
    return value;
  }

  CcResult cc(int m_max, std::optional<int> extra_lower = std::nullopt);

 private:
  FinitePoset p_;
  Limits lim_;
  FinitePoset pp_;
  std::vector<int> ground_;

  std::mutex mu_;
  std::map<std::pair<std::uint64_t, int>, bool> feasible_cache_;
  std::map<std::uint64_t, bool> ever_cache_;
  std::map<std::pair<int, int>, std::shared_ptr<const std::vector<std::vector<int>>>> path_cache_;
  bool stable_computed_ = false;
  std::optional<int> stable_;

  void check_ground_subset(const Bits& s) const {
    if (s.size() != static_cast<std::size_t>(pp_.size())) throw std::invalid_argument("S has wrong universe size");
    Bits mx = pp_.maximal();
    Bits extra = s;
    extra -= mx;
    if (extra.any()) throw std::invalid_argument("S contains a non-maximal pair");
    if (s.none()) throw std::invalid_argument("S is empty");
  }

  Bits mask_to_bits(std::uint64_t mask) const {
    Bits s(static_cast<std::size_t>(pp_.size()));
    for (std::size_t i = 0; i < ground_.size(); ++i)
      if (mask & (std::uint64_t{1} << i)) s.set(static_cast<std::size_t>(ground_[i]));
    return s;
  }

  std::uint64_t bits_to_mask(const Bits& s) const {
    std::uint64_t mask = 0;
    for (std::size_t i = 0; i < ground_.size(); ++i)
      if (s.test(static_cast<std::size_t>(ground_[i]))) mask |= std::uint64_t{1} << i;
    return mask;
  }

  bool projections_homotopic(const Bits& s) {
    Bits open_bits = pp_.down_closure(s);
    auto ind = pp_.induced(open_bits);
    int n = p_.size();
    std::vector<int> pr1(ind.kept.size()), pr2(ind.kept.size());
    for (std::size_t i = 0; i < ind.kept.size(); ++i) {
      pr1[i] = ind.kept[i] / n;
      pr2[i] = ind.kept[i] % n;
    }
    return homotopic(ind.poset, p_, pr1, pr2, lim_);
  }

  std::shared_ptr<const std::vector<std::vector<int>>> paths_between(int x, int y, int m) {
    {
      std::lock_guard<std::mutex> g(mu_);
      auto it = path_cache_.find({x * p_.size() + y, m});
      if (it != path_cache_.end()) return it->second;
    }
    auto list = std::make_shared<const std::vector<std::vector<int>>>(zigzag_paths(p_, m, x, y, lim_));
    std::lock_guard<std::mutex> g(mu_);
    auto [it, inserted] = path_cache_.emplace(std::make_pair(x * p_.size() + y, m), list);
    return it->second;
  }

  std::optional<SectionTable> csp_search(const Bits& s, int m);

  SectionCertificate make_certificate(const std::vector<std::uint64_t>& sets, const std::vector<int>& cover, int m) {
    SectionCertificate cert;
    cert.digest = poset_digest(p_);
    cert.m = m;
    int n = p_.size();
    for (int idx : cover) {
      std::uint64_t mask = sets[static_cast<std::size_t>(idx)];
      SectionPart part;
      for (std::size_t i = 0; i < ground_.size(); ++i)
        if (mask & (std::uint64_t{1} << i)) {
          int u = ground_[i];
          part.s.emplace_back(p_.label(u / n), p_.label(u % n));
        }
      auto table = csp_search(mask_to_bits(mask), m);
      if (!table) throw std::logic_error("cover contains an infeasible set");
      for (std::size_t i = 0; i < table->open.size(); ++i) {
        int u = table->open[i];
        part.open.emplace_back(p_.label(u / n), p_.label(u % n));
        std::vector<std::string> row;
        for (int v : table->paths[i]) row.push_back(p_.label(v));
        part.rows.push_back(std::move(row));
      }
      cert.parts.push_back(std::move(part));
    }
    return cert;
  }
};

// CSP over the elements of the open generated by S, processed along a linear
// extension (minimal elements first). Candidate paths are precomputed per
// endpoint pair; assigning a path intersects pointwise upper/lower bounds
// into the domains of the unassigned comparable elements. Values are tried
// in ascending list order, so the first solution is the lexicographically
// least table.
inline std::optional<SectionTable> ComplexityEngine::csp_search(const Bits& s, int m) {
  Bits open_bits = pp_.down_closure(s);
  std::vector<int> open_ids = bit_list(open_bits);
  int k = static_cast<int>(open_ids.size());
  int n = p_.size();

  std::vector<int> order = detail::linear_extension(pp_, open_ids);
  std::vector<int> pos_in_open(static_cast<std::size_t>(pp_.size()), -1);
  for (int i = 0; i < k; ++i) pos_in_open[static_cast<std::size_t>(open_ids[static_cast<std::size_t>(i)])] = i;
  std::vector<int> var_of_pos(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i)
    var_of_pos[static_cast<std::size_t>(i)] = pos_in_open[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])];

  std::vector<std::shared_ptr<const std::vector<std::vector<int>>>> lists(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i) {
    int u = open_ids[static_cast<std::size_t>(i)];
    lists[static_cast<std::size_t>(i)] = paths_between(u / n, u % n, m);
    if (lists[static_cast<std::size_t>(i)]->empty()) return std::nullopt;
  }

  // above[i] / below[i]: indices of other opens comparable to open i.
  std::vector<std::vector<int>> above(static_cast<std::size_t>(k)), below(static_cast<std::size_t>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      if (i == j) continue;
      if (pp_.leq(open_ids[static_cast<std::size_t>(i)], open_ids[static_cast<std::size_t>(j)]))
        above[static_cast<std::size_t>(i)].push_back(j);
      else if (pp_.leq(open_ids[static_cast<std::size_t>(j)], open_ids[static_cast<std::size_t>(i)]))
        below[static_cast<std::size_t>(i)].push_back(j);
    }

  Bits full(static_cast<std::size_t>(n));
  full.set();
  // bound[i][t]: values still admissible at position t of open i's path.
  std::vector<std::vector<Bits>> bound(static_cast<std::size_t>(k),
                                       std::vector<Bits>(static_cast<std::size_t>(m + 1), full));
  std::vector<int> chosen(static_cast<std::size_t>(k), -1);

  struct Dfs {
    const FinitePoset& p;
    int k, m;
    const std::vector<int>& var_of_pos;
    const std::vector<std::shared_ptr<const std::vector<std::vector<int>>>>& lists;
    const std::vector<std::vector<int>>& above;
    const std::vector<std::vector<int>>& below;
    std::vector<std::vector<Bits>>& bound;
    std::vector<int>& chosen;

    bool fits(int v, const std::vector<int>& path) const {
      for (int t = 0; t <= m; ++t)
        if (!bound[static_cast<std::size_t>(v)][static_cast<std::size_t>(t)].test(
                static_cast<std::size_t>(path[static_cast<std::size_t>(t)])))
          return false;
      return true;
    }

    bool any_fit(int v) const {
      for (const auto& path : *lists[static_cast<std::size_t>(v)])
        if (fits(v, path)) return true;
      return false;
    }

    // Forward check: intersect the assigned path into every unassigned
    // comparable neighbor; an emptied position or a neighbor with no fitting
    // candidate left kills the branch.
    bool restrict_neighbors(const std::vector<int>& ws, const std::vector<int>& path, bool upward,
                            std::vector<std::tuple<int, int, Bits>>& trail) {
      for (int w : ws) {
        if (chosen[static_cast<std::size_t>(w)] >= 0) continue;
        bool changed = false;
        for (int t = 0; t <= m; ++t) {
          int val = path[static_cast<std::size_t>(t)];
          const Bits& row = upward ? p.up(val) : p.down(val);
          auto& b = bound[static_cast<std::size_t>(w)][static_cast<std::size_t>(t)];
          Bits nb = b & row;
          if (nb == b) continue;
          trail.emplace_back(w, t, std::move(b));
          b = std::move(nb);
          changed = true;
          if (b.none()) return false;
        }
        if (changed && !any_fit(w)) return false;
      }
      return true;
    }

    bool run(int depth) {
      if (depth == k) return true;
      int v = var_of_pos[static_cast<std::size_t>(depth)];
      const auto& list = *lists[static_cast<std::size_t>(v)];
      std::vector<std::tuple<int, int, Bits>> trail;
      for (std::size_t cand = 0; cand < list.size(); ++cand) {
        if (!fits(v, list[cand])) continue;
        trail.clear();
        bool ok = restrict_neighbors(above[static_cast<std::size_t>(v)], list[cand], true, trail) &&
                  restrict_neighbors(below[static_cast<std::size_t>(v)], list[cand], false, trail);
        if (ok) {
          chosen[static_cast<std::size_t>(v)] = static_cast<int>(cand);
          if (run(depth + 1)) return true;
          chosen[static_cast<std::size_t>(v)] = -1;
        }
        for (auto it = trail.rbegin(); it != trail.rend(); ++it)
          bound[static_cast<std::size_t>(std::get<0>(*it))][static_cast<std::size_t>(std::get<1>(*it))] =
              std::move(std::get<2>(*it));
      }
      return false;
    }
  };
  Dfs dfs{p_, k, m, var_of_pos, lists, above, below, bound, chosen};
  if (!dfs.run(0)) return std::nullopt;

  SectionTable table;
  table.open = open_ids;
  for (int i = 0; i < k; ++i)
    table.paths.push_back((*lists[static_cast<std::size_t>(i)])[static_cast<std::size_t>(chosen[static_cast<std::size_t>(i)])]);
  return table;
}

inline CcResult ComplexityEngine::cc(int m_max, std::optional<int> extra_lower) {
  CcResult out;
  out.trace.assign(static_cast<std::size_t>(m_max + 1), std::nullopt);
  if (lim_.threads > 1) {
    std::vector<std::future<std::optional<int>>> futs;
    for (int m = 0; m <= m_max; ++m)
      futs.push_back(std::async(std::launch::async, [this, m] { return cc_m(m); }));
    for (int m = 0; m <= m_max; ++m) out.trace[static_cast<std::size_t>(m)] = futs[static_cast<std::size_t>(m)].get();
  } else {
    for (int m = 0; m <= m_max; ++m) out.trace[static_cast<std::size_t>(m)] = cc_m(m);
  }

  bool contractible = is_contractible(p_);
  std::optional<int> best;
  for (const auto& v : out.trace)
    if (v && (!best || *v < *best)) best = v;
  if (contractible && (!best || *best > 1)) best = 1;
  out.upper = best;
  if (best)
    for (int m = 0; m <= m_max && !out.m_at_upper; ++m)
      if (out.trace[static_cast<std::size_t>(m)] && *out.trace[static_cast<std::size_t>(m)] == *best) out.m_at_upper = m;

  int lower = 1;
  if (!contractible) lower = std::max(lower, 2);
  lower = std::max(lower, cat_of(p_, lim_).value);
  if (extra_lower) lower = std::max(lower, *extra_lower);
  if (!out.upper || *out.upper > lower) {
    if (auto stable = cc_stable()) lower = std::max(lower, *stable);
  }
  out.lower = lower;
  out.exact = out.upper && *out.upper == out.lower;
  if (out.m_at_upper) {
    SectionCertificate cert;
    cc_m(*out.m_at_upper, &cert);
    out.certificate = std::move(cert);
  }
  return out;
}

// Minimal cover of Max(P) by subsets whose generated open is contractible
// in P, with an explicit contraction fence per part.
inline CatResult cat_of(const FinitePoset& p, const Limits& lim) {
  Bits mx = p.maximal();
  std::vector<int> ground = bit_list(mx);
  int g = static_cast<int>(ground.size());
  if (g > 64) throw SizeLimitError("maximal elements of P", static_cast<std::uint64_t>(g), 64);
  auto to_bits = [&](std::uint64_t mask) {
    Bits s(static_cast<std::size_t>(p.size()));
    for (int i = 0; i < g; ++i)
      if (mask & (std::uint64_t{1} << i)) s.set(static_cast<std::size_t>(ground[static_cast<std::size_t>(i)]));
    return s;
  };
  std::map<std::uint64_t, bool> memo;
  auto feas = [&](std::uint64_t mask) {
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    bool v = is_contractible_in(p, p.down_closure(to_bits(mask)), lim);
    memo.emplace(mask, v);
    return v;
  };
  auto sets = detail::maximal_members(g, feas);
  auto cover = min_set_cover(g, sets);
  if (!cover) throw std::logic_error("prime ideal not contractible in P");

  CatResult out;
  out.value = static_cast<int>(cover->size());
  out.certificate.digest = poset_digest(p);
  for (int idx : *cover) {
    std::uint64_t mask = sets[static_cast<std::size_t>(idx)];
    CatPart part;
    for (int i = 0; i < g; ++i)
      if (mask & (std::uint64_t{1} << i)) part.s.push_back(p.label(ground[static_cast<std::size_t>(i)]));
    Bits open_bits = p.down_closure(to_bits(mask));
    ContractionFence fence;
    if (!is_contractible_in(p, open_bits, lim, &fence)) throw std::logic_error("chosen cat part lost feasibility");
    for (int u : fence.domain) part.open.push_back(p.label(u));
    for (const auto& step : fence.steps) {
      std::vector<std::string> row;
      for (int v : step) row.push_back(p.label(v));
      part.steps.push_back(std::move(row));
    }
    out.certificate.parts.push_back(std::move(part));
  }
  auto check = verify_cat_certificate(p, out.certificate);
  if (!check.ok) throw std::logic_error("emitted cat certificate failed verification: " + check.reason);
  return out;
}

struct InequalityReport {
  int cat_p = 0;
  CcResult cc;
  int cat_pp = 0;
  int max_sq = 0;
  bool chain_holds = false;
};

// cat(P), the CC bracket, cat(P x P) and the square of the maximal-element
// count, with the chain checked on computed values.
inline InequalityReport inequality_report(const FinitePoset& p, int m_max, const Limits& lim = {}) {
  InequalityReport out;
  out.cat_p = cat_of(p, lim).value;
  ComplexityEngine eng(p, lim);
  out.cc = eng.cc(m_max);
  out.cat_pp = cat_of(product(p, p), lim).value;
  int mc = static_cast<int>(p.maximal().count());
  out.max_sq = mc * mc;
  out.chain_holds = true;
  if (out.cc.upper && out.cat_p > *out.cc.upper) out.chain_holds = false;
  if (out.cc.lower > out.cat_pp) out.chain_holds = false;
  if (out.cat_pp > out.max_sq) out.chain_holds = false;
  return out;
}

}  // namespace fintopo

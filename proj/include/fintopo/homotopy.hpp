#pragma once

#include <deque>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

#include "fintopo/bits.hpp"
#include "fintopo/errors.hpp"
#include "fintopo/poset.hpp"

namespace fintopo {

// A combinatorial path of length m is a zigzag v0 <= v1 >= v2 <= ... with m+1 values.
inline bool is_zigzag(const FinitePoset& p, const std::vector<int>& vals) {
  if (vals.empty()) return false;
  for (std::size_t k = 0; k + 1 < vals.size(); ++k) {
    bool ok = (k % 2 == 0) ? p.leq(vals[k], vals[k + 1]) : p.leq(vals[k + 1], vals[k]);
    if (!ok) return false;
  }
  return true;
}

inline std::pair<int, int> path_endpoints(const std::vector<int>& vals) { return {vals.front(), vals.back()}; }

namespace detail {

// allowed[k]: values admissible at position k; refined by both endpoints.
inline std::vector<Bits> zigzag_position_sets(const FinitePoset& p, int m, int from, int to) {
  int n = p.size();
  Bits all(static_cast<std::size_t>(n));
  all.set();
  std::vector<Bits> fwd(static_cast<std::size_t>(m + 1), all), bwd(static_cast<std::size_t>(m + 1), all);
  if (from >= 0) {
    fwd[0] = Bits(static_cast<std::size_t>(n));
    fwd[0].set(static_cast<std::size_t>(from));
  }
  for (int k = 1; k <= m; ++k)
    fwd[static_cast<std::size_t>(k)] =
        (k - 1) % 2 == 0 ? p.up_closure(fwd[static_cast<std::size_t>(k - 1)]) : p.down_closure(fwd[static_cast<std::size_t>(k - 1)]);
  if (to >= 0) {
    bwd[static_cast<std::size_t>(m)] = Bits(static_cast<std::size_t>(n));
    bwd[static_cast<std::size_t>(m)].set(static_cast<std::size_t>(to));
  }
  for (int k = m - 1; k >= 0; --k)
    bwd[static_cast<std::size_t>(k)] =
        k % 2 == 0 ? p.down_closure(bwd[static_cast<std::size_t>(k + 1)]) : p.up_closure(bwd[static_cast<std::size_t>(k + 1)]);
  std::vector<Bits> out(static_cast<std::size_t>(m + 1));
  for (int k = 0; k <= m; ++k) {
    out[static_cast<std::size_t>(k)] = fwd[static_cast<std::size_t>(k)];
    out[static_cast<std::size_t>(k)] &= bwd[static_cast<std::size_t>(k)];
  }
  return out;
}

inline void zigzag_dfs(const FinitePoset& p, int m, const std::vector<Bits>& allowed, std::vector<int>& cur,
                       std::vector<std::vector<int>>& out, const Limits& lim) {
  int k = static_cast<int>(cur.size()) - 1;
  if (k == m) {
    if (out.size() >= lim.max_elements) throw SizeLimitError("zigzag path enumeration", out.size() + 1, lim.max_elements);
    out.push_back(cur);
    return;
  }
  Bits next = (k % 2 == 0) ? p.up(cur.back()) : p.down(cur.back());
  next &= allowed[static_cast<std::size_t>(k + 1)];
  for (auto v = next.find_first(); v != Bits::npos; v = next.find_next(v)) {
    cur.push_back(static_cast<int>(v));
    zigzag_dfs(p, m, allowed, cur, out, lim);
    cur.pop_back();
  }
}

}  // namespace detail

// All zigzag paths of length m, lexicographic by value sequence.
// Pass from/to = -1 to leave an endpoint free.
inline std::vector<std::vector<int>> zigzag_paths(const FinitePoset& p, int m, int from = -1, int to = -1,
                                                  const Limits& lim = {}) {
  std::vector<std::vector<int>> out;
  auto allowed = detail::zigzag_position_sets(p, m, from, to);
  std::vector<int> cur;
  for (auto s = allowed[0].find_first(); s != Bits::npos; s = allowed[0].find_next(s)) {
    cur.push_back(static_cast<int>(s));
    detail::zigzag_dfs(p, m, allowed, cur, out, lim);
    cur.pop_back();
  }
  return out;
}

// P^{J_m} under the pointwise order. Guarded by the |P|^(m+1) candidate bound.
inline FinitePoset path_space(const FinitePoset& p, int m, const Limits& lim = {}) {
  std::uint64_t bound = 1;
  for (int k = 0; k <= m; ++k) {
    bound *= static_cast<std::uint64_t>(p.size());
    if (bound > lim.max_elements) throw SizeLimitError("path_space candidate bound", bound, lim.max_elements);
  }
  auto paths = zigzag_paths(p, m, -1, -1, lim);
  int n = static_cast<int>(paths.size());
  std::vector<std::string> labels(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::string s = p.label(paths[static_cast<std::size_t>(i)][0]);
    for (std::size_t k = 1; k < paths[static_cast<std::size_t>(i)].size(); ++k)
      s += "." + p.label(paths[static_cast<std::size_t>(i)][k]);
    labels[static_cast<std::size_t>(i)] = s;
  }
  std::vector<Bits> up(static_cast<std::size_t>(n), Bits(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      bool le = true;
      for (int k = 0; k <= m && le; ++k)
        le = p.leq(paths[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)],
                   paths[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]);
      if (le) up[static_cast<std::size_t>(i)].set(static_cast<std::size_t>(j));
    }
  return FinitePoset::from_rows(std::move(labels), std::move(up));
}

inline bool is_monotone(const FinitePoset& dom, const FinitePoset& cod, const std::vector<int>& f) {
  for (int a = 0; a < dom.size(); ++a)
    for (int b = 0; b < dom.size(); ++b)
      if (dom.leq(a, b) && !cod.leq(f[static_cast<std::size_t>(a)], f[static_cast<std::size_t>(b)])) return false;
  return true;
}

namespace detail {

inline void hom_dfs(const FinitePoset& dom, const FinitePoset& cod, std::vector<int>& val,
                    std::vector<std::vector<int>>& out, const Limits& lim) {
  int i = 0;
  while (i < dom.size() && val[static_cast<std::size_t>(i)] >= 0) ++i;
  if (i == dom.size()) {
    if (out.size() >= lim.max_elements) throw SizeLimitError("hom_poset enumeration", out.size() + 1, lim.max_elements);
    out.push_back(val);
    return;
  }
  for (int v = 0; v < cod.size(); ++v) {
    bool ok = true;
    for (int j = 0; j < i && ok; ++j) {
      if (dom.leq(j, i) && !cod.leq(val[static_cast<std::size_t>(j)], v)) ok = false;
      if (dom.leq(i, j) && !cod.leq(v, val[static_cast<std::size_t>(j)])) ok = false;
    }
    if (!ok) continue;
    val[static_cast<std::size_t>(i)] = v;
    hom_dfs(dom, cod, val, out, lim);
    val[static_cast<std::size_t>(i)] = -1;
  }
}

}  // namespace detail

inline std::vector<std::vector<int>> monotone_maps(const FinitePoset& dom, const FinitePoset& cod,
                                                   const Limits& lim = {}) {
  std::vector<std::vector<int>> out;
  std::vector<int> val(static_cast<std::size_t>(dom.size()), -1);
  detail::hom_dfs(dom, cod, val, out, lim);
  return out;
}

// All order-preserving maps dom -> cod under the pointwise order,
// lexicographic by value sequence.
inline FinitePoset hom_poset(const FinitePoset& dom, const FinitePoset& cod, const Limits& lim = {}) {
  auto maps = monotone_maps(dom, cod, lim);
  int n = static_cast<int>(maps.size());
  std::vector<std::string> labels(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::string s;
    for (std::size_t k = 0; k < maps[static_cast<std::size_t>(i)].size(); ++k)
      s += (k ? "." : "") + cod.label(maps[static_cast<std::size_t>(i)][k]);
    labels[static_cast<std::size_t>(i)] = s.empty() ? std::string("empty") : s;
  }
  std::vector<Bits> up(static_cast<std::size_t>(n), Bits(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      bool le = true;
      for (int k = 0; k < dom.size() && le; ++k)
        le = cod.leq(maps[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)],
                     maps[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]);
      if (le) up[static_cast<std::size_t>(i)].set(static_cast<std::size_t>(j));
    }
  return FinitePoset::from_rows(std::move(labels), std::move(up));
}

// Order-connectivity of the comparability graph; for finite spaces this is
// path-connectedness.
inline bool is_path_connected(const FinitePoset& p) {
  if (p.size() == 0) return false;
  Bits seen(static_cast<std::size_t>(p.size()));
  std::vector<int> stack{0};
  seen.set(0);
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    Bits nb = p.up(v);
    nb |= p.down(v);
    nb -= seen;
    for_each_bit(nb, [&](int w) {
      seen.set(static_cast<std::size_t>(w));
      stack.push_back(w);
    });
  }
  return seen.count() == static_cast<std::size_t>(p.size());
}

// Stong core data. `trace` records (removed, beaten-by) in removal order;
// `retract` composes the one-point retractions down to the survivors.
struct Core {
  FinitePoset poset;
  std::vector<int> kept;
  std::vector<std::pair<int, int>> trace;
  std::vector<int> retract;
};

inline Core core_of(const FinitePoset& p, const std::vector<int>& scan_order) {
  int n = p.size();
  Bits alive(static_cast<std::size_t>(n));
  alive.set();
  std::vector<std::pair<int, int>> trace;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int x : scan_order) {
      if (!alive.test(static_cast<std::size_t>(x))) continue;
      Bits ups = p.up(x);
      ups &= alive;
      ups.reset(static_cast<std::size_t>(x));
      int beat = -1;
      for (auto y = ups.find_first(); y != Bits::npos; y = ups.find_next(y))
        if (ups.is_subset_of(p.up(static_cast<int>(y)))) {
          beat = static_cast<int>(y);
          break;
        }
      if (beat < 0) {
        Bits downs = p.down(x);
        downs &= alive;
        downs.reset(static_cast<std::size_t>(x));
        for (auto y = downs.find_first(); y != Bits::npos; y = downs.find_next(y))
          if (downs.is_subset_of(p.down(static_cast<int>(y)))) {
            beat = static_cast<int>(y);
            break;
          }
      }
      if (beat >= 0) {
        alive.reset(static_cast<std::size_t>(x));
        trace.emplace_back(x, beat);
        changed = true;
        break;
      }
    }
  }
  Core out;
  auto ind = p.induced(alive);
  out.poset = std::move(ind.poset);
  out.kept = std::move(ind.kept);
  out.trace = std::move(trace);
  std::vector<int> beaten(static_cast<std::size_t>(n), -1);
  for (const auto& [x, y] : out.trace) beaten[static_cast<std::size_t>(x)] = y;
  out.retract.resize(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    int w = v;
    while (!alive.test(static_cast<std::size_t>(w))) w = beaten[static_cast<std::size_t>(w)];
    out.retract[static_cast<std::size_t>(v)] = w;
  }
  return out;
}

inline Core core_of(const FinitePoset& p) {
  std::vector<int> order(static_cast<std::size_t>(p.size()));
  for (int i = 0; i < p.size(); ++i) order[static_cast<std::size_t>(i)] = i;
  return core_of(p, order);
}

inline bool is_contractible(const FinitePoset& p) { return core_of(p).poset.size() == 1; }

// Fence id = g_0, g_1, ..., g_T = retract through the one-point collapses.
// Consecutive tables are uniformly comparable.
inline std::vector<std::vector<int>> core_fence(const FinitePoset& p, const Core& c) {
  std::vector<std::vector<int>> steps;
  std::vector<int> g(static_cast<std::size_t>(p.size()));
  for (int v = 0; v < p.size(); ++v) g[static_cast<std::size_t>(v)] = v;
  steps.push_back(g);
  for (const auto& [x, y] : c.trace) {
    for (int v = 0; v < p.size(); ++v)
      if (g[static_cast<std::size_t>(v)] == x) g[static_cast<std::size_t>(v)] = y;
    steps.push_back(g);
  }
  return steps;
}

namespace detail {

struct MoveSearch {
  const FinitePoset& dom;
  const FinitePoset& cod;
  const Limits& lim;
  std::unordered_map<std::vector<int>, std::vector<int>, IntVecHash> parent;

  // Single-point moves generate the comparability relation of the hom-poset:
  // for f <= g raise a maximal differing coordinate of f toward g.
  template <typename Accept>
  bool run(const std::vector<int>& start, Accept&& accept, std::vector<int>* hit) {
    std::deque<std::vector<int>> queue;
    parent.clear();
    parent.emplace(start, std::vector<int>{});
    queue.push_back(start);
    if (accept(start)) {
      if (hit) *hit = start;
      return true;
    }
    while (!queue.empty()) {
      std::vector<int> cur = std::move(queue.front());
      queue.pop_front();
      for (int i = 0; i < dom.size(); ++i) {
        int old = cur[static_cast<std::size_t>(i)];
        Bits cand = cod.up(old);
        cand |= cod.down(old);
        cand.reset(static_cast<std::size_t>(old));
        for (auto vv = cand.find_first(); vv != Bits::npos; vv = cand.find_next(vv)) {
          int v = static_cast<int>(vv);
          bool ok = true;
          for_each_bit(dom.down(i), [&](int j) {
            if (ok && j != i && !cod.leq(cur[static_cast<std::size_t>(j)], v)) ok = false;
          });
          for_each_bit(dom.up(i), [&](int j) {
            if (ok && j != i && !cod.leq(v, cur[static_cast<std::size_t>(j)])) ok = false;
          });
          if (!ok) continue;
          std::vector<int> next = cur;
          next[static_cast<std::size_t>(i)] = v;
          if (parent.count(next)) continue;
          if (parent.size() >= lim.max_elements)
            throw SizeLimitError("hom component search", parent.size() + 1, lim.max_elements);
          parent.emplace(next, cur);
          if (accept(next)) {
            if (hit) *hit = next;
            return true;
          }
          queue.push_back(next);
        }
      }
    }
    return false;
  }

  std::vector<std::vector<int>> path_to(const std::vector<int>& end) const {
    std::vector<std::vector<int>> out{end};
    auto it = parent.find(end);
    while (it != parent.end() && !it->second.empty()) {
      out.push_back(it->second);
      it = parent.find(it->second);
    }
    std::reverse(out.begin(), out.end());
    return out;
  }
};

// f reduced through the cores: core(dom) -> core(cod).
inline std::vector<int> reduce_map(const Core& cd, const Core& cc, const std::vector<int>& coc_pos,
                                   const std::vector<int>& f) {
  std::vector<int> out(cd.kept.size());
  for (std::size_t i = 0; i < cd.kept.size(); ++i)
    out[i] = coc_pos[static_cast<std::size_t>(cc.retract[static_cast<std::size_t>(f[static_cast<std::size_t>(cd.kept[i])])])];
  return out;
}

inline std::vector<int> positions_of(const std::vector<int>& kept, int n) {
  std::vector<int> pos(static_cast<std::size_t>(n), -1);
  for (std::size_t k = 0; k < kept.size(); ++k) pos[static_cast<std::size_t>(kept[k])] = static_cast<int>(k);
  return pos;
}

}  // namespace detail

// Maps are homotopic iff they share a connected component of the hom-poset's
// comparability graph; decided on the cores, which induce a component bijection.
inline bool homotopic(const FinitePoset& dom, const FinitePoset& cod, const std::vector<int>& f,
                      const std::vector<int>& g, const Limits& lim = {}) {
  if (f == g) return true;
  Core cd = core_of(dom);
  Core cc = core_of(cod);
  auto coc_pos = detail::positions_of(cc.kept, cod.size());
  std::vector<int> fr = detail::reduce_map(cd, cc, coc_pos, f);
  std::vector<int> gr = detail::reduce_map(cd, cc, coc_pos, g);
  if (fr == gr) return true;
  detail::MoveSearch search{cd.poset, cc.poset, lim, {}};
  return search.run(fr, [&](const std::vector<int>& m) { return m == gr; }, nullptr);
}

// A fence of tables U -> P from the inclusion to a constant map.
struct ContractionFence {
  std::vector<int> domain;                   // element ids of U in ambient P
  std::vector<std::vector<int>> steps;       // tables over `domain`, values in P
};

namespace detail {

inline void append_step(std::vector<std::vector<int>>& steps, std::vector<int> next) {
  if (steps.empty() || steps.back() != next) steps.push_back(std::move(next));
}

}  // namespace detail

// Decides whether the inclusion U -> P is homotopic to a constant map and
// optionally produces the explicit fence witnessing it.
inline bool is_contractible_in(const FinitePoset& p, const Bits& u, const Limits& lim = {},
                               ContractionFence* witness = nullptr) {
  auto d = p.induced(u);
  const std::vector<int>& kept = d.kept;
  int un = static_cast<int>(kept.size());
  if (un == 0) throw std::invalid_argument("empty subspace");
  Core cd = core_of(d.poset);

  auto emit_from_domain_fence = [&](const std::vector<std::vector<int>>& dsteps) {
    if (!witness) return;
    witness->domain = kept;
    witness->steps.clear();
    for (const auto& s : dsteps) {
      std::vector<int> table(static_cast<std::size_t>(un));
      for (int i = 0; i < un; ++i) table[static_cast<std::size_t>(i)] = kept[static_cast<std::size_t>(s[static_cast<std::size_t>(i)])];
      detail::append_step(witness->steps, std::move(table));
    }
  };

  if (cd.poset.size() == 1) {
    // A contractible subspace is contractible in any ambient space.
    emit_from_domain_fence(core_fence(d.poset, cd));
    return true;
  }

  Core cp = core_of(p);
  if (cp.poset.size() == 1) {
    if (witness) {
      witness->domain = kept;
      witness->steps.clear();
      for (const auto& s : core_fence(p, cp)) {
        std::vector<int> table(static_cast<std::size_t>(un));
        for (int i = 0; i < un; ++i) table[static_cast<std::size_t>(i)] = s[static_cast<std::size_t>(kept[static_cast<std::size_t>(i)])];
        detail::append_step(witness->steps, std::move(table));
      }
    }
    return true;
  }

  auto cp_pos = detail::positions_of(cp.kept, p.size());
  // Inclusion reduced through both cores.
  std::vector<int> f0(static_cast<std::size_t>(cd.poset.size()));
  for (int i = 0; i < cd.poset.size(); ++i)
    f0[static_cast<std::size_t>(i)] =
        cp_pos[static_cast<std::size_t>(cp.retract[static_cast<std::size_t>(kept[static_cast<std::size_t>(cd.kept[static_cast<std::size_t>(i)])])])];
  auto constant = [](const std::vector<int>& m) {
    for (std::size_t i = 1; i < m.size(); ++i)
      if (m[i] != m[0]) return false;
    return true;
  };
  detail::MoveSearch search{cd.poset, cp.poset, lim, {}};
  std::vector<int> hit;
  if (!search.run(f0, constant, witness ? &hit : nullptr)) return false;
  if (witness) {
    witness->domain = kept;
    witness->steps.clear();
    auto cd_pos = detail::positions_of(cd.kept, d.poset.size());
    // Stage 1: collapse U onto its core (inclusion composed with the fence of U).
    for (const auto& s : core_fence(d.poset, cd)) {
      std::vector<int> table(static_cast<std::size_t>(un));
      for (int i = 0; i < un; ++i) table[static_cast<std::size_t>(i)] = kept[static_cast<std::size_t>(s[static_cast<std::size_t>(i)])];
      detail::append_step(witness->steps, std::move(table));
    }
    // Stage 2: collapse the ambient space onto its core.
    for (const auto& s : core_fence(p, cp)) {
      std::vector<int> table(static_cast<std::size_t>(un));
      for (int i = 0; i < un; ++i)
        table[static_cast<std::size_t>(i)] =
            s[static_cast<std::size_t>(kept[static_cast<std::size_t>(cd.retract[static_cast<std::size_t>(i)])])];
      detail::append_step(witness->steps, std::move(table));
    }
    // Stage 3: walk the core-level component path to a constant.
    for (const auto& w : search.path_to(hit)) {
      std::vector<int> table(static_cast<std::size_t>(un));
      for (int i = 0; i < un; ++i) {
        int rd = cd.retract[static_cast<std::size_t>(i)];
        table[static_cast<std::size_t>(i)] =
            cp.kept[static_cast<std::size_t>(w[static_cast<std::size_t>(cd_pos[static_cast<std::size_t>(rd)])])];
      }
      detail::append_step(witness->steps, std::move(table));
    }
  }
  return true;
}

}  // namespace fintopo

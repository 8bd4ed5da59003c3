#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "fintopo/bits.hpp"
#include "fintopo/errors.hpp"

namespace fintopo {

// A finite T0 space presented as a poset. Element ids are dense and follow
// construction order; `up(i)` and `down(i)` are reflexive closure rows.
class FinitePoset {
 public:
  FinitePoset() = default;

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int i) const { return labels_[static_cast<std::size_t>(i)]; }
  const std::vector<std::string>& labels() const { return labels_; }

  bool has_label(const std::string& name) const { return index_.count(name) != 0; }
  int index_of(const std::string& name) const {
    auto it = index_.find(name);
    if (it == index_.end()) throw UnknownLabel("unknown element name: " + name);
    return it->second;
  }

  bool leq(int a, int b) const { return up_[static_cast<std::size_t>(a)].test(static_cast<std::size_t>(b)); }
  bool lt(int a, int b) const { return a != b && leq(a, b); }
  bool comparable(int a, int b) const { return leq(a, b) || leq(b, a); }

  const Bits& up(int i) const { return up_[static_cast<std::size_t>(i)]; }
  const Bits& down(int i) const { return down_[static_cast<std::size_t>(i)]; }

  Bits maximal() const {
    Bits out(size());
    for (int i = 0; i < size(); ++i)
      if (up(i).count() == 1) out.set(static_cast<std::size_t>(i));
    return out;
  }

  Bits minimal() const {
    Bits out(size());
    for (int i = 0; i < size(); ++i)
      if (down(i).count() == 1) out.set(static_cast<std::size_t>(i));
    return out;
  }

  Bits down_closure(const Bits& s) const {
    Bits out(size());
    for_each_bit(s, [&](int i) { out |= down(i); });
    return out;
  }

  Bits up_closure(const Bits& s) const {
    Bits out(size());
    for_each_bit(s, [&](int i) { out |= up(i); });
    return out;
  }

  bool is_down_closed(const Bits& s) const {
    for (auto i = s.find_first(); i != Bits::npos; i = s.find_next(i))
      if (!down(static_cast<int>(i)).is_subset_of(s)) return false;
    return true;
  }

  // Hasse edges (a, b) with a covered by b, sorted by (a, b).
  std::vector<std::pair<int, int>> cover_pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < size(); ++a)
      for (int b = 0; b < size(); ++b) {
        if (!lt(a, b)) continue;
        Bits between = up(a);
        between &= down(b);
        if (between.count() == 2) out.emplace_back(a, b);
      }
    return out;
  }

  struct Induced;
  Induced induced(const Bits& keep) const;

  static FinitePoset from_hasse(const std::vector<std::string>& labels,
                                const std::vector<std::pair<std::string, std::string>>& covers) {
    FinitePoset p;
    p.labels_ = labels;
    for (std::size_t i = 0; i < labels.size(); ++i) {
      const std::string& name = labels[i];
      if (name.empty()) throw ParseError("empty element name");
      for (char c : name)
        if (c == ' ' || c == '\t' || c == '\n' || c == '\r') throw ParseError("whitespace in element name: '" + name + "'");
      if (!p.index_.emplace(name, static_cast<int>(i)).second) throw ParseError("duplicate element name: " + name);
    }
    int n = p.size();
    std::vector<std::vector<int>> succ(static_cast<std::size_t>(n));
    std::vector<int> indeg(static_cast<std::size_t>(n), 0);
    for (const auto& [lo, hi] : covers) {
      int a = p.index_of(lo), b = p.index_of(hi);
      if (a == b) throw CycleError("cover relates " + lo + " to itself");
      succ[static_cast<std::size_t>(a)].push_back(b);
      ++indeg[static_cast<std::size_t>(b)];
    }
    // Kahn order; a shortfall means the cover digraph has a cycle.
    std::vector<int> order;
    order.reserve(static_cast<std::size_t>(n));
    std::vector<int> stack;
    for (int i = 0; i < n; ++i)
      if (indeg[static_cast<std::size_t>(i)] == 0) stack.push_back(i);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      order.push_back(v);
      for (int w : succ[static_cast<std::size_t>(v)])
        if (--indeg[static_cast<std::size_t>(w)] == 0) stack.push_back(w);
    }
    if (static_cast<int>(order.size()) != n) throw CycleError("cover relation contains a cycle");
    p.up_.assign(static_cast<std::size_t>(n), Bits(static_cast<std::size_t>(n)));
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
      int v = *it;
      p.up_[static_cast<std::size_t>(v)].set(static_cast<std::size_t>(v));
      for (int w : succ[static_cast<std::size_t>(v)]) p.up_[static_cast<std::size_t>(v)] |= p.up_[static_cast<std::size_t>(w)];
    }
    p.fill_down();
    return p;
  }

  // `up` rows must already be a partial order's reflexive up-closure.
  static FinitePoset from_rows(std::vector<std::string> labels, std::vector<Bits> up) {
    FinitePoset p;
    p.labels_ = std::move(labels);
    p.up_ = std::move(up);
    for (std::size_t i = 0; i < p.labels_.size(); ++i)
      if (!p.index_.emplace(p.labels_[i], static_cast<int>(i)).second)
        throw ParseError("duplicate element name: " + p.labels_[i]);
    p.fill_down();
    return p;
  }

 private:
  void fill_down() {
    int n = size();
    down_.assign(static_cast<std::size_t>(n), Bits(static_cast<std::size_t>(n)));
    for (int a = 0; a < n; ++a)
      for_each_bit(up_[static_cast<std::size_t>(a)], [&](int b) { down_[static_cast<std::size_t>(b)].set(static_cast<std::size_t>(a)); });
  }

  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> index_;
  std::vector<Bits> up_;
  std::vector<Bits> down_;
};

struct FinitePoset::Induced {
  FinitePoset poset;
  std::vector<int> kept;  // new id -> original id
};

inline FinitePoset::Induced FinitePoset::induced(const Bits& keep) const {
  Induced out;
  out.kept = bit_list(keep);
  int m = static_cast<int>(out.kept.size());
  std::vector<Bits> up(static_cast<std::size_t>(m), Bits(static_cast<std::size_t>(m)));
  std::vector<std::string> labels(static_cast<std::size_t>(m));
  for (int a = 0; a < m; ++a) {
    labels[static_cast<std::size_t>(a)] = label(out.kept[static_cast<std::size_t>(a)]);
    for (int b = 0; b < m; ++b)
      if (leq(out.kept[static_cast<std::size_t>(a)], out.kept[static_cast<std::size_t>(b)]))
        up[static_cast<std::size_t>(a)].set(static_cast<std::size_t>(b));
  }
  out.poset = from_rows(std::move(labels), std::move(up));
  return out;
}

// The smallest open set containing its generators.
struct OpenSet {
  Bits members;

  static OpenSet generated_by(const FinitePoset& p, const Bits& gens) { return OpenSet{p.down_closure(gens)}; }

  static OpenSet checked(const FinitePoset& p, Bits members) {
    if (!p.is_down_closed(members)) throw std::invalid_argument("set is not down-closed");
    return OpenSet{std::move(members)};
  }
};

// Element (i, j) has id i*|Q|+j; order is componentwise.
inline FinitePoset product(const FinitePoset& p, const FinitePoset& q) {
  int np = p.size(), nq = q.size();
  int n = np * nq;
  std::vector<std::string> labels(static_cast<std::size_t>(n));
  std::vector<Bits> up(static_cast<std::size_t>(n), Bits(static_cast<std::size_t>(n)));
  for (int i = 0; i < np; ++i)
    for (int j = 0; j < nq; ++j) {
      int a = i * nq + j;
      labels[static_cast<std::size_t>(a)] = "(" + p.label(i) + "," + q.label(j) + ")";
      for_each_bit(p.up(i), [&](int i2) {
        for_each_bit(q.up(j), [&](int j2) { up[static_cast<std::size_t>(a)].set(static_cast<std::size_t>(i2 * nq + j2)); });
      });
    }
  return FinitePoset::from_rows(std::move(labels), std::move(up));
}

inline FinitePoset opposite(const FinitePoset& p) {
  int n = p.size();
  std::vector<Bits> up(static_cast<std::size_t>(n), Bits(static_cast<std::size_t>(n)));
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b)
      if (p.leq(b, a)) up[static_cast<std::size_t>(a)].set(static_cast<std::size_t>(b));
  return FinitePoset::from_rows(p.labels(), std::move(up));
}

// J_m: m+1 points with 0 < 1 > 2 < 3 > ...
inline FinitePoset fence_poset(int m) {
  std::vector<std::string> labels;
  labels.reserve(static_cast<std::size_t>(m + 1));
  for (int i = 0; i <= m; ++i) labels.push_back(std::to_string(i));
  std::vector<std::pair<std::string, std::string>> covers;
  for (int i = 0; i < m; ++i) {
    if (i % 2 == 0)
      covers.emplace_back(labels[static_cast<std::size_t>(i)], labels[static_cast<std::size_t>(i + 1)]);
    else
      covers.emplace_back(labels[static_cast<std::size_t>(i + 1)], labels[static_cast<std::size_t>(i)]);
  }
  return FinitePoset::from_hasse(labels, covers);
}

inline FinitePoset chain_poset(int k) {
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> covers;
  for (int i = 0; i < k; ++i) labels.push_back("c" + std::to_string(i));
  for (int i = 0; i + 1 < k; ++i) covers.emplace_back(labels[static_cast<std::size_t>(i)], labels[static_cast<std::size_t>(i + 1)]);
  return FinitePoset::from_hasse(labels, covers);
}

inline FinitePoset antichain_poset(int k) {
  std::vector<std::string> labels;
  for (int i = 0; i < k; ++i) labels.push_back("a" + std::to_string(i));
  return FinitePoset::from_hasse(labels, {});
}

inline FinitePoset singleton_poset() { return chain_poset(1); }

namespace detail {

inline bool iso_extend(const FinitePoset& p, const FinitePoset& q, std::vector<int>& map, Bits& used, int i) {
  int n = p.size();
  if (i == n) return true;
  for (int t = 0; t < n; ++t) {
    if (used.test(static_cast<std::size_t>(t))) continue;
    if (p.up(i).count() != q.up(t).count() || p.down(i).count() != q.down(t).count()) continue;
    bool ok = true;
    for (int j = 0; j < i && ok; ++j)
      ok = p.leq(i, j) == q.leq(t, map[static_cast<std::size_t>(j)]) &&
           p.leq(j, i) == q.leq(map[static_cast<std::size_t>(j)], t);
    if (!ok) continue;
    map[static_cast<std::size_t>(i)] = t;
    used.set(static_cast<std::size_t>(t));
    if (iso_extend(p, q, map, used, i + 1)) return true;
    used.reset(static_cast<std::size_t>(t));
  }
  return false;
}

}  // namespace detail

// Lexicographically smallest order isomorphism P -> Q as an id table, if any.
inline std::optional<std::vector<int>> isomorphism(const FinitePoset& p, const FinitePoset& q) {
  if (p.size() != q.size()) return std::nullopt;
  std::vector<int> map(static_cast<std::size_t>(p.size()), -1);
  Bits used(static_cast<std::size_t>(p.size()));
  if (detail::iso_extend(p, q, map, used, 0)) return map;
  return std::nullopt;
}

inline bool isomorphic(const FinitePoset& p, const FinitePoset& q) { return isomorphism(p, q).has_value(); }

}  // namespace fintopo

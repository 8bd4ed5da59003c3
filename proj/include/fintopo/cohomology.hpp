#pragma once

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fintopo/bits.hpp"
#include "fintopo/errors.hpp"
#include "fintopo/order_complex.hpp"
#include "fintopo/poset.hpp"

namespace fintopo {

namespace gf2 {

inline int rank(std::vector<Bits> rows) {
  int r = 0;
  if (rows.empty()) return 0;
  std::size_t cols = rows[0].size();
  std::size_t lead = 0;
  for (std::size_t col = 0; col < cols && lead < rows.size(); ++col) {
    std::size_t pivot = lead;
    while (pivot < rows.size() && !rows[pivot].test(col)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[lead], rows[pivot]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != lead && rows[i].test(col)) rows[i] ^= rows[lead];
    ++lead;
    ++r;
  }
  return r;
}

// Nullspace basis of the system rows * x = 0 over `vars` variables,
// deterministic (free variables in ascending order).
inline std::vector<Bits> nullspace(std::vector<Bits> rows, std::size_t vars) {
  std::vector<std::size_t> pivot_col;
  std::size_t lead = 0;
  for (std::size_t col = 0; col < vars && lead < rows.size(); ++col) {
    std::size_t pivot = lead;
    while (pivot < rows.size() && !rows[pivot].test(col)) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[lead], rows[pivot]);
    for (std::size_t i = 0; i < rows.size(); ++i)
      if (i != lead && rows[i].test(col)) rows[i] ^= rows[lead];
    pivot_col.push_back(col);
    ++lead;
  }
  std::vector<char> is_pivot(vars, 0);
  for (std::size_t c : pivot_col) is_pivot[c] = 1;
  std::vector<Bits> basis;
  for (std::size_t f = 0; f < vars; ++f) {
    if (is_pivot[f]) continue;
    Bits v(vars);
    v.set(f);
    for (std::size_t r = 0; r < pivot_col.size(); ++r)
      if (rows[r].test(f)) v.set(pivot_col[r]);
    basis.push_back(std::move(v));
  }
  return basis;
}

// Incremental span with tagged coordinates: rows added with a tag vector;
// reducing a member of the span accumulates the tags of the rows used.
struct Reducer {
  struct Row {
    Bits v;
    Bits tag;
    std::size_t pivot;
  };
  std::vector<Row> rows;
  std::size_t tag_len = 0;

  explicit Reducer(std::size_t tag_len_ = 0) : tag_len(tag_len_) {}

  bool add(Bits v, Bits tag) {
    for (const auto& row : rows)
      if (v.test(row.pivot)) {
        v ^= row.v;
        tag ^= row.tag;
      }
    if (v.none()) return false;
    rows.push_back({std::move(v), std::move(tag), 0});
    rows.back().pivot = rows.back().v.find_first();
    return true;
  }

  std::optional<Bits> coords(Bits v) const {
    Bits acc(tag_len);
    for (const auto& row : rows)
      if (v.test(row.pivot)) {
        v ^= row.v;
        acc ^= row.tag;
      }
    if (v.any()) return std::nullopt;
    return acc;
  }
};

}  // namespace gf2

// Mod-2 cohomology of an ordered simplicial complex with cup products on
// chosen cocycle representatives.
struct CohomRing {
  int dim = -1;                          // complex dimension
  std::vector<int> counts;               // simplices per degree
  std::vector<int> betti;                // ranks per degree 0..dim
  std::vector<std::vector<Bits>> reps;    // reps[d][i]: representative cocycle
  std::vector<gf2::Reducer> reducers;     // class coordinates per degree
  std::vector<std::vector<std::vector<std::vector<Bits>>>> cup_coords;  // [d1][d2][i][j]

  int total_rank() const {
    int t = 0;
    for (int b : betti) t += b;
    return t;
  }

  // Class coordinates of the cup of two representatives.
  const Bits& cup(int d1, int i, int d2, int j) const {
    return cup_coords[static_cast<std::size_t>(d1)][static_cast<std::size_t>(d2)][static_cast<std::size_t>(i)]
                     [static_cast<std::size_t>(j)];
  }
};

namespace detail {

inline const std::map<std::vector<int>, int>& simplex_index(const SimplicialComplex& k, int d,
                                                            std::vector<std::map<std::vector<int>, int>>& cache) {
  auto& m = cache[static_cast<std::size_t>(d)];
  if (m.empty() && !k.simplices[static_cast<std::size_t>(d)].empty()) {
    for (std::size_t i = 0; i < k.simplices[static_cast<std::size_t>(d)].size(); ++i)
      m.emplace(k.simplices[static_cast<std::size_t>(d)][i], static_cast<int>(i));
  }
  return m;
}

}  // namespace detail

// Alexander-Whitney cochain cup: front face into alpha, back face into beta.
// Degrees beyond the complex dimension give the zero cochain.
inline Bits cochain_cup(const SimplicialComplex& k, int d1, const Bits& alpha, int d2, const Bits& beta,
                        std::vector<std::map<std::vector<int>, int>>& index_cache) {
  int d = d1 + d2;
  if (d > k.dimension()) return Bits(0);
  const auto& simp = k.simplices[static_cast<std::size_t>(d)];
  const auto& idx1 = detail::simplex_index(k, d1, index_cache);
  const auto& idx2 = detail::simplex_index(k, d2, index_cache);
  Bits out(simp.size());
  for (std::size_t s = 0; s < simp.size(); ++s) {
    std::vector<int> front(simp[s].begin(), simp[s].begin() + d1 + 1);
    std::vector<int> back(simp[s].begin() + d1, simp[s].end());
    auto f = idx1.find(front);
    auto b = idx2.find(back);
    if (f == idx1.end() || b == idx2.end()) continue;
    if (alpha.test(static_cast<std::size_t>(f->second)) && beta.test(static_cast<std::size_t>(b->second)))
      out.set(s);
  }
  return out;
}

// Coboundary matrix rows, one per (d+1)-simplex: the faces of that simplex.
inline std::vector<Bits> coboundary_rows(const SimplicialComplex& k, int d,
                                         std::vector<std::map<std::vector<int>, int>>& index_cache) {
  std::vector<Bits> rows;
  if (d + 1 > k.dimension()) return rows;
  const auto& upper = k.simplices[static_cast<std::size_t>(d + 1)];
  const auto& idx = detail::simplex_index(k, d, index_cache);
  for (const auto& tau : upper) {
    Bits row(k.simplices[static_cast<std::size_t>(d)].size());
    for (std::size_t drop = 0; drop < tau.size(); ++drop) {
      std::vector<int> face;
      for (std::size_t i = 0; i < tau.size(); ++i)
        if (i != drop) face.push_back(tau[i]);
      auto it = idx.find(face);
      if (it != idx.end()) row.flip(static_cast<std::size_t>(it->second));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline std::vector<int> betti_numbers(const SimplicialComplex& k) {
  std::vector<std::map<std::vector<int>, int>> cache(static_cast<std::size_t>(k.dimension() + 1));
  std::vector<int> out;
  int prev_rank = 0;  // rank of delta_{d-1}
  for (int d = 0; d <= k.dimension(); ++d) {
    int nd = static_cast<int>(k.simplices[static_cast<std::size_t>(d)].size());
    auto rows = coboundary_rows(k, d, cache);
    int rank_d = gf2::rank(rows);
    out.push_back(nd - rank_d - prev_rank);
    prev_rank = rank_d;
  }
  return out;
}

inline CohomRing cohomology_ring(const SimplicialComplex& k, const Limits& lim = {}) {
  CohomRing h;
  h.dim = k.dimension();
  std::vector<std::map<std::vector<int>, int>> cache(static_cast<std::size_t>(h.dim + 1));
  h.counts.resize(static_cast<std::size_t>(h.dim + 1));
  h.reps.resize(static_cast<std::size_t>(h.dim + 1));
  for (int d = 0; d <= h.dim; ++d) {
    std::size_t nd = k.simplices[static_cast<std::size_t>(d)].size();
    h.counts[static_cast<std::size_t>(d)] = static_cast<int>(nd);
    auto delta_rows = coboundary_rows(k, d, cache);
    auto cocycles = gf2::nullspace(delta_rows, nd);
    gf2::Reducer red(0);
    // span of coboundaries first, tagged zero
    if (d > 0) {
      auto lower_rows = coboundary_rows(k, d - 1, cache);
      // image of delta_{d-1}: columns of the matrix = delta applied to basis cochains
      std::size_t lower_n = k.simplices[static_cast<std::size_t>(d - 1)].size();
      for (std::size_t c = 0; c < lower_n; ++c) {
        Bits img(nd);
        for (std::size_t r = 0; r < lower_rows.size(); ++r)
          if (lower_rows[r].test(c)) img.set(r);
        red.add(std::move(img), Bits(0));
      }
    }
    std::vector<Bits> chosen;
    for (auto& z : cocycles) {
      gf2::Reducer probe = red;
      if (probe.add(z, Bits(0))) {
        red = std::move(probe);
        chosen.push_back(z);
      }
    }
    h.betti.push_back(static_cast<int>(chosen.size()));
    h.reps[static_cast<std::size_t>(d)] = std::move(chosen);
  }
  if (static_cast<std::uint64_t>(h.total_rank()) * static_cast<std::uint64_t>(h.total_rank()) > lim.max_elements)
    throw SizeLimitError("cohomology total rank square",
                         static_cast<std::uint64_t>(h.total_rank()) * static_cast<std::uint64_t>(h.total_rank()),
                         lim.max_elements);

  // Rebuild reducers with proper tags: coboundaries tag zero, representative
  // i tags the i-th unit vector.
  h.reducers.clear();
  for (int d = 0; d <= h.dim; ++d) {
    std::size_t nd = k.simplices[static_cast<std::size_t>(d)].size();
    gf2::Reducer red(static_cast<std::size_t>(h.betti[static_cast<std::size_t>(d)]));
    if (d > 0) {
      auto lower_rows = coboundary_rows(k, d - 1, cache);
      std::size_t lower_n = k.simplices[static_cast<std::size_t>(d - 1)].size();
      for (std::size_t c = 0; c < lower_n; ++c) {
        Bits img(nd);
        for (std::size_t r = 0; r < lower_rows.size(); ++r)
          if (lower_rows[r].test(c)) img.set(r);
        red.add(std::move(img), Bits(static_cast<std::size_t>(h.betti[static_cast<std::size_t>(d)])));
      }
    }
    for (std::size_t i = 0; i < h.reps[static_cast<std::size_t>(d)].size(); ++i) {
      Bits tag(static_cast<std::size_t>(h.betti[static_cast<std::size_t>(d)]));
      tag.set(i);
      if (!red.add(h.reps[static_cast<std::size_t>(d)][i], std::move(tag)))
        throw std::logic_error("representative dependent on coboundaries");
    }
    h.reducers.push_back(std::move(red));
  }

  // Cup structure constants on representatives.
  h.cup_coords.assign(static_cast<std::size_t>(h.dim + 1), {});
  for (int d1 = 0; d1 <= h.dim; ++d1) {
    h.cup_coords[static_cast<std::size_t>(d1)].assign(static_cast<std::size_t>(h.dim + 1), {});
    for (int d2 = 0; d2 <= h.dim; ++d2) {
      auto& slot = h.cup_coords[static_cast<std::size_t>(d1)][static_cast<std::size_t>(d2)];
      slot.assign(static_cast<std::size_t>(h.betti[static_cast<std::size_t>(d1)]), {});
      for (int i = 0; i < h.betti[static_cast<std::size_t>(d1)]; ++i) {
        slot[static_cast<std::size_t>(i)].assign(static_cast<std::size_t>(h.betti[static_cast<std::size_t>(d2)]),
                                                 Bits(0));
        for (int j = 0; j < h.betti[static_cast<std::size_t>(d2)]; ++j) {
          int d = d1 + d2;
          if (d > h.dim) {
            slot[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = Bits(0);
            continue;
          }
          Bits prod = cochain_cup(k, d1, h.reps[static_cast<std::size_t>(d1)][static_cast<std::size_t>(i)], d2,
                                  h.reps[static_cast<std::size_t>(d2)][static_cast<std::size_t>(j)], cache);
          auto cls = h.reducers[static_cast<std::size_t>(d)].coords(prod);
          if (!cls) throw std::logic_error("cup of cocycles is not a cocycle class");
          slot[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = std::move(*cls);
        }
      }
    }
  }
  return h;
}

// The tensor square H* (x) H* over GF(2), graded by total degree, with the
// multiplication (x (x) y)(u (x) v) = (x u) (x) (y v).
struct TensorRing {
  const CohomRing* h = nullptr;
  // basis[d]: entries (d1, i, d2, j) with d1 + d2 = d, lex ordered
  std::vector<std::vector<std::array<int, 4>>> basis;
  std::vector<std::map<std::array<int, 4>, int>> index;

  explicit TensorRing(const CohomRing& ring) : h(&ring) {
    int top = 2 * ring.dim;
    basis.resize(static_cast<std::size_t>(top + 1));
    index.resize(static_cast<std::size_t>(top + 1));
    for (int d = 0; d <= top; ++d)
      for (int d1 = std::max(0, d - ring.dim); d1 <= std::min(d, ring.dim); ++d1) {
        int d2 = d - d1;
        for (int i = 0; i < ring.betti[static_cast<std::size_t>(d1)]; ++i)
          for (int j = 0; j < ring.betti[static_cast<std::size_t>(d2)]; ++j) {
            index[static_cast<std::size_t>(d)].emplace(std::array<int, 4>{d1, i, d2, j},
                                                       static_cast<int>(basis[static_cast<std::size_t>(d)].size()));
            basis[static_cast<std::size_t>(d)].push_back({d1, i, d2, j});
          }
      }
  }

  int top_degree() const { return static_cast<int>(basis.size()) - 1; }
  std::size_t dim_at(int d) const {
    return d >= 0 && d <= top_degree() ? basis[static_cast<std::size_t>(d)].size() : 0;
  }

  // Product of two basis elements, as coordinates in degree da + db.
  Bits mul_basis(int da, int ea, int db, int eb) const {
    int d = da + db;
    Bits out(dim_at(d));
    if (d > top_degree()) return out;
    auto [a1, ai, a2, aj] = basis[static_cast<std::size_t>(da)][static_cast<std::size_t>(ea)];
    auto [b1, bi, b2, bj] = basis[static_cast<std::size_t>(db)][static_cast<std::size_t>(eb)];
    if (a1 + b1 > h->dim || a2 + b2 > h->dim) return out;
    const Bits& left = h->cup(a1, ai, b1, bi);
    const Bits& right = h->cup(a2, aj, b2, bj);
    for (auto c1 = left.find_first(); c1 != Bits::npos; c1 = left.find_next(c1))
      for (auto c2 = right.find_first(); c2 != Bits::npos; c2 = right.find_next(c2)) {
        auto it = index[static_cast<std::size_t>(d)].find(
            std::array<int, 4>{a1 + b1, static_cast<int>(c1), a2 + b2, static_cast<int>(c2)});
        if (it == index[static_cast<std::size_t>(d)].end()) throw std::logic_error("tensor basis lookup failed");
        out.flip(static_cast<std::size_t>(it->second));
      }
    return out;
  }

  Bits mul(int da, const Bits& x, int db, const Bits& y) const {
    Bits out(dim_at(da + db));
    for (auto ea = x.find_first(); ea != Bits::npos; ea = x.find_next(ea))
      for (auto eb = y.find_first(); eb != Bits::npos; eb = y.find_next(eb))
        out ^= mul_basis(da, static_cast<int>(ea), db, static_cast<int>(eb));
    return out;
  }

  // Multiplication to H*: mu(x (x) y) = x y; kernel basis in total degree d.
  std::vector<Bits> mu_kernel_basis(int d) const {
    std::size_t nd = dim_at(d);
    if (nd == 0) return {};
    int target = h->betti[static_cast<std::size_t>(d)];
    std::vector<Bits> rows(static_cast<std::size_t>(std::max(target, 0)), Bits(nd));
    for (std::size_t e = 0; e < nd; ++e) {
      auto [d1, i, d2, j] = basis[static_cast<std::size_t>(d)][e];
      const Bits& img = h->cup(d1, i, d2, j);
      for (auto r = img.find_first(); r != Bits::npos; r = img.find_next(r)) rows[r].set(e);
    }
    return gf2::nullspace(std::move(rows), nd);
  }
};

struct TensorElement {
  int degree = 0;
  Bits coords;
};

struct ZeroDivisorResult {
  int z = 0;
  std::vector<TensorElement> factors;  // kernel elements whose product is nonzero, empty when z = 0
  TensorElement product;
  bool witness_verified = false;
};

namespace detail {

inline std::vector<std::uint64_t> bits_key(const Bits& b) {
  std::vector<std::uint64_t> blocks;
  boost::to_block_range(b, std::back_inserter(blocks));
  return blocks;
}

// Expands a product of tensor elements on explicit cocycle representatives
// and reduces the result to class coordinates; the definitional recheck of a
// zero-divisor witness.
inline bool expand_and_check(const SimplicialComplex& k, const CohomRing& h, const TensorRing& ring,
                             const std::vector<TensorElement>& factors, const TensorElement& claimed) {
  std::vector<std::map<std::vector<int>, int>> cache(static_cast<std::size_t>(h.dim + 1));
  // formal sum of cochain tensors keyed by (d1, cochain, d2, cochain)
  using Key = std::tuple<int, std::vector<std::uint64_t>, int, std::vector<std::uint64_t>>;
  std::map<Key, std::pair<Bits, Bits>> sum;  // key -> actual cochains
  auto toggle = [&](std::map<Key, std::pair<Bits, Bits>>& m, int d1, const Bits& a, int d2, const Bits& b) {
    Key key{d1, bits_key(a), d2, bits_key(b)};
    auto it = m.find(key);
    if (it != m.end())
      m.erase(it);
    else
      m.emplace(std::move(key), std::make_pair(a, b));
  };
  if (factors.empty()) return false;
  {
    const auto& f0 = factors[0];
    for (auto e = f0.coords.find_first(); e != Bits::npos; e = f0.coords.find_next(e)) {
      auto [d1, i, d2, j] = ring.basis[static_cast<std::size_t>(f0.degree)][e];
      toggle(sum, d1, h.reps[static_cast<std::size_t>(d1)][static_cast<std::size_t>(i)], d2,
             h.reps[static_cast<std::size_t>(d2)][static_cast<std::size_t>(j)]);
    }
  }
  for (std::size_t fi = 1; fi < factors.size(); ++fi) {
    std::map<Key, std::pair<Bits, Bits>> next;
    const auto& f = factors[fi];
    for (const auto& [key, ab] : sum) {
      int d1 = std::get<0>(key), d2 = std::get<2>(key);
      for (auto e = f.coords.find_first(); e != Bits::npos; e = f.coords.find_next(e)) {
        auto [e1, i, e2, j] = ring.basis[static_cast<std::size_t>(f.degree)][e];
        if (d1 + e1 > h.dim || d2 + e2 > h.dim) continue;
        Bits left = cochain_cup(k, d1, ab.first, e1, h.reps[static_cast<std::size_t>(e1)][static_cast<std::size_t>(i)],
                                cache);
        Bits right = cochain_cup(k, d2, ab.second, e2,
                                 h.reps[static_cast<std::size_t>(e2)][static_cast<std::size_t>(j)], cache);
        toggle(next, d1 + e1, left, d2 + e2, right);
      }
    }
    sum = std::move(next);
  }
  // Reduce the formal sum to tensor class coordinates.
  Bits acc(ring.dim_at(claimed.degree));
  for (const auto& [key, ab] : sum) {
    int d1 = std::get<0>(key), d2 = std::get<2>(key);
    if (d1 + d2 != claimed.degree) return false;
    auto c1 = h.reducers[static_cast<std::size_t>(d1)].coords(ab.first);
    auto c2 = h.reducers[static_cast<std::size_t>(d2)].coords(ab.second);
    if (!c1 || !c2) return false;
    for (auto a = c1->find_first(); a != Bits::npos; a = c1->find_next(a))
      for (auto b = c2->find_first(); b != Bits::npos; b = c2->find_next(b)) {
        auto it = ring.index[static_cast<std::size_t>(claimed.degree)].find(
            std::array<int, 4>{d1, static_cast<int>(a), d2, static_cast<int>(b)});
        if (it == ring.index[static_cast<std::size_t>(claimed.degree)].end()) return false;
        acc.flip(static_cast<std::size_t>(it->second));
      }
  }
  return acc.any() && acc == claimed.coords;
}

}  // namespace detail

// Longest k with a nonzero product of k positive-degree elements of
// ker(mu : H* (x) H* -> H*). Exact: total-degree components of kernel
// elements are kernel elements and products expand over kernel bases, so the
// longest-path layering over kernel basis products decides every case.
inline ZeroDivisorResult zero_divisor_cup_length(const SimplicialComplex& k, const CohomRing& h,
                                                 const Limits& lim = {}) {
  TensorRing ring(h);
  ZeroDivisorResult out;
  struct KernelElt {
    int degree;
    Bits coords;
  };
  std::vector<KernelElt> kernel;
  for (int d = 1; d <= ring.top_degree(); ++d)
    for (auto& v : ring.mu_kernel_basis(d)) kernel.push_back({d, v});
  if (kernel.empty()) return out;

  using Key = std::pair<int, std::vector<std::uint64_t>>;
  struct Node {
    int level;
    TensorElement value;
    std::vector<TensorElement> factors;
  };
  std::map<Key, Node> best;
  std::vector<Key> frontier;
  for (const auto& e : kernel) {
    Key key{e.degree, detail::bits_key(e.coords)};
    if (!best.count(key)) {
      best.emplace(key, Node{1, {e.degree, e.coords}, {{e.degree, e.coords}}});
      frontier.push_back(key);
    }
  }
  int z = 1;
  Key deepest = frontier.front();
  while (!frontier.empty()) {
    std::vector<Key> next;
    for (const auto& key : frontier) {
      Node node = best.at(key);
      for (const auto& e : kernel) {
        int nd = node.value.degree + e.degree;
        if (nd > ring.top_degree()) continue;
        Bits prod = ring.mul(node.value.degree, node.value.coords, e.degree, e.coords);
        if (prod.none()) continue;
        Key nk{nd, detail::bits_key(prod)};
        auto it = best.find(nk);
        if (it != best.end() && it->second.level >= node.level + 1) continue;
        if (best.size() >= lim.max_elements)
          throw SizeLimitError("zero-divisor product closure", best.size() + 1, lim.max_elements);
        Node nn{node.level + 1, {nd, prod}, node.factors};
        nn.factors.push_back({e.degree, e.coords});
        best.insert_or_assign(nk, std::move(nn));
        next.push_back(nk);
        if (best.at(nk).level > z) {
          z = best.at(nk).level;
          deepest = nk;
        }
      }
    }
    frontier = std::move(next);
  }
  const Node& win = best.at(deepest);
  out.z = z;
  out.factors = win.factors;
  out.product = win.value;
  out.witness_verified = detail::expand_and_check(k, h, ring, win.factors, win.value);
  return out;
}

struct TcLowerBound {
  std::vector<int> betti;
  int z = 0;
  int z_plus_one = 1;     // unreduced normalization: contractible means 1
  bool witness_verified = true;
};

inline TcLowerBound tc_lower_bound(const FinitePoset& p, const Limits& lim = {}) {
  SimplicialComplex k = order_complex(p, lim);
  CohomRing h = cohomology_ring(k, lim);
  auto zd = zero_divisor_cup_length(k, h, lim);
  TcLowerBound out;
  out.betti = h.betti;
  out.z = zd.z;
  out.z_plus_one = zd.z + 1;
  out.witness_verified = zd.z == 0 || zd.witness_verified;
  return out;
}

}  // namespace fintopo

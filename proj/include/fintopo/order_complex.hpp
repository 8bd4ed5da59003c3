#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "fintopo/bits.hpp"
#include "fintopo/errors.hpp"
#include "fintopo/poset.hpp"

namespace fintopo {

// Vertices carry a fixed total order (for K(P): a linear extension of P),
// and every simplex is a strictly ascending index vector in that order.
struct SimplicialComplex {
  std::vector<std::string> vertices;
  std::vector<std::vector<std::vector<int>>> simplices;  // simplices[d]: the d-simplices, lex sorted

  int dimension() const { return static_cast<int>(simplices.size()) - 1; }
};

// The order complex K(P): simplices are the nonempty chains of P. The vertex
// order is a linear extension of P (Kahn, smallest id first), so chains read
// as ascending index vectors.
inline SimplicialComplex order_complex(const FinitePoset& p, const Limits& lim = {}) {
  int n = p.size();
  // Linear extension, smallest ambient id first.
  std::vector<int> order;
  Bits done(static_cast<std::size_t>(n));
  while (static_cast<int>(order.size()) < n) {
    for (int v = 0; v < n; ++v) {
      if (done.test(static_cast<std::size_t>(v))) continue;
      Bits below = p.down(v);
      below -= done;
      if (below.count() == 1) {
        order.push_back(v);
        done.set(static_cast<std::size_t>(v));
        break;
      }
    }
  }
  std::vector<int> pos_of(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) pos_of[static_cast<std::size_t>(order[static_cast<std::size_t>(i)])] = i;

  SimplicialComplex k;
  for (int i = 0; i < n; ++i) k.vertices.push_back(p.label(order[static_cast<std::size_t>(i)]));

  // up(v) translated to positions, for chain extension.
  std::vector<Bits> up_pos(static_cast<std::size_t>(n), Bits(static_cast<std::size_t>(n)));
  for (int i = 0; i < n; ++i)
    for_each_bit(p.up(order[static_cast<std::size_t>(i)]), [&](int o) {
      if (o != order[static_cast<std::size_t>(i)]) up_pos[static_cast<std::size_t>(i)].set(static_cast<std::size_t>(pos_of[static_cast<std::size_t>(o)]));
    });

  std::uint64_t total = 0;
  std::vector<int> cur;
  struct Rec {
    const std::vector<Bits>& up_pos;
    SimplicialComplex& k;
    std::uint64_t& total;
    const Limits& lim;
    std::vector<int>& cur;
    void operator()(const Bits& cand) {
      std::size_t d = cur.size() - 1;
      if (k.simplices.size() <= d) k.simplices.emplace_back();
      if (++total > lim.max_elements) throw SizeLimitError("chain enumeration", total, lim.max_elements);
      k.simplices[d].push_back(cur);
      for (auto q = cand.find_first(); q != Bits::npos; q = cand.find_next(q)) {
        Bits next = cand;
        next &= up_pos[q];
        cur.push_back(static_cast<int>(q));
        (*this)(next);
        cur.pop_back();
      }
    }
  };
  Rec rec{up_pos, k, total, lim, cur};
  for (int s = 0; s < n; ++s) {
    cur.push_back(s);
    rec(up_pos[static_cast<std::size_t>(s)]);
    cur.pop_back();
  }
  return k;
}

inline std::vector<int> f_vector(const SimplicialComplex& k) {
  std::vector<int> f;
  for (const auto& dim : k.simplices) f.push_back(static_cast<int>(dim.size()));
  return f;
}

inline int euler_characteristic(const SimplicialComplex& k) {
  int chi = 0, sign = 1;
  for (const auto& dim : k.simplices) {
    chi += sign * static_cast<int>(dim.size());
    sign = -sign;
  }
  return chi;
}

// Maximal simplices.
inline std::vector<std::vector<int>> facets(const SimplicialComplex& k) {
  std::set<std::vector<int>> all;
  for (const auto& dim : k.simplices)
    for (const auto& s : dim) all.insert(s);
  std::vector<std::vector<int>> out;
  for (const auto& dim : k.simplices)
    for (const auto& s : dim) {
      bool maximal = true;
      for (int d = static_cast<int>(s.size()); d < static_cast<int>(k.simplices.size()) && maximal; ++d)
        for (const auto& t : k.simplices[static_cast<std::size_t>(d)]) {
          if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
            maximal = false;
            break;
          }
        }
      if (maximal) out.push_back(s);
    }
  return out;
}

namespace detail {

// Facet as sorted vertex names; the line list is sorted as well.
inline std::vector<std::vector<std::string>> facet_name_lists(const SimplicialComplex& k) {
  std::vector<std::vector<std::string>> out;
  for (const auto& s : facets(k)) {
    std::vector<std::string> names;
    for (int v : s) names.push_back(k.vertices[static_cast<std::size_t>(v)]);
    std::sort(names.begin(), names.end());
    out.push_back(std::move(names));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace detail

inline std::string export_facet_list(const SimplicialComplex& k) {
  std::string out;
  for (const auto& names : detail::facet_name_lists(k)) {
    for (std::size_t i = 0; i < names.size(); ++i) out += (i ? " " : "") + names[i];
    out += "\n";
  }
  return out;
}

inline std::string export_structured(const SimplicialComplex& k) {
  nlohmann::ordered_json j;
  j["vertices"] = k.vertices;
  j["facets"] = detail::facet_name_lists(k);
  return j.dump(2) + "\n";
}

inline std::string export_complex(const SimplicialComplex& k, const std::string& format) {
  if (format == "facet-list") return export_facet_list(k);
  if (format == "structured") return export_structured(k);
  throw UnknownFormat("unknown export format '" + format + "'");
}

namespace detail {

// Build the complex as the closure of the given facets.
inline SimplicialComplex closure_of_facets(std::vector<std::string> vertices,
                                           const std::vector<std::vector<std::string>>& facet_names) {
  std::map<std::string, int> idx;
  for (std::size_t i = 0; i < vertices.size(); ++i) {
    if (idx.count(vertices[i])) throw ParseError("duplicate vertex '" + vertices[i] + "'");
    idx[vertices[i]] = static_cast<int>(i);
  }
  std::set<std::vector<int>> seen;
  for (const auto& names : facet_names) {
    std::vector<int> s;
    for (const auto& nm : names) {
      auto it = idx.find(nm);
      if (it == idx.end()) throw ParseError("facet vertex '" + nm + "' not among the vertices");
      s.push_back(it->second);
    }
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end()) throw ParseError("facet repeats a vertex");
    if (s.empty()) throw ParseError("empty facet");
    // all nonempty subsets
    int sz = static_cast<int>(s.size());
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << sz); ++mask) {
      std::vector<int> face;
      for (int b = 0; b < sz; ++b)
        if (mask & (std::uint64_t{1} << b)) face.push_back(s[static_cast<std::size_t>(b)]);
      seen.insert(std::move(face));
    }
  }
  SimplicialComplex k;
  k.vertices = std::move(vertices);
  for (const auto& s : seen) {
    std::size_t d = s.size() - 1;
    while (k.simplices.size() <= d) k.simplices.emplace_back();
    k.simplices[d].push_back(s);
  }
  for (auto& dim : k.simplices) std::sort(dim.begin(), dim.end());
  return k;
}

}  // namespace detail

inline SimplicialComplex import_facet_list(const std::string& text) {
  std::vector<std::vector<std::string>> facet_names;
  std::set<std::string> vertex_set;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::istringstream ls(line);
    std::vector<std::string> names;
    std::string tok;
    while (ls >> tok) names.push_back(tok);
    if (names.empty()) continue;
    for (const auto& nm : names) vertex_set.insert(nm);
    facet_names.push_back(std::move(names));
  }
  if (facet_names.empty()) throw ParseError("no facets in facet list");
  return detail::closure_of_facets(std::vector<std::string>(vertex_set.begin(), vertex_set.end()), facet_names);
}

inline SimplicialComplex import_structured(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("structured complex: ") + e.what());
  }
  if (!j.is_object() || !j.contains("vertices") || !j.contains("facets"))
    throw ParseError("structured complex needs 'vertices' and 'facets'");
  std::vector<std::string> vertices;
  for (const auto& v : j["vertices"]) {
    if (!v.is_string()) throw ParseError("vertex names must be strings");
    vertices.push_back(v.get<std::string>());
  }
  std::vector<std::vector<std::string>> facet_names;
  for (const auto& f : j["facets"]) {
    std::vector<std::string> names;
    for (const auto& v : f) {
      if (!v.is_string()) throw ParseError("facet entries must be strings");
      names.push_back(v.get<std::string>());
    }
    facet_names.push_back(std::move(names));
  }
  if (facet_names.empty()) throw ParseError("no facets in structured complex");
  return detail::closure_of_facets(std::move(vertices), facet_names);
}

inline SimplicialComplex import_complex(const std::string& text, const std::string& format) {
  if (format == "facet-list") return import_facet_list(text);
  if (format == "structured") return import_structured(text);
  throw UnknownFormat("unknown import format '" + format + "'");
}

// Structural equality on vertex names and name-level simplices.
inline bool same_complex(const SimplicialComplex& a, const SimplicialComplex& b) {
  std::set<std::string> va(a.vertices.begin(), a.vertices.end()), vb(b.vertices.begin(), b.vertices.end());
  if (va != vb) return false;
  auto names = [](const SimplicialComplex& k) {
    std::set<std::vector<std::string>> out;
    for (const auto& dim : k.simplices)
      for (const auto& s : dim) {
        std::vector<std::string> nm;
        for (int v : s) nm.push_back(k.vertices[static_cast<std::size_t>(v)]);
        std::sort(nm.begin(), nm.end());
        out.insert(std::move(nm));
      }
    return out;
  };
  return names(a) == names(b);
}

// Face closure: every face of every simplex is present.
inline bool face_closed(const SimplicialComplex& k) {
  std::set<std::vector<int>> all;
  for (const auto& dim : k.simplices)
    for (const auto& s : dim) all.insert(s);
  for (const auto& dim : k.simplices)
    for (const auto& s : dim) {
      if (s.size() == 1) continue;
      for (std::size_t drop = 0; drop < s.size(); ++drop) {
        std::vector<int> face;
        for (std::size_t i = 0; i < s.size(); ++i)
          if (i != drop) face.push_back(s[i]);
        if (!all.count(face)) return false;
      }
    }
  return true;
}

}  // namespace fintopo

#pragma once

#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "fintopo/errors.hpp"
#include "fintopo/poset.hpp"
#include "fintopo/poset_io.hpp"

namespace fintopo {

// Certificates are label-level so they survive serialization and can be
// checked against a freshly parsed poset.

struct SectionPart {
  std::vector<std::pair<std::string, std::string>> s;     // subset of Max(P) x Max(P)
  std::vector<std::pair<std::string, std::string>> open;  // the down-closure of s in P x P
  std::vector<std::vector<std::string>> rows;             // rows[i]: path assigned to open[i], m+1 values
};

struct SectionCertificate {
  std::string digest;
  int m = 0;
  std::vector<SectionPart> parts;
};

struct CatPart {
  std::vector<std::string> s;                    // subset of Max(P)
  std::vector<std::string> open;                 // the down-closure of s in P
  std::vector<std::vector<std::string>> steps;   // fence of tables over `open`, inclusion to constant
};

struct CatCertificate {
  std::string digest;
  std::vector<CatPart> parts;
};

struct VerifyResult {
  bool ok = true;
  std::string reason;
};

inline VerifyResult verify_fail(std::string why) { return {false, std::move(why)}; }

namespace detail {

inline std::string pair_token(const std::string& x, const std::string& y) { return "(" + x + "," + y + ")"; }

inline std::string trim(const std::string& s) {
  std::size_t a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  std::size_t b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_ws(const std::string& s) {
  std::istringstream in(s);
  std::vector<std::string> out;
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

inline std::pair<std::string, std::string> parse_pair_token(const std::string& tok, int line_no) {
  if (tok.size() < 5 || tok.front() != '(' || tok.back() != ')')
    throw ParseError("line " + std::to_string(line_no) + ": expected (x,y) token, got '" + tok + "'");
  std::string body = tok.substr(1, tok.size() - 2);
  std::size_t comma = body.find(',');
  if (comma == std::string::npos || body.find(',', comma + 1) != std::string::npos)
    throw ParseError("line " + std::to_string(line_no) + ": expected one comma in '" + tok + "'");
  std::string x = body.substr(0, comma), y = body.substr(comma + 1);
  if (x.empty() || y.empty()) throw ParseError("line " + std::to_string(line_no) + ": empty pair component in '" + tok + "'");
  return {x, y};
}

inline std::vector<std::string> parse_bracket_list(const std::string& s, int line_no) {
  std::string t = trim(s);
  if (t.size() < 2 || t.front() != '[' || t.back() != ']')
    throw ParseError("line " + std::to_string(line_no) + ": expected [v0, v1, ...] list");
  std::string body = t.substr(1, t.size() - 2);
  std::vector<std::string> out;
  std::size_t pos = 0;
  while (pos <= body.size()) {
    std::size_t comma = body.find(',', pos);
    std::string item = trim(comma == std::string::npos ? body.substr(pos) : body.substr(pos, comma - pos));
    if (item.empty()) throw ParseError("line " + std::to_string(line_no) + ": empty list item");
    out.push_back(item);
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

struct LineReader {
  std::vector<std::string> lines;
  std::size_t at = 0;

  explicit LineReader(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
  }

  // Next nonblank line, or nullopt at end.
  std::optional<std::pair<std::string, int>> next() {
    while (at < lines.size()) {
      std::string t = trim(lines[at]);
      ++at;
      if (!t.empty()) return std::make_pair(t, static_cast<int>(at));
    }
    return std::nullopt;
  }

  std::pair<std::string, int> require(const std::string& what) {
    auto got = next();
    if (!got) throw ParseError("unexpected end of certificate, expected " + what);
    return *got;
  }
};

inline std::string field_after(const std::string& line, const std::string& key, int line_no) {
  if (line.rfind(key, 0) != 0)
    throw ParseError("line " + std::to_string(line_no) + ": expected '" + key + "', got '" + line + "'");
  return trim(line.substr(key.size()));
}

inline int int_field(const std::string& line, const std::string& key, int line_no) {
  std::string v = field_after(line, key, line_no);
  try {
    std::size_t used = 0;
    int n = std::stoi(v, &used);
    if (used != v.size()) throw std::invalid_argument(v);
    return n;
  } catch (const std::exception&) {
    throw ParseError("line " + std::to_string(line_no) + ": expected integer after '" + key + "'");
  }
}

}  // namespace detail

inline std::string serialize_certificate(const SectionCertificate& c) {
  std::ostringstream out;
  out << "section-certificate\n";
  out << "poset-digest: " << c.digest << "\n";
  out << "m: " << c.m << "\n";
  out << "parts: " << c.parts.size() << "\n";
  for (std::size_t k = 0; k < c.parts.size(); ++k) {
    const auto& part = c.parts[k];
    out << "part " << (k + 1) << "\n";
    out << "S:";
    for (const auto& [x, y] : part.s) out << " " << detail::pair_token(x, y);
    out << "\n";
    out << "open:";
    for (const auto& [x, y] : part.open) out << " " << detail::pair_token(x, y);
    out << "\n";
    for (std::size_t i = 0; i < part.rows.size(); ++i) {
      out << detail::pair_token(part.open[i].first, part.open[i].second) << " -> [";
      for (std::size_t v = 0; v < part.rows[i].size(); ++v) out << (v ? ", " : "") << part.rows[i][v];
      out << "]\n";
    }
  }
  out << "end\n";
  return out.str();
}

inline std::string serialize_certificate(const CatCertificate& c) {
  std::ostringstream out;
  out << "cat-certificate\n";
  out << "poset-digest: " << c.digest << "\n";
  out << "parts: " << c.parts.size() << "\n";
  for (std::size_t k = 0; k < c.parts.size(); ++k) {
    const auto& part = c.parts[k];
    out << "part " << (k + 1) << "\n";
    out << "S:";
    for (const auto& x : part.s) out << " " << x;
    out << "\n";
    out << "open:";
    for (const auto& x : part.open) out << " " << x;
    out << "\n";
    out << "steps: " << part.steps.size() << "\n";
    for (const auto& step : part.steps) {
      out << "step:";
      for (const auto& v : step) out << " " << v;
      out << "\n";
    }
  }
  out << "end\n";
  return out.str();
}

inline SectionCertificate parse_section_certificate(const std::string& text) {
  detail::LineReader in(text);
  auto [head, head_no] = in.require("section-certificate");
  if (head != "section-certificate") throw ParseError("line " + std::to_string(head_no) + ": not a section certificate");
  SectionCertificate cert;
  {
    auto [l, n] = in.require("poset-digest");
    cert.digest = detail::field_after(l, "poset-digest:", n);
  }
  {
    auto [l, n] = in.require("m");
    cert.m = detail::int_field(l, "m:", n);
  }
  int parts = 0;
  {
    auto [l, n] = in.require("parts");
    parts = detail::int_field(l, "parts:", n);
    if (parts < 0) throw ParseError("line " + std::to_string(n) + ": negative part count");
  }
  for (int k = 0; k < parts; ++k) {
    auto [l, n] = in.require("part");
    if (l != "part " + std::to_string(k + 1))
      throw ParseError("line " + std::to_string(n) + ": expected 'part " + std::to_string(k + 1) + "'");
    SectionPart part;
    {
      auto [sl, sn] = in.require("S:");
      for (const auto& tok : detail::split_ws(detail::field_after(sl, "S:", sn)))
        part.s.push_back(detail::parse_pair_token(tok, sn));
    }
    {
      auto [ol, on] = in.require("open:");
      for (const auto& tok : detail::split_ws(detail::field_after(ol, "open:", on)))
        part.open.push_back(detail::parse_pair_token(tok, on));
    }
    for (std::size_t i = 0; i < part.open.size(); ++i) {
      auto [rl, rn] = in.require("section row");
      std::size_t arrow = rl.find("->");
      if (arrow == std::string::npos) throw ParseError("line " + std::to_string(rn) + ": expected '->' in section row");
      auto key = detail::parse_pair_token(detail::trim(rl.substr(0, arrow)), rn);
      if (key != part.open[i])
        throw ParseError("line " + std::to_string(rn) + ": row order must follow the open list");
      part.rows.push_back(detail::parse_bracket_list(rl.substr(arrow + 2), rn));
    }
    cert.parts.push_back(std::move(part));
  }
  auto [tail, tail_no] = in.require("end");
  if (tail != "end") throw ParseError("line " + std::to_string(tail_no) + ": expected 'end'");
  return cert;
}

inline CatCertificate parse_cat_certificate(const std::string& text) {
  detail::LineReader in(text);
  auto [head, head_no] = in.require("cat-certificate");
  if (head != "cat-certificate") throw ParseError("line " + std::to_string(head_no) + ": not a cat certificate");
  CatCertificate cert;
  {
    auto [l, n] = in.require("poset-digest");
    cert.digest = detail::field_after(l, "poset-digest:", n);
  }
  int parts = 0;
  {
    auto [l, n] = in.require("parts");
    parts = detail::int_field(l, "parts:", n);
    if (parts < 0) throw ParseError("line " + std::to_string(n) + ": negative part count");
  }
  for (int k = 0; k < parts; ++k) {
    auto [l, n] = in.require("part");
    if (l != "part " + std::to_string(k + 1))
      throw ParseError("line " + std::to_string(n) + ": expected 'part " + std::to_string(k + 1) + "'");
    CatPart part;
    {
      auto [sl, sn] = in.require("S:");
      part.s = detail::split_ws(detail::field_after(sl, "S:", sn));
    }
    {
      auto [ol, on] = in.require("open:");
      part.open = detail::split_ws(detail::field_after(ol, "open:", on));
    }
    int steps = 0;
    {
      auto [tl, tn] = in.require("steps:");
      steps = detail::int_field(tl, "steps:", tn);
      if (steps < 0) throw ParseError("line " + std::to_string(tn) + ": negative step count");
    }
    for (int t = 0; t < steps; ++t) {
      auto [wl, wn] = in.require("step:");
      part.steps.push_back(detail::split_ws(detail::field_after(wl, "step:", wn)));
    }
    cert.parts.push_back(std::move(part));
  }
  auto [tail, tail_no] = in.require("end");
  if (tail != "end") throw ParseError("line " + std::to_string(tail_no) + ": expected 'end'");
  return cert;
}

// Detects the certificate kind from the first nonblank line.
inline std::string certificate_kind(const std::string& text) {
  detail::LineReader in(text);
  auto head = in.next();
  if (!head) throw ParseError("empty certificate");
  return head->first;
}

// Definitional check of a section certificate: digest binding, S inside
// Max(P) x Max(P), listed opens equal to recomputed down-closures, one
// zigzag row per open element with matching endpoints, order preservation
// of each table into the pointwise path order, and coverage of all maximal
// pairs. Shares only poset primitives with the search code.
inline VerifyResult verify_certificate(const FinitePoset& p, const SectionCertificate& cert) {
  if (cert.digest != poset_digest(p)) return verify_fail("poset digest mismatch");
  if (cert.m < 0) return verify_fail("negative fence length");
  if (cert.parts.empty()) return verify_fail("certificate has no parts");
  FinitePoset pp = product(p, p);
  int n = p.size();
  auto pid = [&](const std::string& x, const std::string& y, int* out) {
    if (!p.has_label(x) || !p.has_label(y)) return false;
    *out = p.index_of(x) * n + p.index_of(y);
    return true;
  };
  Bits covered(static_cast<std::size_t>(pp.size()));
  Bits max_pp = pp.maximal();
  for (std::size_t k = 0; k < cert.parts.size(); ++k) {
    const auto& part = cert.parts[k];
    std::string where = "part " + std::to_string(k + 1) + ": ";
    if (part.s.empty()) return verify_fail(where + "empty S");
    Bits s_bits(static_cast<std::size_t>(pp.size()));
    for (const auto& [x, y] : part.s) {
      int id = 0;
      if (!pid(x, y, &id)) return verify_fail(where + "unknown element in S: (" + x + "," + y + ")");
      if (!max_pp.test(static_cast<std::size_t>(id)))
        return verify_fail(where + "S contains the non-maximal pair (" + x + "," + y + ")");
      s_bits.set(static_cast<std::size_t>(id));
    }
    Bits open_bits = pp.down_closure(s_bits);
    if (part.open.size() != open_bits.count()) return verify_fail(where + "open list is not the down-closure of S");
    std::vector<int> open_ids;
    for (const auto& [x, y] : part.open) {
      int id = 0;
      if (!pid(x, y, &id)) return verify_fail(where + "unknown element in open: (" + x + "," + y + ")");
      if (!open_bits.test(static_cast<std::size_t>(id)))
        return verify_fail(where + "open list contains (" + x + "," + y + ") outside the down-closure of S");
      open_ids.push_back(id);
    }
    for (std::size_t i = 1; i < open_ids.size(); ++i)
      if (open_ids[i - 1] >= open_ids[i]) return verify_fail(where + "open list is not sorted");
    if (part.rows.size() != part.open.size()) return verify_fail(where + "row count differs from open size");
    std::vector<std::vector<int>> table;
    for (std::size_t i = 0; i < part.rows.size(); ++i) {
      const auto& row = part.rows[i];
      std::string at = where + "row (" + part.open[i].first + "," + part.open[i].second + "): ";
      if (static_cast<int>(row.size()) != cert.m + 1) return verify_fail(at + "path length differs from m");
      std::vector<int> vals;
      for (const auto& v : row) {
        if (!p.has_label(v)) return verify_fail(at + "unknown element '" + v + "'");
        vals.push_back(p.index_of(v));
      }
      for (std::size_t t = 0; t + 1 < vals.size(); ++t) {
        bool ok = (t % 2 == 0) ? p.leq(vals[t], vals[t + 1]) : p.leq(vals[t + 1], vals[t]);
        if (!ok) return verify_fail(at + "not a zigzag at step " + std::to_string(t));
      }
      if (p.label(vals.front()) != part.open[i].first || p.label(vals.back()) != part.open[i].second)
        return verify_fail(at + "endpoints do not match the element");
      table.push_back(std::move(vals));
    }
    for (std::size_t i = 0; i < open_ids.size(); ++i)
      for (std::size_t j = 0; j < open_ids.size(); ++j) {
        if (!pp.leq(open_ids[i], open_ids[j])) continue;
        for (int t = 0; t <= cert.m; ++t)
          if (!p.leq(table[i][static_cast<std::size_t>(t)], table[j][static_cast<std::size_t>(t)]))
            return verify_fail(where + "section not order-preserving between (" + part.open[i].first + "," +
                               part.open[i].second + ") and (" + part.open[j].first + "," + part.open[j].second + ")");
      }
    covered |= s_bits;
  }
  max_pp -= covered;
  if (max_pp.any()) {
    auto miss = max_pp.find_first();
    return verify_fail("maximal pair " + pp.label(static_cast<int>(miss)) + " not covered by any part");
  }
  return {};
}

// Definitional check of a cat certificate: digest binding, S inside Max(P),
// listed opens equal to recomputed down-closures, each part carrying a fence
// of monotone tables from the inclusion to a constant with uniformly
// comparable consecutive steps, and coverage of Max(P).
inline VerifyResult verify_cat_certificate(const FinitePoset& p, const CatCertificate& cert) {
  if (cert.digest != poset_digest(p)) return verify_fail("poset digest mismatch");
  if (cert.parts.empty()) return verify_fail("certificate has no parts");
  Bits covered(static_cast<std::size_t>(p.size()));
  Bits max_p = p.maximal();
  for (std::size_t k = 0; k < cert.parts.size(); ++k) {
    const auto& part = cert.parts[k];
    std::string where = "part " + std::to_string(k + 1) + ": ";
    if (part.s.empty()) return verify_fail(where + "empty S");
    Bits s_bits(static_cast<std::size_t>(p.size()));
    for (const auto& x : part.s) {
      if (!p.has_label(x)) return verify_fail(where + "unknown element in S: '" + x + "'");
      int id = p.index_of(x);
      if (!max_p.test(static_cast<std::size_t>(id))) return verify_fail(where + "S contains the non-maximal element '" + x + "'");
      s_bits.set(static_cast<std::size_t>(id));
    }
    Bits open_bits = p.down_closure(s_bits);
    if (part.open.size() != open_bits.count()) return verify_fail(where + "open list is not the down-closure of S");
    std::vector<int> open_ids;
    for (const auto& x : part.open) {
      if (!p.has_label(x)) return verify_fail(where + "unknown element in open: '" + x + "'");
      int id = p.index_of(x);
      if (!open_bits.test(static_cast<std::size_t>(id)))
        return verify_fail(where + "open list contains '" + x + "' outside the down-closure of S");
      open_ids.push_back(id);
    }
    for (std::size_t i = 1; i < open_ids.size(); ++i)
      if (open_ids[i - 1] >= open_ids[i]) return verify_fail(where + "open list is not sorted");
    if (part.steps.empty()) return verify_fail(where + "no fence steps");
    std::vector<std::vector<int>> steps;
    for (std::size_t t = 0; t < part.steps.size(); ++t) {
      const auto& raw = part.steps[t];
      std::string at = where + "step " + std::to_string(t) + ": ";
      if (raw.size() != part.open.size()) return verify_fail(at + "table size differs from open size");
      std::vector<int> vals;
      for (const auto& v : raw) {
        if (!p.has_label(v)) return verify_fail(at + "unknown element '" + v + "'");
        vals.push_back(p.index_of(v));
      }
      for (std::size_t i = 0; i < open_ids.size(); ++i)
        for (std::size_t j = 0; j < open_ids.size(); ++j)
          if (p.leq(open_ids[i], open_ids[j]) && !p.leq(vals[i], vals[j]))
            return verify_fail(at + "table is not order-preserving");
      steps.push_back(std::move(vals));
    }
    for (std::size_t i = 0; i < open_ids.size(); ++i)
      if (steps.front()[i] != open_ids[i]) return verify_fail(where + "first step is not the inclusion");
    for (std::size_t i = 1; i < steps.back().size(); ++i)
      if (steps.back()[i] != steps.back()[0]) return verify_fail(where + "last step is not constant");
    for (std::size_t t = 0; t + 1 < steps.size(); ++t) {
      bool all_up = true, all_down = true;
      for (std::size_t i = 0; i < open_ids.size(); ++i) {
        if (!p.leq(steps[t][i], steps[t + 1][i])) all_up = false;
        if (!p.leq(steps[t + 1][i], steps[t][i])) all_down = false;
      }
      if (!all_up && !all_down)
        return verify_fail(where + "steps " + std::to_string(t) + " and " + std::to_string(t + 1) +
                           " are not uniformly comparable");
    }
    covered |= s_bits;
  }
  max_p -= covered;
  if (max_p.any()) {
    auto miss = max_p.find_first();
    return verify_fail("maximal element '" + p.label(static_cast<int>(miss)) + "' not covered by any part");
  }
  return {};
}

}  // namespace fintopo

#pragma once

#include <cctype>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fintopo/errors.hpp"
#include "fintopo/poset.hpp"

namespace fintopo {

// Names in interchange files stay parseable inside certificate rows.
inline bool valid_input_name(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s) {
    bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.' || c == '+' || c == '-';
    if (!ok) return false;
  }
  return true;
}

namespace detail {

inline std::vector<std::string> tokens_of(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace detail

// One directive per line: `element <name>` or `cover <a> < <b>`.
inline FinitePoset parse_poset_text(const std::string& text) {
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> covers;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    auto toks = detail::tokens_of(line);
    if (toks.empty()) continue;
    const std::string where = "line " + std::to_string(lineno);
    if (toks[0] == "element") {
      if (toks.size() != 2) throw ParseError(where + ": expected `element <name>`");
      if (!valid_input_name(toks[1])) throw ParseError(where + ": invalid element name '" + toks[1] + "'");
      labels.push_back(toks[1]);
    } else if (toks[0] == "cover") {
      if (toks.size() != 4 || toks[2] != "<") throw ParseError(where + ": expected `cover <a> < <b>`");
      covers.emplace_back(toks[1], toks[3]);
    } else {
      throw ParseError(where + ": unknown directive '" + toks[0] + "'");
    }
  }
  if (labels.empty()) throw ParseError("input defines no elements");
  return FinitePoset::from_hasse(labels, covers);
}

inline std::string serialize_poset_text(const FinitePoset& p) {
  std::ostringstream out;
  for (int i = 0; i < p.size(); ++i) out << "element " << p.label(i) << "\n";
  for (const auto& [a, b] : p.cover_pairs()) out << "cover " << p.label(a) << " < " << p.label(b) << "\n";
  return out.str();
}

inline FinitePoset parse_poset_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object() || !j.contains("elements") || !j.contains("covers"))
    throw ParseError("poset object needs \"elements\" and \"covers\" arrays");
  std::vector<std::string> labels;
  std::vector<std::pair<std::string, std::string>> covers;
  for (const auto& e : j.at("elements")) {
    if (!e.is_string()) throw ParseError("elements must be strings");
    std::string name = e.get<std::string>();
    if (!valid_input_name(name)) throw ParseError("invalid element name '" + name + "'");
    labels.push_back(std::move(name));
  }
  for (const auto& c : j.at("covers")) {
    if (!c.is_array() || c.size() != 2 || !c[0].is_string() || !c[1].is_string())
      throw ParseError("covers must be [lower, upper] string pairs");
    covers.emplace_back(c[0].get<std::string>(), c[1].get<std::string>());
  }
  if (labels.empty()) throw ParseError("input defines no elements");
  return FinitePoset::from_hasse(labels, covers);
}

inline nlohmann::ordered_json serialize_poset_json(const FinitePoset& p) {
  nlohmann::ordered_json j;
  j["elements"] = nlohmann::ordered_json::array();
  for (int i = 0; i < p.size(); ++i) j["elements"].push_back(p.label(i));
  j["covers"] = nlohmann::ordered_json::array();
  for (const auto& [a, b] : p.cover_pairs()) j["covers"].push_back({p.label(a), p.label(b)});
  return j;
}

// Accepts the text format and its JSON mirror interchangeably.
inline FinitePoset parse_poset(const std::string& content) {
  for (char c : content) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    return c == '{' ? parse_poset_json(content) : parse_poset_text(content);
  }
  throw ParseError("empty input");
}

inline FinitePoset load_poset_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot open file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_poset(buf.str());
}

// FNV-1a over the canonical text serialization; format-independent.
inline std::string poset_digest(const FinitePoset& p) {
  const std::string canon = serialize_poset_text(p);
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : canon) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

}  // namespace fintopo

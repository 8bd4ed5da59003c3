#pragma once

#include <chrono>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "fintopo/certificate.hpp"
#include "fintopo/cohomology.hpp"
#include "fintopo/complexity.hpp"
#include "fintopo/homotopy.hpp"
#include "fintopo/order_complex.hpp"
#include "fintopo/poset_io.hpp"

namespace fintopo {

struct ReportOptions {
  int m_max = -1;  // -1: use |P|
  Limits limits;
};

struct Report {
  nlohmann::ordered_json structured;
  std::string text;
  std::vector<std::pair<std::string, double>> timings;  // stage name, seconds
};

namespace detail {

class StageClock {
 public:
  explicit StageClock(std::vector<std::pair<std::string, double>>& sink) : sink_(sink) {}
  template <typename F>
  auto run(const std::string& name, F&& f) {
    auto t0 = std::chrono::steady_clock::now();
    auto result = f();
    auto t1 = std::chrono::steady_clock::now();
    sink_.emplace_back(name, std::chrono::duration<double>(t1 - t0).count());
    return result;
  }

 private:
  std::vector<std::pair<std::string, double>>& sink_;
};

inline std::string bracket_text(const CcResult& cc) {
  std::string out = "[" + std::to_string(cc.lower) + ", ";
  out += cc.upper ? std::to_string(*cc.upper) + "]" : "inf)";
  return out;
}

inline std::string trace_text(const CcResult& cc) {
  std::string out;
  for (std::size_t m = 0; m < cc.trace.size(); ++m) {
    if (m) out += " ";
    out += "m=" + std::to_string(m) + ":" + (cc.trace[m] ? std::to_string(*cc.trace[m]) : "inf");
  }
  return out;
}

inline nlohmann::ordered_json cc_json(const CcResult& cc, int m_max) {
  nlohmann::ordered_json j;
  j["lower"] = cc.lower;
  j["upper"] = cc.upper ? nlohmann::ordered_json(*cc.upper) : nlohmann::ordered_json(nullptr);
  j["m_at_upper"] = cc.m_at_upper ? nlohmann::ordered_json(*cc.m_at_upper) : nlohmann::ordered_json(nullptr);
  j["exact"] = cc.exact;
  j["m_max"] = m_max;
  nlohmann::ordered_json trace = nlohmann::ordered_json::array();
  for (const auto& v : cc.trace) trace.push_back(v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr));
  j["trace"] = std::move(trace);
  return j;
}

}  // namespace detail

// The full pipeline on one poset. Stage timings go to the side channel, never
// into the rendered output, so reports stay byte-identical across runs.
inline Report full_report(const FinitePoset& p, const ReportOptions& opts = {}) {
  Report rep;
  detail::StageClock clock(rep.timings);
  int m_max = opts.m_max >= 0 ? opts.m_max : p.size();
  const Limits& lim = opts.limits;

  nlohmann::ordered_json j;
  std::ostringstream text;

  j["input"]["digest"] = poset_digest(p);
  j["input"]["elements"] = p.size();
  j["input"]["covers"] = static_cast<int>(p.cover_pairs().size());
  text << "poset: " << p.size() << " elements, " << p.cover_pairs().size() << " cover relations, digest "
       << poset_digest(p) << "\n";

  bool connected = clock.run("path-connected", [&] { return is_path_connected(p); });
  j["path_connected"] = connected;
  text << "path-connected: " << (connected ? "yes" : "no") << "\n";

  Core core = clock.run("core", [&] { return core_of(p); });
  j["core"]["size"] = core.poset.size();
  j["core"]["removed"] = static_cast<int>(core.trace.size());
  text << "core: " << core.poset.size() << " elements (" << core.trace.size() << " beat points removed)\n";

  int max_count = static_cast<int>(p.maximal().count());
  j["max_count"] = max_count;
  text << "max elements: " << max_count << "\n";

  SimplicialComplex k = clock.run("order-complex", [&] { return order_complex(p, lim); });
  auto f = f_vector(k);
  int chi = euler_characteristic(k);
  j["complex"]["f_vector"] = f;
  j["complex"]["euler"] = chi;
  text << "complex: f = (";
  for (std::size_t i = 0; i < f.size(); ++i) text << (i ? ", " : "") << f[i];
  text << "), euler " << chi << "\n";

  CohomRing ring = clock.run("cohomology", [&] { return cohomology_ring(k, lim); });
  j["cohomology"]["betti"] = ring.betti;
  text << "betti (GF(2)): (";
  for (std::size_t i = 0; i < ring.betti.size(); ++i) text << (i ? ", " : "") << ring.betti[i];
  text << ")\n";

  if (!connected) {
    j["cat"] = nullptr;
    j["cc"] = nullptr;
    j["cohomology"]["z"] = nullptr;
    j["certificates"] = nullptr;
    text << "cat: undefined (not path-connected)\n";
    text << "cc: undefined (not path-connected)\n";
    rep.structured = std::move(j);
    rep.text = text.str();
    return rep;
  }

  auto zd = clock.run("zero-divisors", [&] { return zero_divisor_cup_length(k, ring, lim); });
  j["cohomology"]["z"] = zd.z;
  j["cohomology"]["z_plus_one"] = zd.z + 1;
  j["cohomology"]["witness_verified"] = zd.z == 0 || zd.witness_verified;
  text << "zero-divisor cup length: z = " << zd.z << ", z+1 = " << (zd.z + 1) << "\n";

  CatResult cat = clock.run("cat", [&] { return cat_of(p, lim); });
  j["cat"]["value"] = cat.value;
  text << "cat: " << cat.value << "\n";

  ComplexityEngine eng(p, lim);
  CcResult cc = clock.run("cc", [&] { return eng.cc(m_max, zd.z + 1); });
  j["cc"] = detail::cc_json(cc, m_max);
  text << "cc: " << detail::bracket_text(cc) << (cc.exact ? " exact" : "") << ", m_max " << m_max << "\n";
  text << "cc trace: " << detail::trace_text(cc) << "\n";
  if (cc.m_at_upper) text << "cc upper attained at m = " << *cc.m_at_upper << "\n";

  int cat_pp = clock.run("cat-product", [&] { return cat_of(product(p, p), lim).value; });
  int max_sq = max_count * max_count;
  bool chain = true;
  if (cc.upper && cat.value > *cc.upper) chain = false;
  if (cc.lower > cat_pp) chain = false;
  if (cat_pp > max_sq) chain = false;
  j["inequalities"]["cat_p"] = cat.value;
  j["inequalities"]["cc_lower"] = cc.lower;
  j["inequalities"]["cc_upper"] = cc.upper ? nlohmann::ordered_json(*cc.upper) : nlohmann::ordered_json(nullptr);
  j["inequalities"]["cat_pp"] = cat_pp;
  j["inequalities"]["max_sq"] = max_sq;
  j["inequalities"]["chain_holds"] = chain;
  text << "inequalities: cat(P) " << cat.value << " <= cc " << detail::bracket_text(cc) << " <= cat(PxP) " << cat_pp
       << " <= " << max_sq << (chain ? " : holds" : " : VIOLATED") << "\n";
  bool z_bound_ok = !cc.upper || zd.z + 1 <= *cc.upper;
  j["inequalities"]["z_bound_holds"] = z_bound_ok;
  text << "z bound: z+1 = " << (zd.z + 1) << " <= cc upper "
       << (cc.upper ? std::to_string(*cc.upper) : std::string("inf")) << (z_bound_ok ? " : holds" : " : VIOLATED")
       << "\n";

  bool cat_cert_ok = verify_cat_certificate(p, cat.certificate).ok;
  bool cc_cert_ok = !cc.certificate || verify_certificate(p, *cc.certificate).ok;
  j["certificates"]["cat_verified"] = cat_cert_ok;
  j["certificates"]["cat"] = serialize_certificate(cat.certificate);
  if (cc.certificate) {
    j["certificates"]["cc_verified"] = cc_cert_ok;
    j["certificates"]["cc"] = serialize_certificate(*cc.certificate);
  } else {
    j["certificates"]["cc_verified"] = nullptr;
    j["certificates"]["cc"] = nullptr;
  }
  text << "certificates: cat " << (cat_cert_ok ? "verified" : "FAILED") << ", cc "
       << (cc.certificate ? (cc_cert_ok ? "verified" : "FAILED") : "none") << "\n";
  text << "cat certificate:\n" << serialize_certificate(cat.certificate);
  if (cc.certificate) text << "section certificate:\n" << serialize_certificate(*cc.certificate);

  rep.structured = std::move(j);
  rep.text = text.str();
  return rep;
}

}  // namespace fintopo

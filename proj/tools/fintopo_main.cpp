#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "fintopo/certificate.hpp"
#include "fintopo/cohomology.hpp"
#include "fintopo/complexity.hpp"
#include "fintopo/corpus.hpp"
#include "fintopo/errors.hpp"
#include "fintopo/homotopy.hpp"
#include "fintopo/order_complex.hpp"
#include "fintopo/poset.hpp"
#include "fintopo/poset_io.hpp"
#include "fintopo/report.hpp"
#include "fintopo/set_cover.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw fintopo::ParseError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << content;
}

void require_path_connected(const fintopo::FinitePoset& p) {
  if (!fintopo::is_path_connected(p)) throw std::runtime_error("poset is not path connected");
}

nlohmann::ordered_json cc_to_json(const fintopo::CcResult& cc, int m_max) {
  nlohmann::ordered_json j;
  j["lower"] = cc.lower;
  j["upper"] = cc.upper ? nlohmann::ordered_json(*cc.upper) : nlohmann::ordered_json(nullptr);
  j["m_at_upper"] = cc.m_at_upper ? nlohmann::ordered_json(*cc.m_at_upper) : nlohmann::ordered_json(nullptr);
  j["exact"] = cc.exact;
  j["m_max"] = m_max;
  auto trace = nlohmann::ordered_json::array();
  for (const auto& v : cc.trace) trace.push_back(v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr));
  j["trace"] = std::move(trace);
  return j;
}

struct SuiteChecker {
  int failures = 0;
  void operator()(bool ok, const std::string& name) {
    std::cout << (ok ? "ok " : "FAIL ") << name << "\n";
    if (!ok) ++failures;
  }
};

int run_paper_suite(const fintopo::Limits& lim) {
  using namespace fintopo;
  SuiteChecker check;

  FinitePoset circle = circle_model();
  {
    ComplexityEngine eng(circle, lim);
    CcResult cc = eng.cc(4);
    check(!cc.trace[0].has_value(), "circle cc_0 = inf");
    check(cc.upper && *cc.upper == 4, "circle cc upper = 4");
    check(cc.lower == 4, "circle cc lower = 4");
    check(cc.exact, "circle cc exact");
    check(cc.certificate && verify_certificate(circle, *cc.certificate).ok, "circle cc certificate verifies");

    SimplicialComplex k = order_complex(circle, lim);
    auto f = f_vector(k);
    check(f == std::vector<int>{4, 4}, "circle f-vector (4,4)");
    check(euler_characteristic(k) == 0, "circle euler 0");
    CohomRing ring = cohomology_ring(k, lim);
    check(ring.betti == std::vector<int>{1, 1}, "circle betti (1,1)");
    auto zd = zero_divisor_cup_length(k, ring, lim);
    check(zd.z == 1, "circle zero-divisor cup length 1");
    check(zd.z + 1 <= *cc.upper, "circle z+1 <= cc");
    check(zd.witness_verified, "circle zero-divisor witness verified");
  }

  FinitePoset remark = remark_poset();
  {
    CatResult cat = cat_of(remark, lim);
    check(cat.value == 2, "remark cat = 2");
    check(verify_cat_certificate(remark, cat.certificate).ok, "remark cat certificate verifies");
    ComplexityEngine eng(remark, lim);
    CcResult cc = eng.cc(4);
    check(cc.upper && *cc.upper <= 4, "remark cc upper <= 4");
  }

  FinitePoset rop = remark_opposite();
  {
    CatResult cat = cat_of(rop, lim);
    check(cat.value == 5, "remark opposite cat = 5");
    ComplexityEngine eng(rop, lim);
    CcResult cc = eng.cc(2);
    check(cc.lower >= 5, "remark opposite cc lower >= 5");
  }

  for (const auto& entry : {std::pair<std::string, FinitePoset>{"fence2", fence_poset(2)},
                            {"fence3", fence_poset(3)},
                            {"chain3", chain_poset(3)}}) {
    check(is_contractible(entry.second), entry.first + " contractible");
    check(cat_of(entry.second, lim).value == 1, entry.first + " cat = 1");
    ComplexityEngine eng(entry.second, lim);
    CcResult cc = eng.cc(2);
    check(cc.lower == 1 && cc.upper && *cc.upper == 1 && cc.exact, entry.first + " cc = (1,1) exact");
  }

  if (check.failures) {
    std::cout << check.failures << " checks failed\n";
    return 1;
  }
  std::cout << "all checks passed\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact homotopy invariants of finite topological spaces"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t limit = 2'000'000;
  int threads = 1;
  std::string format = "text";
  app.add_option("--limit", limit, "SizeLimit ceiling (elements)");
  app.add_option("--threads", threads, "worker threads");
  app.add_option("--format", format, "output format")->check(CLI::IsMember({"text", "structured"}));

  auto* sc_report = app.add_subcommand("report", "full invariant pipeline on a poset file");
  std::string report_file;
  int report_m_max = -1;
  sc_report->add_option("file", report_file)->required();
  sc_report->add_option("--m-max", report_m_max, "largest fence length (default: element count)");

  auto* sc_cc = app.add_subcommand("cc", "CC bracket with m trace");
  std::string cc_file, cc_cert_out;
  int cc_m_max = -1;
  sc_cc->add_option("file", cc_file)->required();
  sc_cc->add_option("--m-max", cc_m_max, "largest fence length (default: element count)");
  sc_cc->add_option("--cert-out", cc_cert_out, "write the section certificate to a file");

  auto* sc_cat = app.add_subcommand("cat", "LS-category with certificate");
  std::string cat_file, cat_cert_out;
  sc_cat->add_option("file", cat_file)->required();
  sc_cat->add_option("--cert-out", cat_cert_out, "write the cat certificate to a file");

  auto* sc_core = app.add_subcommand("core", "Stong core and removal trace");
  std::string core_file;
  sc_core->add_option("file", core_file)->required();

  auto* sc_complex = app.add_subcommand("complex", "order complex export");
  std::string complex_file, complex_fmt = "facet-list";
  sc_complex->add_option("file", complex_file)->required();
  sc_complex->add_option("--export", complex_fmt, "facet-list or structured");

  auto* sc_verify = app.add_subcommand("verify", "check a certificate against a poset file");
  std::string verify_cert, verify_poset;
  sc_verify->add_option("certfile", verify_cert)->required();
  sc_verify->add_option("file", verify_poset)->required();

  auto* sc_suite = app.add_subcommand("paper-suite", "assert the built-in corpus values");

  CLI11_PARSE(app, argc, argv);

  fintopo::Limits lim{limit, threads};
  bool structured = format == "structured";

  try {
    if (sc_report->parsed()) {
      fintopo::FinitePoset p = fintopo::load_poset_file(report_file);
      fintopo::ReportOptions opts;
      opts.m_max = report_m_max;
      opts.limits = lim;
      fintopo::Report rep = fintopo::full_report(p, opts);
      if (structured)
        std::cout << rep.structured.dump(2) << "\n";
      else
        std::cout << rep.text;
      for (const auto& [stage, seconds] : rep.timings) std::cerr << "timing " << stage << ": " << seconds << "s\n";
      return 0;
    }
    if (sc_cc->parsed()) {
      fintopo::FinitePoset p = fintopo::load_poset_file(cc_file);
      require_path_connected(p);
      int m_max = cc_m_max >= 0 ? cc_m_max : p.size();
      fintopo::ComplexityEngine eng(p, lim);
      fintopo::CcResult cc = eng.cc(m_max);
      std::string cert_text = cc.certificate ? fintopo::serialize_certificate(*cc.certificate) : "";
      if (!cc_cert_out.empty() && cc.certificate) write_file(cc_cert_out, cert_text);
      if (structured) {
        nlohmann::ordered_json j = cc_to_json(cc, m_max);
        j["certificate"] = cc.certificate ? nlohmann::ordered_json(cert_text) : nlohmann::ordered_json(nullptr);
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "cc: " << fintopo::detail::bracket_text(cc) << (cc.exact ? " exact" : "") << "\n";
        std::cout << "trace: " << fintopo::detail::trace_text(cc) << "\n";
        if (cc.m_at_upper) std::cout << "m at upper: " << *cc.m_at_upper << "\n";
        if (cc.certificate && cc_cert_out.empty()) std::cout << cert_text;
      }
      return 0;
    }
    if (sc_cat->parsed()) {
      fintopo::FinitePoset p = fintopo::load_poset_file(cat_file);
      require_path_connected(p);
      fintopo::CatResult cat = fintopo::cat_of(p, lim);
      std::string cert_text = fintopo::serialize_certificate(cat.certificate);
      if (!cat_cert_out.empty()) write_file(cat_cert_out, cert_text);
      if (structured) {
        nlohmann::ordered_json j;
        j["value"] = cat.value;
        j["certificate"] = cert_text;
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << "cat: " << cat.value << "\n";
        if (cat_cert_out.empty()) std::cout << cert_text;
      }
      return 0;
    }
    if (sc_core->parsed()) {
      fintopo::FinitePoset p = fintopo::load_poset_file(core_file);
      fintopo::Core core = fintopo::core_of(p);
      if (structured) {
        nlohmann::ordered_json j;
        auto removed = nlohmann::ordered_json::array();
        for (const auto& [x, y] : core.trace)
          removed.push_back(nlohmann::ordered_json::array({p.label(x), p.label(y)}));
        j["removed"] = std::move(removed);
        j["core"] = fintopo::serialize_poset_json(core.poset);
        std::cout << j.dump(2) << "\n";
      } else {
        for (const auto& [x, y] : core.trace)
          std::cout << "removed " << p.label(x) << " beaten-by " << p.label(y) << "\n";
        std::cout << "core:\n" << fintopo::serialize_poset_text(core.poset);
      }
      return 0;
    }
    if (sc_complex->parsed()) {
      fintopo::FinitePoset p = fintopo::load_poset_file(complex_file);
      fintopo::SimplicialComplex k = fintopo::order_complex(p, lim);
      std::cout << fintopo::export_complex(k, complex_fmt);
      return 0;
    }
    if (sc_verify->parsed()) {
      std::string text = read_file(verify_cert);
      fintopo::FinitePoset p = fintopo::load_poset_file(verify_poset);
      std::string kind = fintopo::certificate_kind(text);
      fintopo::VerifyResult res;
      if (kind == "section-certificate")
        res = fintopo::verify_certificate(p, fintopo::parse_section_certificate(text));
      else if (kind == "cat-certificate")
        res = fintopo::verify_cat_certificate(p, fintopo::parse_cat_certificate(text));
      else
        throw fintopo::ParseError("unknown certificate kind '" + kind + "'");
      if (structured) {
        nlohmann::ordered_json j;
        j["ok"] = res.ok;
        j["reason"] = res.ok ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(res.reason);
        std::cout << j.dump(2) << "\n";
      } else {
        std::cout << (res.ok ? "ok" : "invalid: " + res.reason) << "\n";
      }
      return res.ok ? 0 : 1;
    }
    if (sc_suite->parsed()) return run_paper_suite(lim);
  } catch (const fintopo::SizeLimitError& e) {
    std::cerr << "size limit: " << e.what() << "\n";
    return 3;
  } catch (const fintopo::ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}

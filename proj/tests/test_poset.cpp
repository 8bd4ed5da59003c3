#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "fintopo/corpus.hpp"
#include "fintopo/poset.hpp"
#include "fintopo/poset_io.hpp"

#include "support/oracles.hpp"

using fintopo::FinitePoset;

namespace {

std::set<std::pair<std::string, std::string>> labeled_covers(const FinitePoset& p) {
  std::set<std::pair<std::string, std::string>> out;
  for (const auto& [a, b] : p.cover_pairs()) out.insert({p.label(a), p.label(b)});
  return out;
}

}  // namespace

TEST_CASE("fence poset alternates upward and downward covers") {
  auto f = fintopo::fence_poset(3);
  REQUIRE(f.size() == 4);
  REQUIRE(labeled_covers(f) == std::set<std::pair<std::string, std::string>>{
                                   {"0", "1"}, {"2", "1"}, {"2", "3"}});
  REQUIRE(f.leq(0, 1));
  REQUIRE(f.leq(2, 1));
  REQUIRE(f.leq(2, 3));
  REQUIRE_FALSE(f.comparable(0, 2));
  REQUIRE_FALSE(f.comparable(0, 3));
  REQUIRE_FALSE(f.comparable(1, 3));
}

TEST_CASE("chain poset is a total order with transitive closure") {
  auto c = fintopo::chain_poset(4);
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b) REQUIRE(c.leq(a, b) == (a <= b));
  REQUIRE(c.cover_pairs() == std::vector<std::pair<int, int>>{{0, 1}, {1, 2}, {2, 3}});
  REQUIRE(c.maximal().count() == 1);
  REQUIRE(c.minimal().count() == 1);
}

TEST_CASE("antichain has no covers and every element is extremal") {
  auto a = fintopo::antichain_poset(3);
  REQUIRE(a.cover_pairs().empty());
  REQUIRE(a.maximal().count() == 3);
  REQUIRE(a.minimal().count() == 3);
  REQUIRE_FALSE(a.comparable(0, 2));
}

TEST_CASE("circle model extremes and closures") {
  auto s = fintopo::circle_model();
  REQUIRE(s.labels() == std::vector<std::string>{"a", "b", "c", "d"});
  REQUIRE(s.minimal() == fintopo::bits_of(4, {0, 1}));
  REQUIRE(s.maximal() == fintopo::bits_of(4, {2, 3}));

  auto down_c = s.down_closure(fintopo::bits_of(4, {2}));
  REQUIRE(down_c == fintopo::bits_of(4, {0, 1, 2}));
  auto up_a = s.up_closure(fintopo::bits_of(4, {0}));
  REQUIRE(up_a == fintopo::bits_of(4, {0, 2, 3}));

  REQUIRE(s.is_down_closed(down_c));
  REQUIRE_FALSE(s.is_down_closed(fintopo::bits_of(4, {2})));
}

TEST_CASE("open sets are the down-closed subsets") {
  auto s = fintopo::circle_model();
  auto open = fintopo::OpenSet::generated_by(s, fintopo::bits_of(4, {3}));
  REQUIRE(open.members == fintopo::bits_of(4, {0, 1, 3}));
  REQUIRE_NOTHROW(fintopo::OpenSet::checked(s, open.members));
  REQUIRE_THROWS_AS(fintopo::OpenSet::checked(s, fintopo::bits_of(4, {3})), std::invalid_argument);
}

TEST_CASE("induced subposet keeps ambient ids and labels") {
  auto s = fintopo::circle_model();
  auto ind = s.induced(fintopo::bits_of(4, {0, 1, 2}));
  REQUIRE(ind.kept == std::vector<int>{0, 1, 2});
  REQUIRE(ind.poset.labels() == std::vector<std::string>{"a", "b", "c"});
  REQUIRE(ind.poset.leq(0, 2));
  REQUIRE(ind.poset.leq(1, 2));
  REQUIRE_FALSE(ind.poset.comparable(0, 1));
}

TEST_CASE("product order is componentwise with paired labels") {
  auto c2 = fintopo::chain_poset(2);
  auto f = fintopo::fence_poset(1);
  auto pr = fintopo::product(c2, f);
  REQUIRE(pr.size() == 4);
  REQUIRE(pr.label(0) == "(c0,0)");
  REQUIRE(pr.label(3) == "(c1,1)");
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int i2 = 0; i2 < 2; ++i2)
        for (int j2 = 0; j2 < 2; ++j2)
          REQUIRE(pr.leq(i * 2 + j, i2 * 2 + j2) == (c2.leq(i, i2) && f.leq(j, j2)));
}

TEST_CASE("opposite poset reverses the order") {
  auto s = fintopo::circle_model();
  auto op = fintopo::opposite(s);
  for (int a = 0; a < s.size(); ++a)
    for (int b = 0; b < s.size(); ++b) REQUIRE(op.leq(a, b) == s.leq(b, a));
  REQUIRE(op.maximal() == s.minimal());
  REQUIRE(fintopo::isomorphic(fintopo::opposite(op), s));
}

TEST_CASE("isomorphism finds a relabeling and rejects different shapes") {
  auto f = fintopo::fence_poset(2);
  auto g = fintopo::parse_poset_text("element p\nelement q\nelement r\ncover p < q\ncover r < q\n");
  auto iso = fintopo::isomorphism(f, g);
  REQUIRE(iso.has_value());
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      REQUIRE(f.leq(a, b) ==
              g.leq((*iso)[static_cast<std::size_t>(a)], (*iso)[static_cast<std::size_t>(b)]));

  REQUIRE_FALSE(fintopo::isomorphic(fintopo::chain_poset(3), fintopo::fence_poset(2)));
  REQUIRE_FALSE(fintopo::isomorphic(fintopo::chain_poset(3), fintopo::chain_poset(2)));
  REQUIRE(fintopo::isomorphic(fintopo::circle_model(), fintopo::opposite(fintopo::circle_model())));
}

TEST_CASE("isomorphism is the lexicographically smallest one") {
  auto a = fintopo::antichain_poset(3);
  auto iso = fintopo::isomorphism(a, a);
  REQUIRE(iso == std::vector<int>{0, 1, 2});
}

TEST_CASE("from_hasse rejects cycles, self covers and unknown labels") {
  REQUIRE_THROWS_AS(FinitePoset::from_hasse({"x", "y"}, {{"x", "y"}, {"y", "x"}}),
                    fintopo::CycleError);
  REQUIRE_THROWS_AS(FinitePoset::from_hasse({"x"}, {{"x", "x"}}), fintopo::CycleError);
  REQUIRE_THROWS_AS(FinitePoset::from_hasse({"x"}, {{"x", "ghost"}}), fintopo::UnknownLabel);
  REQUIRE_THROWS_AS(FinitePoset::from_hasse({"x", "x"}, {}), fintopo::ParseError);
}

TEST_CASE("label lookup") {
  auto s = fintopo::circle_model();
  REQUIRE(s.index_of("c") == 2);
  REQUIRE(s.has_label("d"));
  REQUIRE_FALSE(s.has_label("z"));
  REQUIRE_THROWS_AS(s.index_of("z"), fintopo::UnknownLabel);
}

TEST_CASE("text format round-trips and accepts comments") {
  auto s = fintopo::circle_model();
  auto text = fintopo::serialize_poset_text(s);
  REQUIRE(text ==
          "element a\nelement b\nelement c\nelement d\n"
          "cover a < c\ncover a < d\ncover b < c\ncover b < d\n");
  auto back = fintopo::parse_poset_text(text);
  REQUIRE(back.labels() == s.labels());
  REQUIRE(labeled_covers(back) == labeled_covers(s));

  auto commented = fintopo::parse_poset_text("# header\nelement a # trailing\n\nelement b\ncover a < b\n");
  REQUIRE(commented.size() == 2);
  REQUIRE(commented.leq(0, 1));
}

TEST_CASE("text parse errors carry line numbers") {
  REQUIRE_THROWS_WITH(fintopo::parse_poset_text("element a\nbogus a\n"),
                      Catch::Matchers::StartsWith("line 2:"));
  REQUIRE_THROWS_AS(fintopo::parse_poset_text("element a b\n"), fintopo::ParseError);
  REQUIRE_THROWS_AS(fintopo::parse_poset_text("element sp,ace\n"), fintopo::ParseError);
  REQUIRE_THROWS_AS(fintopo::parse_poset_text("element a\nelement b\ncover a b\n"),
                    fintopo::ParseError);
  REQUIRE_THROWS_AS(fintopo::parse_poset_text("   \n# only comments\n"), fintopo::ParseError);
}

TEST_CASE("json format round-trips and dispatches by first byte") {
  auto s = fintopo::remark_poset();
  auto j = fintopo::serialize_poset_json(s);
  auto back = fintopo::parse_poset_json(j.dump());
  REQUIRE(back.labels() == s.labels());
  REQUIRE(labeled_covers(back) == labeled_covers(s));

  auto via_dispatch = fintopo::parse_poset("  " + j.dump());
  REQUIRE(via_dispatch.labels() == s.labels());
  auto via_text = fintopo::parse_poset(fintopo::serialize_poset_text(s));
  REQUIRE(via_text.labels() == s.labels());

  REQUIRE_THROWS_AS(fintopo::parse_poset(""), fintopo::ParseError);
  REQUIRE_THROWS_AS(fintopo::parse_poset_json("{\"elements\": [\"a\"]}"), fintopo::ParseError);
  REQUIRE_THROWS_AS(fintopo::parse_poset_json("not json"), fintopo::ParseError);
  REQUIRE_THROWS_AS(fintopo::parse_poset_json("{\"elements\": [\"a\"], \"covers\": [[\"a\"]]}"),
                    fintopo::ParseError);
}

TEST_CASE("digest is stable, format independent and label sensitive") {
  auto s = fintopo::circle_model();
  REQUIRE(fintopo::poset_digest(s) == "b9cd549306fbd133");
  REQUIRE(fintopo::poset_digest(fintopo::parse_poset(fintopo::serialize_poset_json(s).dump())) ==
          fintopo::poset_digest(s));

  auto relabeled = fintopo::parse_poset_text(
      "element a\nelement b\nelement c\nelement e\n"
      "cover a < c\ncover a < e\ncover b < c\ncover b < e\n");
  REQUIRE(fintopo::poset_digest(relabeled) != fintopo::poset_digest(s));
}

TEST_CASE("random posets round-trip through both formats") {
  std::mt19937 rng(20240817);
  for (int t = 0; t < 30; ++t) {
    auto p = oracles::random_poset(rng, 1 + static_cast<int>(rng() % 6));
    auto from_text = fintopo::parse_poset_text(fintopo::serialize_poset_text(p));
    auto from_json = fintopo::parse_poset_json(fintopo::serialize_poset_json(p).dump());
    for (int a = 0; a < p.size(); ++a)
      for (int b = 0; b < p.size(); ++b) {
        REQUIRE(from_text.leq(a, b) == p.leq(a, b));
        REQUIRE(from_json.leq(a, b) == p.leq(a, b));
      }
  }
}

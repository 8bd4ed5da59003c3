#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "fintopo/corpus.hpp"
#include "fintopo/homotopy.hpp"
#include "fintopo/poset.hpp"

#include "support/oracles.hpp"

using fintopo::FinitePoset;

TEST_CASE("zigzag paths match the brute enumeration and the transfer count") {
  std::mt19937 rng(911);
  for (int t = 0; t < 12; ++t) {
    auto p = oracles::random_poset(rng, 1 + static_cast<int>(rng() % 4));
    for (int m = 0; m <= 3; ++m)
      for (int from = 0; from < p.size(); ++from)
        for (int to = 0; to < p.size(); ++to) {
          auto fast = fintopo::zigzag_paths(p, m, from, to);
          auto slow = oracles::brute_paths(p, m, from, to);
          REQUIRE(fast == slow);
          REQUIRE(fast.size() == oracles::transfer_path_count(p, m, from, to));
          for (const auto& path : fast) {
            REQUIRE(fintopo::is_zigzag(p, path));
            REQUIRE(fintopo::path_endpoints(path) == std::pair<int, int>{from, to});
          }
        }
  }
}

TEST_CASE("path space of the one step fence") {
  auto f = fintopo::fence_poset(1);
  auto ps = fintopo::path_space(f, 1);
  REQUIRE(ps.size() == 3);
  REQUIRE(ps.maximal().count() == 1);
}

TEST_CASE("monotone maps and the hom poset") {
  auto f = fintopo::fence_poset(1);
  auto maps = fintopo::monotone_maps(f, f);
  REQUIRE(maps.size() == 3);
  for (const auto& g : maps) REQUIRE(fintopo::is_monotone(f, f, g));

  auto h = fintopo::hom_poset(f, f);
  REQUIRE(h.size() == 3);
  REQUIRE(h.maximal().count() == 1);

  auto c = fintopo::chain_poset(2);
  REQUIRE(fintopo::monotone_maps(c, c).size() == 3);
  REQUIRE(fintopo::monotone_maps(fintopo::antichain_poset(2), c).size() == 4);
}

TEST_CASE("path connectivity") {
  REQUIRE(fintopo::is_path_connected(fintopo::circle_model()));
  REQUIRE(fintopo::is_path_connected(fintopo::fence_poset(4)));
  REQUIRE_FALSE(fintopo::is_path_connected(fintopo::antichain_poset(2)));
  REQUIRE(fintopo::is_path_connected(fintopo::singleton_poset()));
}

TEST_CASE("cores collapse fences and fix the circle") {
  auto fence = fintopo::fence_poset(2);
  auto c = fintopo::core_of(fence);
  REQUIRE(c.poset.size() == 1);
  REQUIRE(c.trace.size() == 2);

  auto s = fintopo::circle_model();
  auto cs = fintopo::core_of(s);
  REQUIRE(cs.poset.size() == 4);
  REQUIRE(cs.trace.empty());
  REQUIRE(fintopo::isomorphic(cs.poset, s));
}

TEST_CASE("core is idempotent and respects the retraction") {
  std::mt19937 rng(912);
  for (int t = 0; t < 25; ++t) {
    auto p = oracles::random_poset(rng, 1 + static_cast<int>(rng() % 6));
    auto c = fintopo::core_of(p);
    auto cc = fintopo::core_of(c.poset);
    REQUIRE(cc.poset.size() == c.poset.size());

    REQUIRE(static_cast<int>(c.retract.size()) == p.size());
    for (int v = 0; v < p.size(); ++v) {
      int r = c.retract[static_cast<std::size_t>(v)];
      REQUIRE(std::find(c.kept.begin(), c.kept.end(), r) != c.kept.end());
    }
    for (int x : c.kept) REQUIRE(c.retract[static_cast<std::size_t>(x)] == x);
    for (int a = 0; a < p.size(); ++a)
      for (int b = 0; b < p.size(); ++b)
        if (p.leq(a, b))
          REQUIRE(p.leq(c.retract[static_cast<std::size_t>(a)], c.retract[static_cast<std::size_t>(b)]));
  }
}

TEST_CASE("core fence joins identity to the retraction pointwise") {
  auto fence = fintopo::fence_poset(3);
  auto c = fintopo::core_of(fence);
  auto steps = fintopo::core_fence(fence, c);
  REQUIRE(steps.size() == c.trace.size() + 1);
  for (int v = 0; v < fence.size(); ++v) REQUIRE(steps.front()[static_cast<std::size_t>(v)] == v);
  for (std::size_t i = 0; i + 1 < steps.size(); ++i)
    for (int v = 0; v < fence.size(); ++v)
      REQUIRE(fence.comparable(steps[i][static_cast<std::size_t>(v)],
                               steps[i + 1][static_cast<std::size_t>(v)]));
}

TEST_CASE("homotopic agrees with the brute fence search") {
  std::mt19937 rng(913);
  int checked = 0;
  for (int t = 0; t < 40; ++t) {
    auto dom = oracles::random_poset(rng, 1 + static_cast<int>(rng() % 3));
    auto cod = oracles::random_poset(rng, 1 + static_cast<int>(rng() % 3));
    auto maps = fintopo::monotone_maps(dom, cod);
    if (maps.empty()) continue;
    for (std::size_t i = 0; i < maps.size(); ++i)
      for (std::size_t j = 0; j < maps.size(); ++j) {
        bool fast = fintopo::homotopic(dom, cod, maps[i], maps[j]);
        bool slow = oracles::brute_homotopic(dom, cod, maps[i], maps[j]);
        REQUIRE(fast == slow);
        ++checked;
      }
  }
  REQUIRE(checked > 100);
}

TEST_CASE("projections of the circle square are not homotopic") {
  auto s = fintopo::circle_model();
  auto pp = fintopo::product(s, s);
  std::vector<int> pr1, pr2;
  for (int i = 0; i < s.size(); ++i)
    for (int j = 0; j < s.size(); ++j) {
      pr1.push_back(i);
      pr2.push_back(j);
    }
  REQUIRE_FALSE(fintopo::homotopic(pp, s, pr1, pr2));
  REQUIRE(fintopo::homotopic(pp, s, pr1, pr1));
}

TEST_CASE("contractibility agrees with the brute constant comparison") {
  for (const auto& p : oracles::all_posets(4))
    REQUIRE(fintopo::is_contractible(p) == oracles::brute_contractible(p));
}

TEST_CASE("contractibility of the standard spaces") {
  REQUIRE(fintopo::is_contractible(fintopo::chain_poset(3)));
  REQUIRE(fintopo::is_contractible(fintopo::fence_poset(4)));
  REQUIRE(fintopo::is_contractible(fintopo::singleton_poset()));
  REQUIRE_FALSE(fintopo::is_contractible(fintopo::circle_model()));
  REQUIRE_FALSE(fintopo::is_contractible(fintopo::remark_poset()));
  REQUIRE_FALSE(fintopo::is_contractible(fintopo::antichain_poset(2)));
}

TEST_CASE("is_contractible_in produces a checkable fence witness") {
  auto s = fintopo::circle_model();

  auto check_witness = [&](const fintopo::Bits& u) {
    fintopo::ContractionFence w;
    REQUIRE(fintopo::is_contractible_in(s, u, {}, &w));
    REQUIRE(w.domain == fintopo::bit_list(u));
    REQUIRE_FALSE(w.steps.empty());
    for (std::size_t i = 0; i < w.domain.size(); ++i)
      REQUIRE(w.steps.front()[i] == w.domain[i]);
    for (const auto& step : w.steps)
      for (std::size_t a = 0; a < w.domain.size(); ++a)
        for (std::size_t b = 0; b < w.domain.size(); ++b)
          if (s.leq(w.domain[a], w.domain[b])) REQUIRE(s.leq(step[a], step[b]));
    for (std::size_t i = 0; i + 1 < w.steps.size(); ++i)
      for (std::size_t a = 0; a < w.domain.size(); ++a)
        REQUIRE(s.comparable(w.steps[i][a], w.steps[i + 1][a]));
    const auto& last = w.steps.back();
    for (std::size_t a = 0; a < w.domain.size(); ++a) REQUIRE(last[a] == last[0]);
  };

  check_witness(fintopo::bits_of(4, {0, 1, 2}));
  check_witness(fintopo::bits_of(4, {0}));
  check_witness(fintopo::bits_of(4, {0, 1}));

  fintopo::Bits whole(4);
  whole.set();
  REQUIRE_FALSE(fintopo::is_contractible_in(s, whole));
  REQUIRE_THROWS_AS(fintopo::is_contractible_in(s, fintopo::Bits(4)), std::invalid_argument);
}

TEST_CASE("beat point extensions keep the core isomorphism class") {
  std::mt19937 rng(914);
  for (int t = 0; t < 30; ++t) {
    auto p = oracles::random_poset(rng, 1 + static_cast<int>(rng() % 5));
    auto q = oracles::add_random_beat_point(rng, p);
    REQUIRE(q.size() == p.size() + 1);
    REQUIRE(fintopo::isomorphic(fintopo::core_of(p).poset, fintopo::core_of(q).poset));
  }
}

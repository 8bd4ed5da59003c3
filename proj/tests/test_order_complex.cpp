#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>
#include <vector>

#include "fintopo/corpus.hpp"
#include "fintopo/order_complex.hpp"
#include "fintopo/poset.hpp"

#include "support/oracles.hpp"

TEST_CASE("order complex of the circle model is the hollow square") {
  auto k = fintopo::order_complex(fintopo::circle_model());
  REQUIRE(k.dimension() == 1);
  REQUIRE(fintopo::f_vector(k) == std::vector<int>{4, 4});
  REQUIRE(fintopo::euler_characteristic(k) == 0);
  REQUIRE(fintopo::face_closed(k));
  REQUIRE(fintopo::export_facet_list(k) == "a c\na d\nb c\nb d\n");
}

TEST_CASE("order complex of a fence is a path") {
  auto k = fintopo::order_complex(fintopo::fence_poset(2));
  REQUIRE(fintopo::f_vector(k) == std::vector<int>{3, 2});
  REQUIRE(fintopo::euler_characteristic(k) == 1);
}

TEST_CASE("order complex of a chain is a full simplex") {
  auto k = fintopo::order_complex(fintopo::chain_poset(4));
  REQUIRE(fintopo::f_vector(k) == std::vector<int>{4, 6, 4, 1});
  REQUIRE(fintopo::euler_characteristic(k) == 1);
  auto fac = fintopo::facets(k);
  REQUIRE(fac.size() == 1);
  REQUIRE(fac.front().size() == 4);
}

TEST_CASE("simplices are ascending chains in a linear extension") {
  std::mt19937 rng(918);
  for (int t = 0; t < 20; ++t) {
    auto p = oracles::random_poset(rng, 1 + static_cast<int>(rng() % 6));
    auto k = fintopo::order_complex(p);
    REQUIRE(static_cast<int>(k.vertices.size()) == p.size());
    REQUIRE(fintopo::face_closed(k));
    for (const auto& dim : k.simplices)
      for (const auto& s : dim) {
        for (std::size_t i = 0; i + 1 < s.size(); ++i) {
          REQUIRE(s[i] < s[i + 1]);
          int a = p.index_of(k.vertices[static_cast<std::size_t>(s[i])]);
          int b = p.index_of(k.vertices[static_cast<std::size_t>(s[i + 1])]);
          REQUIRE(p.lt(a, b));
        }
      }
  }
}

TEST_CASE("face counts and euler characteristic match the chain oracle") {
  std::mt19937 rng(919);
  for (int t = 0; t < 20; ++t) {
    auto p = oracles::random_poset(rng, 1 + static_cast<int>(rng() % 6));
    auto k = fintopo::order_complex(p);
    auto counts = oracles::chain_counts(p);
    auto f = fintopo::f_vector(k);
    REQUIRE(f.size() == counts.size());
    for (std::size_t d = 0; d < f.size(); ++d) REQUIRE(f[d] == counts[d]);
    REQUIRE(fintopo::euler_characteristic(k) == oracles::chain_euler(p));
  }
}

TEST_CASE("facet list export round-trips") {
  auto k = fintopo::order_complex(fintopo::remark_poset());
  auto text = fintopo::export_complex(k, "facet-list");
  auto back = fintopo::import_complex(text, "facet-list");
  REQUIRE(fintopo::same_complex(k, back));
  REQUIRE(fintopo::export_complex(back, "facet-list") == text);
}

TEST_CASE("structured export round-trips") {
  auto k = fintopo::order_complex(fintopo::circle_model());
  auto text = fintopo::export_complex(k, "structured");
  auto back = fintopo::import_complex(text, "structured");
  REQUIRE(fintopo::same_complex(k, back));
  REQUIRE(fintopo::export_complex(back, "structured") == text);
}

TEST_CASE("import validates facets") {
  REQUIRE_THROWS_AS(fintopo::import_complex("", "facet-list"), fintopo::ParseError);
  REQUIRE_THROWS_AS(fintopo::import_complex("a a\n", "facet-list"), fintopo::ParseError);
  REQUIRE_THROWS_AS(fintopo::import_complex("{\"vertices\": [\"a\"], \"facets\": [[\"b\"]]}",
                                            "structured"),
                    fintopo::ParseError);
  REQUIRE_THROWS_AS(fintopo::import_complex("{\"vertices\": [\"a\", \"a\"], \"facets\": [[\"a\"]]}",
                                            "structured"),
                    fintopo::ParseError);
  REQUIRE_THROWS_AS(fintopo::import_complex("not json", "structured"), fintopo::ParseError);
}

TEST_CASE("unknown formats are rejected") {
  auto k = fintopo::order_complex(fintopo::fence_poset(1));
  REQUIRE_THROWS_AS(fintopo::export_complex(k, "obj"), fintopo::UnknownFormat);
  REQUIRE_THROWS_AS(fintopo::import_complex("a b\n", "obj"), fintopo::UnknownFormat);
}

TEST_CASE("chain enumeration respects the element limit") {
  fintopo::Limits tight;
  tight.max_elements = 100;
  REQUIRE_THROWS_AS(fintopo::order_complex(fintopo::chain_poset(10), tight), fintopo::SizeLimitError);
  REQUIRE_NOTHROW(fintopo::order_complex(fintopo::chain_poset(6), tight));
}

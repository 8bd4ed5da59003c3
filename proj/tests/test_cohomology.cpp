#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <vector>

#include "fintopo/cohomology.hpp"
#include "fintopo/corpus.hpp"
#include "fintopo/order_complex.hpp"
#include "fintopo/poset.hpp"

#include "support/oracles.hpp"

namespace {

std::vector<int> padded(std::vector<int> v, std::size_t n) {
  v.resize(std::max(v.size(), n), 0);
  return v;
}

}  // namespace

TEST_CASE("gf2 rank and nullspace") {
  using fintopo::bits_of;
  std::vector<fintopo::Bits> rows{bits_of(3, {0, 1}), bits_of(3, {1, 2}), bits_of(3, {0, 2})};
  REQUIRE(fintopo::gf2::rank(rows) == 2);
  auto null = fintopo::gf2::nullspace(rows, 3);
  REQUIRE(null.size() == 1);
  REQUIRE(null.front() == bits_of(3, {0, 1, 2}));
  REQUIRE(fintopo::gf2::rank({}) == 0);
}

TEST_CASE("betti numbers of the standard complexes") {
  REQUIRE(fintopo::betti_numbers(fintopo::order_complex(fintopo::circle_model())) ==
          std::vector<int>{1, 1});
  REQUIRE(fintopo::betti_numbers(fintopo::order_complex(fintopo::chain_poset(4))) ==
          std::vector<int>{1, 0, 0, 0});
  REQUIRE(fintopo::betti_numbers(fintopo::order_complex(fintopo::remark_poset())) ==
          std::vector<int>{1, 4});
  REQUIRE(fintopo::betti_numbers(fintopo::order_complex(fintopo::antichain_poset(3))) ==
          std::vector<int>{3});
}

TEST_CASE("betti numbers agree with the boundary rank oracle") {
  std::mt19937 rng(920);
  for (int t = 0; t < 15; ++t) {
    auto p = oracles::random_poset(rng, 1 + static_cast<int>(rng() % 6));
    auto k = fintopo::order_complex(p);
    REQUIRE(fintopo::betti_numbers(k) == oracles::homology_betti(k));
  }
}

TEST_CASE("the order complex is invariant under order reversal") {
  std::mt19937 rng(921);
  for (int t = 0; t < 10; ++t) {
    auto p = oracles::random_poset(rng, 1 + static_cast<int>(rng() % 5));
    auto kp = fintopo::order_complex(p);
    auto ko = fintopo::order_complex(fintopo::opposite(p));
    REQUIRE(fintopo::export_facet_list(kp) == fintopo::export_facet_list(ko));
    REQUIRE(fintopo::betti_numbers(kp) == fintopo::betti_numbers(ko));
  }
}

TEST_CASE("betti numbers of a product satisfy the kunneth convolution") {
  std::mt19937 rng(922);
  for (int t = 0; t < 6; ++t) {
    auto p = oracles::random_connected_poset(rng, 1, 3);
    auto q = oracles::random_connected_poset(rng, 1, 3);
    auto bp = fintopo::betti_numbers(fintopo::order_complex(p));
    auto bq = fintopo::betti_numbers(fintopo::order_complex(q));
    auto bpq = fintopo::betti_numbers(fintopo::order_complex(fintopo::product(p, q)));
    std::vector<int> conv(bp.size() + bq.size() - 1, 0);
    for (std::size_t i = 0; i < bp.size(); ++i)
      for (std::size_t j = 0; j < bq.size(); ++j) conv[i + j] += bp[i] * bq[j];
    std::size_t n = std::max(conv.size(), bpq.size());
    REQUIRE(padded(bpq, n) == padded(conv, n));
  }
}

TEST_CASE("cohomology ring ranks match the betti numbers") {
  std::mt19937 rng(923);
  for (int t = 0; t < 10; ++t) {
    auto p = oracles::random_poset(rng, 1 + static_cast<int>(rng() % 5));
    auto k = fintopo::order_complex(p);
    auto h = fintopo::cohomology_ring(k);
    REQUIRE(h.betti == fintopo::betti_numbers(k));
  }
}

TEST_CASE("zero divisor length of the circle") {
  auto bound = fintopo::tc_lower_bound(fintopo::circle_model());
  REQUIRE(bound.betti == std::vector<int>{1, 1});
  REQUIRE(bound.z == 1);
  REQUIRE(bound.z_plus_one == 2);
  REQUIRE(bound.witness_verified);
}

TEST_CASE("zero divisor length of the torus model") {
  auto s = fintopo::circle_model();
  auto bound = fintopo::tc_lower_bound(fintopo::product(s, s));
  REQUIRE(bound.betti == std::vector<int>{1, 2, 1});
  REQUIRE(bound.z == 2);
  REQUIRE(bound.z_plus_one == 3);
  REQUIRE(bound.witness_verified);
}

TEST_CASE("zero divisor length of a wedge of circles") {
  auto bound = fintopo::tc_lower_bound(fintopo::remark_poset());
  REQUIRE(bound.betti == std::vector<int>{1, 4});
  REQUIRE(bound.z == 2);
  REQUIRE(bound.z_plus_one == 3);
  REQUIRE(bound.witness_verified);
}

TEST_CASE("contractible spaces have no zero divisors") {
  for (auto p : {fintopo::chain_poset(3), fintopo::fence_poset(4), fintopo::singleton_poset()}) {
    auto bound = fintopo::tc_lower_bound(p);
    REQUIRE(bound.z == 0);
    REQUIRE(bound.z_plus_one == 1);
    REQUIRE(bound.witness_verified);
  }
}

TEST_CASE("zero divisor witnesses expand and check at the cochain level") {
  auto k = fintopo::order_complex(fintopo::circle_model());
  auto h = fintopo::cohomology_ring(k);
  auto zd = fintopo::zero_divisor_cup_length(k, h);
  REQUIRE(zd.z == 1);
  REQUIRE(zd.witness_verified);
  REQUIRE(zd.factors.size() == 1);
  REQUIRE(zd.product.coords.any());
}

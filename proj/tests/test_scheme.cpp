#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "treegraph/errors.hpp"
#include "treegraph/rng.hpp"
#include "treegraph/scheme.hpp"

using namespace treegraph;

namespace {

EdgeSet edges_of(int n, std::initializer_list<std::pair<int, int>> pairs) {
  return Graph::from_pairs(n, pairs).edges();
}

}  // namespace

TEST_CASE("EdgeOrder validates permutations") {
  CHECK_THROWS_AS(EdgeOrder(3, {0, 0, 1}), DomainError);
  CHECK_THROWS_AS(EdgeOrder(3, {0, 1}), DomainError);
  CHECK_THROWS_AS(EdgeOrder(3, {0, 1, 3}), DomainError);
  const EdgeOrder order(3, {2, 0, 1});
  CHECK(order.at_rank(0) == EdgeId{1});
  CHECK(order.at_rank(2) == EdgeId{0});
}

TEST_CASE("random EdgeOrder is a reproducible permutation") {
  SplitMix64 a(42);
  SplitMix64 b(42);
  const EdgeOrder x = EdgeOrder::random(7, a);
  CHECK(x == EdgeOrder::random(7, b));
  std::vector<bool> used(21, false);
  for (int e = 0; e < 21; ++e) {
    used[static_cast<std::size_t>(x.rank(EdgeId{e}))] = true;
  }
  for (bool u : used) CHECK(u);
}

TEST_CASE("kruskal_map examples") {
  const EdgeOrder lex3 = EdgeOrder::lexicographic(3);
  CHECK(kruskal_map(Graph::from_pairs(3, {{0, 1}, {0, 2}, {1, 2}}), lex3) ==
        Tree::from_pairs(3, {{0, 1}, {0, 2}}));
  SplitMix64 rng(3);
  for (int k = 0; k < 5; ++k) {
    const EdgeOrder any = EdgeOrder::random(3, rng);
    CHECK(kruskal_map(Graph::from_pairs(3, {{0, 1}, {1, 2}}), any) ==
          Tree::from_pairs(3, {{0, 1}, {1, 2}}));
  }
  // Lexicographic ranks: 01 < 02 < 03 < 12 < 13 < 23, so 03 is taken before
  // 12 and the last edge 23 closes the cycle.
  const Graph cycle = Graph::from_pairs(4, {{0, 1}, {1, 2}, {2, 3}, {0, 3}});
  CHECK(kruskal_map(cycle, EdgeOrder::lexicographic(4)) ==
        Tree::from_pairs(4, {{0, 1}, {0, 3}, {1, 2}}));
  // With 03 ranked last the cycle drops 03 instead.
  const std::vector<EdgeId> late03{edge_index(0, 1, 4), edge_index(0, 2, 4), edge_index(1, 2, 4),
                                   edge_index(1, 3, 4), edge_index(2, 3, 4), edge_index(0, 3, 4)};
  CHECK(kruskal_map(cycle, EdgeOrder::from_sequence(4, late03)) ==
        Tree::from_pairs(4, {{0, 1}, {1, 2}, {2, 3}}));
  CHECK_THROWS_AS(kruskal_map(Graph::from_pairs(3, {{0, 1}}), lex3), DomainError);
}

TEST_CASE("kruskal_map is the identity on trees") {
  SplitMix64 rng(11);
  for (int n = 2; n <= 6; ++n) {
    for (int k = 0; k < 3; ++k) {
      const EdgeOrder order = EdgeOrder::random(n, rng);
      for (const Tree& t : enumerate_trees(n)) {
        REQUIRE(kruskal_map(t.graph(), order) == t);
      }
    }
  }
}

TEST_CASE("boundary_edges examples") {
  const EdgeOrder lex3 = EdgeOrder::lexicographic(3);
  CHECK(boundary_edges(Tree::from_pairs(3, {{0, 1}, {0, 2}}), lex3) == edges_of(3, {{1, 2}}));
  CHECK(boundary_edges(Tree::from_pairs(3, {{0, 2}, {1, 2}}), lex3).empty());
  CHECK(boundary_edges(Tree::from_pairs(2, {{0, 1}}), EdgeOrder::lexicographic(2)).empty());
}

TEST_CASE("boundary_edges matches the path definition and avoids tree edges") {
  SplitMix64 rng(5);
  for (int n = 2; n <= 7; ++n) {
    for (int k = 0; k < 4; ++k) {
      const EdgeOrder order = k == 0 ? EdgeOrder::lexicographic(n) : EdgeOrder::random(n, rng);
      int checked = 0;
      for (const Tree& t : enumerate_trees(n)) {
        const EdgeSet fast = boundary_edges(t, order);
        REQUIRE_FALSE(fast.intersects(t.edges()));
        REQUIRE(fast == oracle::boundary_by_paths(t, order));
        if (++checked == 2000) break;
      }
    }
  }
}

TEST_CASE("verify_partition examples") {
  const PartitionReport three = verify_partition(3, EdgeOrder::lexicographic(3));
  CHECK(three.pass);
  CHECK(three.interval_sum == 4);
  CHECK(three.connected_count == 4);
  CHECK(three.interval_size_histogram == std::map<std::uint64_t, std::uint64_t>{{1, 2}, {2, 1}});

  const PartitionReport two = verify_partition(2, EdgeOrder::lexicographic(2));
  CHECK(two.pass);
  CHECK(two.interval_sum == 1);

  SplitMix64 rng(2024);
  for (int k = 0; k < 20; ++k) {
    const PartitionReport five = verify_partition(5, EdgeOrder::random(5, rng));
    REQUIRE(five.pass);
    CHECK(five.interval_sum == 728);
  }
  CHECK_THROWS_AS(verify_partition(7, EdgeOrder::lexicographic(7)), CapacityError);
}

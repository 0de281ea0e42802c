#include <set>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "treegraph/errors.hpp"
#include "treegraph/graph.hpp"

using namespace treegraph;

namespace {

EdgeId e(int i, int j, int n) { return edge_index(i, j, n); }

}  // namespace

TEST_CASE("edge_index examples") {
  CHECK(edge_index(0, 1, 4).value == 0);
  CHECK(edge_index(1, 0, 4).value == 0);
  CHECK(edge_index(2, 3, 4).value == 5);
}

TEST_CASE("edge_index is a lexicographic bijection") {
  for (int n = 2; n <= kMaxVertices; ++n) {
    int expected = 0;
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const EdgeId id = edge_index(i, j, n);
        REQUIRE(id.value == expected++);
        CHECK(edge_index(j, i, n) == id);
        CHECK(edge_endpoints(id, n) == Endpoints{i, j});
      }
    }
    CHECK(expected == edge_count(n));
  }
}

TEST_CASE("edge_index rejects bad pairs") {
  CHECK_THROWS_AS(edge_index(1, 1, 4), DomainError);
  CHECK_THROWS_AS(edge_index(0, 4, 4), DomainError);
  CHECK_THROWS_AS(edge_index(-1, 2, 4), DomainError);
  CHECK_THROWS_AS(edge_index(0, 1, 17), DomainError);
}

TEST_CASE("EdgeSet spans two words at n = 16") {
  const EdgeSet all = EdgeSet::complete(16);
  CHECK(all.count() == 120);
  CHECK(all.bit_width() == 120);
  CHECK(EdgeSet::complete(12).count() == 66);
  EdgeSet s;
  s.set(EdgeId{3});
  s.set(EdgeId{64});
  s.set(EdgeId{119});
  std::vector<int> seen;
  s.for_each([&](EdgeId id) { seen.push_back(id.value); });
  CHECK(seen == std::vector<int>{3, 64, 119});
  CHECK(s.is_subset_of(all));
  s.reset(EdgeId{64});
  CHECK(s.count() == 2);
  CHECK(EdgeSet(0, 1) > EdgeSet(~0ULL, 0));
}

TEST_CASE("Graph rejects bits beyond K_n") {
  CHECK_THROWS_AS(Graph(3, EdgeSet(0b1000, 0)), DomainError);
  CHECK_THROWS_AS(Graph(1, EdgeSet()), DomainError);
  CHECK_NOTHROW(Graph(3, EdgeSet(0b111, 0)));
}

TEST_CASE("is_connected examples") {
  CHECK(is_connected(Graph::from_pairs(3, {{0, 1}, {1, 2}})));
  CHECK_FALSE(is_connected(Graph::from_pairs(3, {{0, 1}})));
  CHECK_FALSE(is_connected(Graph::from_pairs(4, {{0, 1}, {2, 3}})));
  CHECK_FALSE(is_connected(Graph(5, EdgeSet())));
}

TEST_CASE("is_connected agrees with depth-first search on all graphs of K_5") {
  for (std::uint64_t mask = 0; mask < (1U << 10); ++mask) {
    const Graph g(5, EdgeSet(mask, 0));
    REQUIRE(is_connected(g) == oracle::connected_by_dfs(g));
  }
}

TEST_CASE("Tree checks every defining property") {
  // n-1 edges but disconnected (contains a cycle)
  CHECK_THROWS_AS(Tree::from_pairs(4, {{0, 1}, {1, 2}, {0, 2}}), DomainError);
  // connected but too many edges
  CHECK_THROWS_AS(Tree::from_pairs(3, {{0, 1}, {1, 2}, {0, 2}}), DomainError);
  // acyclic but too few edges
  CHECK_THROWS_AS(Tree::from_pairs(4, {{0, 1}, {2, 3}}), DomainError);
  CHECK_NOTHROW(Tree::from_pairs(4, {{0, 1}, {1, 2}, {1, 3}}));

  // Any two of {n-1 edges, connected, acyclic} imply the third.
  for (std::uint64_t mask = 0; mask < (1U << 10); ++mask) {
    const Graph g(5, EdgeSet(mask, 0));
    const bool sized = g.edge_size() == 4;
    const bool conn = is_connected(g);
    const bool acyc = is_acyclic(g);
    if (sized && conn) CHECK(acyc);
    if (sized && acyc) CHECK(conn);
    if (conn && acyc) CHECK(sized);
  }
}

TEST_CASE("prufer_decode examples") {
  const std::vector<int> zero{0};
  CHECK(prufer_decode(zero) == Tree::from_pairs(3, {{0, 1}, {0, 2}}));
  const std::vector<int> two{2};
  CHECK(prufer_decode(two) == Tree::from_pairs(3, {{0, 2}, {1, 2}}));
  CHECK(prufer_decode(std::vector<int>{}) == Tree::from_pairs(2, {{0, 1}}));
  const std::vector<int> bad{3};
  CHECK_THROWS_AS(prufer_decode(bad), DomainError);
}

TEST_CASE("prufer_decode is injective for n <= 6") {
  for (int n = 2; n <= 6; ++n) {
    std::set<EdgeSet> trees;
    std::vector<int> seq(static_cast<std::size_t>(n - 2), 0);
    for (std::uint64_t r = 0; r < tree_count(n); ++r) {
      std::uint64_t x = r;
      for (int k = n - 3; k >= 0; --k) {
        seq[static_cast<std::size_t>(k)] = static_cast<int>(x % static_cast<std::uint64_t>(n));
        x /= static_cast<std::uint64_t>(n);
      }
      trees.insert(prufer_decode(seq).edges());
    }
    CHECK(trees.size() == tree_count(n));
  }
}

TEST_CASE("enumerate_trees yields n^(n-2) valid trees") {
  const std::uint64_t cayley[] = {0, 0, 1, 3, 16, 125, 1296, 16807, 262144};
  for (int n = 2; n <= 8; ++n) {
    std::uint64_t count = 0;
    for (const Tree& t : enumerate_trees(n)) {
      ++count;
      if (n <= 6) {
        REQUIRE(t.edges().count() == n - 1);
        REQUIRE(is_connected(t.graph()));
      }
    }
    CHECK(count == cayley[n]);
    CHECK(count == tree_count(n));
  }
  CHECK_THROWS_AS(enumerate_trees(17), DomainError);
  CHECK_THROWS_AS(enumerate_trees(1), DomainError);
}

TEST_CASE("enumerate_trees follows lexicographic Prüfer order and splits cleanly") {
  std::vector<EdgeSet> whole;
  for (const Tree& t : enumerate_trees(5)) {
    whole.push_back(t.edges());
  }
  const std::vector<int> first{0, 0, 0};
  const std::vector<int> last{4, 4, 4};
  CHECK(whole.front() == prufer_decode(first).edges());
  CHECK(whole.back() == prufer_decode(last).edges());

  std::vector<EdgeSet> pieces;
  for (std::uint64_t lo : {0, 40, 77}) {
    const std::uint64_t hi = lo == 0 ? 40 : lo == 40 ? 77 : 125;
    for (const Tree& t : TreeRange(5, lo, hi)) {
      pieces.push_back(t.edges());
    }
  }
  CHECK(pieces == whole);
}

TEST_CASE("enumerate_connected_graphs counts match the inclusion-exclusion recurrence") {
  const auto expected = oracle::connected_graph_counts(7);
  CHECK(expected[4] == 38);
  CHECK(expected[6] == 26704);
  for (int n = 2; n <= 6; ++n) {
    std::uint64_t count = 0;
    EdgeSet previous;
    bool first = true;
    for (const Graph& g : enumerate_connected_graphs(n)) {
      if (!first) {
        REQUIRE(previous < g.edges());
      }
      first = false;
      previous = g.edges();
      ++count;
    }
    CHECK(count == expected[static_cast<std::size_t>(n)]);
  }
  CHECK_THROWS_AS(enumerate_connected_graphs(8), CapacityError);
}

TEST_CASE("tree_path examples") {
  const Tree path3 = Tree::from_pairs(3, {{0, 1}, {1, 2}});
  CHECK(tree_path(path3, 0, 2) == std::vector<EdgeId>{e(0, 1, 3), e(1, 2, 3)});
  CHECK(tree_path(path3, 2, 0) == std::vector<EdgeId>{e(1, 2, 3), e(0, 1, 3)});
  const Tree star = Tree::from_pairs(4, {{0, 1}, {0, 2}, {0, 3}});
  CHECK(tree_path(star, 1, 2) == std::vector<EdgeId>{e(0, 1, 4), e(0, 2, 4)});
  const Tree path4 = Tree::from_pairs(4, {{0, 1}, {1, 2}, {2, 3}});
  CHECK(tree_path(path4, 0, 3) == std::vector<EdgeId>{e(0, 1, 4), e(1, 2, 4), e(2, 3, 4)});
  CHECK_THROWS_AS(tree_path(path4, 2, 2), DomainError);
}

TEST_CASE("tree_path chains from i to j through tree edges") {
  for (const Tree& t : enumerate_trees(6)) {
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) {
        if (i == j) continue;
        int at = i;
        for (EdgeId id : tree_path(t, i, j)) {
          REQUIRE(t.has_edge(id));
          const auto [a, b] = edge_endpoints(id, 6);
          REQUIRE((a == at || b == at));
          at = a == at ? b : a;
        }
        REQUIRE(at == j);
      }
    }
  }
}

#include "treegraph/scheme.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <string>

#include "treegraph/errors.hpp"
#include "treegraph/rng.hpp"

namespace treegraph {

namespace {

/// Union-find over at most 16 vertices; path compression + union by size.
class DisjointSets {
 public:
  explicit DisjointSets(int n) {
    std::iota(parent_.begin(), parent_.begin() + n, 0);
    size_.fill(1);
  }

  int find(int v) {
    int root = v;
    while (parent_[root] != root) {
      root = parent_[root];
    }
    while (parent_[v] != root) {
      v = std::exchange(parent_[v], root);
    }
    return root;
  }

  bool unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) {
      return false;
    }
    if (size_[a] < size_[b]) {
      std::swap(a, b);
    }
    parent_[b] = a;
    size_[a] += size_[b];
    return true;
  }

 private:
  std::array<int, kMaxVertices> parent_{};
  std::array<int, kMaxVertices> size_{};
};

std::string describe(const EdgeSet& s, int n) {
  std::ostringstream out;
  out << '{';
  bool first = true;
  s.for_each([&](EdgeId e) {
    const auto [i, j] = edge_endpoints(e, n);
    out << (first ? "" : ", ") << i << j;
    first = false;
  });
  out << '}';
  return out.str();
}

}  // namespace

EdgeOrder::EdgeOrder(int n, std::vector<int> rank) : n_(n), rank_(std::move(rank)) {
  if (n < 2 || n > kMaxVertices) {
    throw DomainError("vertex count " + std::to_string(n) + " outside [2, 16]");
  }
  const int m = edge_count(n);
  if (static_cast<int>(rank_.size()) != m) {
    throw DomainError("edge order needs " + std::to_string(m) + " ranks, got " +
                      std::to_string(rank_.size()));
  }
  by_rank_.assign(static_cast<std::size_t>(m), EdgeId{-1});
  for (int e = 0; e < m; ++e) {
    const int r = rank_[static_cast<std::size_t>(e)];
    if (r < 0 || r >= m || by_rank_[static_cast<std::size_t>(r)].value != -1) {
      throw DomainError("edge order ranks are not a permutation");
    }
    by_rank_[static_cast<std::size_t>(r)] = EdgeId{e};
  }
}

EdgeOrder EdgeOrder::lexicographic(int n) {
  std::vector<int> rank(static_cast<std::size_t>(edge_count(n)));
  std::iota(rank.begin(), rank.end(), 0);
  return EdgeOrder(n, std::move(rank));
}

EdgeOrder EdgeOrder::from_sequence(int n, std::span<const EdgeId> increasing) {
  if (static_cast<int>(increasing.size()) != edge_count(n)) {
    throw DomainError("edge sequence must list every edge of K_n once");
  }
  std::vector<int> rank(increasing.size(), -1);
  for (std::size_t r = 0; r < increasing.size(); ++r) {
    const int e = increasing[r].value;
    if (e < 0 || e >= edge_count(n) || rank[static_cast<std::size_t>(e)] != -1) {
      throw DomainError("edge sequence must list every edge of K_n once");
    }
    rank[static_cast<std::size_t>(e)] = static_cast<int>(r);
  }
  return EdgeOrder(n, std::move(rank));
}

EdgeOrder EdgeOrder::random(int n, SplitMix64& rng) {
  std::vector<EdgeId> seq(static_cast<std::size_t>(edge_count(n)));
  for (std::size_t e = 0; e < seq.size(); ++e) {
    seq[e] = EdgeId{static_cast<int>(e)};
  }
  for (std::size_t k = seq.size(); k > 1; --k) {
    std::swap(seq[k - 1], seq[rng.below(k)]);
  }
  return from_sequence(n, seq);
}

Tree kruskal_map(const Graph& g, const EdgeOrder& order) {
  const int n = g.vertex_count();
  if (order.vertex_count() != n) {
    throw DomainError("edge order and graph have different vertex counts");
  }
  if (!is_connected(g)) {
    throw DomainError("kruskal_map requires a connected graph");
  }
  DisjointSets sets(n);
  EdgeSet kept;
  int added = 0;
  const int m = edge_count(n);
  for (int r = 0; r < m && added < n - 1; ++r) {
    const EdgeId e = order.at_rank(r);
    if (!g.has_edge(e)) {
      continue;
    }
    const auto [i, j] = edge_endpoints(e, n);
    if (sets.unite(i, j)) {
      kept.set(e);
      ++added;
    }
  }
  return Tree(Graph(n, kept));
}

EdgeSet boundary_edges(const Tree& t, const EdgeOrder& order) {
  const int n = t.vertex_count();
  if (order.vertex_count() != n) {
    throw DomainError("edge order and tree have different vertex counts");
  }
  const Adjacency adj = t.graph().adjacency();
  EdgeSet boundary;
  // For each source s, walk the tree recording the largest rank on the path
  // s -> v; a non-tree edge sv with v > s is in E(t) iff it beats that maximum.
  std::array<int, kMaxVertices> max_rank{};
  std::array<int, kMaxVertices> stack{};
  for (int s = 0; s < n - 1; ++s) {
    std::uint32_t visited = 1U << s;
    max_rank[s] = -1;
    int top = 0;
    stack[top++] = s;
    while (top > 0) {
      const int v = stack[--top];
      for (std::uint32_t nb = adj[v] & ~visited; nb != 0; nb &= nb - 1) {
        const int w = std::countr_zero(nb);
        visited |= 1U << w;
        max_rank[w] = std::max(max_rank[v], order.rank(edge_index(v, w, n)));
        stack[top++] = w;
      }
    }
    for (int v = s + 1; v < n; ++v) {
      const EdgeId e = edge_index(s, v, n);
      if (!t.has_edge(e) && order.rank(e) > max_rank[v]) {
        boundary.set(e);
      }
    }
  }
  return boundary;
}

PartitionReport verify_partition(int n, const EdgeOrder& order) {
  if (n < 2 || n > kMaxPartitionVerification) {
    throw CapacityError("verify_partition is exhaustive and limited to n <= 6, got n=" +
                        std::to_string(n));
  }
  if (order.vertex_count() != n) {
    throw DomainError("edge order has the wrong vertex count");
  }
  PartitionReport report;
  auto fail = [&](std::string check, std::string detail) {
    report.pass = false;
    report.failed_check = std::move(check);
    report.counterexample = std::move(detail);
    return report;
  };

  // (a) every connected g sits in the interval of its Kruskal tree.
  for (const Graph& g : enumerate_connected_graphs(n)) {
    ++report.connected_count;
    const Tree t = kruskal_map(g, order);
    const EdgeSet upper = t.edges() | boundary_edges(t, order);
    if (!t.edges().is_subset_of(g.edges()) || !g.edges().is_subset_of(upper)) {
      return fail("interval-containment", "g=" + describe(g.edges(), n) + " maps to t=" +
                                              describe(t.edges(), n) + " but is not in [t, t+E(t)]");
    }
  }

  // (b) every graph in [t, t | E(t)] maps back to t.
  std::vector<EdgeId> free_edges;
  for (const Tree& t : enumerate_trees(n)) {
    ++report.tree_count;
    const EdgeSet boundary = boundary_edges(t, order);
    if (boundary.intersects(t.edges())) {
      return fail("interval-preimage", "E(t) meets t for t=" + describe(t.edges(), n));
    }
    free_edges.clear();
    boundary.for_each([&](EdgeId e) { free_edges.push_back(e); });
    const std::uint64_t subsets = std::uint64_t{1} << free_edges.size();
    for (std::uint64_t mask = 0; mask < subsets; ++mask) {
      EdgeSet edges = t.edges();
      for (std::size_t k = 0; k < free_edges.size(); ++k) {
        if ((mask >> k) & 1U) {
          edges.set(free_edges[k]);
        }
      }
      const Graph g(n, edges);
      if (!(kruskal_map(g, order) == t)) {
        return fail("interval-preimage", "g=" + describe(edges, n) + " lies in the interval of t=" +
                                             describe(t.edges(), n) + " but maps elsewhere");
      }
    }
    report.interval_sum += subsets;
    ++report.interval_size_histogram[subsets];
  }

  // (c) the intervals tile C_n.
  if (report.interval_sum != report.connected_count) {
    return fail("counting", "sum of interval sizes " + std::to_string(report.interval_sum) +
                                " != |C_n| = " + std::to_string(report.connected_count));
  }
  return report;
}

}  // namespace treegraph

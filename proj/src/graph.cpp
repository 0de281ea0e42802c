#include "treegraph/graph.hpp"

#include <algorithm>
#include <bit>
#include <string>

#include "treegraph/errors.hpp"

namespace treegraph {

namespace {

void check_vertex_count(int n) {
  if (n < 2 || n > kMaxVertices) {
    throw DomainError("vertex count " + std::to_string(n) + " outside [2, 16]");
  }
}

Adjacency adjacency_of(int n, const EdgeSet& edges) {
  Adjacency adj{};
  edges.for_each([&](EdgeId e) {
    const auto [i, j] = edge_endpoints(e, n);
    adj[i] |= static_cast<std::uint16_t>(1U << j);
    adj[j] |= static_cast<std::uint16_t>(1U << i);
  });
  return adj;
}

std::uint32_t reachable_from(int n, const Adjacency& adj, int start) {
  std::uint32_t seen = 1U << start;
  std::uint32_t frontier = seen;
  while (frontier != 0) {
    std::uint32_t next = 0;
    for (std::uint32_t f = frontier; f != 0; f &= f - 1) {
      next |= adj[std::countr_zero(f)];
    }
    frontier = next & ~seen;
    seen |= next;
  }
  return seen & ((1U << n) - 1);
}

}  // namespace

Graph::Graph(int n, EdgeSet edges) : n_(n), edges_(edges) {
  check_vertex_count(n);
  if (edges.bit_width() > edge_count(n)) {
    throw DomainError("edge bitmask has bits beyond the " + std::to_string(edge_count(n)) +
                      " edges of K_" + std::to_string(n));
  }
}

Graph Graph::from_pairs(int n, std::initializer_list<std::pair<int, int>> pairs) {
  check_vertex_count(n);
  EdgeSet edges;
  for (const auto& [i, j] : pairs) {
    edges.set(edge_index(i, j, n));
  }
  return Graph(n, edges);
}

bool Graph::has_edge(int i, int j) const { return edges_.test(edge_index(i, j, n_)); }

Adjacency Graph::adjacency() const { return adjacency_of(n_, edges_); }

bool is_connected(const Graph& g) {
  const int n = g.vertex_count();
  return reachable_from(n, g.adjacency(), 0) == (1U << n) - 1;
}

bool is_acyclic(const Graph& g) {
  // A forest has exactly n - (number of components) edges.
  const int n = g.vertex_count();
  const Adjacency adj = g.adjacency();
  std::uint32_t unseen = (1U << n) - 1;
  int components = 0;
  while (unseen != 0) {
    unseen &= ~reachable_from(n, adj, std::countr_zero(unseen));
    ++components;
  }
  return g.edge_size() == n - components;
}

Tree::Tree(Graph g) : graph_(std::move(g)) {
  const int n = graph_.vertex_count();
  if (graph_.edge_size() != n - 1) {
    throw DomainError("tree on " + std::to_string(n) + " vertices needs " + std::to_string(n - 1) +
                      " edges, got " + std::to_string(graph_.edge_size()));
  }
  if (!is_connected(graph_)) {
    throw DomainError("tree edges do not connect all vertices");
  }
  if (!is_acyclic(graph_)) {
    throw DomainError("tree edges contain a cycle");
  }
}

std::vector<EdgeId> tree_path(const Tree& t, int i, int j) {
  const int n = t.vertex_count();
  if (i < 0 || j < 0 || i >= n || j >= n) {
    throw DomainError("tree_path vertex out of range");
  }
  if (i == j) {
    throw DomainError("tree_path requires distinct endpoints");
  }
  const Adjacency adj = t.graph().adjacency();
  std::array<int, kMaxVertices> parent{};
  parent.fill(-1);
  parent[i] = i;
  std::array<int, kMaxVertices> queue{};
  int head = 0;
  int tail = 0;
  queue[tail++] = i;
  while (head < tail && parent[j] < 0) {
    const int v = queue[head++];
    for (std::uint32_t nb = adj[v]; nb != 0; nb &= nb - 1) {
      const int w = std::countr_zero(nb);
      if (parent[w] < 0) {
        parent[w] = v;
        queue[tail++] = w;
      }
    }
  }
  std::vector<EdgeId> path;
  for (int v = j; v != i; v = parent[v]) {
    path.push_back(edge_index(v, parent[v], n));
  }
  std::reverse(path.begin(), path.end());
  return path;
}

namespace {

EdgeSet decode_edges(std::span<const int> sequence, int n) {
  std::array<int, kMaxVertices> degree{};
  degree.fill(1);
  for (int v : sequence) {
    ++degree[v];
  }
  int ptr = 0;
  while (degree[ptr] != 1) {
    ++ptr;
  }
  int leaf = ptr;
  EdgeSet edges;
  for (int v : sequence) {
    edges.set(edge_index(leaf, v, n));
    if (--degree[v] == 1 && v < ptr) {
      leaf = v;
    } else {
      ++ptr;
      while (degree[ptr] != 1) {
        ++ptr;
      }
      leaf = ptr;
    }
  }
  edges.set(edge_index(leaf, n - 1, n));
  return edges;
}

}  // namespace

Tree prufer_decode(std::span<const int> sequence) {
  const int n = static_cast<int>(sequence.size()) + 2;
  check_vertex_count(n);
  for (int v : sequence) {
    if (v < 0 || v >= n) {
      throw DomainError("Prüfer entry " + std::to_string(v) + " outside [0, " + std::to_string(n) +
                        ")");
    }
  }
  return Tree(Graph(n, decode_edges(sequence, n)), Tree::Unchecked{});
}

std::uint64_t tree_count(int n) {
  check_vertex_count(n);
  std::uint64_t count = 1;
  for (int k = 0; k < n - 2; ++k) {
    count *= static_cast<std::uint64_t>(n);
  }
  return count;
}

TreeRange::TreeRange(int n) : TreeRange(n, 0, tree_count(n)) {}

TreeRange::TreeRange(int n, std::uint64_t first, std::uint64_t last)
    : n_(n), first_(first), last_(last) {
  if (first > last || last > tree_count(n)) {
    throw DomainError("Prüfer rank range out of bounds");
  }
}

TreeRange::iterator::iterator(int n, std::uint64_t first, std::uint64_t last)
    : n_(n), rank_(first), last_(last) {
  std::uint64_t r = first;
  for (int k = n - 3; k >= 0; --k) {
    sequence_[k] = static_cast<int>(r % static_cast<std::uint64_t>(n));
    r /= static_cast<std::uint64_t>(n);
  }
  if (rank_ < last_) {
    decode();
  }
}

void TreeRange::iterator::decode() {
  tree_ = Tree(Graph(n_, decode_edges(std::span<const int>(sequence_.data(), n_ - 2), n_)),
               Tree::Unchecked{});
}

TreeRange::iterator& TreeRange::iterator::operator++() {
  ++rank_;
  for (int k = n_ - 3; k >= 0; --k) {
    if (++sequence_[k] < n_) {
      break;
    }
    sequence_[k] = 0;
  }
  if (rank_ < last_) {
    decode();
  }
  return *this;
}

ConnectedGraphRange::ConnectedGraphRange(int n)
    : ConnectedGraphRange(n, 1, n >= 2 && n <= kMaxConnectedEnumeration
                                    ? std::uint64_t{1} << edge_count(n)
                                    : 0) {}

ConnectedGraphRange::ConnectedGraphRange(int n, std::uint64_t first, std::uint64_t last)
    : n_(n), first_(first), last_(last) {
  check_vertex_count(n);
  if (n > kMaxConnectedEnumeration) {
    throw CapacityError("connected-graph enumeration refused for n=" + std::to_string(n) +
                        " (limit 7: 2^" + std::to_string(edge_count(n)) + " edge subsets)");
  }
  if (first > last || last > (std::uint64_t{1} << edge_count(n))) {
    throw DomainError("edge-subset range out of bounds");
  }
}

ConnectedGraphRange::iterator::iterator(int n, std::uint64_t first, std::uint64_t last)
    : n_(n), mask_(first), last_(last) {
  settle();
}

void ConnectedGraphRange::iterator::settle() {
  for (; mask_ < last_; ++mask_) {
    if (std::popcount(mask_) < n_ - 1) {
      continue;
    }
    Graph g(n_, EdgeSet(mask_, 0));
    if (is_connected(g)) {
      graph_ = g;
      return;
    }
  }
}

ConnectedGraphRange::iterator& ConnectedGraphRange::iterator::operator++() {
  ++mask_;
  settle();
  return *this;
}

}  // namespace treegraph

#pragma once

#include <array>
#include <cstdint>
#include <initializer_list>
#include <iterator>
#include <span>
#include <utility>
#include <vector>

#include "treegraph/edge.hpp"

namespace treegraph {

/// Per-vertex neighbourhood bitmasks; entry v has bit w set iff vw is an edge.
using Adjacency = std::array<std::uint16_t, kMaxVertices>;

/// A labeled graph on vertices {0, ..., n-1}, 2 <= n <= 16.
class Graph {
 public:
  Graph(int n, EdgeSet edges);

  static Graph from_pairs(int n, std::initializer_list<std::pair<int, int>> pairs);

  int vertex_count() const { return n_; }
  const EdgeSet& edges() const { return edges_; }
  int edge_size() const { return edges_.count(); }
  bool has_edge(EdgeId e) const { return edges_.test(e); }
  bool has_edge(int i, int j) const;

  Adjacency adjacency() const;

  friend bool operator==(const Graph&, const Graph&) = default;

 private:
  int n_;
  EdgeSet edges_;
};

bool is_connected(const Graph& g);
bool is_acyclic(const Graph& g);

/// A spanning tree of K_n: n-1 edges, connected, acyclic.
class Tree {
 public:
  /// Throws DomainError unless g is a spanning tree.
  explicit Tree(Graph g);

  static Tree from_pairs(int n, std::initializer_list<std::pair<int, int>> pairs) {
    return Tree(Graph::from_pairs(n, pairs));
  }

  int vertex_count() const { return graph_.vertex_count(); }
  const EdgeSet& edges() const { return graph_.edges(); }
  const Graph& graph() const { return graph_; }
  bool has_edge(EdgeId e) const { return graph_.has_edge(e); }

  friend bool operator==(const Tree&, const Tree&) = default;

 private:
  struct Unchecked {};
  Tree(Graph g, Unchecked) : graph_(std::move(g)) {}

  friend Tree prufer_decode(std::span<const int> sequence);
  friend class TreeRange;

  Graph graph_;
};

/// Unique path between i and j in t, edges listed from i towards j.
std::vector<EdgeId> tree_path(const Tree& t, int i, int j);

/// Standard Prüfer bijection; n = sequence.size() + 2.
Tree prufer_decode(std::span<const int> sequence);

/// n^(n-2).
std::uint64_t tree_count(int n);

/// Spanning trees of K_n in lexicographic Prüfer order, restricted to the
/// Prüfer ranks [first, last). Splitting the rank space gives independent
/// streams for parallel workers.
class TreeRange {
 public:
  explicit TreeRange(int n);
  TreeRange(int n, std::uint64_t first, std::uint64_t last);

  class iterator {
   public:
    using value_type = Tree;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    const Tree& operator*() const { return tree_; }
    const Tree* operator->() const { return &tree_; }
    iterator& operator++();
    void operator++(int) { ++*this; }
    bool operator==(std::default_sentinel_t) const { return rank_ >= last_; }

   private:
    friend class TreeRange;
    iterator(int n, std::uint64_t first, std::uint64_t last);
    void decode();

    int n_ = 2;
    std::uint64_t rank_ = 0;
    std::uint64_t last_ = 0;
    std::array<int, kMaxVertices> sequence_{};
    Tree tree_ = Tree(Graph(2, EdgeSet(1, 0)), Tree::Unchecked{});
  };

  iterator begin() const { return iterator(n_, first_, last_); }
  std::default_sentinel_t end() const { return {}; }
  std::uint64_t size() const { return last_ - first_; }

 private:
  int n_;
  std::uint64_t first_;
  std::uint64_t last_;
};

inline TreeRange enumerate_trees(int n) { return TreeRange(n); }

inline constexpr int kMaxConnectedEnumeration = 7;

/// Connected labeled graphs on n <= 7 vertices in increasing edge-bitmask
/// order, restricted to bitmasks in [first, last).
class ConnectedGraphRange {
 public:
  explicit ConnectedGraphRange(int n);
  ConnectedGraphRange(int n, std::uint64_t first, std::uint64_t last);

  class iterator {
   public:
    using value_type = Graph;
    using difference_type = std::ptrdiff_t;

    iterator() = default;
    const Graph& operator*() const { return graph_; }
    const Graph* operator->() const { return &graph_; }
    iterator& operator++();
    void operator++(int) { ++*this; }
    bool operator==(std::default_sentinel_t) const { return mask_ >= last_; }

   private:
    friend class ConnectedGraphRange;
    iterator(int n, std::uint64_t first, std::uint64_t last);
    void settle();

    int n_ = 2;
    std::uint64_t mask_ = 0;
    std::uint64_t last_ = 0;
    Graph graph_ = Graph(2, EdgeSet());
  };

  iterator begin() const { return iterator(n_, first_, last_); }
  std::default_sentinel_t end() const { return {}; }

 private:
  int n_;
  std::uint64_t first_;
  std::uint64_t last_;
};

inline ConnectedGraphRange enumerate_connected_graphs(int n) { return ConnectedGraphRange(n); }

}  // namespace treegraph

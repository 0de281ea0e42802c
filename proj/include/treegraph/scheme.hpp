#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "treegraph/edge.hpp"
#include "treegraph/graph.hpp"

namespace treegraph {

class SplitMix64;

/// A total order on the edges of K_n, stored both as rank-by-edge and
/// edge-by-rank.
class EdgeOrder {
 public:
  /// rank[e] is the position of edge e; must be a permutation of [0, n(n-1)/2).
  EdgeOrder(int n, std::vector<int> rank);

  static EdgeOrder lexicographic(int n);
  /// Edges listed from smallest to largest.
  static EdgeOrder from_sequence(int n, std::span<const EdgeId> increasing);
  /// Uniform random permutation (Fisher-Yates driven by rng).
  static EdgeOrder random(int n, SplitMix64& rng);

  int vertex_count() const { return n_; }
  int rank(EdgeId e) const { return rank_[static_cast<std::size_t>(e.value)]; }
  EdgeId at_rank(int r) const { return by_rank_[static_cast<std::size_t>(r)]; }
  const std::vector<int>& ranks() const { return rank_; }

  friend bool operator==(const EdgeOrder& a, const EdgeOrder& b) {
    return a.n_ == b.n_ && a.rank_ == b.rank_;
  }

 private:
  int n_;
  std::vector<int> rank_;
  std::vector<EdgeId> by_rank_;
};

/// Kruskal's map C_n -> T_n: scan g's edges by increasing rank, keep an edge
/// iff it joins two components. Throws DomainError if g is disconnected.
Tree kruskal_map(const Graph& g, const EdgeOrder& order);

/// E(t): non-tree edges ij ranked above every edge on the t-path from i to j.
EdgeSet boundary_edges(const Tree& t, const EdgeOrder& order);

inline constexpr int kMaxPartitionVerification = 6;

struct PartitionReport {
  bool pass = true;
  std::string failed_check;   // "interval-containment", "interval-preimage", "counting"
  std::string counterexample; // human-readable, empty on pass
  std::uint64_t connected_count = 0;
  std::uint64_t tree_count = 0;
  std::uint64_t interval_sum = 0;  // sum over t of 2^|E(t)|
  std::map<std::uint64_t, std::uint64_t> interval_size_histogram;  // size -> #trees
};

/// Exhaustive check that Kruskal's map under `order` is a partition scheme:
/// every fiber T^{-1}(t) is exactly the interval [t, t | E(t)]. Stops at the
/// first counterexample. n <= 6.
PartitionReport verify_partition(int n, const EdgeOrder& order);

}  // namespace treegraph

#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "treegraph/edge.hpp"
#include "treegraph/graph.hpp"
#include "treegraph/scheme.hpp"

namespace treegraph {

enum class PotentialKind { real, complex };

/// Pair potential u_ij on K_n, one finite value per unordered pair. Real
/// potentials keep a zero imaginary part.
class Potential {
 public:
  Potential(int n, PotentialKind kind);

  static Potential real(int n, std::span<const double> by_edge);
  static Potential complex(int n, std::span<const std::complex<double>> by_edge);
  /// Same value on every pair.
  static Potential constant(int n, std::complex<double> value, PotentialKind kind);

  int vertex_count() const { return n_; }
  PotentialKind kind() const { return kind_; }
  bool is_complex() const { return kind_ == PotentialKind::complex; }

  std::complex<double> operator[](EdgeId e) const { return values_[index(e)]; }
  std::complex<double> operator()(int i, int j) const { return values_[index(edge_index(i, j, n_))]; }
  double re(EdgeId e) const { return values_[index(e)].real(); }

  /// Throws DomainError on non-finite values or a nonzero imaginary part on a
  /// real potential.
  void set(EdgeId e, std::complex<double> value);
  void set(int i, int j, std::complex<double> value) { set(edge_index(i, j, n_), value); }

  const std::vector<std::complex<double>>& values() const { return values_; }

  friend bool operator==(const Potential&, const Potential&) = default;

 private:
  std::size_t index(EdgeId e) const { return static_cast<std::size_t>(e.value); }

  int n_;
  PotentialKind kind_;
  std::vector<std::complex<double>> values_;
};

/// Per-vertex constants b_i >= 0 of a stability bound.
class StabilityCertificate {
 public:
  explicit StabilityCertificate(std::vector<double> b);
  static StabilityCertificate uniform(int n, double b);

  int vertex_count() const { return static_cast<int>(b_.size()); }
  double operator[](int i) const { return b_[static_cast<std::size_t>(i)]; }
  const std::vector<double>& values() const { return b_; }
  double total() const;

  friend bool operator==(const StabilityCertificate&, const StabilityCertificate&) = default;

 private:
  std::vector<double> b_;
};

/// Vertex subset as a bitmask over {0, ..., n-1}.
using VertexSubset = std::uint32_t;

std::vector<int> subset_vertices(VertexSubset s);

inline constexpr int kMaxStabilityVertices = 20;

struct StabilityResult {
  std::optional<VertexSubset> violation;  // first violating subset in integer order
  double pair_sum = 0.0;                  // sum of (Re) u over the violating subset
  double b_sum = 0.0;                     // sum of b over the violating subset

  bool stable() const { return !violation.has_value(); }
};

/// Checks sum_{i<j in I} Re u_ij >= -sum_{i in I} b_i for every subset I.
StabilityResult check_stability(const Potential& u, const StabilityCertificate& b);

/// Smallest uniform B such that b_i = B passes check_stability.
double minimal_uniform_stability(const Potential& u);

/// Edges sorted by nondecreasing Re u, ties by ascending EdgeId.
EdgeOrder edge_order_from_potential(const Potential& u);

/// (x)_- = max(-x, 0).
constexpr double negative_part(double x) { return x < 0.0 ? -x : 0.0; }

struct TrickFactors {
  double amplifier;    // e^{(x)_-}
  double tree_factor;  // 1 - e^{-|x|}, in [0, 1)
};

/// |e^{-x} - 1| = e^{(x)_-} (1 - e^{-|x|}).
TrickFactors trick_factorization(double x);

struct ForestDecomposition {
  EdgeSet t_minus;                    // tree edges with Re u < 0
  std::vector<VertexSubset> subtrees;  // components of t_minus, singletons included
  std::vector<EdgeSet> complete_edge_sets;  // K(t_m) per subtree
};

/// Components ordered by smallest vertex.
ForestDecomposition forest_decomposition(const Tree& t, const Potential& u);

/// All pairs inside the vertex subset.
EdgeSet complete_edges(VertexSubset vertices, int n);

}  // namespace treegraph

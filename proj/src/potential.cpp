#include "treegraph/potential.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "treegraph/errors.hpp"

namespace treegraph {

namespace {

void check_vertex_count(int n) {
  if (n < 2 || n > kMaxVertices) {
    throw DomainError("vertex count " + std::to_string(n) + " outside [2, 16]");
  }
}

/// pair_sums[I] = sum of Re u over pairs inside I, built from I minus its
/// lowest vertex.
std::vector<double> subset_pair_sums(const Potential& u) {
  const int n = u.vertex_count();
  std::vector<double> sums(std::size_t{1} << n, 0.0);
  for (std::uint32_t s = 1; s < (1U << n); ++s) {
    const int v = std::countr_zero(s);
    const std::uint32_t rest = s & (s - 1);
    double row = 0.0;
    for (std::uint32_t r = rest; r != 0; r &= r - 1) {
      row += u.re(edge_index(v, std::countr_zero(r), n));
    }
    sums[s] = sums[rest] + row;
  }
  return sums;
}

StabilityResult scan(const std::vector<double>& pair_sums, const StabilityCertificate& b) {
  const int n = b.vertex_count();
  std::vector<double> b_sums(std::size_t{1} << n, 0.0);
  for (std::uint32_t s = 1; s < (1U << n); ++s) {
    const std::uint32_t rest = s & (s - 1);
    b_sums[s] = b_sums[rest] + b[std::countr_zero(s)];
    if (pair_sums[s] < -b_sums[s]) {
      return StabilityResult{s, pair_sums[s], b_sums[s]};
    }
  }
  return {};
}

}  // namespace

Potential::Potential(int n, PotentialKind kind)
    : n_(n), kind_(kind), values_((check_vertex_count(n), static_cast<std::size_t>(edge_count(n)))) {}

Potential Potential::real(int n, std::span<const double> by_edge) {
  Potential u(n, PotentialKind::real);
  if (static_cast<int>(by_edge.size()) != edge_count(n)) {
    throw DomainError("potential needs " + std::to_string(edge_count(n)) + " values");
  }
  for (std::size_t e = 0; e < by_edge.size(); ++e) {
    u.set(EdgeId{static_cast<int>(e)}, by_edge[e]);
  }
  return u;
}

Potential Potential::complex(int n, std::span<const std::complex<double>> by_edge) {
  Potential u(n, PotentialKind::complex);
  if (static_cast<int>(by_edge.size()) != edge_count(n)) {
    throw DomainError("potential needs " + std::to_string(edge_count(n)) + " values");
  }
  for (std::size_t e = 0; e < by_edge.size(); ++e) {
    u.set(EdgeId{static_cast<int>(e)}, by_edge[e]);
  }
  return u;
}

Potential Potential::constant(int n, std::complex<double> value, PotentialKind kind) {
  Potential u(n, kind);
  for (int e = 0; e < edge_count(n); ++e) {
    u.set(EdgeId{e}, value);
  }
  return u;
}

void Potential::set(EdgeId e, std::complex<double> value) {
  if (e.value < 0 || e.value >= edge_count(n_)) {
    throw DomainError("edge id " + std::to_string(e.value) + " out of range");
  }
  if (!std::isfinite(value.real()) || !std::isfinite(value.imag())) {
    throw DomainError("non-finite potential value");
  }
  if (kind_ == PotentialKind::real && value.imag() != 0.0) {
    throw DomainError("real potential cannot hold an imaginary part");
  }
  values_[index(e)] = value;
}

StabilityCertificate::StabilityCertificate(std::vector<double> b) : b_(std::move(b)) {
  check_vertex_count(static_cast<int>(b_.size()));
  for (std::size_t i = 0; i < b_.size(); ++i) {
    if (!std::isfinite(b_[i])) {
      throw DomainError("non-finite b_" + std::to_string(i + 1));
    }
    if (b_[i] < 0.0) {
      throw DomainError("negative b_" + std::to_string(i + 1));
    }
  }
}

StabilityCertificate StabilityCertificate::uniform(int n, double b) {
  return StabilityCertificate(std::vector<double>(static_cast<std::size_t>(n), b));
}

double StabilityCertificate::total() const { return std::accumulate(b_.begin(), b_.end(), 0.0); }

std::vector<int> subset_vertices(VertexSubset s) {
  std::vector<int> vertices;
  for (; s != 0; s &= s - 1) {
    vertices.push_back(std::countr_zero(s));
  }
  return vertices;
}

StabilityResult check_stability(const Potential& u, const StabilityCertificate& b) {
  if (b.vertex_count() != u.vertex_count()) {
    throw DomainError("certificate has " + std::to_string(b.vertex_count()) +
                      " entries for n=" + std::to_string(u.vertex_count()));
  }
  // Potentials cap at 16 vertices, well inside the 2^20 subset budget.
  static_assert(kMaxVertices <= kMaxStabilityVertices);
  return scan(subset_pair_sums(u), b);
}

double minimal_uniform_stability(const Potential& u) {
  const int n = u.vertex_count();
  const std::vector<double> pair_sums = subset_pair_sums(u);
  double best = 0.0;
  for (std::uint32_t s = 1; s < (1U << n); ++s) {
    const int size = std::popcount(s);
    if (size >= 2) {
      best = std::max(best, -pair_sums[s] / size);
    }
  }
  // Division and repeated addition round differently; step up by ulps until
  // the exact check accepts.
  for (int step = 0; step < 64; ++step) {
    if (scan(pair_sums, StabilityCertificate::uniform(n, best)).stable()) {
      return best;
    }
    best = std::nextafter(best, INFINITY);
  }
  throw std::logic_error("minimal_uniform_stability failed to converge");
}

EdgeOrder edge_order_from_potential(const Potential& u) {
  const int n = u.vertex_count();
  std::vector<EdgeId> edges(static_cast<std::size_t>(edge_count(n)));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    edges[e] = EdgeId{static_cast<int>(e)};
  }
  std::stable_sort(edges.begin(), edges.end(),
                   [&](EdgeId a, EdgeId b) { return u.re(a) < u.re(b); });
  return EdgeOrder::from_sequence(n, edges);
}

TrickFactors trick_factorization(double x) {
  return {std::exp(negative_part(x)), -std::expm1(-std::abs(x))};
}

EdgeSet complete_edges(VertexSubset vertices, int n) {
  EdgeSet edges;
  for (std::uint32_t a = vertices; a != 0; a &= a - 1) {
    const int i = std::countr_zero(a);
    for (std::uint32_t c = a & (a - 1); c != 0; c &= c - 1) {
      edges.set(edge_index(i, std::countr_zero(c), n));
    }
  }
  return edges;
}

ForestDecomposition forest_decomposition(const Tree& t, const Potential& u) {
  const int n = t.vertex_count();
  if (u.vertex_count() != n) {
    throw DomainError("tree and potential have different vertex counts");
  }
  ForestDecomposition forest;
  t.edges().for_each([&](EdgeId e) {
    if (u.re(e) < 0.0) {
      forest.t_minus.set(e);
    }
  });
  const Adjacency adj = Graph(n, forest.t_minus).adjacency();
  std::uint32_t unseen = (1U << n) - 1;
  while (unseen != 0) {
    std::uint32_t component = 1U << std::countr_zero(unseen);
    std::uint32_t frontier = component;
    while (frontier != 0) {
      std::uint32_t next = 0;
      for (std::uint32_t f = frontier; f != 0; f &= f - 1) {
        next |= adj[std::countr_zero(f)];
      }
      frontier = next & ~component;
      component |= next;
    }
    unseen &= ~component;
    forest.subtrees.push_back(component);
    forest.complete_edge_sets.push_back(complete_edges(component, n));
  }
  return forest;
}

}  // namespace treegraph

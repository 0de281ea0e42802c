#include "treegraph/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "treegraph/summation.hpp"

namespace treegraph {

namespace {

using Complex = std::complex<double>;

/// e^z - 1 without cancellation for small |z|.
Complex expm1(Complex z) {
  const double half_sin = std::sin(0.5 * z.imag());
  return {std::expm1(z.real()) * std::cos(z.imag()) - 2.0 * half_sin * half_sin,
          std::exp(z.real()) * std::sin(z.imag())};
}

/// |1 - e^z|.
double abs_one_minus_exp(Complex z) { return std::abs(expm1(z)); }

void check_tree_sum_capacity(int n, const SumOptions& options) {
  const int limit = options.allow_large ? kMaxTreeSumLimit : kDefaultTreeSumLimit;
  if (n > limit) {
    throw CapacityError("tree sums over " + std::to_string(n) + "^" + std::to_string(n - 2) +
                        " trees exceed the n <= " + std::to_string(limit) + " limit" +
                        (options.allow_large ? "" : " (override raises it to 12)"));
  }
}

/// Compensated sum of term(t) over all spanning trees of K_n. Parallel mode
/// splits the Prüfer rank space into contiguous chunks and combines the
/// per-chunk sums in chunk order.
template <class Scalar, class Term>
Scalar sum_over_trees(int n, const SumOptions& options, const Term& term) {
  check_tree_sum_capacity(n, options);
  const std::uint64_t total = tree_count(n);
  auto run = [&](std::uint64_t first, std::uint64_t last) {
    CompensatedSum<Scalar> acc;
    for (const Tree& t : TreeRange(n, first, last)) {
      acc.add(term(t));
    }
    return acc;
  };
  if (options.execution == Execution::sequential) {
    return run(0, total).value();
  }
  unsigned workers = options.workers != 0 ? options.workers : std::thread::hardware_concurrency();
  workers = static_cast<unsigned>(std::clamp<std::uint64_t>(workers, 1, total));
  std::vector<CompensatedSum<Scalar>> partial(workers);
  std::vector<std::thread> threads;
  threads.reserve(workers);
  for (unsigned w = 0; w < workers; ++w) {
    const std::uint64_t first = total * w / workers;
    const std::uint64_t last = total * (w + 1) / workers;
    threads.emplace_back([&, w, first, last] { partial[w] = run(first, last); });
  }
  for (auto& th : threads) {
    th.join();
  }
  CompensatedSum<Scalar> acc;
  for (const auto& p : partial) {
    acc.add(p);
  }
  return acc.value();
}

template <class Scalar>
Scalar edge_product(const EdgeSet& edges, const std::vector<Scalar>& weight) {
  Scalar product = 1.0;
  edges.for_each([&](EdgeId e) { product *= weight[static_cast<std::size_t>(e.value)]; });
  return product;
}

template <class F>
auto per_edge(const Potential& u, F f) {
  std::vector<decltype(f(Complex{}))> weights;
  weights.reserve(u.values().size());
  for (const Complex& value : u.values()) {
    weights.push_back(f(value));
  }
  return weights;
}

double sum_of_re(const EdgeSet& edges, const Potential& u) {
  double sum = 0.0;
  edges.for_each([&](EdgeId e) { sum += u.re(e); });
  return sum;
}

void check_same_size(const Potential& u, int n, const char* what) {
  if (u.vertex_count() != n) {
    throw DomainError(std::string(what) + " and potential have different vertex counts");
  }
}

void require_stable(const Potential& u, const StabilityCertificate& b) {
  const StabilityResult result = check_stability(u, b);
  if (!result.stable()) {
    throw StabilityError(*result.violation, result.pair_sum, result.b_sum);
  }
}

std::string describe_subset(VertexSubset s) {
  std::ostringstream out;
  out << '{';
  const auto vertices = subset_vertices(s);
  for (std::size_t k = 0; k < vertices.size(); ++k) {
    out << (k ? ", " : "") << vertices[k];
  }
  out << '}';
  return out.str();
}

}  // namespace

std::string_view to_string(Execution mode) {
  return mode == Execution::sequential ? "sequential" : "parallel";
}

StabilityError::StabilityError(VertexSubset subset, double pair_sum, double b_sum)
    : DomainError("stability condition violated on vertex subset " + describe_subset(subset) +
                  ": pair sum " + std::to_string(pair_sum) + " < -" + std::to_string(b_sum)),
      subset_(subset) {}

Complex connected_sum_direct(const Potential& u) {
  const int n = u.vertex_count();
  if (n > kMaxDirectSum) {
    throw CapacityError("direct connected-graph sum limited to n <= 7, got n=" +
                        std::to_string(n));
  }
  const auto weight = per_edge(u, [](Complex v) { return expm1(-v); });
  CompensatedSum<Complex> acc;
  for (const Graph& g : enumerate_connected_graphs(n)) {
    acc.add(edge_product(g.edges(), weight));
  }
  return acc.value();
}

Complex connected_sum_resummed(const Potential& u, const EdgeOrder& order,
                               const SumOptions& options) {
  const int n = u.vertex_count();
  check_same_size(u, order.vertex_count(), "edge order");
  const auto link = per_edge(u, [](Complex v) { return expm1(-v); });
  const auto boltzmann = per_edge(u, [](Complex v) { return std::exp(-v); });
  return sum_over_trees<Complex>(n, options, [&](const Tree& t) {
    return edge_product(t.edges(), link) * edge_product(boundary_edges(t, order), boltzmann);
  });
}

double resummed_majorant(const Potential& u, const EdgeOrder& order, const SumOptions& options) {
  check_same_size(u, order.vertex_count(), "edge order");
  const auto link = per_edge(u, [](Complex v) { return std::abs(expm1(-v)); });
  const auto boltzmann = per_edge(u, [](Complex v) { return std::exp(-v.real()); });
  return sum_over_trees<double>(u.vertex_count(), options, [&](const Tree& t) {
    return edge_product(t.edges(), link) * edge_product(boundary_edges(t, order), boltzmann);
  });
}

double majorant_term(const Tree& t, const Potential& u, const EdgeOrder& order) {
  check_same_size(u, t.vertex_count(), "tree");
  double product = 1.0;
  t.edges().for_each([&](EdgeId e) { product *= std::abs(expm1(-u[e])); });
  boundary_edges(t, order).for_each([&](EdgeId e) { product *= std::exp(-u.re(e)); });
  return product;
}

double majorant_term_factored(const Tree& t, const Potential& u, const EdgeOrder& order) {
  check_same_size(u, t.vertex_count(), "tree");
  if (u.is_complex()) {
    throw DomainError("factored majorant term is defined for real potentials");
  }
  double product = 1.0;
  t.edges().for_each([&](EdgeId e) { product *= trick_factorization(u.re(e)).tree_factor; });
  const EdgeSet t_minus = forest_decomposition(t, u).t_minus;
  const double exponent = -sum_of_re(t_minus, u) - sum_of_re(boundary_edges(t, order), u);
  return product * std::exp(exponent);
}

double tree_bound_real(const Potential& u, const StabilityCertificate& b,
                       const SumOptions& options) {
  if (u.is_complex()) {
    throw DomainError("tree_bound_real needs a real potential; use the complex form");
  }
  require_stable(u, b);
  const auto factor = per_edge(u, [](Complex v) { return -std::expm1(-std::abs(v.real())); });
  const double trees = sum_over_trees<double>(
      u.vertex_count(), options, [&](const Tree& t) { return edge_product(t.edges(), factor); });
  return std::exp(b.total()) * trees;
}

double tree_bound_complex(const Potential& u, const StabilityCertificate& b,
                          const SumOptions& options) {
  require_stable(u, b);
  const auto factor = per_edge(
      u, [](Complex v) { return abs_one_minus_exp({-std::abs(v.real()), v.imag()}); });
  const double trees = sum_over_trees<double>(
      u.vertex_count(), options, [&](const Tree& t) { return edge_product(t.edges(), factor); });
  return std::exp(b.total()) * trees;
}

double naive_tree_bound(const Potential& u, const StabilityCertificate& b,
                        const SumOptions& options) {
  check_same_size(u, b.vertex_count(), "certificate");
  const auto factor = per_edge(u, [](Complex v) { return abs_one_minus_exp(-v); });
  const double trees = sum_over_trees<double>(
      u.vertex_count(), options, [&](const Tree& t) { return edge_product(t.edges(), factor); });
  return std::exp(b.total()) * trees;
}

double key_inequality_gap(const Tree& t, const Potential& u, const EdgeOrder& order) {
  check_same_size(u, t.vertex_count(), "tree");
  const ForestDecomposition forest = forest_decomposition(t, u);
  double complete = 0.0;
  for (const EdgeSet& k : forest.complete_edge_sets) {
    complete += sum_of_re(k, u);
  }
  return sum_of_re(forest.t_minus, u) + sum_of_re(boundary_edges(t, order), u) - complete;
}

bool within_bound(double lhs, double rhs, double rel_tol, double abs_floor) {
  return lhs <= rhs * (1.0 + rel_tol) + abs_floor;
}

BoundReport evaluate_bound(const Potential& u, const std::optional<StabilityCertificate>& b,
                           const BoundOptions& options) {
  const int n = u.vertex_count();
  check_tree_sum_capacity(n, options.sums);
  BoundReport report;
  report.execution = options.sums.execution;
  report.complex_form = u.is_complex() || options.force_complex;

  StabilityCertificate certificate = [&] {
    if (b) {
      return *b;
    }
    report.uniform_b = minimal_uniform_stability(u);
    return StabilityCertificate::uniform(n, *report.uniform_b);
  }();
  check_same_size(u, certificate.vertex_count(), "certificate");

  report.rhs_improved = report.complex_form ? tree_bound_complex(u, certificate, options.sums)
                                            : tree_bound_real(u, certificate, options.sums);
  report.rhs_naive = naive_tree_bound(u, certificate, options.sums);
  report.stability_prefactor = std::exp(certificate.total());
  report.tree_count = tree_count(n);
  if (n <= kMaxDirectSum) {
    report.lhs_value = connected_sum_direct(u);
    report.lhs_magnitude = std::abs(*report.lhs_value);
    report.satisfied =
        within_bound(*report.lhs_magnitude, report.rhs_improved, options.rel_tol, options.abs_floor);
  }
  return report;
}

}  // namespace treegraph

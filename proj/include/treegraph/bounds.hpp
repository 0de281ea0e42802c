#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <string_view>

#include "treegraph/errors.hpp"
#include "treegraph/graph.hpp"
#include "treegraph/potential.hpp"
#include "treegraph/scheme.hpp"

namespace treegraph {

inline constexpr int kMaxDirectSum = kMaxConnectedEnumeration;  // 2^21 edge subsets
inline constexpr int kDefaultTreeSumLimit = 9;
inline constexpr int kMaxTreeSumLimit = 12;

enum class Execution { sequential, parallel };

std::string_view to_string(Execution mode);

struct SumOptions {
  Execution execution = Execution::sequential;
  /// Raise the tree-sum limit from 9 to 12 vertices.
  bool allow_large = false;
  /// Worker threads in parallel mode; 0 picks hardware_concurrency.
  unsigned workers = 0;
};

/// Thrown when a certificate does not satisfy the stability condition.
class StabilityError : public DomainError {
 public:
  StabilityError(VertexSubset subset, double pair_sum, double b_sum);
  VertexSubset subset() const { return subset_; }

 private:
  VertexSubset subset_;
};

/// sum over connected g of prod_{ij in g} (e^{-u_ij} - 1), by direct
/// enumeration in increasing bitmask order. n <= 7.
std::complex<double> connected_sum_direct(const Potential& u);

/// The same quantity resummed over spanning trees with the scheme's boundary
/// sets: sum_t prod_{t} (e^{-u} - 1) prod_{E(t)} e^{-u}.
std::complex<double> connected_sum_resummed(const Potential& u, const EdgeOrder& order,
                                            const SumOptions& options = {});

/// sum_t prod_{t} |e^{-u} - 1| prod_{E(t)} |e^{-u}|, the absolute majorant of
/// the resummed form.
double resummed_majorant(const Potential& u, const EdgeOrder& order,
                         const SumOptions& options = {});

/// One tree's majorant term, computed directly ...
double majorant_term(const Tree& t, const Potential& u, const EdgeOrder& order);
/// ... and after the trick factorization:
/// prod_{t} (1 - e^{-|u|}) exp(-sum_{t_-} u - sum_{E(t)} u). Real u only.
double majorant_term_factored(const Tree& t, const Potential& u, const EdgeOrder& order);

/// e^{sum b} sum_t prod_{t} (1 - e^{-|u|}). Requires a real, stable (u, b).
double tree_bound_real(const Potential& u, const StabilityCertificate& b,
                       const SumOptions& options = {});

/// e^{sum b} sum_t prod_{t} |1 - e^{-|Re u| + i Im u}|. Requires Re-stability.
double tree_bound_complex(const Potential& u, const StabilityCertificate& b,
                          const SumOptions& options = {});

/// e^{sum b} sum_t prod_{t} |1 - e^{-u}|, the comparator the improved bound
/// beats. No stability check.
double naive_tree_bound(const Potential& u, const StabilityCertificate& b,
                        const SumOptions& options = {});

/// sum_{t_-} Re u + sum_{E(t)} Re u - sum_m sum_{K(t_m)} Re u. Nonnegative
/// whenever `order` is nondecreasing in Re u.
double key_inequality_gap(const Tree& t, const Potential& u, const EdgeOrder& order);

struct BoundOptions {
  SumOptions sums;
  double rel_tol = 1e-9;
  double abs_floor = 1e-12;
  /// Use the complex form even for a real potential.
  bool force_complex = false;
};

/// lhs <= rhs * (1 + rel_tol) + abs_floor
bool within_bound(double lhs, double rhs, double rel_tol, double abs_floor);

struct BoundReport {
  std::optional<double> lhs_magnitude;               // n <= 7 only
  std::optional<std::complex<double>> lhs_value;     // signed oracle sum
  double rhs_improved = 0.0;
  double rhs_naive = 0.0;
  double stability_prefactor = 1.0;                  // e^{sum b}
  std::optional<double> uniform_b;                   // set when b was "auto"
  std::uint64_t tree_count = 0;
  bool complex_form = false;
  bool satisfied = true;
  Execution execution = Execution::sequential;
};

/// Both sides of the tree-graph bound. `b` empty means the minimal uniform
/// certificate. Throws StabilityError / CapacityError.
BoundReport evaluate_bound(const Potential& u, const std::optional<StabilityCertificate>& b,
                           const BoundOptions& options = {});

}  // namespace treegraph

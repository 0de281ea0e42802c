#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"
#include "treegraph/bounds.hpp"
#include "treegraph/instance.hpp"
#include "treegraph/rng.hpp"

using namespace treegraph;
using Complex = std::complex<double>;

namespace {

constexpr double kLn2 = std::numbers::ln2;
constexpr double kE = std::numbers::e;

Potential single(Complex value) {
  Potential u(2, value.imag() != 0.0 ? PotentialKind::complex : PotentialKind::real);
  u.set(0, 1, value);
  return u;
}

bool close(Complex a, Complex b, double rel) { return std::abs(a - b) <= rel * (1.0 + std::abs(b)); }

}  // namespace

TEST_CASE("connected_sum_direct examples") {
  CHECK(close(connected_sum_direct(single(kLn2)), -0.5, 1e-15));
  const Potential tri = Potential::constant(3, kLn2, PotentialKind::real);
  CHECK(close(connected_sum_direct(tri), 0.625, 1e-14));
  CHECK(close(connected_sum_direct(single({0.0, std::numbers::pi})), -2.0, 1e-15));
  CHECK_THROWS_AS(connected_sum_direct(Potential(8, PotentialKind::real)), CapacityError);
}

TEST_CASE("connected_sum_resummed examples") {
  const Potential tri = Potential::constant(3, kLn2, PotentialKind::real);
  CHECK(close(connected_sum_resummed(tri, EdgeOrder::lexicographic(3)), 0.625, 1e-14));
  SplitMix64 rng(4);
  for (int k = 0; k < 10; ++k) {
    const double x = rng.uniform(-3, 3);
    CHECK(close(connected_sum_resummed(single(x), EdgeOrder::lexicographic(2)), std::expm1(-x), 1e-15));
  }
  for (int trial = 0; trial < 50; ++trial) {
    const Potential u = generate_instance(4, Distribution::uniform(-2, 3), rng.next());
    const EdgeOrder order = EdgeOrder::random(4, rng);
    REQUIRE(close(connected_sum_resummed(u, order), connected_sum_direct(u), 1e-9));
  }
}

TEST_CASE("resummation holds for complex potentials too") {
  SplitMix64 rng(12);
  for (int trial = 0; trial < 30; ++trial) {
    const Potential u = generate_instance(5, Distribution::complex_uniform(-1, 1, -3, 3), rng.next());
    REQUIRE(close(connected_sum_resummed(u, EdgeOrder::random(5, rng)), connected_sum_direct(u), 1e-9));
  }
}

TEST_CASE("tree-sum limits") {
  CHECK_THROWS_AS(tree_bound_real(Potential(10, PotentialKind::real), StabilityCertificate::uniform(10, 0)),
                  CapacityError);
  SumOptions large;
  large.allow_large = true;
  CHECK_THROWS_AS(naive_tree_bound(Potential(13, PotentialKind::real), StabilityCertificate::uniform(13, 0), large),
                  CapacityError);
}

TEST_CASE("tree_bound_real examples") {
  const Potential tri = Potential::constant(3, kLn2, PotentialKind::real);
  CHECK(tree_bound_real(tri, StabilityCertificate::uniform(3, 0)) == doctest::Approx(0.75).epsilon(1e-14));
  const double rhs = tree_bound_real(single(-1.0), StabilityCertificate({0.5, 0.5}));
  CHECK(rhs == doctest::Approx(kE * (1 - 1 / kE)).epsilon(1e-14));
  CHECK(rhs == doctest::Approx(kE - 1).epsilon(1e-14));
  CHECK(tree_bound_real(Potential(5, PotentialKind::real), StabilityCertificate::uniform(5, 0.3)) == 0.0);
  CHECK_THROWS_AS(tree_bound_real(single(-1.0), StabilityCertificate({0.4, 0.4})), StabilityError);
  CHECK_THROWS_AS(tree_bound_real(single({1.0, 1.0}), StabilityCertificate({0, 0})), DomainError);
}

TEST_CASE("tree_bound_complex examples") {
  const double rhs = tree_bound_complex(single({0.0, std::numbers::pi}), StabilityCertificate({0, 0}));
  CHECK(rhs == doctest::Approx(2.0).epsilon(1e-15));

  SplitMix64 rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const Potential u = generate_instance(5, Distribution::uniform(-1, 2), rng.next());
    const auto b = StabilityCertificate::uniform(5, minimal_uniform_stability(u));
    const double real = tree_bound_real(u, b);
    CHECK(std::abs(tree_bound_complex(u, b) - real) <= 1e-12 * real);
  }

  const Potential z = Potential::constant(3, {-0.1, 0.5}, PotentialKind::complex);
  const double b_star = minimal_uniform_stability(z);
  CHECK(b_star == doctest::Approx(0.1).epsilon(1e-12));
  const double zrhs = tree_bound_complex(z, StabilityCertificate::uniform(3, b_star));
  // Values computed independently in closed form: 3 trees, one factor per edge.
  CHECK(zrhs == doctest::Approx(0.9337986073179371).epsilon(1e-12));
  CHECK(std::abs(connected_sum_direct(z)) == doctest::Approx(0.8496598794525347).epsilon(1e-12));
  CHECK(std::abs(connected_sum_direct(z)) <= zrhs);
}

TEST_CASE("naive_tree_bound examples") {
  SplitMix64 rng(6);
  for (int trial = 0; trial < 20; ++trial) {
    const Potential u = generate_instance(5, Distribution::uniform(0, 3), rng.next());
    const auto b = StabilityCertificate::uniform(5, 0.2);
    CHECK(naive_tree_bound(u, b) == tree_bound_real(u, b));
  }
  const double naive = naive_tree_bound(single(-1.0), StabilityCertificate({0.5, 0.5}));
  CHECK(naive == doctest::Approx(kE * (kE - 1)).epsilon(1e-14));
  CHECK(naive == doctest::Approx(4.670774270471604).epsilon(1e-14));

  for (int trial = 0; trial < 200; ++trial) {
    const Potential u = generate_instance(3, Distribution::uniform(-2, 3), rng.next());
    const auto b = StabilityCertificate::uniform(3, minimal_uniform_stability(u));
    bool any_negative = false;
    for (const Complex& v : u.values()) any_negative = any_negative || v.real() < 0;
    const double improved = tree_bound_real(u, b);
    if (any_negative) {
      REQUIRE(improved < naive_tree_bound(u, b));
    } else {
      REQUIRE(improved == naive_tree_bound(u, b));
    }
  }
}

TEST_CASE("tree sums agree with the weighted matrix-tree theorem") {
  SplitMix64 rng(77);
  for (int n = 2; n <= 8; ++n) {
    const Potential u = generate_instance(n, Distribution::complex_uniform(-1, 2, -2, 2), rng.next());
    const auto b = StabilityCertificate::uniform(n, minimal_uniform_stability(u));
    const double prefactor = std::exp(b.total());
    const double improved = prefactor * oracle::tree_sum_by_determinant(n, [&](int i, int j) {
      const Complex v = u(i, j);
      return std::abs(1.0 - std::exp(Complex(-std::abs(v.real()), v.imag())));
    });
    const double naive = prefactor * oracle::tree_sum_by_determinant(
                                         n, [&](int i, int j) { return std::abs(1.0 - std::exp(-u(i, j))); });
    CHECK(tree_bound_complex(u, b) == doctest::Approx(improved).epsilon(1e-10));
    CHECK(naive_tree_bound(u, b) == doctest::Approx(naive).epsilon(1e-10));
  }
}

TEST_CASE("parallel tree sums match sequential ones") {
  SplitMix64 rng(15);
  const Potential u = generate_instance(7, Distribution::uniform(-1, 2), rng.next());
  const EdgeOrder order = edge_order_from_potential(u);
  SumOptions par;
  par.execution = Execution::parallel;
  par.workers = 4;
  const Complex seq = connected_sum_resummed(u, order);
  CHECK(close(connected_sum_resummed(u, order, par), seq, 1e-12));
  const auto b = StabilityCertificate::uniform(7, minimal_uniform_stability(u));
  CHECK(tree_bound_real(u, b, par) == doctest::Approx(tree_bound_real(u, b)).epsilon(1e-12));
}

TEST_CASE("key_inequality_gap examples") {
  const std::vector<double> values{-1.0, -1.0, 0.5};
  const Potential u = Potential::real(3, values);
  const Tree t = Tree::from_pairs(3, {{0, 1}, {0, 2}});
  CHECK(std::abs(key_inequality_gap(t, u, edge_order_from_potential(u))) <= 1e-15);

  SplitMix64 rng(1);
  const Potential pos = generate_instance(5, Distribution::uniform(0.1, 2), rng.next());
  const EdgeOrder order = edge_order_from_potential(pos);
  for (const Tree& tree : enumerate_trees(5)) {
    double boundary_sum = 0.0;
    boundary_edges(tree, order).for_each([&](EdgeId e) { boundary_sum += pos.re(e); });
    REQUIRE(key_inequality_gap(tree, pos, order) == doctest::Approx(boundary_sum));
  }
}

TEST_CASE("key inequality gap is nonnegative under the sorted order") {
  SplitMix64 rng(2);
  for (int n = 2; n <= 5; ++n) {
    for (int trial = 0; trial < 100; ++trial) {
      const Potential u = generate_instance(n, Distribution::uniform(-2, 3), rng.next());
      const EdgeOrder order = edge_order_from_potential(u);
      for (const Tree& t : enumerate_trees(n)) {
        REQUIRE(key_inequality_gap(t, u, order) >= -1e-12);
      }
    }
  }
}

TEST_CASE("majorant per-tree rewrite agrees with the factored form") {
  SplitMix64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Potential u = generate_instance(5, Distribution::uniform(-2, 3), rng.next());
    const EdgeOrder order = trial % 2 == 0 ? edge_order_from_potential(u) : EdgeOrder::random(5, rng);
    for (const Tree& t : enumerate_trees(5)) {
      const double direct = majorant_term(t, u, order);
      REQUIRE(std::abs(majorant_term_factored(t, u, order) - direct) <= 1e-12 * direct);
    }
  }
}

TEST_CASE("evaluate_bound examples") {
  const Potential tri = Potential::constant(3, kLn2, PotentialKind::real);
  const BoundReport r = evaluate_bound(tri, std::nullopt);
  REQUIRE(r.lhs_magnitude);
  CHECK(*r.lhs_magnitude == doctest::Approx(0.625).epsilon(1e-14));
  CHECK(r.rhs_improved == doctest::Approx(0.75).epsilon(1e-14));
  CHECK(*r.uniform_b == 0.0);
  CHECK(r.tree_count == 3);
  CHECK(r.satisfied);

  const BoundReport edge = evaluate_bound(single(-1.0), std::nullopt);
  CHECK(*edge.uniform_b == doctest::Approx(0.5));
  CHECK(*edge.lhs_magnitude == doctest::Approx(kE - 1).epsilon(1e-14));
  CHECK(edge.rhs_improved == doctest::Approx(*edge.lhs_magnitude).epsilon(1e-9));
  CHECK(edge.satisfied);

  SplitMix64 rng(66);
  for (int trial = 0; trial < 50; ++trial) {
    const Potential u = generate_instance(6, Distribution::uniform(-2, 3), rng.next());
    const BoundReport br = evaluate_bound(u, std::nullopt);
    REQUIRE(br.satisfied);
    REQUIRE(br.rhs_improved <= br.rhs_naive);
  }

  const BoundReport big = evaluate_bound(Potential::constant(8, 0.5, PotentialKind::real), std::nullopt);
  CHECK_FALSE(big.lhs_magnitude.has_value());
  CHECK(big.tree_count == 262144);
  CHECK_THROWS_AS(evaluate_bound(single(-1.0), StabilityCertificate({0.1, 0.1})), StabilityError);
}

TEST_CASE("within_bound tolerance") {
  CHECK(within_bound(1.0 + 1e-10, 1.0, 1e-9, 0.0));
  CHECK_FALSE(within_bound(1.0 + 1e-8, 1.0, 1e-9, 0.0));
  CHECK(within_bound(1e-13, 0.0, 1e-9, 1e-12));
}

#pragma once

#include <array>
#include <bit>
#include <compare>
#include <cstdint>
#include <utility>

namespace treegraph {

inline constexpr int kMaxVertices = 16;
inline constexpr int kMaxEdges = kMaxVertices * (kMaxVertices - 1) / 2;  // 120

constexpr int edge_count(int n) { return n * (n - 1) / 2; }

/// Index of an unordered pair {i, j} of K_n in lexicographic order of (min, max).
struct EdgeId {
  int value = 0;

  friend constexpr auto operator<=>(EdgeId, EdgeId) = default;
};

/// Bijection {(i, j) : i != j} / symmetry -> [0, n(n-1)/2). Throws DomainError on
/// i == j or out-of-range vertices.
EdgeId edge_index(int i, int j, int n);

struct Endpoints {
  int i = 0;
  int j = 0;

  friend constexpr bool operator==(Endpoints, Endpoints) = default;
};

/// Inverse of edge_index; i < j.
Endpoints edge_endpoints(EdgeId e, int n);

/// Subset of the edges of K_n, n <= 16, stored as a 120-bit mask in two words.
class EdgeSet {
 public:
  constexpr EdgeSet() = default;
  constexpr EdgeSet(std::uint64_t lo, std::uint64_t hi) : lo_(lo), hi_(hi) {}

  /// All edges of K_n.
  static constexpr EdgeSet complete(int n) {
    const int m = edge_count(n);
    EdgeSet s;
    if (m >= 64) {
      s.lo_ = ~std::uint64_t{0};
      s.hi_ = m == 64 ? 0 : (std::uint64_t{1} << (m - 64)) - 1;
    } else {
      s.lo_ = (std::uint64_t{1} << m) - 1;
    }
    return s;
  }

  constexpr bool test(EdgeId e) const {
    return e.value < 64 ? (lo_ >> e.value) & 1U : (hi_ >> (e.value - 64)) & 1U;
  }
  constexpr void set(EdgeId e) {
    if (e.value < 64) {
      lo_ |= std::uint64_t{1} << e.value;
    } else {
      hi_ |= std::uint64_t{1} << (e.value - 64);
    }
  }
  constexpr void reset(EdgeId e) {
    if (e.value < 64) {
      lo_ &= ~(std::uint64_t{1} << e.value);
    } else {
      hi_ &= ~(std::uint64_t{1} << (e.value - 64));
    }
  }

  constexpr int count() const { return std::popcount(lo_) + std::popcount(hi_); }
  constexpr bool empty() const { return (lo_ | hi_) == 0; }
  constexpr bool is_subset_of(const EdgeSet& other) const {
    return (lo_ & ~other.lo_) == 0 && (hi_ & ~other.hi_) == 0;
  }
  constexpr bool intersects(const EdgeSet& other) const {
    return ((lo_ & other.lo_) | (hi_ & other.hi_)) != 0;
  }

  /// Index of the highest set bit + 1, or 0 when empty.
  constexpr int bit_width() const {
    return hi_ != 0 ? 64 + std::bit_width(hi_) : static_cast<int>(std::bit_width(lo_));
  }

  constexpr std::uint64_t low_word() const { return lo_; }
  constexpr std::uint64_t high_word() const { return hi_; }

  /// Calls f(EdgeId) for each member in increasing index order.
  template <class F>
  constexpr void for_each(F&& f) const {
    for (std::uint64_t w = lo_; w != 0; w &= w - 1) {
      f(EdgeId{std::countr_zero(w)});
    }
    for (std::uint64_t w = hi_; w != 0; w &= w - 1) {
      f(EdgeId{64 + std::countr_zero(w)});
    }
  }

  constexpr EdgeSet operator|(const EdgeSet& o) const { return {lo_ | o.lo_, hi_ | o.hi_}; }
  constexpr EdgeSet operator&(const EdgeSet& o) const { return {lo_ & o.lo_, hi_ & o.hi_}; }
  /// Set difference.
  constexpr EdgeSet operator-(const EdgeSet& o) const { return {lo_ & ~o.lo_, hi_ & ~o.hi_}; }
  constexpr EdgeSet& operator|=(const EdgeSet& o) { return *this = *this | o; }

  friend constexpr bool operator==(const EdgeSet&, const EdgeSet&) = default;
  /// Orders as the 128-bit integer (hi, lo).
  friend constexpr std::strong_ordering operator<=>(const EdgeSet& a, const EdgeSet& b) {
    if (auto c = a.hi_ <=> b.hi_; c != 0) {
      return c;
    }
    return a.lo_ <=> b.lo_;
  }

 private:
  std::uint64_t lo_ = 0;
  std::uint64_t hi_ = 0;
};

}  // namespace treegraph

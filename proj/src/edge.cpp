#include "treegraph/edge.hpp"

#include <string>

#include "treegraph/errors.hpp"

namespace treegraph {

namespace {

struct EndpointTable {
  // table[n][e] for 2 <= n <= 16
  std::array<std::array<Endpoints, kMaxEdges>, kMaxVertices + 1> table{};

  constexpr EndpointTable() {
    for (int n = 2; n <= kMaxVertices; ++n) {
      int e = 0;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          table[n][e++] = Endpoints{i, j};
        }
      }
    }
  }
};

constexpr EndpointTable kEndpoints;

}  // namespace

EdgeId edge_index(int i, int j, int n) {
  if (n < 2 || n > kMaxVertices) {
    throw DomainError("vertex count " + std::to_string(n) + " outside [2, 16]");
  }
  if (i < 0 || j < 0 || i >= n || j >= n) {
    throw DomainError("vertex out of range in pair (" + std::to_string(i) + "," +
                      std::to_string(j) + ") for n=" + std::to_string(n));
  }
  if (i == j) {
    throw DomainError("self-pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
  }
  if (i > j) {
    std::swap(i, j);
  }
  return EdgeId{i * n - i * (i + 1) / 2 + (j - i - 1)};
}

Endpoints edge_endpoints(EdgeId e, int n) {
  if (n < 2 || n > kMaxVertices || e.value < 0 || e.value >= edge_count(n)) {
    throw DomainError("edge id " + std::to_string(e.value) + " invalid for n=" + std::to_string(n));
  }
  return kEndpoints.table[n][e.value];
}

}  // namespace treegraph

#pragma once

#include <cstdint>
#include <vector>

namespace cube3::canon {

// Vertex-colored undirected graph. Colors are small nonnegative ids; the
// canonical labeling respects them (vertices only map within their color).
struct ColoredGraph {
  int n = 0;
  std::vector<int> color;
  std::vector<std::vector<int>> adj;

  explicit ColoredGraph(int n_ = 0) : n(n_), color(n_, 0), adj(n_) {}
  void add_edge(int u, int v) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  std::size_t edge_count() const {
    std::size_t e = 0;
    for (const auto& l : adj) e += l.size();
    return e / 2;
  }
};

// Result of the individualization-refinement search: a canonical labeling
// (vertex -> position), a certificate that is equal exactly for isomorphic
// colored graphs, and generators of the automorphism group.
struct CanonResult {
  std::vector<int> labeling;
  std::vector<uint8_t> certificate;
  std::vector<std::vector<int>> generators;
  uint64_t nodes = 0;
};

CanonResult canonical_labeling(const ColoredGraph& g);

// Order of the permutation group generated by `gens` on n points.
// Throws std::overflow_error when the order exceeds uint64.
uint64_t permutation_group_order(int n, const std::vector<std::vector<int>>& gens);

}  // namespace cube3::canon

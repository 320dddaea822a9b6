#pragma once

#include <cstdint>
#include <vector>

#include "chipfire/vertex_set.hpp"

namespace chipfire {

/// One bundle of parallel edges: `mult` undirected edges between u and v.
struct EdgeBundle {
  int u = 0;
  int v = 0;
  int mult = 0;
};

/// Finite loopless multigraph on vertices 0..n-1, stored as a dense symmetric
/// multiplicity matrix. Values are immutable after construction; all derived
/// quantities (valences, connectivity) are computed up front.
class Multigraph {
 public:
  Multigraph(int vertex_count, const std::vector<EdgeBundle>& edges);

  int vertex_count() const { return n_; }

  /// Total number of edges counted with multiplicity.
  std::int64_t edge_count() const { return edges_; }

  int multiplicity(int u, int v) const {
    check_vertex(u);
    check_vertex(v);
    return mult_[static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) +
                 static_cast<std::size_t>(v)];
  }

  std::int64_t valence(int v) const {
    check_vertex(v);
    return val_[static_cast<std::size_t>(v)];
  }

  bool connected() const { return connected_; }

  /// Throws domain_error naming `op` when the graph is not connected.
  void require_connected(const char* op) const;

  bool operator==(const Multigraph&) const = default;

 private:
  friend int diameter(const Multigraph&);

  void check_vertex(int v) const {
    if (v < 0 || v >= n_) throw domain_error("vertex index out of range");
  }

  int n_ = 0;
  std::vector<int> mult_;  // row-major n*n
  std::vector<std::int64_t> val_;
  std::int64_t edges_ = 0;
  bool connected_ = false;
  int diameter_ = -1;  // cached at construction when connected
};

/// First Betti number |E| - |V| + 1 of a connected graph.
std::int64_t genus(const Multigraph& g);

/// Number of edges from v to vertices outside of `a`.
std::int64_t outdeg(const Multigraph& g, const VertexSet& a, int v);

/// Combinatorial Laplacian: L[v][v] = valence(v), L[v][w] = -multiplicity(v,w).
std::vector<std::vector<std::int64_t>> laplacian(const Multigraph& g);

/// BFS distances from q (every edge has length 1 regardless of multiplicity).
std::vector<int> distances(const Multigraph& g, int q);

int diameter(const Multigraph& g);

/// Weight of a minimum global edge cut, counting multiplicities. Exact
/// integer Stoer-Wagner; requires a connected graph with >= 2 vertices.
std::int64_t edge_connectivity(const Multigraph& g);

/// Number of spanning trees, via a fraction-free integer determinant of the
/// Laplacian minor with `removed_vertex` deleted. The choice of removed
/// vertex does not affect the count.
std::int64_t spanning_tree_count(const Multigraph& g, int removed_vertex = 0);

}  // namespace chipfire

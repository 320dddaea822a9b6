#pragma once

#include <cstdint>
#include <vector>

#include "chipfire/multigraph.hpp"

namespace chipfire {

/// Edge multiplicities along a path: mults[i] parallel edges between chain
/// vertices i and i+1. Every two-vertex-bundle family below reduces to this.
struct ChainSpec {
  std::vector<int> mults;
};

Multigraph path(int n);
Multigraph cycle(int n);
Multigraph complete(int n);
Multigraph complete_bipartite(int m, int n);

/// Two vertices joined by n parallel edges.
Multigraph banana(int n);

Multigraph chain(const ChainSpec& spec);

/// Chain of n vertices with e parallel edges between each consecutive pair.
Multigraph gen_banana(int n, int e);

/// Chain of a vertices whose consecutive multiplicities ascend up to b:
/// mults[i-1] = b - a + i + 1 for 1 <= i <= a-1, so the last bundle has b
/// edges. Requires 2 <= a <= b.
Multigraph desc_banana(int a, int b);

/// Erdos-Renyi style G(n, p) conditioned on connectivity. Pairs (u, v) with
/// u < v are visited in ascending order and kept when the next splitmix64
/// double is < p; disconnected samples are rejected and redrawn from the
/// same stream, up to 1e6 attempts.
Multigraph random_connected(int n, double p, std::uint64_t seed);

}  // namespace chipfire

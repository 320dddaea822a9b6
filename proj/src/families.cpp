#include "chipfire/families.hpp"

#include <string>

#include "chipfire/errors.hpp"
#include "chipfire/rng.hpp"

namespace chipfire {

Multigraph path(int n) {
  if (n < 1) throw domain_error("path needs n >= 1");
  std::vector<EdgeBundle> edges;
  for (int v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, 1});
  return Multigraph(n, edges);
}

Multigraph cycle(int n) {
  if (n < 3) throw domain_error("cycle needs n >= 3");
  std::vector<EdgeBundle> edges;
  for (int v = 0; v + 1 < n; ++v) edges.push_back({v, v + 1, 1});
  edges.push_back({0, n - 1, 1});
  return Multigraph(n, edges);
}

Multigraph complete(int n) {
  if (n < 1) throw domain_error("complete needs n >= 1");
  std::vector<EdgeBundle> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) edges.push_back({u, v, 1});
  return Multigraph(n, edges);
}

Multigraph complete_bipartite(int m, int n) {
  if (m < 1 || n < 1) throw domain_error("complete_bipartite needs m, n >= 1");
  std::vector<EdgeBundle> edges;
  for (int u = 0; u < m; ++u)
    for (int v = 0; v < n; ++v) edges.push_back({u, m + v, 1});
  return Multigraph(m + n, edges);
}

Multigraph banana(int n) {
  if (n < 1) throw domain_error("banana needs n >= 1 edges");
  return Multigraph(2, {{0, 1, n}});
}

Multigraph chain(const ChainSpec& spec) {
  if (spec.mults.empty()) throw domain_error("chain needs at least one bundle");
  std::vector<EdgeBundle> edges;
  for (std::size_t i = 0; i < spec.mults.size(); ++i) {
    if (spec.mults[i] < 1)
      throw domain_error("chain multiplicities must be >= 1");
    edges.push_back({static_cast<int>(i), static_cast<int>(i) + 1,
                     spec.mults[i]});
  }
  return Multigraph(static_cast<int>(spec.mults.size()) + 1, edges);
}

Multigraph gen_banana(int n, int e) {
  if (n < 2) throw domain_error("gen_banana needs n >= 2 vertices");
  if (e < 1) throw domain_error("gen_banana needs e >= 1 edges per bundle");
  ChainSpec spec;
  spec.mults.assign(static_cast<std::size_t>(n - 1), e);
  return chain(spec);
}

Multigraph desc_banana(int a, int b) {
  if (a < 2) throw domain_error("desc_banana needs a >= 2 vertices");
  if (b < a) throw domain_error("desc_banana needs b >= a");
  ChainSpec spec;
  for (int i = 1; i <= a - 1; ++i) spec.mults.push_back(b - a + i + 1);
  return chain(spec);
}

Multigraph random_connected(int n, double p, std::uint64_t seed) {
  if (n < 2) throw domain_error("random_connected needs n >= 2");
  if (!(p > 0.0) || p > 1.0)
    throw domain_error("random_connected needs 0 < p <= 1");
  SplitMix64 rng(seed);
  for (int attempt = 0; attempt < 1000000; ++attempt) {
    std::vector<EdgeBundle> edges;
    for (int u = 0; u < n; ++u)
      for (int v = u + 1; v < n; ++v)
        if (rng.next_double() < p) edges.push_back({u, v, 1});
    Multigraph g(n, edges);
    if (g.connected()) return g;
  }
  throw domain_error("random_connected gave up after 1e6 attempts (n=" +
                     std::to_string(n) + ", p=" + std::to_string(p) + ")");
}

}  // namespace chipfire

#include "chipfire/multigraph.hpp"

#include <algorithm>
#include <boost/multiprecision/cpp_int.hpp>
#include <limits>
#include <queue>
#include <utility>

#include "chipfire/errors.hpp"

namespace chipfire {

Multigraph::Multigraph(int vertex_count, const std::vector<EdgeBundle>& edges)
    : n_(vertex_count) {
  if (n_ < 1) throw domain_error("a multigraph needs at least one vertex");
  mult_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_), 0);
  val_.assign(static_cast<std::size_t>(n_), 0);

  for (const EdgeBundle& e : edges) {
    if (e.u < 0 || e.u >= n_ || e.v < 0 || e.v >= n_)
      throw domain_error("edge endpoint out of range");
    if (e.u == e.v) throw domain_error("loops are not allowed");
    if (e.mult < 1) throw domain_error("edge multiplicity must be >= 1");
    mult_[static_cast<std::size_t>(e.u) * static_cast<std::size_t>(n_) +
          static_cast<std::size_t>(e.v)] += e.mult;
    mult_[static_cast<std::size_t>(e.v) * static_cast<std::size_t>(n_) +
          static_cast<std::size_t>(e.u)] += e.mult;
    val_[static_cast<std::size_t>(e.u)] += e.mult;
    val_[static_cast<std::size_t>(e.v)] += e.mult;
    edges_ += e.mult;
  }

  // One BFS per vertex settles connectivity and caches the diameter, so the
  // hot burning loops never recompute either.
  std::vector<int> dist(static_cast<std::size_t>(n_));
  std::vector<int> frontier;
  frontier.reserve(static_cast<std::size_t>(n_));
  connected_ = true;
  diameter_ = 0;
  for (int q = 0; q < n_ && connected_; ++q) {
    std::fill(dist.begin(), dist.end(), -1);
    frontier.clear();
    frontier.push_back(q);
    dist[static_cast<std::size_t>(q)] = 0;
    for (std::size_t head = 0; head < frontier.size(); ++head) {
      int u = frontier[head];
      for (int v = 0; v < n_; ++v) {
        if (dist[static_cast<std::size_t>(v)] < 0 && multiplicity(u, v) > 0) {
          dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
          frontier.push_back(v);
        }
      }
    }
    for (int v = 0; v < n_; ++v) {
      if (dist[static_cast<std::size_t>(v)] < 0) {
        connected_ = false;
        break;
      }
      diameter_ = std::max(diameter_, dist[static_cast<std::size_t>(v)]);
    }
  }
  if (!connected_) diameter_ = -1;
}

void Multigraph::require_connected(const char* op) const {
  if (!connected_)
    throw domain_error(std::string(op) + " requires a connected graph");
}

std::int64_t genus(const Multigraph& g) {
  g.require_connected("genus");
  return g.edge_count() - g.vertex_count() + 1;
}

std::int64_t outdeg(const Multigraph& g, const VertexSet& a, int v) {
  if (a.universe() != g.vertex_count())
    throw domain_error("vertex set does not match the graph");
  if (!a.contains(v)) throw domain_error("outdeg vertex must belong to the set");
  std::int64_t out = 0;
  for (int u = 0; u < g.vertex_count(); ++u)
    if (!a.contains(u)) out += g.multiplicity(v, u);
  return out;
}

std::vector<std::vector<std::int64_t>> laplacian(const Multigraph& g) {
  int n = g.vertex_count();
  std::vector<std::vector<std::int64_t>> l(
      static_cast<std::size_t>(n),
      std::vector<std::int64_t>(static_cast<std::size_t>(n), 0));
  for (int v = 0; v < n; ++v) {
    l[static_cast<std::size_t>(v)][static_cast<std::size_t>(v)] = g.valence(v);
    for (int w = 0; w < n; ++w)
      if (w != v)
        l[static_cast<std::size_t>(v)][static_cast<std::size_t>(w)] =
            -g.multiplicity(v, w);
  }
  return l;
}

std::vector<int> distances(const Multigraph& g, int q) {
  int n = g.vertex_count();
  if (q < 0 || q >= n) throw domain_error("source vertex out of range");
  std::vector<int> dist(static_cast<std::size_t>(n), -1);
  std::queue<int> frontier;
  dist[static_cast<std::size_t>(q)] = 0;
  frontier.push(q);
  while (!frontier.empty()) {
    int u = frontier.front();
    frontier.pop();
    for (int v = 0; v < n; ++v) {
      if (dist[static_cast<std::size_t>(v)] < 0 && g.multiplicity(u, v) > 0) {
        dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
        frontier.push(v);
      }
    }
  }
  for (int v = 0; v < n; ++v)
    if (dist[static_cast<std::size_t>(v)] < 0)
      throw domain_error("distances requires a connected graph");
  return dist;
}

int diameter(const Multigraph& g) {
  g.require_connected("diameter");
  return g.diameter_;
}

std::int64_t edge_connectivity(const Multigraph& g) {
  int n = g.vertex_count();
  if (n < 2) throw domain_error("edge connectivity needs at least 2 vertices");
  g.require_connected("edge_connectivity");

  // Stoer-Wagner minimum cut with integer weights. Vertices get merged into
  // supervertices; each phase contributes one candidate cut.
  std::vector<std::vector<std::int64_t>> w(
      static_cast<std::size_t>(n),
      std::vector<std::int64_t>(static_cast<std::size_t>(n), 0));
  for (int u = 0; u < n; ++u)
    for (int v = 0; v < n; ++v) w[u][v] = g.multiplicity(u, v);

  std::vector<int> active(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) active[static_cast<std::size_t>(v)] = v;

  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  while (active.size() > 1) {
    std::vector<std::int64_t> weight_to(static_cast<std::size_t>(n), 0);
    std::vector<char> added(static_cast<std::size_t>(n), 0);
    int prev = -1, last = -1;
    for (std::size_t step = 0; step < active.size(); ++step) {
      int pick = -1;
      for (int v : active)
        if (!added[static_cast<std::size_t>(v)] &&
            (pick < 0 || weight_to[static_cast<std::size_t>(v)] >
                             weight_to[static_cast<std::size_t>(pick)]))
          pick = v;
      if (pick < 0) throw internal_error("cut phase ran out of vertices");
      added[static_cast<std::size_t>(pick)] = 1;
      prev = last;
      last = pick;
      for (int v : active)
        if (!added[static_cast<std::size_t>(v)])
          weight_to[static_cast<std::size_t>(v)] += w[pick][v];
    }
    best = std::min(best, [&] {
      std::int64_t cut = 0;
      for (int v : active)
        if (v != last) cut += w[last][v];
      return cut;
    }());
    // merge `last` into `prev`
    for (int v : active) {
      if (v == last || v == prev) continue;
      w[prev][v] += w[last][v];
      w[v][prev] = w[prev][v];
    }
    std::erase(active, last);
  }
  return best;
}

std::int64_t spanning_tree_count(const Multigraph& g, int removed_vertex) {
  g.require_connected("spanning_tree_count");
  int n = g.vertex_count();
  if (removed_vertex < 0 || removed_vertex >= n)
    throw domain_error("removed vertex out of range");
  if (n == 1) return 1;

  using big = boost::multiprecision::cpp_int;
  int m = n - 1;
  std::vector<std::vector<big>> a(
      static_cast<std::size_t>(m), std::vector<big>(static_cast<std::size_t>(m)));
  {
    auto l = laplacian(g);
    int r = 0;
    for (int i = 0; i < n; ++i) {
      if (i == removed_vertex) continue;
      int c = 0;
      for (int j = 0; j < n; ++j) {
        if (j == removed_vertex) continue;
        a[static_cast<std::size_t>(r)][static_cast<std::size_t>(c)] =
            l[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        ++c;
      }
      ++r;
    }
  }

  // Bareiss fraction-free elimination: every division below is exact, so the
  // whole computation stays in integers.
  big prev_pivot = 1;
  int sign = 1;
  for (int k = 0; k < m; ++k) {
    if (a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] == 0) {
      int swap_row = -1;
      for (int i = k + 1; i < m; ++i)
        if (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] != 0) {
          swap_row = i;
          break;
        }
      if (swap_row < 0) return 0;  // singular minor: no spanning tree
      std::swap(a[static_cast<std::size_t>(k)],
                a[static_cast<std::size_t>(swap_row)]);
      sign = -sign;
    }
    for (int i = k + 1; i < m; ++i)
      for (int j = k + 1; j < m; ++j) {
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
            (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] *
                 a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)] -
             a[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] *
                 a[static_cast<std::size_t>(k)][static_cast<std::size_t>(j)]) /
            prev_pivot;
      }
    prev_pivot = a[static_cast<std::size_t>(k)][static_cast<std::size_t>(k)];
  }

  big det = a[static_cast<std::size_t>(m - 1)][static_cast<std::size_t>(m - 1)];
  if (sign < 0) det = -det;
  if (det < 0)
    throw internal_error("negative spanning tree determinant");
  if (det > std::numeric_limits<std::int64_t>::max())
    throw domain_error("spanning tree count exceeds 64-bit range");
  return static_cast<std::int64_t>(det);
}

}  // namespace chipfire

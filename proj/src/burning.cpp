#include "chipfire/burning.hpp"

#include <algorithm>
#include <string>

#include "chipfire/errors.hpp"

namespace chipfire {

namespace {

constexpr std::int64_t kBorrowCap = 10'000'000;

void check_graph_divisor(const Multigraph& g, const Divisor& d) {
  if (d.size() != g.vertex_count())
    throw domain_error("divisor does not match the graph");
}

void check_scan_order(const Multigraph& g, const std::vector<int>* order) {
  if (!order) return;
  int n = g.vertex_count();
  if (static_cast<int>(order->size()) != n)
    throw domain_error("scan order must list every vertex once");
  std::vector<char> seen(static_cast<std::size_t>(n), 0);
  for (int v : *order) {
    if (v < 0 || v >= n || seen[static_cast<std::size_t>(v)])
      throw domain_error("scan order must list every vertex once");
    seen[static_cast<std::size_t>(v)] = 1;
  }
}

// Shared pass kernel over raw buffers. in_w marks the unburnt set; fire
// spreads until no member of W has fewer chips than edges into burnt
// territory. Returns the number of survivors.
int burn_in_place(const Multigraph& g, const Divisor& d,
                  std::vector<char>& in_w,
                  const std::vector<int>* scan_order) {
  int n = g.vertex_count();
  std::vector<std::int64_t> burning_edges(static_cast<std::size_t>(n), 0);
  int survivors = 0;
  for (int v = 0; v < n; ++v) {
    if (!in_w[static_cast<std::size_t>(v)]) continue;
    ++survivors;
    std::int64_t from_sources = 0;
    for (int u = 0; u < n; ++u)
      if (!in_w[static_cast<std::size_t>(u)])
        from_sources += g.multiplicity(v, u);
    burning_edges[static_cast<std::size_t>(v)] = from_sources;
  }

  bool removed = true;
  while (removed) {
    removed = false;
    for (int i = 0; i < n; ++i) {
      int v = scan_order ? (*scan_order)[static_cast<std::size_t>(i)] : i;
      if (!in_w[static_cast<std::size_t>(v)]) continue;
      if (d[v] < burning_edges[static_cast<std::size_t>(v)]) {
        in_w[static_cast<std::size_t>(v)] = 0;
        --survivors;
        for (int u = 0; u < n; ++u)
          if (in_w[static_cast<std::size_t>(u)])
            burning_edges[static_cast<std::size_t>(u)] += g.multiplicity(u, v);
        removed = true;
        break;  // restart the scan from the front
      }
    }
  }
  return survivors;
}

// Fires every vertex of in_w once, in place.
void fire_marked(const Multigraph& g, Divisor& d, const std::vector<char>& in_w,
                 FiringScript& script) {
  int n = g.vertex_count();
  for (int v = 0; v < n; ++v) {
    if (in_w[static_cast<std::size_t>(v)]) {
      script.counts[static_cast<std::size_t>(v)] += 1;
      for (int u = 0; u < n; ++u)
        if (!in_w[static_cast<std::size_t>(u)]) d[v] -= g.multiplicity(v, u);
    } else {
      for (int u = 0; u < n; ++u)
        if (in_w[static_cast<std::size_t>(u)]) d[v] += g.multiplicity(v, u);
    }
  }
}

// Borrow phase shared by the reduction entry points: clears debt everywhere
// except q. Borrows are batched per vertex; the abelian property makes the
// result and the per-vertex counts order-independent.
void settle_debt(const Multigraph& g, int q, Divisor& d, FiringScript& script,
                 BurnTrace* trace, const std::vector<int>* scan_order) {
  int n = g.vertex_count();
  std::int64_t borrows_total = 0;
  std::vector<std::int64_t> borrows(static_cast<std::size_t>(n), 0);
  for (;;) {
    int debtor = -1;
    for (int i = 0; i < n; ++i) {
      int v = scan_order ? (*scan_order)[static_cast<std::size_t>(i)] : i;
      if (v != q && d[v] < 0) {
        debtor = v;
        break;
      }
    }
    if (debtor < 0) break;
    std::int64_t val = g.valence(debtor);
    if (val == 0)
      throw domain_error("an isolated vertex cannot borrow its way out of debt");
    std::int64_t times = (-d[debtor] + val - 1) / val;
    d[debtor] += times * val;
    for (int u = 0; u < n; ++u)
      if (u != debtor)
        d[u] -= times * static_cast<std::int64_t>(g.multiplicity(u, debtor));
    borrows[static_cast<std::size_t>(debtor)] += times;
    borrows_total += times;
    if (borrows_total > kBorrowCap)
      throw internal_error("borrowing failed to settle debt");
  }
  // A borrow at v is one firing of everything except v.
  for (int v = 0; v < n; ++v)
    script.counts[static_cast<std::size_t>(v)] +=
        borrows_total - borrows[static_cast<std::size_t>(v)];
  if (trace) trace->passes += borrows_total;
}

BurnTrace* prepare_trace(const Multigraph& g, const BurnControl& ctl) {
  if (!ctl.trace) return nullptr;
  ctl.trace->passes = 0;
  ctl.trace->firings = FiringScript(g.vertex_count());
  ctl.trace->beta_log.clear();
  return ctl.trace;
}

}  // namespace

BurnOutcome dhar_pass(const Multigraph& g, const VertexSet& sources,
                      const Divisor& d, const std::vector<int>* scan_order) {
  check_graph_divisor(g, d);
  check_scan_order(g, scan_order);
  if (sources.universe() != g.vertex_count())
    throw domain_error("source set does not match the graph");
  if (sources.empty()) throw domain_error("burning needs at least one source");
  int n = g.vertex_count();
  std::vector<char> in_w(static_cast<std::size_t>(n), 0);
  for (int v = 0; v < n; ++v) {
    if (sources.contains(v)) continue;
    if (d[v] < 0)
      throw domain_error("burning needs nonnegative chips outside the sources");
    in_w[static_cast<std::size_t>(v)] = 1;
  }
  int survivors = burn_in_place(g, d, in_w, scan_order);
  if (survivors == 0) return {};
  VertexSet w(n);
  for (int v = 0; v < n; ++v)
    if (in_w[static_cast<std::size_t>(v)]) w.add(v);
  return {std::move(w)};
}

std::pair<Divisor, FiringScript> semi_reduce(const Multigraph& g, int q,
                                             const Divisor& d,
                                             const BurnControl& ctl) {
  check_graph_divisor(g, d);
  check_scan_order(g, ctl.scan_order);
  g.require_connected("semi_reduce");
  if (q < 0 || q >= g.vertex_count())
    throw domain_error("base vertex out of range");
  BurnTrace* trace = prepare_trace(g, ctl);
  Divisor out = d;
  FiringScript script(g.vertex_count());
  settle_debt(g, q, out, script, trace, ctl.scan_order);
  if (trace) trace->firings = script;
  return {std::move(out), normalized(std::move(script))};
}

namespace {

// Iterated burning after the borrow phase; shared by reduce/reduce_early.
// Returns true when it stopped because the running divisor became effective
// (only checked when stop_when_effective is set).
bool reduce_loop(const Multigraph& g, int q, Divisor& d, FiringScript& script,
                 BurnTrace* trace, bool record_beta,
                 const std::vector<int>* scan_order, bool stop_when_effective) {
  int n = g.vertex_count();
  std::vector<std::int64_t> beta_now;
  if (trace && record_beta) beta_now = compute_beta(g, q, d);
  for (;;) {
    if (stop_when_effective && is_effective(d)) return true;
    std::vector<char> in_w(static_cast<std::size_t>(n), 1);
    in_w[static_cast<std::size_t>(q)] = 0;
    int survivors = burn_in_place(g, d, in_w, scan_order);
    if (survivors == 0) return false;
    fire_marked(g, d, in_w, script);
    if (trace) {
      trace->passes += 1;
      if (record_beta) {
        BetaLogEntry entry;
        entry.pass = trace->passes;
        entry.vertex = q;
        entry.beta_before = beta_now;
        beta_now = compute_beta(g, q, d);
        entry.beta_after = beta_now;
        trace->beta_log.push_back(std::move(entry));
      }
    }
  }
}

}  // namespace

std::pair<Divisor, FiringScript> reduce(const Multigraph& g, int q,
                                        const Divisor& d,
                                        const BurnControl& ctl) {
  check_graph_divisor(g, d);
  check_scan_order(g, ctl.scan_order);
  g.require_connected("reduce");
  if (q < 0 || q >= g.vertex_count())
    throw domain_error("base vertex out of range");
  BurnTrace* trace = prepare_trace(g, ctl);
  Divisor out = d;
  FiringScript script(g.vertex_count());
  settle_debt(g, q, out, script, trace, ctl.scan_order);
  reduce_loop(g, q, out, script, trace, ctl.record_beta, ctl.scan_order,
              /*stop_when_effective=*/false);
  if (trace) trace->firings = script;
  return {std::move(out), normalized(std::move(script))};
}

EarlyReduceResult reduce_early(const Multigraph& g, int q, const Divisor& d,
                               const BurnControl& ctl) {
  check_graph_divisor(g, d);
  check_scan_order(g, ctl.scan_order);
  g.require_connected("reduce_early");
  if (q < 0 || q >= g.vertex_count())
    throw domain_error("base vertex out of range");
  BurnTrace* trace = prepare_trace(g, ctl);
  Divisor out = d;
  FiringScript script(g.vertex_count());
  if (is_effective(out))
    return {std::move(out), normalized(std::move(script)), true};
  settle_debt(g, q, out, script, trace, ctl.scan_order);
  bool early = reduce_loop(g, q, out, script, trace, ctl.record_beta,
                           ctl.scan_order, /*stop_when_effective=*/true);
  if (trace) trace->firings = script;
  return {std::move(out), normalized(std::move(script)), early};
}

std::optional<EffectiveWitness> modified_dhar(const Multigraph& g,
                                              const Divisor& d,
                                              const BurnControl& ctl) {
  check_graph_divisor(g, d);
  check_scan_order(g, ctl.scan_order);
  g.require_connected("modified_dhar");
  int n = g.vertex_count();
  BurnTrace* trace = prepare_trace(g, ctl);
  Divisor out = d;
  FiringScript script(n);

  // Distance tables for the per-debt-vertex progress measure, built lazily:
  // the set of debt vertices only ever shrinks.
  std::vector<std::vector<std::int64_t>> beta_now(static_cast<std::size_t>(n));
  auto betas_of_debt = [&](std::vector<std::pair<int, std::vector<std::int64_t>>>& out_betas) {
    out_betas.clear();
    for (int v = 0; v < n; ++v)
      if (out[v] < 0) out_betas.emplace_back(v, compute_beta(g, v, out));
  };

  std::int64_t pass_cap = 0;
  {
    std::int64_t plus = 0;
    for (int v = 0; v < n; ++v)
      if (d[v] > 0) plus += d[v];
    // Guaranteed pass bound n * diam * deg(D+); anything past it is a bug.
    pass_cap = static_cast<std::int64_t>(n) * diameter(g) * plus + 1;
  }

  std::int64_t passes = 0;
  std::vector<std::pair<int, std::vector<std::int64_t>>> debt_betas;
  for (;;) {
    if (is_effective(out)) {
      if (trace) {
        trace->passes = passes;
        trace->firings = script;
      }
      return EffectiveWitness{std::move(out), normalized(std::move(script))};
    }
    std::vector<char> in_w(static_cast<std::size_t>(n), 0);
    for (int v = 0; v < n; ++v)
      if (out[v] >= 0) in_w[static_cast<std::size_t>(v)] = 1;
    int survivors = burn_in_place(g, out, in_w, ctl.scan_order);
    if (survivors == 0) {
      if (trace) {
        trace->passes = passes;
        trace->firings = script;
      }
      return std::nullopt;
    }

    if (trace && ctl.record_beta) betas_of_debt(debt_betas);
    fire_marked(g, out, in_w, script);
    ++passes;
    if (trace && ctl.record_beta) {
      for (auto& [v, before] : debt_betas) {
        BetaLogEntry entry;
        entry.pass = passes;
        entry.vertex = v;
        entry.beta_before = std::move(before);
        entry.beta_after = compute_beta(g, v, out);
        trace->beta_log.push_back(std::move(entry));
      }
    }
    if (--pass_cap < 0)
      throw internal_error("debt elimination exceeded its pass bound");
  }
}

std::optional<Divisor> find_dominating(const Multigraph& g, const Divisor& d,
                                       const Divisor& e) {
  check_graph_divisor(g, d);
  check_graph_divisor(g, e);
  if (!is_effective(e)) throw domain_error("find_dominating needs effective e");
  auto cleared = modified_dhar(g, d - e);
  if (!cleared) return std::nullopt;
  return cleared->divisor + e;
}

std::vector<std::int64_t> compute_beta(const Multigraph& g, int q,
                                       const Divisor& d) {
  check_graph_divisor(g, d);
  std::vector<int> dist = distances(g, q);
  std::vector<std::int64_t> beta(static_cast<std::size_t>(diameter(g)) + 1, 0);
  for (int v = 0; v < g.vertex_count(); ++v)
    beta[static_cast<std::size_t>(dist[static_cast<std::size_t>(v)])] += d[v];
  return beta;
}

}  // namespace chipfire

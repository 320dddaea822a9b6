#pragma once

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "chipfire/divisor.hpp"
#include "chipfire/multigraph.hpp"

namespace chipfire {

/// Result of one burning pass: either the whole graph burned, or a nonempty
/// set of vertices survived and can fire together without entering debt.
struct BurnOutcome {
  std::optional<VertexSet> unburned;

  bool all_burned() const { return !unburned.has_value(); }
};

/// Distance-class chip sums recorded around one firing step. `vertex` is the
/// reference vertex of the measure (q for full reduction, a debt vertex for
/// debt elimination); the measure strictly increases lexicographically.
struct BetaLogEntry {
  std::int64_t pass = 0;
  int vertex = 0;
  std::vector<std::int64_t> beta_before;
  std::vector<std::int64_t> beta_after;
};

/// Diagnostics accumulated across one reduction or debt-elimination run.
struct BurnTrace {
  std::int64_t passes = 0;    // number of fired sets, borrows included
  FiringScript firings;       // total fires per vertex, all entries >= 0
  std::vector<BetaLogEntry> beta_log;  // only filled when record_beta is set
};

/// Optional knobs for the burning entry points. `scan_order`, when given,
/// permutes the vertex scan that picks the next burning vertex; outcomes are
/// scan-order independent, which the tests exercise. `record_beta` is costly
/// (one BFS per reference vertex) and off by default.
struct BurnControl {
  const std::vector<int>* scan_order = nullptr;
  BurnTrace* trace = nullptr;
  bool record_beta = false;
};

/// One burning pass. Fire starts at `sources` and spreads: a vertex burns as
/// soon as its chip count is smaller than its number of edges into burnt
/// territory. Requires nonempty sources and d >= 0 outside the sources.
BurnOutcome dhar_pass(const Multigraph& g, const VertexSet& sources,
                      const Divisor& d,
                      const std::vector<int>* scan_order = nullptr);

/// Clears debt off q by repeated borrowing: while some v != q is negative,
/// v borrows (the rest of the graph fires at v). Terminates because it is
/// sandpile toppling toward sink q in disguise; the result and the script
/// are independent of borrow order.
std::pair<Divisor, FiringScript> semi_reduce(const Multigraph& g, int q,
                                             const Divisor& d,
                                             const BurnControl& ctl = {});

/// Unique q-reduced representative of the class of d, with the script that
/// realizes it. Semi-reduces first, then repeatedly fires the unburnt set of
/// a burning pass seeded at q until the whole graph burns.
std::pair<Divisor, FiringScript> reduce(const Multigraph& g, int q,
                                        const Divisor& d,
                                        const BurnControl& ctl = {});

struct EarlyReduceResult {
  Divisor divisor;
  FiringScript script;
  bool stopped_early = false;
};

/// Same loop as reduce(), but returns as soon as the running divisor becomes
/// effective. When stopped_early is false the output equals reduce()'s.
EarlyReduceResult reduce_early(const Multigraph& g, int q, const Divisor& d,
                               const BurnControl& ctl = {});

struct EffectiveWitness {
  Divisor divisor;
  FiringScript script;
};

/// Debt elimination without a fixed sink: burning starts from all vertices
/// in debt, and the surviving set fires until either no debt remains
/// (returns the first effective divisor reached plus its script) or the
/// whole graph burns (no effective divisor is equivalent to d).
std::optional<EffectiveWitness> modified_dhar(const Multigraph& g,
                                              const Divisor& d,
                                              const BurnControl& ctl = {});

/// Some effective divisor equivalent to d that dominates e, if one exists:
/// eliminate the debt of d - e and add e back.
std::optional<Divisor> find_dominating(const Multigraph& g, const Divisor& d,
                                       const Divisor& e);

/// Chip sums of d over the BFS distance classes from q, indexed 0..diam(g).
std::vector<std::int64_t> compute_beta(const Multigraph& g, int q,
                                       const Divisor& d);

}  // namespace chipfire

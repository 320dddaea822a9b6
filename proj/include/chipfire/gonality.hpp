#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chipfire/divisor.hpp"
#include "chipfire/multigraph.hpp"

namespace chipfire {

/// Options for the gonality searches. `reduced_only` prunes candidate
/// divisors to the ones already reduced at vertex 0, which never changes a
/// gonality value; `jobs` is the worker-thread width of the candidate scan
/// (results are identical for every width).
struct GonalityOptions {
  bool reduced_only = false;
  int jobs = 1;
};

/// True iff d - E is equivalent to an effective divisor for every effective
/// E of degree r. Divisors concentrated on minimum-valence vertices are
/// probed first, since they are the likeliest refuters.
bool has_rank_at_least(const Multigraph& g, const Divisor& d, std::int64_t r);

/// Baker-Norine rank: -1 when no effective divisor is equivalent to d,
/// otherwise the largest r such that has_rank_at_least(g, d, r).
std::int64_t rank(const Multigraph& g, const Divisor& d);

struct GonGtResult {
  bool greater = false;
  /// When greater is false: the lexicographically least effective divisor of
  /// degree k with rank >= r.
  std::optional<Divisor> witness;
};

/// Decides whether every effective divisor of degree k has rank < r.
GonGtResult is_gon_gt(const Multigraph& g, int r, std::int64_t k,
                      const GonalityOptions& options = {});

struct GonalityWitness {
  int r = 0;
  std::int64_t value = 0;
  Divisor witness;
};

/// r-th gonality: least degree of an effective divisor of rank >= r. Degrees
/// ascend from r; genus + r is a guaranteed ceiling, and hitting it without
/// a winner is an internal error.
GonalityWitness gonality(const Multigraph& g, int r,
                         const GonalityOptions& options = {});

struct SequenceSpec {
  std::int64_t genus = 0;
  std::int64_t gon1 = 0;
  std::vector<std::int64_t> terms;  // terms[i] = gonality of rank i+1
};

/// First `upto` gonalities. Ranks r >= genus use the closed form genus + r
/// without search.
SequenceSpec gonality_sequence(const Multigraph& g, int upto,
                               const GonalityOptions& options = {});

/// The known gonality sequence catalog for genus <= 6, keyed by genus and
/// first gonality, extended by genus + k for k >= genus. Genus <= 1 ignores
/// gon1. Genus 6 with gon1 in {3, 4} additionally needs gon2 in {5, 6} to
/// pick the row; the genus 6 rows assume the standard conjectural picture.
SequenceSpec expected_sequence(std::int64_t genus, std::int64_t gon1, int upto,
                               std::optional<std::int64_t> gon2 = std::nullopt);

/// rank(d) - rank(K - d) - deg(d) - 1 + genus; zero on every divisor.
std::int64_t rr_residual(const Multigraph& g, const Divisor& d);

/// Brill-Noether number rho = g - (r+1)(g - d + r).
std::int64_t rho(std::int64_t genus, std::int64_t r, std::int64_t d);

/// floor((g+3)/2), an upper bound for the first gonality when g <= 5.
std::int64_t brill_noether_bound(std::int64_t genus);

/// min{ deg(D) - 2 rank(D) : rank(D) >= 1, deg(D) <= g-1 }. Requires genus
/// >= 2; throws when the feasible set is empty.
std::int64_t clifford_index(const Multigraph& g);

struct GonalityFact {
  int r = 0;
  std::optional<std::int64_t> lower;
  std::optional<std::int64_t> upper;
};

/// Fixpoint closure of gonality facts under: the dual upper bound through
/// the canonical class, the dual lower bound (if gon_k >= c then gon_j >=
/// j - k + g for every j >= g + k - c), strict monotonicity, subadditivity,
/// and the closed forms gon_{g-1} = 2g-2 (g >= 2) and gon_k = g + k for
/// k >= g. Contradictory facts raise a domain_error.
std::vector<GonalityFact> propagate_bounds(std::int64_t genus,
                                           const std::vector<GonalityFact>& facts);

struct TrigonalReportRow {
  int k = 0;
  std::int64_t computed = 0;
  std::int64_t predicted = 0;
  bool match = false;
};

/// Compares the computed gonality sequence of a graph with gon_1 = 3 against
/// the gonality formula for trigonal algebraic curves, term by term up to
/// k = genus. Graphs may disagree with the curve formula.
std::vector<TrigonalReportRow> check_trigonal_conjecture(
    const Multigraph& g, const GonalityOptions& options = {});

/// Closed-form gonalities for generator families, keyed by the same family
/// ids the command line uses ("path", "cycle", "banana", "genbanana",
/// "descbanana", "bipartite") and their parameters. Pairs without a known
/// closed form raise domain_error; nothing is extrapolated.
std::int64_t expected_family_gonality(const std::string& family,
                                      const std::vector<std::int64_t>& params,
                                      int r);

}  // namespace chipfire

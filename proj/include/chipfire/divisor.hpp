#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "chipfire/multigraph.hpp"

namespace chipfire {

/// Integer chip assignment on the vertices of a graph.
struct Divisor {
  std::vector<std::int64_t> chips;

  Divisor() = default;
  explicit Divisor(int n) : chips(static_cast<std::size_t>(n), 0) {}
  Divisor(std::initializer_list<std::int64_t> c) : chips(c) {}

  int size() const { return static_cast<int>(chips.size()); }

  std::int64_t operator[](int v) const {
    return chips[static_cast<std::size_t>(v)];
  }
  std::int64_t& operator[](int v) { return chips[static_cast<std::size_t>(v)]; }

  bool operator==(const Divisor&) const = default;
};

Divisor operator+(const Divisor& a, const Divisor& b);
Divisor operator-(const Divisor& a, const Divisor& b);

/// k chips on a single vertex.
Divisor unit_divisor(int n, int v, std::int64_t k = 1);

/// Per-vertex firing counts. Two scripts differing by a constant vector act
/// identically on divisors; `normalized` picks the representative with
/// minimum entry zero.
struct FiringScript {
  std::vector<std::int64_t> counts;

  FiringScript() = default;
  explicit FiringScript(int n) : counts(static_cast<std::size_t>(n), 0) {}

  int size() const { return static_cast<int>(counts.size()); }
  bool operator==(const FiringScript&) const = default;
};

FiringScript normalized(FiringScript f);

std::int64_t degree(const Divisor& d);
bool is_effective(const Divisor& d);

/// Vertices with a positive chip count.
VertexSet support(const Divisor& d);

/// Canonical divisor: valence(v) - 2 chips at every vertex.
Divisor canonical(const Multigraph& g);

/// d - L f, i.e. the result of every vertex v firing f(v) times.
Divisor apply_script(const Multigraph& g, const Divisor& d,
                     const FiringScript& f);

/// Fires every vertex of w once: chips move across the boundary cut of w.
Divisor fire_subset(const Multigraph& g, const Divisor& d, const VertexSet& w);

/// True when d = L f for some firing script, i.e. d ~ 0. Requires deg d = 0.
bool is_principal(const Multigraph& g, const Divisor& d);

/// Linear equivalence. On success an optional witness script f with
/// apply_script(g, a, f) == b is produced, normalized to minimum entry 0.
bool equivalent(const Multigraph& g, const Divisor& a, const Divisor& b,
                FiringScript* witness = nullptr);

/// Number of effective divisors of degree k on n vertices: C(n+k-1, k).
/// Throws domain_error if the count does not fit in 64 bits.
std::uint64_t effective_divisor_count(int n, std::int64_t k);

/// In-place successor in the enumeration order used throughout: start from
/// all k chips on vertex 0 and end with all k chips on vertex n-1, moving
/// chips rightward. Returns false when the input was the last divisor.
bool next_effective_chips(std::vector<std::int64_t>& chips);

/// Random access into the same enumeration order.
Divisor effective_divisor_at(int n, std::int64_t k, std::uint64_t index);

/// Streams every effective divisor of degree exactly k on n vertices, each
/// exactly once, in the enumeration order above, using O(n) memory.
class EffectiveDivisorStream {
 public:
  EffectiveDivisorStream(int n, std::int64_t k);

  /// Next divisor, or nullptr when exhausted. The pointee is reused.
  const Divisor* next();

 private:
  Divisor current_;
  bool started_ = false;
  bool done_ = false;
};

/// Nested level sets A_0 through A_k of a script: with m = max f and
/// k = m - min f, A_i = { v : f(v) >= m - i }. A_k is all vertices.
std::vector<VertexSet> level_sets(const FiringScript& f);

/// Divisor walk D_0 = d, D_{i+1} = fire_subset(D_i, A_i), ending at
/// apply_script(g, d, f) after all of A_0..A_{k-1} have fired.
std::vector<Divisor> level_set_divisor_sequence(const Multigraph& g,
                                                const Divisor& d,
                                                const FiringScript& f);

/// One line of n space-separated integers.
Divisor parse_divisor(const std::string& line, int n);
std::string format_divisor(const Divisor& d);

}  // namespace chipfire

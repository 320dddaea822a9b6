#include "chipfire/divisor.hpp"

#include <algorithm>
#include <limits>
#include <sstream>

#include "chipfire/burning.hpp"
#include "chipfire/errors.hpp"

namespace chipfire {

namespace {

void check_sizes(const Divisor& a, const Divisor& b) {
  if (a.size() != b.size())
    throw domain_error("divisors live on different vertex sets");
}

void check_graph_divisor(const Multigraph& g, const Divisor& d) {
  if (d.size() != g.vertex_count())
    throw domain_error("divisor does not match the graph");
}

}  // namespace

Divisor operator+(const Divisor& a, const Divisor& b) {
  check_sizes(a, b);
  Divisor out = a;
  for (int v = 0; v < out.size(); ++v) out[v] += b[v];
  return out;
}

Divisor operator-(const Divisor& a, const Divisor& b) {
  check_sizes(a, b);
  Divisor out = a;
  for (int v = 0; v < out.size(); ++v) out[v] -= b[v];
  return out;
}

Divisor unit_divisor(int n, int v, std::int64_t k) {
  if (v < 0 || v >= n) throw domain_error("vertex index out of range");
  Divisor d(n);
  d[v] = k;
  return d;
}

FiringScript normalized(FiringScript f) {
  if (f.counts.empty()) return f;
  std::int64_t low = *std::min_element(f.counts.begin(), f.counts.end());
  for (auto& c : f.counts) c -= low;
  return f;
}

std::int64_t degree(const Divisor& d) {
  std::int64_t total = 0;
  for (int v = 0; v < d.size(); ++v) total += d[v];
  return total;
}

bool is_effective(const Divisor& d) {
  for (int v = 0; v < d.size(); ++v)
    if (d[v] < 0) return false;
  return true;
}

VertexSet support(const Divisor& d) {
  VertexSet s(d.size());
  for (int v = 0; v < d.size(); ++v)
    if (d[v] > 0) s.add(v);
  return s;
}

Divisor canonical(const Multigraph& g) {
  Divisor k(g.vertex_count());
  for (int v = 0; v < g.vertex_count(); ++v) k[v] = g.valence(v) - 2;
  return k;
}

Divisor apply_script(const Multigraph& g, const Divisor& d,
                     const FiringScript& f) {
  check_graph_divisor(g, d);
  if (f.size() != g.vertex_count())
    throw domain_error("firing script does not match the graph");
  Divisor out = d;
  for (int v = 0; v < g.vertex_count(); ++v) {
    // subtract (L f)(v) = val(v) f(v) - sum_u mult(v,u) f(u)
    std::int64_t lf = g.valence(v) * f.counts[static_cast<std::size_t>(v)];
    for (int u = 0; u < g.vertex_count(); ++u)
      if (u != v)
        lf -= static_cast<std::int64_t>(g.multiplicity(v, u)) *
              f.counts[static_cast<std::size_t>(u)];
    out[v] -= lf;
  }
  return out;
}

Divisor fire_subset(const Multigraph& g, const Divisor& d,
                    const VertexSet& w) {
  check_graph_divisor(g, d);
  if (w.universe() != g.vertex_count())
    throw domain_error("vertex set does not match the graph");
  if (w.empty()) throw domain_error("fire_subset needs a nonempty set");
  Divisor out = d;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (w.contains(v)) {
      out[v] -= outdeg(g, w, v);
    } else {
      std::int64_t in = 0;
      for (int u = 0; u < g.vertex_count(); ++u)
        if (w.contains(u)) in += g.multiplicity(v, u);
      out[v] += in;
    }
  }
  return out;
}

bool is_principal(const Multigraph& g, const Divisor& d) {
  check_graph_divisor(g, d);
  g.require_connected("is_principal");
  if (degree(d) != 0) return false;
  auto [reduced, script] = reduce(g, 0, d);
  (void)script;
  return std::all_of(reduced.chips.begin(), reduced.chips.end(),
                     [](std::int64_t c) { return c == 0; });
}

bool equivalent(const Multigraph& g, const Divisor& a, const Divisor& b,
                FiringScript* witness) {
  check_graph_divisor(g, a);
  check_graph_divisor(g, b);
  g.require_connected("equivalent");
  if (degree(a) != degree(b)) return false;
  auto [reduced, script] = reduce(g, 0, a - b);
  bool zero = std::all_of(reduced.chips.begin(), reduced.chips.end(),
                          [](std::int64_t c) { return c == 0; });
  if (zero && witness) {
    // (a - b) - L f = 0, so a - L f = b: the reduction script itself moves
    // a onto b.
    *witness = normalized(script);
  }
  return zero;
}

std::uint64_t effective_divisor_count(int n, std::int64_t k) {
  if (n < 1) throw domain_error("divisor count needs n >= 1");
  if (k < 0) throw domain_error("divisor count needs degree k >= 0");
  // C(n+k-1, k) with overflow detection
  std::uint64_t result = 1;
  for (std::int64_t i = 1; i < n; ++i) {
    // multiply by (k + i) / i  -- running product stays integral
    std::uint64_t factor = static_cast<std::uint64_t>(k) + static_cast<std::uint64_t>(i);
    if (result > std::numeric_limits<std::uint64_t>::max() / factor)
      throw domain_error("effective divisor count exceeds 64-bit range");
    result = result * factor / static_cast<std::uint64_t>(i);
  }
  return result;
}

bool next_effective_chips(std::vector<std::int64_t>& chips) {
  int n = static_cast<int>(chips.size());
  if (n <= 1) return false;
  int j = -1;
  for (int i = n - 2; i >= 0; --i)
    if (chips[static_cast<std::size_t>(i)] > 0) {
      j = i;
      break;
    }
  if (j < 0) return false;  // everything sits on the last vertex
  std::int64_t tail = chips[static_cast<std::size_t>(n - 1)];
  chips[static_cast<std::size_t>(n - 1)] = 0;
  chips[static_cast<std::size_t>(j)] -= 1;
  chips[static_cast<std::size_t>(j + 1)] += tail + 1;
  return true;
}

Divisor effective_divisor_at(int n, std::int64_t k, std::uint64_t index) {
  if (n < 1) throw domain_error("divisor unrank needs n >= 1");
  if (k < 0) throw domain_error("divisor unrank needs k >= 0");
  Divisor d(n);
  std::int64_t remaining = k;
  for (int v = 0; v < n - 1; ++v) {
    // chips[v] runs downward from `remaining`; each choice c owns a block of
    // C(remaining - c + (n - v - 2), n - v - 2) enumerations.
    std::int64_t c = remaining;
    for (; c >= 0; --c) {
      std::uint64_t block = effective_divisor_count(n - v - 1, remaining - c);
      if (index < block) break;
      index -= block;
    }
    if (c < 0) throw domain_error("divisor index out of range");
    d[v] = c;
    remaining -= c;
  }
  d[n - 1] = remaining;
  return d;
}

EffectiveDivisorStream::EffectiveDivisorStream(int n, std::int64_t k) {
  if (n < 1) throw domain_error("divisor stream needs n >= 1");
  if (k < 0) {
    done_ = true;
    current_ = Divisor(n);
  } else {
    current_ = unit_divisor(n, 0, k);
  }
}

const Divisor* EffectiveDivisorStream::next() {
  if (done_) return nullptr;
  if (!started_) {
    started_ = true;
    return &current_;
  }
  if (!next_effective_chips(current_.chips)) {
    done_ = true;
    return nullptr;
  }
  return &current_;
}

std::vector<VertexSet> level_sets(const FiringScript& f) {
  if (f.counts.empty()) throw domain_error("level sets need a nonempty script");
  std::int64_t top = *std::max_element(f.counts.begin(), f.counts.end());
  std::int64_t low = *std::min_element(f.counts.begin(), f.counts.end());
  std::vector<VertexSet> sets;
  for (std::int64_t i = 0; i <= top - low; ++i) {
    VertexSet a(f.size());
    for (int v = 0; v < f.size(); ++v)
      if (f.counts[static_cast<std::size_t>(v)] >= top - i) a.add(v);
    sets.push_back(a);
  }
  return sets;
}

std::vector<Divisor> level_set_divisor_sequence(const Multigraph& g,
                                                const Divisor& d,
                                                const FiringScript& f) {
  check_graph_divisor(g, d);
  if (f.size() != g.vertex_count())
    throw domain_error("firing script does not match the graph");
  auto sets = level_sets(f);
  std::vector<Divisor> walk{d};
  // The last set is the whole vertex set and firing it is a no-op, so only
  // A_0 .. A_{k-1} actually fire.
  for (std::size_t i = 0; i + 1 < sets.size(); ++i)
    walk.push_back(fire_subset(g, walk.back(), sets[i]));
  return walk;
}

Divisor parse_divisor(const std::string& line, int n) {
  std::istringstream in(line);
  Divisor d(n);
  for (int v = 0; v < n; ++v)
    if (!(in >> d[v]))
      throw domain_error("divisor line needs " + std::to_string(n) +
                         " integers");
  std::string extra;
  if (in >> extra)
    throw domain_error("divisor line has trailing token '" + extra + "'");
  return d;
}

std::string format_divisor(const Divisor& d) {
  std::ostringstream out;
  for (int v = 0; v < d.size(); ++v) {
    if (v) out << ' ';
    out << d[v];
  }
  return out.str();
}

}  // namespace chipfire

// Acceptance gate: one line of output per criterion, exit 0 only when every
// criterion holds. Run through ctest or directly; no arguments.

#include <chrono>
#include <cstdint>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "chipfire/bench.hpp"
#include "chipfire/burning.hpp"
#include "chipfire/divisor.hpp"
#include "chipfire/families.hpp"
#include "chipfire/gonality.hpp"
#include "chipfire/multigraph.hpp"
#include "chipfire/rng.hpp"

using namespace chipfire;

namespace {

struct Runner {
  int failures = 0;

  void criterion(int id, const std::string& label,
                 const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    auto start = std::chrono::steady_clock::now();
    try {
      ok = body(detail);
    } catch (const std::exception& e) {
      detail = std::string("exception: ") + e.what();
    }
    auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                  std::chrono::steady_clock::now() - start)
                  .count();
    std::cout << "criterion " << id << ": " << (ok ? "PASS" : "FAIL") << "  "
              << label;
    if (!detail.empty()) std::cout << "  [" << detail << "]";
    std::cout << "  (" << ms << " ms)\n";
    if (!ok) ++failures;
  }
};

std::string show(const std::vector<std::int64_t>& v) {
  std::ostringstream out;
  for (std::size_t i = 0; i < v.size(); ++i)
    out << (i ? "," : "") << v[i];
  return out.str();
}

bool sequence_matches(const Multigraph& g,
                      const std::vector<std::int64_t>& want,
                      std::string& detail) {
  auto got = gonality_sequence(g, static_cast<int>(want.size())).terms;
  if (got == want) return true;
  detail += " got " + show(got) + " want " + show(want) + ";";
  return false;
}

bool gon_equals(const Multigraph& g, int r, std::int64_t want,
                const std::string& name, std::string& detail) {
  std::int64_t got = gonality(g, r).value;
  if (got == want) return true;
  std::ostringstream msg;
  msg << " " << name << " gon_" << r << " = " << got << " want " << want
      << ";";
  detail += msg.str();
  return false;
}

// Divisor odometer over entries in [lo, hi]; returns false after the last.
bool next_box(Divisor& d, std::int64_t lo, std::int64_t hi) {
  for (int v = 0; v < d.size(); ++v) {
    if (d[v] < hi) {
      ++d[v];
      return true;
    }
    d[v] = lo;
  }
  return false;
}

// Enumerates connected multigraphs with pair multiplicities 0..max_mult.
std::vector<Multigraph> connected_multigraphs(int n, int max_mult) {
  std::vector<std::pair<int, int>> pairs;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v) pairs.emplace_back(u, v);
  std::vector<int> mult(pairs.size(), 0);
  std::vector<Multigraph> out;
  for (;;) {
    std::vector<EdgeBundle> edges;
    for (std::size_t i = 0; i < pairs.size(); ++i)
      if (mult[i] > 0)
        edges.push_back({pairs[i].first, pairs[i].second, mult[i]});
    Multigraph g(n, edges);
    if (g.connected()) out.push_back(std::move(g));
    std::size_t i = 0;
    for (; i < mult.size(); ++i) {
      if (mult[i] < max_mult) {
        ++mult[i];
        break;
      }
      mult[i] = 0;
    }
    if (i == mult.size()) break;
  }
  return out;
}

// Shared state between the oracle-equivalence and firing-bound criteria:
// criterion 7 drives every instance and records bound violations for 8.
struct OracleSweep {
  std::int64_t instances = 0;
  std::int64_t mismatches = 0;
  std::int64_t bound_violations = 0;
  bool ran = false;

  void run_one(const Multigraph& g, const Divisor& d) {
    ++instances;
    BurnTrace trace;
    auto witness = modified_dhar(g, d, {.trace = &trace});
    auto [red, script] = reduce(g, 0, d);
    bool winnable = is_effective(red);
    if (witness.has_value() != winnable) {
      ++mismatches;
    } else if (witness) {
      if (!is_effective(witness->divisor) ||
          reduce(g, 0, witness->divisor).first != red)
        ++mismatches;
      if (apply_script(g, d, witness->script) != witness->divisor)
        ++mismatches;
    }

    std::int64_t plus = 0;
    for (int v = 0; v < d.size(); ++v)
      if (d[v] > 0) plus += d[v];
    std::int64_t cap = diameter(g) * plus;
    std::int64_t peak = 0;
    for (std::int64_t c : trace.firings.counts) peak = std::max(peak, c);
    if (peak > cap ||
        trace.passes > static_cast<std::int64_t>(g.vertex_count()) * cap)
      ++bound_violations;
  }

  void run_all() {
    for (int n = 1; n <= 4; ++n) {
      for (const Multigraph& g : connected_multigraphs(n, 2)) {
        Divisor d(n);
        for (int v = 0; v < n; ++v) d[v] = -2;
        do {
          run_one(g, d);
        } while (next_box(d, -2, 3));
      }
    }
    SplitMix64 rng(20260815);
    for (int i = 0; i < 10000; ++i) {
      int n = 5 + static_cast<int>(rng.next_below(6));
      Multigraph g = random_connected(n, 0.5, rng.next());
      Divisor d(n);
      for (int v = 0; v < n; ++v)
        d[v] = -3 + static_cast<std::int64_t>(rng.next_below(8));
      run_one(g, d);
    }
    ran = true;
  }
};

std::int64_t count_reduced_degree_zero(const Multigraph& g) {
  int n = g.vertex_count();
  std::vector<std::int64_t> c(static_cast<std::size_t>(n), 0);
  std::int64_t found = 0;
  for (;;) {
    Divisor d(n);
    std::int64_t rest = 0;
    for (int v = 1; v < n; ++v) {
      d[v] = c[static_cast<std::size_t>(v)];
      rest += d[v];
    }
    d[0] = -rest;
    if (dhar_pass(g, VertexSet(n, {0}), d).all_burned()) ++found;
    int v = n - 1;
    for (; v >= 1; --v) {
      if (c[static_cast<std::size_t>(v)] + 1 < g.valence(v)) {
        ++c[static_cast<std::size_t>(v)];
        break;
      }
      c[static_cast<std::size_t>(v)] = 0;
    }
    if (v < 1) break;
  }
  return found;
}

}  // namespace

int main() {
  Runner runner;
  OracleSweep sweep;

  runner.criterion(1, "gonality sequence table, genus 0 through 5",
                   [](std::string& detail) {
    bool ok = true;
    ok &= sequence_matches(path(5), {1, 2}, detail);
    ok &= sequence_matches(cycle(4), {2, 3, 4}, detail);
    ok &= sequence_matches(banana(3), {2, 4, 5, 6}, detail);
    ok &= sequence_matches(banana(4), {2, 4, 6, 7, 8}, detail);
    ok &= sequence_matches(complete(4), {3, 4, 6, 7, 8}, detail);
    ok &= sequence_matches(banana(5), {2, 4, 6, 8, 9, 10}, detail);
    ok &= sequence_matches(complete_bipartite(3, 3), {3, 5, 6, 8, 9, 10},
                           detail);
    ok &= sequence_matches(banana(6), {2, 4, 6, 8, 10, 11, 12}, detail);
    ok &= sequence_matches(chain({{3, 2, 2, 2}}), {3, 5, 7, 8, 10, 11, 12},
                           detail);
    return ok;
  });

  runner.criterion(2, "genus-6 chains separated by their second gonality",
                   [](std::string& detail) {
    Multigraph g = chain({{3, 2, 2, 2, 2}});
    Multigraph h = chain({{3, 3, 2, 2}});
    bool ok = genus(g) == 6 && genus(h) == 6;
    ok &= gon_equals(g, 1, 3, "G", detail);
    ok &= gon_equals(h, 1, 3, "H", detail);
    ok &= gon_equals(g, 2, 5, "G", detail);
    ok &= gon_equals(h, 2, 6, "H", detail);
    return ok;
  });

  runner.criterion(3, "genus-6 graphs with first gonality four",
                   [](std::string& detail) {
    Multigraph k5 = complete(5);
    Multigraph c = chain({{2, 5, 2}});
    bool ok = genus(k5) == 6 && genus(c) == 6;
    if (!ok) detail += " genus mismatch;";
    ok &= gon_equals(k5, 1, 4, "K5", detail);
    ok &= gon_equals(k5, 2, 5, "K5", detail);
    ok &= gon_equals(c, 1, 4, "chain252", detail);
    ok &= gon_equals(c, 2, 6, "chain252", detail);
    return ok;
  });

  runner.criterion(4, "closed forms for banana-style families",
                   [](std::string& detail) {
    bool ok = true;
    for (int n = 3; n <= 5; ++n)
      for (int k = 1; k < n; ++k)
        ok &= gon_equals(banana(n), k, 2 * k,
                         "banana(" + std::to_string(n) + ")", detail);
    ok &= gon_equals(gen_banana(3, 5), 2, 6, "genbanana(3,5)", detail);
    ok &= gon_equals(gen_banana(5, 3), 2, 6, "genbanana(5,3)", detail);
    ok &= gon_equals(gen_banana(4, 4), 2, 7, "genbanana(4,4)", detail);
    const std::pair<int, int> pairs[] = {{3, 3}, {3, 5}, {4, 5}, {4, 7}};
    for (auto [a, b] : pairs) {
      std::string name =
          "descbanana(" + std::to_string(a) + "," + std::to_string(b) + ")";
      ok &= gon_equals(desc_banana(a, b), 1, a, name, detail);
      ok &= gon_equals(desc_banana(a, b), 2, b + 1, name, detail);
    }
    // prescribed (first, second) gonality pairs realized by these chains
    const std::pair<int, int> targets[] = {{3, 5}, {4, 7}, {4, 8}};
    for (auto [m, n2] : targets) {
      std::string name =
          "descbanana(" + std::to_string(m) + "," + std::to_string(n2 - 1) +
          ")";
      ok &= gon_equals(desc_banana(m, n2 - 1), 1, m, name, detail);
      ok &= gon_equals(desc_banana(m, n2 - 1), 2, n2, name, detail);
    }
    return ok;
  });

  runner.criterion(5, "second gonality of complete bipartite graphs",
                   [](std::string& detail) {
    bool ok = true;
    ok &= gon_equals(complete_bipartite(3, 3), 2, 5, "K33", detail);
    ok &= gon_equals(complete_bipartite(3, 4), 2, 6, "K34", detail);
    ok &= gon_equals(complete_bipartite(2, 2), 2, 3, "K22", detail);
    return ok;
  });

  runner.criterion(6, "duality residual vanishes exhaustively",
                   [](std::string& detail) {
    const Multigraph fixtures[] = {path(3),   cycle(3),  cycle(4),
                                   banana(2), banana(3), complete(4)};
    std::int64_t checked = 0, bad = 0;
    for (const Multigraph& g : fixtures) {
      Divisor d(g.vertex_count());
      for (int v = 0; v < d.size(); ++v) d[v] = -2;
      do {
        ++checked;
        if (rr_residual(g, d) != 0) ++bad;
      } while (next_box(d, -2, 3));
    }
    detail = std::to_string(checked) + " divisors";
    if (bad) detail += ", " + std::to_string(bad) + " nonzero";
    return bad == 0;
  });

  runner.criterion(7, "debt elimination agrees with full reduction",
                   [&sweep](std::string& detail) {
    sweep.run_all();
    detail = std::to_string(sweep.instances) + " instances";
    if (sweep.mismatches)
      detail += ", " + std::to_string(sweep.mismatches) + " mismatches";
    return sweep.mismatches == 0;
  });

  runner.criterion(8, "pass and firing bounds hold on every trace",
                   [&sweep](std::string& detail) {
    if (!sweep.ran) {
      detail = "sweep did not run";
      return false;
    }
    detail = std::to_string(sweep.instances) + " traces";
    if (sweep.bound_violations)
      detail += ", " + std::to_string(sweep.bound_violations) + " violations";
    return sweep.bound_violations == 0;
  });

  runner.criterion(9, "reduced divisor classes count spanning trees",
                   [](std::string& detail) {
    struct Case {
      Multigraph g;
      std::int64_t want;
      const char* name;
    } cases[] = {{complete(4), 16, "K4"},
                 {cycle(5), 5, "C5"},
                 {banana(3), 3, "B3"}};
    bool ok = true;
    for (const auto& c : cases) {
      std::int64_t counted = count_reduced_degree_zero(c.g);
      std::int64_t trees = spanning_tree_count(c.g);
      if (counted != c.want || trees != c.want) {
        detail += std::string(" ") + c.name + ": counted " +
                  std::to_string(counted) + ", trees " +
                  std::to_string(trees) + ", want " + std::to_string(c.want) +
                  ";";
        ok = false;
      }
    }
    return ok;
  });

  runner.criterion(10, "structural laws hold on every fixture sequence",
                   [](std::string& detail) {
    const Multigraph fixtures[] = {
        path(5),      cycle(4),           banana(3),
        banana(4),    complete(4),        banana(5),
        complete_bipartite(3, 3),         banana(6),
        chain({{3, 2, 2, 2}}),            complete(5),
        chain({{2, 5, 2}}),               chain({{3, 2, 2, 2, 2}}),
        chain({{3, 3, 2, 2}}),            desc_banana(4, 5)};
    bool ok = true;
    for (const Multigraph& g : fixtures) {
      std::int64_t gen = genus(g);
      auto seq = gonality_sequence(g, static_cast<int>(gen) + 2);
      const auto& t = seq.terms;
      std::string tag = " genus-" + std::to_string(gen) + " seq " + show(t);

      for (std::size_t i = 0; i + 1 < t.size(); ++i)
        if (t[i] >= t[i + 1]) {
          detail += tag + " not strictly increasing;";
          ok = false;
        }
      for (std::size_t a = 1; a < t.size(); ++a)
        for (std::size_t b = a; a + b <= t.size(); ++b)
          if (t[a + b - 1] > t[a - 1] + t[b - 1]) {
            detail += tag + " not subadditive;";
            ok = false;
          }
      if (gen >= 2 && t[static_cast<std::size_t>(gen) - 2] != 2 * gen - 2) {
        detail += tag + " rank genus-1 value off;";
        ok = false;
      }
      for (std::int64_t k = std::max<std::int64_t>(gen, 1); k <= gen + 2; ++k)
        if (t[static_cast<std::size_t>(k) - 1] != gen + k) {
          detail += tag + " tail is not genus+k;";
          ok = false;
        }
      std::int64_t floor = std::min<std::int64_t>(edge_connectivity(g),
                                                  g.vertex_count());
      if (gen > 0 && t[0] < floor) {
        detail += tag + " below the connectivity floor;";
        ok = false;
      }
      std::int64_t recovered = 0;
      for (std::size_t i = 1; i < t.size(); ++i)
        if (t[i] - t[i - 1] >= 2) recovered = static_cast<std::int64_t>(i) + 1;
      if (recovered == 0) recovered = (t[0] == 1) ? 0 : 1;
      if (recovered != gen) {
        detail += tag + " genus recovery got " + std::to_string(recovered) +
                  ";";
        ok = false;
      }
    }
    return ok;
  });

  runner.criterion(11, "debt-driven pipeline is not slower at benchmark scale",
                   [](std::string& detail) {
    BenchConfig cfg;
    cfg.n_min = 5;
    cfg.n_max = 12;
    cfg.graphs_per_n = 19;
    cfg.p = 0.5;
    cfg.seed = 1;
    cfg.r = 1;
    cfg.repeats = 5;
    // run_bench itself enforces outcome agreement and the trace bounds
    auto rows = run_bench(cfg);
    auto summary = summarize(rows);
    std::int64_t mean_full[13] = {};
    std::int64_t mean_mod[13] = {};
    for (const auto& s : summary) {
      if (s.algorithm == Pipeline::full_reduce) mean_full[s.n] = s.mean_ns;
      if (s.algorithm == Pipeline::modified) mean_mod[s.n] = s.mean_ns;
    }
    int wins = 0;
    for (int n = 5; n <= 12; ++n)
      if (mean_mod[n] <= mean_full[n]) ++wins;
    detail = "modified wins " + std::to_string(wins) + "/8 sizes";
    return wins >= 6;
  });

  if (runner.failures) {
    std::cout << runner.failures << " criteria failed\n";
    return 1;
  }
  std::cout << "all criteria passed\n";
  return 0;
}

#include "chipfire/cli.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "chipfire/bench.hpp"
#include "chipfire/burning.hpp"
#include "chipfire/divisor.hpp"
#include "chipfire/errors.hpp"
#include "chipfire/families.hpp"
#include "chipfire/gonality.hpp"
#include "chipfire/graph_io.hpp"
#include "chipfire/multigraph.hpp"
#include "chipfire/rng.hpp"

namespace chipfire {

namespace {

std::int64_t parse_int64(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  std::int64_t value = 0;
  try {
    value = std::stoll(text, &used);
  } catch (const std::exception&) {
    throw domain_error(what + ": '" + text + "' is not an integer");
  }
  if (used != text.size())
    throw domain_error(what + ": '" + text + "' is not an integer");
  return value;
}

double parse_real(const std::string& text, const std::string& what) {
  std::size_t used = 0;
  double value = 0;
  try {
    value = std::stod(text, &used);
  } catch (const std::exception&) {
    throw domain_error(what + ": '" + text + "' is not a number");
  }
  if (used != text.size())
    throw domain_error(what + ": '" + text + "' is not a number");
  return value;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) parts.push_back(item);
  return parts;
}

// --params takes "k=v,k=v,..."; list-valued parameters use ':' between items.
std::map<std::string, std::string> parse_params(const std::string& text) {
  std::map<std::string, std::string> kv;
  if (text.empty()) return kv;
  for (const std::string& token : split(text, ',')) {
    auto eq = token.find('=');
    if (eq == std::string::npos || eq == 0)
      throw domain_error("parameter '" + token + "' is not of the form k=v");
    std::string key = token.substr(0, eq);
    if (!kv.emplace(key, token.substr(eq + 1)).second)
      throw domain_error("parameter '" + key + "' given twice");
  }
  return kv;
}

Multigraph build_family(const std::string& name, const std::string& params) {
  auto kv = parse_params(params);
  auto take = [&](const char* key) {
    auto it = kv.find(key);
    if (it == kv.end())
      throw domain_error("family '" + name + "' needs parameter '" + key +
                         "'");
    std::string value = it->second;
    kv.erase(it);
    return value;
  };
  auto take_int = [&](const char* key) {
    return parse_int64(take(key), std::string("parameter ") + key);
  };
  auto finish = [&]() {
    if (!kv.empty())
      throw domain_error("family '" + name + "' does not take parameter '" +
                         kv.begin()->first + "'");
  };

  auto as_int = [](std::int64_t v, const char* key) {
    if (v < -1000000 || v > 1000000)
      throw domain_error(std::string("parameter ") + key + " out of range");
    return static_cast<int>(v);
  };

  if (name == "path" || name == "cycle" || name == "complete" ||
      name == "banana") {
    int n = as_int(take_int("n"), "n");
    finish();
    if (name == "path") return path(n);
    if (name == "cycle") return cycle(n);
    if (name == "complete") return complete(n);
    return banana(n);
  }
  if (name == "bipartite") {
    int m = as_int(take_int("m"), "m");
    int n = as_int(take_int("n"), "n");
    finish();
    return complete_bipartite(m, n);
  }
  if (name == "genbanana") {
    int n = as_int(take_int("n"), "n");
    int e = as_int(take_int("e"), "e");
    finish();
    return gen_banana(n, e);
  }
  if (name == "descbanana") {
    int a = as_int(take_int("a"), "a");
    int b = as_int(take_int("b"), "b");
    finish();
    return desc_banana(a, b);
  }
  if (name == "chain") {
    std::string text = take("mults");
    finish();
    ChainSpec spec;
    for (const std::string& item : split(text, ':'))
      spec.mults.push_back(as_int(parse_int64(item, "parameter mults"), "mults"));
    return chain(spec);
  }
  if (name == "random") {
    int n = as_int(take_int("n"), "n");
    double p = parse_real(take("p"), "parameter p");
    std::uint64_t seed = static_cast<std::uint64_t>(take_int("seed"));
    finish();
    return random_connected(n, p, seed);
  }
  throw domain_error(
      "unknown family '" + name +
      "' (known: path, cycle, complete, bipartite, banana, genbanana, "
      "descbanana, chain, random)");
}

Divisor divisor_from_file(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw domain_error("cannot open divisor file '" + path + "'");
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    return parse_divisor(line, n);
  }
  throw domain_error("divisor file '" + path + "' holds no divisor line");
}

std::string join_int64(const std::vector<std::int64_t>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

struct VerifyReport {
  std::ostream& out;
  bool ok = true;

  void check(bool cond, const std::string& label) {
    out << (cond ? "ok: " : "FAIL: ") << label << "\n";
    ok = ok && cond;
  }
  void note(const std::string& label) { out << "skip: " << label << "\n"; }
};

std::int64_t positive_degree(const Divisor& d) {
  std::int64_t total = 0;
  for (std::int64_t c : d.chips)
    if (c > 0) total += c;
  return total;
}

int cmd_verify(const std::string& graph_path, std::ostream& out) {
  Multigraph g = load_graph_file(graph_path);
  VerifyReport rep{out};
  int n = g.vertex_count();
  out << "graph: " << n << " vertices, " << g.edge_count() << " edges\n";

  rep.check(g.connected(), "connected");
  if (!g.connected()) return 1;

  std::int64_t gen = genus(g);
  out << "ok: genus = " << gen << "\n";
  rep.check(degree(canonical(g)) == 2 * gen - 2,
            "canonical degree equals 2*genus - 2");

  std::vector<Divisor> panel;
  panel.push_back(Divisor(n));
  panel.push_back(canonical(g));
  panel.push_back(unit_divisor(n, n - 1, gen + 1));
  Divisor ones(n);
  for (int v = 0; v < n; ++v) ones[v] = 1;
  panel.push_back(ones);
  SplitMix64 rng(2026);
  for (int i = 0; i < 3; ++i) {
    Divisor d(n);
    for (int v = 0; v < n; ++v)
      d[v] = -2 + static_cast<std::int64_t>(rng.next_below(6));
    panel.push_back(d);
  }

  std::vector<int> reversed(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v)
    reversed[static_cast<std::size_t>(v)] = n - 1 - v;

  std::int64_t diam = diameter(g);
  for (std::size_t i = 0; i < panel.size(); ++i) {
    const Divisor& d = panel[i];
    std::string tag = "divisor " + std::to_string(i) + ": ";

    BurnControl natural;
    BurnControl flipped;
    flipped.scan_order = &reversed;
    auto [red_a, script_a] = reduce(g, 0, d, natural);
    auto [red_b, script_b] = reduce(g, 0, d, flipped);
    rep.check(red_a == red_b && script_a == script_b,
              tag + "reduction is scan-order independent");

    auto [red_again, script_again] = reduce(g, 0, red_a);
    bool idle = std::all_of(script_again.counts.begin(),
                            script_again.counts.end(),
                            [](std::int64_t c) { return c == 0; });
    rep.check(red_again == red_a && idle, tag + "reduction is idempotent");

    VertexSet q0(n);
    q0.add(0);
    rep.check(dhar_pass(g, q0, red_a).all_burned(),
              tag + "reduced divisor burns completely from vertex 0");

    rep.check(apply_script(g, d, script_a) == red_a,
              tag + "firing script reproduces the reduced divisor");

    BurnTrace trace;
    BurnControl with_trace;
    with_trace.trace = &trace;
    auto witness = modified_dhar(g, d, with_trace);
    bool winnable_full = [&] {
      for (int v = 0; v < n; ++v)
        if (v != 0 && red_a[v] < 0) return false;
      return red_a[0] >= 0;
    }();
    rep.check(witness.has_value() == winnable_full,
              tag + "debt elimination agrees with full reduction");
    if (witness) {
      rep.check(is_effective(witness->divisor) &&
                    equivalent(g, d, witness->divisor),
                tag + "effective witness is equivalent to the input");
    }
    std::int64_t cap = diam * positive_degree(d);
    std::int64_t peak = 0;
    for (std::int64_t c : trace.firings.counts) peak = std::max(peak, c);
    rep.check(peak <= cap && trace.passes <= n * cap,
              tag + "debt elimination respects its firing bounds");
  }

  std::int64_t combos = 1;
  bool small = true;
  for (int v = 1; v < n && small; ++v) {
    combos *= g.valence(v);
    if (combos > 200000) small = false;
  }
  if (small) {
    std::int64_t cells = 0;
    std::vector<std::int64_t> c(static_cast<std::size_t>(n), 0);
    for (;;) {
      Divisor d(n);
      std::int64_t rest = 0;
      for (int v = 1; v < n; ++v) {
        d[v] = c[static_cast<std::size_t>(v)];
        rest += d[v];
      }
      d[0] = -rest;
      VertexSet q0(n);
      q0.add(0);
      if (dhar_pass(g, q0, d).all_burned()) ++cells;
      int v = 1;
      while (v < n) {
        if (++c[static_cast<std::size_t>(v)] < g.valence(v)) break;
        c[static_cast<std::size_t>(v)] = 0;
        ++v;
      }
      if (v == n) break;
    }
    bool counted = true;
    try {
      rep.check(cells == spanning_tree_count(g),
                "reduced degree-0 divisor count equals the spanning tree "
                "count (" + std::to_string(cells) + ")");
    } catch (const domain_error&) {
      counted = false;
    }
    if (!counted) rep.note("spanning tree count exceeds 64 bits");
  } else {
    rep.note("Jacobian enumeration too large, skipped");
  }

  if (n >= 2) out << "ok: edge connectivity = " << edge_connectivity(g) << "\n";
  out << "ok: brill-noether bound = " << brill_noether_bound(gen) << "\n";

  if (n <= 8 && gen <= 6) {
    std::vector<Divisor> spots;
    spots.push_back(Divisor(n));
    spots.push_back(canonical(g));
    spots.push_back(unit_divisor(n, n - 1, gen + 1));
    bool rr_ok = true;
    for (const Divisor& d : spots) rr_ok = rr_ok && rr_residual(g, d) == 0;
    rep.check(rr_ok, "riemann-roch residual vanishes on spot divisors");
  } else {
    rep.note("riemann-roch spot checks too large, skipped");
  }

  if (n <= 10 && gen <= 8) {
    std::int64_t gon1 = gonality(g, 1).value;
    if (gen == 0) {
      rep.check(gon1 == 1, "tree has first gonality 1");
    } else {
      std::int64_t floor_bound = std::min<std::int64_t>(edge_connectivity(g), n);
      rep.check(floor_bound <= gon1 && gon1 <= gen + 1,
                "first gonality between min(edge connectivity, n) and "
                "genus + 1 (" + std::to_string(gon1) + ")");
    }
    if (gen <= 5) {
      try {
        SequenceSpec have = gonality_sequence(g, static_cast<int>(gen) + 2);
        SequenceSpec want =
            expected_sequence(gen, gon1, static_cast<int>(gen) + 2);
        rep.check(have.terms == want.terms,
                  "gonality sequence matches the catalogued genus-" +
                      std::to_string(gen) + " sequence");
      } catch (const domain_error& e) {
        rep.check(false, std::string("gonality sequence catalog: ") + e.what());
      }
    }
  } else {
    rep.note("first gonality check too large, skipped");
  }

  return rep.ok ? 0 : 1;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream f(path);
  if (!f) throw domain_error("cannot open output file '" + path + "'");
  return f;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"divisor theory on finite multigraphs", "chipfire"};
  app.require_subcommand(1);

  std::string fam_name, fam_params, fam_out;
  auto* family_cmd =
      app.add_subcommand("family", "write a generator graph as text");
  family_cmd->add_option("--name", fam_name, "family id")->required();
  family_cmd->add_option("--params", fam_params, "comma-separated k=v list");
  family_cmd->add_option("--out", fam_out, "output file (default stdout)");

  std::string graph_path, divisor_path, chips;
  auto* rank_cmd = app.add_subcommand("rank", "divisor rank");
  rank_cmd->add_option("--graph", graph_path, "graph file")->required();
  rank_cmd->add_option("--divisor", divisor_path, "divisor file");
  rank_cmd->add_option("--chips", chips, "divisor as a quoted integer line");

  int q = 0;
  bool trace_flag = false;
  auto* reduce_cmd =
      app.add_subcommand("reduce", "reduced divisor at a base vertex");
  reduce_cmd->add_option("--graph", graph_path, "graph file")->required();
  reduce_cmd->add_option("--chips", chips, "divisor as a quoted integer line")
      ->required();
  reduce_cmd->add_option("--q", q, "base vertex")->required();
  reduce_cmd->add_flag("--trace", trace_flag,
                       "append a CSV log of the firing steps");

  auto* eff_cmd =
      app.add_subcommand("eff", "effective divisor equivalent to the input");
  eff_cmd->add_option("--graph", graph_path, "graph file")->required();
  eff_cmd->add_option("--chips", chips, "divisor as a quoted integer line")
      ->required();

  int gon_r = 1, jobs = 1;
  bool reduced_only = false;
  auto* gon_cmd = app.add_subcommand("gon", "r-th gonality with witness");
  gon_cmd->add_option("--graph", graph_path, "graph file")->required();
  gon_cmd->add_option("--r", gon_r, "rank threshold")->required();
  gon_cmd->add_flag("--reduced-only", reduced_only,
                    "scan only divisors reduced at vertex 0");
  gon_cmd->add_option("--jobs", jobs, "worker threads for the search");

  int upto = 1;
  auto* sequence_cmd =
      app.add_subcommand("sequence", "gonality sequence, one value per line");
  sequence_cmd->add_option("--graph", graph_path, "graph file")->required();
  sequence_cmd->add_option("--upto", upto, "number of terms")->required();

  std::int64_t exp_genus = 0, exp_gon1 = 0, exp_gon2 = 0;
  auto* expected_cmd =
      app.add_subcommand("expected", "catalogued gonality sequence");
  expected_cmd->add_option("--genus", exp_genus, "genus")->required();
  expected_cmd->add_option("--gon1", exp_gon1, "first gonality")->required();
  expected_cmd->add_option("--gon2", exp_gon2,
                           "second gonality (genus 6 disambiguation)");
  expected_cmd->add_option("--upto", upto, "number of terms")->required();

  auto* verify_cmd =
      app.add_subcommand("verify", "invariant report for a graph file");
  verify_cmd->add_option("--graph", graph_path, "graph file")->required();

  BenchConfig cfg;
  std::string bench_out, bench_summary, bench_plot, bench_task = "decide_rank";
  auto* bench_cmd =
      app.add_subcommand("bench", "pipeline comparison on random graphs");
  bench_cmd->add_option("--n-min", cfg.n_min, "smallest vertex count");
  bench_cmd->add_option("--n-max", cfg.n_max, "largest vertex count");
  bench_cmd->add_option("--graphs-per-n", cfg.graphs_per_n, "graphs per size");
  bench_cmd->add_option("--p", cfg.p, "edge probability");
  bench_cmd->add_option("--seed", cfg.seed, "base seed");
  bench_cmd->add_option("--r", cfg.r, "rank parameter of the task");
  bench_cmd->add_option("--repeats", cfg.repeats, "timing repetitions");
  bench_cmd->add_option("--task", bench_task, "decide_rank or gonality")
      ->check(CLI::IsMember({"decide_rank", "gonality"}));
  bench_cmd->add_option("--out", bench_out, "per-row CSV file")->required();
  bench_cmd->add_option("--summary", bench_summary, "summary CSV file");
  bench_cmd->add_option("--plot", bench_plot, "tab-separated mean table");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(std::move(reversed));
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      app.exit(e, out, err);
      return 0;
    }
    app.exit(e, out, err);
    err << app.help();
    return 1;
  }

  try {
    if (family_cmd->parsed()) {
      Multigraph g = build_family(fam_name, fam_params);
      if (fam_out.empty()) {
        write_graph(g, out);
      } else {
        auto f = open_out(fam_out);
        write_graph(g, f);
      }
      return 0;
    }

    if (rank_cmd->parsed()) {
      Multigraph g = load_graph_file(graph_path);
      bool have_chips = rank_cmd->count("--chips") > 0;
      bool have_file = rank_cmd->count("--divisor") > 0;
      if (have_chips == have_file)
        throw domain_error("rank needs exactly one of --chips and --divisor");
      Divisor d = have_chips ? parse_divisor(chips, g.vertex_count())
                             : divisor_from_file(divisor_path, g.vertex_count());
      out << rank(g, d) << "\n";
      return 0;
    }

    if (reduce_cmd->parsed()) {
      Multigraph g = load_graph_file(graph_path);
      Divisor d = parse_divisor(chips, g.vertex_count());
      BurnTrace trace;
      BurnControl ctl;
      if (trace_flag) {
        ctl.trace = &trace;
        ctl.record_beta = true;
      }
      auto [reduced, script] = reduce(g, q, d, ctl);
      out << format_divisor(reduced) << "\n";
      if (trace_flag) {
        out << "pass,vertex,beta_before,beta_after\n";
        for (const BetaLogEntry& entry : trace.beta_log)
          out << entry.pass << ',' << entry.vertex << ','
              << join_int64(entry.beta_before, ':') << ','
              << join_int64(entry.beta_after, ':') << "\n";
      }
      return 0;
    }

    if (eff_cmd->parsed()) {
      Multigraph g = load_graph_file(graph_path);
      Divisor d = parse_divisor(chips, g.vertex_count());
      auto witness = modified_dhar(g, d);
      if (witness)
        out << format_divisor(witness->divisor) << "\n";
      else
        out << "NONE\n";
      return 0;
    }

    if (gon_cmd->parsed()) {
      Multigraph g = load_graph_file(graph_path);
      GonalityOptions options;
      options.reduced_only = reduced_only;
      options.jobs = jobs;
      GonalityWitness res = gonality(g, gon_r, options);
      out << "gon_" << gon_r << " = " << res.value << "\n";
      out << "witness = " << format_divisor(res.witness) << "\n";
      return 0;
    }

    if (sequence_cmd->parsed()) {
      Multigraph g = load_graph_file(graph_path);
      SequenceSpec seq = gonality_sequence(g, upto);
      for (std::int64_t term : seq.terms) out << term << "\n";
      return 0;
    }

    if (expected_cmd->parsed()) {
      std::optional<std::int64_t> gon2;
      if (expected_cmd->count("--gon2") > 0) gon2 = exp_gon2;
      SequenceSpec seq = expected_sequence(exp_genus, exp_gon1, upto, gon2);
      out << join_int64(seq.terms, ' ') << "\n";
      return 0;
    }

    if (verify_cmd->parsed()) return cmd_verify(graph_path, out);

    if (bench_cmd->parsed()) {
      cfg.task = bench_task == "gonality" ? BenchTask::gonality
                                          : BenchTask::decide_rank;
      std::vector<BenchRow> rows = run_bench(cfg);
      {
        auto f = open_out(bench_out);
        write_bench_csv(rows, f);
      }
      if (!bench_summary.empty() || !bench_plot.empty()) {
        std::vector<BenchSummaryRow> summary = summarize(rows);
        if (!bench_summary.empty()) {
          auto f = open_out(bench_summary);
          write_summary_csv(summary, f);
        }
        if (!bench_plot.empty()) {
          auto f = open_out(bench_plot);
          write_plot_data(summary, f);
        }
      }
      return 0;
    }

    throw internal_error("no subcommand dispatched");
  } catch (const domain_error& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const internal_error& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
}

}  // namespace chipfire

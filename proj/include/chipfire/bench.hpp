#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

namespace chipfire {

enum class BenchTask {
  decide_rank,  // has-rank-at-least-r over a fixed divisor panel
  gonality,     // r-th gonality value
};

/// The three interchangeable pipelines for "is this divisor equivalent to an
/// effective one": full reduction at vertex 0, the same loop with an early
/// exit once debt clears, and debt-driven burning.
enum class Pipeline {
  full_reduce,
  early_return,
  modified,
};

const char* pipeline_name(Pipeline p);

struct BenchConfig {
  int n_min = 5;
  int n_max = 12;
  int graphs_per_n = 19;
  double p = 0.5;
  std::uint64_t seed = 1;
  int r = 1;
  BenchTask task = BenchTask::decide_rank;
  int repeats = 5;  // timing repetitions; the minimum is kept
};

struct BenchRow {
  int n = 0;
  int graph_id = 0;
  std::uint64_t seed = 0;  // per-instance generator seed
  Pipeline algorithm = Pipeline::full_reduce;
  std::int64_t elapsed_ns = 0;
  std::int64_t passes = 0;
  std::int64_t total_firings = 0;
  std::string outcome;
};

/// Runs the configured task once per pipeline on identical instances. The
/// instance seed is mix_seed(mix_seed(cfg.seed, n), graph_id); timing covers
/// only the algorithm, with generation and candidate enumeration hoisted out;
/// each measurement is repeated cfg.repeats times and the minimum kept. The
/// three pipelines must produce identical outcomes and every debt-driven run
/// must respect the pass and firing bounds, else internal_error.
std::vector<BenchRow> run_bench(const BenchConfig& cfg);
void run_bench(const BenchConfig& cfg,
               const std::function<void(const BenchRow&)>& sink);

struct BenchSummaryRow {
  int n = 0;
  Pipeline algorithm = Pipeline::full_reduce;
  std::int64_t mean_ns = 0;    // floor of the exact mean
  std::int64_t median_ns = 0;  // lower median
  std::int64_t max_ns = 0;
  std::int64_t mean_passes = 0;
  std::int64_t mean_firings = 0;
};

/// Exact integer statistics per (n, algorithm), ordered by (n, algorithm).
std::vector<BenchSummaryRow> summarize(const std::vector<BenchRow>& rows);

/// CSV with header n,graph_id,seed,algorithm,elapsed_ns,passes,total_firings,outcome
void write_bench_csv(const std::vector<BenchRow>& rows, std::ostream& out);

/// CSV with header n,algorithm,mean_ns,median_ns,max_ns,mean_passes,mean_firings
void write_summary_csv(const std::vector<BenchSummaryRow>& rows,
                       std::ostream& out);

/// Tab-separated companion table: one line per n with the mean elapsed time
/// of each pipeline, ready for plotting.
void write_plot_data(const std::vector<BenchSummaryRow>& rows,
                     std::ostream& out);

}  // namespace chipfire

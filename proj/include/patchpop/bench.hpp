#pragma once

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "patchpop/algorithms.hpp"
#include "patchpop/fitness.hpp"

namespace patchpop::bench {

enum class Algorithm { Rls, OnePlusOne, TwoPlusOne, TenPlusOne };
enum class StoreKind { Mst, Naive };

std::string_view name(Algorithm a);
std::string_view name(StoreKind s);
/// Accepts rls, opo, mpo2, mpo10 and mst, naive. Throws std::invalid_argument.
Algorithm parse_algorithm(std::string_view text);
StoreKind parse_store(std::string_view text);

/// Runs one optimizer on a freshly created store of the given kind.
RunTrace run_algorithm(Algorithm algorithm, StoreKind store, const Evaluator& evaluator, const StopCondition& stop,
                       std::uint64_t seed, const RunOptions& options = {});

/// Monotonic nanosecond clock.
using Clock = std::function<std::uint64_t()>;
std::uint64_t steady_now_ns();

struct WindowPlan {
  double window_seconds = 1.0;
  std::size_t windows = 10;
  std::size_t max_warmup = 10;
  /// Warmup ends once two consecutive windows differ by less than this
  /// fraction of the larger one.
  double warmup_tolerance = 0.1;
};

struct TimingRecord {
  std::vector<double> per_window;  // seconds per evaluation
  double mean = 0;
  double stddev = 0;  // sample standard deviation; 0 for a single window
  std::size_t warmup_windows = 0;
};

/// `run` performs one complete optimizer run and returns the number of
/// evaluations it made. Each window repeats runs until at least
/// `window_seconds` have elapsed and reports elapsed time per evaluation.
TimingRecord timed_windows(const std::function<std::uint64_t()>& run, const WindowPlan& plan,
                           const Clock& clock = steady_now_ns);

/// Sample Pearson correlation. Throws std::invalid_argument for mismatched
/// lengths, fewer than two points or zero variance.
double pearson(std::span<const double> xs, std::span<const double> ys);

double mean(std::span<const double> xs);
double sample_stddev(std::span<const double> xs);

struct ScalingConfig {
  std::vector<Algorithm> algorithms;
  std::vector<StoreKind> stores;
  int k_min = 5;
  int k_max = 13;
  std::uint64_t budget = 25000;  // knapsack only
  std::uint64_t seed = 1;
  WindowPlan plan;
};

struct CellResult {
  Algorithm algorithm;
  StoreKind store;
  std::size_t n;
  std::uint64_t seed;
  TimingRecord timing;
};

/// Seed of one (algorithm, n) cell, shared by both store kinds.
std::uint64_t cell_seed(std::uint64_t master, std::string_view experiment, Algorithm algorithm, std::size_t n);

using Progress = std::function<void(const CellResult&)>;

/// Fixed-target OneMax runs to the optimum for n = 2^k.
std::vector<CellResult> onemax_scaling(const ScalingConfig& config, const Progress& progress = {});
/// Fixed-budget knapsack runs on one generated instance per cell.
std::vector<CellResult> knapsack_budget(const ScalingConfig& config, const Progress& progress = {});

/// algorithm,store,n,mean_s,std_s,windows,seed
void write_scaling_csv(std::ostream& out, std::span<const CellResult> rows);

struct TraceConfig {
  std::size_t n = 10000;
  std::uint64_t budget = 100000;
  std::uint64_t stride = 10;
  std::uint64_t seed = 1;
  std::optional<KnapsackInstance> instance;  // generated from the seed when absent
};

struct TraceRecord {
  std::uint64_t evaluations;
  double avg_op_time_s;
  double total_patch_size;  // mean over the interval
  std::uint64_t min_patch;
  std::uint64_t max_patch;
};

struct TraceResult {
  std::vector<TraceRecord> records;
  double correlation;  // patch size vs operation time across checkpoints
};

/// (10+1) GA on the patch tree over a knapsack instance, recording
/// diversity and operation time every `stride` evaluations.
TraceResult knapsack_trace(const TraceConfig& config);

/// evals,avg_op_time_s,total_patch_size,min_patch,max_patch
void write_trace_csv(std::ostream& out, const TraceResult& trace);

}  // namespace patchpop::bench

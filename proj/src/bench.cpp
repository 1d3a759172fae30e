#include "patchpop/bench.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <ostream>
#include <stdexcept>

#include "patchpop/naive_store.hpp"
#include "patchpop/population_tree.hpp"

namespace patchpop::bench {

std::string_view name(Algorithm a) {
  switch (a) {
    case Algorithm::Rls: return "rls";
    case Algorithm::OnePlusOne: return "opo";
    case Algorithm::TwoPlusOne: return "mpo2";
    case Algorithm::TenPlusOne: return "mpo10";
  }
  return "?";
}

std::string_view name(StoreKind s) { return s == StoreKind::Mst ? "mst" : "naive"; }

Algorithm parse_algorithm(std::string_view text) {
  for (Algorithm a : {Algorithm::Rls, Algorithm::OnePlusOne, Algorithm::TwoPlusOne, Algorithm::TenPlusOne})
    if (name(a) == text) return a;
  throw std::invalid_argument("unknown algorithm '" + std::string(text) + "' (expected rls, opo, mpo2, mpo10)");
}

StoreKind parse_store(std::string_view text) {
  if (text == "mst") return StoreKind::Mst;
  if (text == "naive") return StoreKind::Naive;
  throw std::invalid_argument("unknown store '" + std::string(text) + "' (expected mst, naive)");
}

namespace {

template <PopulationStore S>
RunTrace run_on(S& store, Algorithm algorithm, const StopCondition& stop, const RunOptions& options) {
  const double n = static_cast<double>(store.problem_size());
  switch (algorithm) {
    case Algorithm::Rls: return run_rls(store, stop, options);
    case Algorithm::OnePlusOne: return run_one_plus_one(store, 1.0 / n, stop, options);
    case Algorithm::TwoPlusOne: return run_mu_plus_one(store, 2, std::min(1.0, 1.2 / n), 0.9, stop, options);
    case Algorithm::TenPlusOne: return run_mu_plus_one(store, 10, std::min(1.0, 1.4 / n), 0.9, stop, options);
  }
  throw std::logic_error("unhandled algorithm");
}

std::string format_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6e", s);
  return buf;
}

}  // namespace

RunTrace run_algorithm(Algorithm algorithm, StoreKind store, const Evaluator& evaluator, const StopCondition& stop,
                       std::uint64_t seed, const RunOptions& options) {
  if (store == StoreKind::Mst) {
    PopulationTree tree(evaluator, seed);
    return run_on(tree, algorithm, stop, options);
  }
  NaiveStore naive(evaluator, seed);
  return run_on(naive, algorithm, stop, options);
}

std::uint64_t steady_now_ns() {
  return static_cast<std::uint64_t>(
      std::chrono::duration_cast<std::chrono::nanoseconds>(std::chrono::steady_clock::now().time_since_epoch())
          .count());
}

TimingRecord timed_windows(const std::function<std::uint64_t()>& run, const WindowPlan& plan, const Clock& clock) {
  if (plan.windows == 0) throw std::invalid_argument("at least one timing window is required");
  if (!(plan.window_seconds > 0)) throw std::invalid_argument("window length must be positive");
  const auto window_ns = static_cast<std::uint64_t>(plan.window_seconds * 1e9);

  auto one_window = [&] {
    const std::uint64_t start = clock();
    std::uint64_t evaluations = 0;
    std::uint64_t elapsed = 0;
    do {
      evaluations += run();
      elapsed = clock() - start;
    } while (elapsed < window_ns);
    if (evaluations == 0) throw std::runtime_error("timing window performed no evaluations");
    return static_cast<double>(elapsed) * 1e-9 / static_cast<double>(evaluations);
  };

  TimingRecord record;
  std::optional<double> previous;
  while (record.warmup_windows < plan.max_warmup) {
    const double current = one_window();
    ++record.warmup_windows;
    if (previous && std::abs(current - *previous) < plan.warmup_tolerance * std::max(current, *previous)) break;
    previous = current;
  }
  for (std::size_t i = 0; i < plan.windows; ++i) record.per_window.push_back(one_window());
  record.mean = mean(record.per_window);
  record.stddev = sample_stddev(record.per_window);
  return record;
}

double mean(std::span<const double> xs) {
  if (xs.empty()) throw std::invalid_argument("mean of an empty sequence");
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

double sample_stddev(std::span<const double> xs) {
  if (xs.size() < 2) return 0.0;
  const double m = mean(xs);
  double ss = 0;
  for (double x : xs) ss += (x - m) * (x - m);
  return std::sqrt(ss / static_cast<double>(xs.size() - 1));
}

double pearson(std::span<const double> xs, std::span<const double> ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("pearson: sequences differ in length");
  if (xs.size() < 2) throw std::invalid_argument("pearson: need at least two points");
  const double mx = mean(xs);
  const double my = mean(ys);
  double sxy = 0, sxx = 0, syy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx;
    const double dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0 || syy == 0) throw std::invalid_argument("pearson: zero variance");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

std::uint64_t cell_seed(std::uint64_t master, std::string_view experiment, Algorithm algorithm, std::size_t n) {
  std::uint64_t h = 0;
  for (char c : experiment) h = h * 131 + static_cast<unsigned char>(c);
  h = derive_seed(h, static_cast<std::uint64_t>(algorithm));
  h = derive_seed(h, n);
  return derive_seed(master, h);
}

namespace {

void check_range(const ScalingConfig& config) {
  if (config.k_min < 5 || config.k_max > 24 || config.k_min > config.k_max)
    throw std::invalid_argument("k range must satisfy 5 <= k-min <= k-max <= 24");
  if (config.algorithms.empty() || config.stores.empty())
    throw std::invalid_argument("at least one algorithm and one store are required");
}

template <class MakeEvaluator, class MakeStop>
std::vector<CellResult> scaling(const ScalingConfig& config, std::string_view experiment, MakeEvaluator make_evaluator,
                                MakeStop make_stop, const Progress& progress) {
  check_range(config);
  std::vector<CellResult> rows;
  for (int k = config.k_min; k <= config.k_max; ++k) {
    const std::size_t n = std::size_t{1} << k;
    for (Algorithm algorithm : config.algorithms) {
      const std::uint64_t seed = cell_seed(config.seed, experiment, algorithm, n);
      const Evaluator evaluator = make_evaluator(n, seed);
      const StopCondition stop = make_stop(evaluator);
      for (StoreKind store : config.stores) {
        std::uint64_t run_index = 0;
        auto run = [&] {
          return run_algorithm(algorithm, store, evaluator, stop, derive_seed(seed, run_index++)).evaluations;
        };
        rows.push_back(CellResult{algorithm, store, n, seed, timed_windows(run, config.plan)});
        if (progress) progress(rows.back());
      }
    }
  }
  return rows;
}

}  // namespace

std::vector<CellResult> onemax_scaling(const ScalingConfig& config, const Progress& progress) {
  return scaling(
      config, "onemax-scaling", [](std::size_t n, std::uint64_t) { return Evaluator::onemax(n); },
      [](const Evaluator& e) { return StopCondition{TargetFitness{e.onemax_optimum()}}; }, progress);
}

std::vector<CellResult> knapsack_budget(const ScalingConfig& config, const Progress& progress) {
  if (config.budget == 0) throw std::invalid_argument("budget must be positive");
  return scaling(
      config, "knapsack-budget",
      [](std::size_t n, std::uint64_t seed) {
        Rng rng(derive_seed(seed, 0x1a57a2c3));
        return Evaluator::knapsack(generate_instance(n, rng));
      },
      [&](const Evaluator&) { return StopCondition{Budget{config.budget}}; }, progress);
}

void write_scaling_csv(std::ostream& out, std::span<const CellResult> rows) {
  out << "algorithm,store,n,mean_s,std_s,windows,seed\n";
  for (const CellResult& r : rows) {
    out << name(r.algorithm) << ',' << name(r.store) << ',' << r.n << ',' << format_seconds(r.timing.mean) << ','
        << format_seconds(r.timing.stddev) << ',' << r.timing.per_window.size() << ',' << r.seed << '\n';
  }
}

TraceResult knapsack_trace(const TraceConfig& config) {
  if (config.stride == 0 || config.budget == 0) throw std::invalid_argument("budget and stride must be positive");
  Evaluator evaluator = [&] {
    if (config.instance) return Evaluator::knapsack(*config.instance);
    Rng rng(derive_seed(config.seed, 0x1a57a2c3));
    return Evaluator::knapsack(generate_instance(config.n, rng));
  }();

  RunOptions options;
  options.checkpoint_stride = config.stride;
  const auto start = std::chrono::steady_clock::now();
  PopulationTree store(evaluator, derive_seed(config.seed, 0x7ace));
  const double n = static_cast<double>(store.problem_size());
  const RunTrace run = run_mu_plus_one(store, 10, std::min(1.0, 1.4 / n), 0.9, Budget{config.budget}, options);

  TraceResult result;
  auto previous = start;
  std::vector<double> sizes, times;
  for (const Checkpoint& c : run.checkpoints) {
    const double seconds = std::chrono::duration<double>(c.at - previous).count();
    previous = c.at;
    result.records.push_back(TraceRecord{c.evaluations, seconds / static_cast<double>(config.stride),
                                         c.mean_patch_size, c.min_patch_size, c.max_patch_size});
    sizes.push_back(c.mean_patch_size);
    times.push_back(result.records.back().avg_op_time_s);
  }
  result.correlation = pearson(sizes, times);
  return result;
}

void write_trace_csv(std::ostream& out, const TraceResult& trace) {
  out << "evals,avg_op_time_s,total_patch_size,min_patch,max_patch\n";
  char buf[64];
  for (const TraceRecord& r : trace.records) {
    std::snprintf(buf, sizeof buf, "%.1f", r.total_patch_size);
    out << r.evaluations << ',' << format_seconds(r.avg_op_time_s) << ',' << buf << ',' << r.min_patch << ','
        << r.max_patch << '\n';
  }
}

}  // namespace patchpop::bench

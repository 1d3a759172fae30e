// Benchmark driver for the population stores.
//
//   bench --experiment onemax-scaling --algorithms rls,opo --stores mst,naive \
//         --k-min 5 --k-max 13 --windows 10 --window-secs 1 --out onemax.csv

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "patchpop/bench.hpp"

namespace {

std::vector<std::string> split(const std::string& list) {
  std::vector<std::string> out;
  std::stringstream ss(list);
  for (std::string item; std::getline(ss, item, ',');)
    if (!item.empty()) out.push_back(item);
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  using namespace patchpop;

  CLI::App app{"Operation-time experiments for patch-tree and naive population stores"};
  std::string experiment;
  std::string algorithms = "rls,opo,mpo2,mpo10";
  std::string stores = "mst,naive";
  int k_min = 5;
  int k_max = 13;
  std::uint64_t budget = 0;
  std::uint64_t stride = 10;
  std::uint64_t seed = 1;
  std::size_t windows = 10;
  double window_secs = 1.0;
  std::size_t trace_n = 10000;
  std::string instance_path;
  std::string out_path;

  app.add_option("--experiment", experiment, "onemax-scaling | knapsack-budget | knapsack-trace")
      ->required()
      ->check(CLI::IsMember({"onemax-scaling", "knapsack-budget", "knapsack-trace"}));
  app.add_option("--algorithms", algorithms, "comma-separated subset of rls,opo,mpo2,mpo10")->capture_default_str();
  app.add_option("--stores", stores, "comma-separated subset of mst,naive")->capture_default_str();
  app.add_option("--k-min", k_min, "smallest problem size exponent")->capture_default_str();
  app.add_option("--k-max", k_max, "largest problem size exponent (up to 24)")->capture_default_str();
  app.add_option("--budget", budget, "evaluation budget (knapsack-budget: 25000, knapsack-trace: 100000)");
  app.add_option("--stride", stride, "checkpoint stride for knapsack-trace")->capture_default_str();
  app.add_option("--seed", seed, "master seed")->capture_default_str();
  app.add_option("--windows", windows, "measured timing windows per cell")->capture_default_str();
  app.add_option("--window-secs", window_secs, "minimum length of one timing window")->capture_default_str();
  app.add_option("--n", trace_n, "problem size for knapsack-trace")->capture_default_str();
  app.add_option("--instance", instance_path, "knapsack instance file for knapsack-trace");
  app.add_option("--out", out_path, "CSV output path")->required();
  CLI11_PARSE(app, argc, argv);

  try {
    std::ofstream out(out_path);
    if (!out) throw std::runtime_error("cannot open " + out_path + " for writing");

    if (experiment == "knapsack-trace") {
      bench::TraceConfig config;
      config.n = trace_n;
      config.budget = budget ? budget : 100000;
      config.stride = stride;
      config.seed = seed;
      if (!instance_path.empty()) {
        std::ifstream in(instance_path);
        if (!in) throw std::runtime_error("cannot open " + instance_path);
        config.instance = read_instance(in);
      }
      const bench::TraceResult trace = bench::knapsack_trace(config);
      bench::write_trace_csv(out, trace);
      std::cout << "checkpoints " << trace.records.size() << "\npearson " << trace.correlation << '\n';
      return 0;
    }

    bench::ScalingConfig config;
    for (const auto& a : split(algorithms)) config.algorithms.push_back(bench::parse_algorithm(a));
    for (const auto& s : split(stores)) config.stores.push_back(bench::parse_store(s));
    config.k_min = k_min;
    config.k_max = k_max;
    config.budget = budget ? budget : 25000;
    config.seed = seed;
    config.plan.windows = windows;
    config.plan.window_seconds = window_secs;
    if (windows == 0 || !(window_secs > 0)) throw std::invalid_argument("windows and window-secs must be positive");

    auto progress = [](const bench::CellResult& r) {
      std::cerr << bench::name(r.algorithm) << ' ' << bench::name(r.store) << " n=" << r.n << " mean=" << r.timing.mean
                << " s/eval std=" << r.timing.stddev << '\n';
    };
    const auto rows = experiment == "onemax-scaling" ? bench::onemax_scaling(config, progress)
                                                     : bench::knapsack_budget(config, progress);
    bench::write_scaling_csv(out, rows);
  } catch (const std::exception& e) {
    std::cerr << "bench: " << e.what() << '\n';
    return 2;
  }
  return 0;
}

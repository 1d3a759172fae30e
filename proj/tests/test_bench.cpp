#include <cmath>
#include <sstream>
#include <stdexcept>

#include "doctest.h"
#include "patchpop/bench.hpp"

using namespace patchpop;
using namespace patchpop::bench;

TEST_CASE("timed windows with a stubbed clock") {
  std::uint64_t now = 0;
  const Clock clock = [&] { return now; };
  const auto run = [&] {
    now += 1'000'000'000;
    return std::uint64_t{1'000'000};
  };
  WindowPlan plan;
  plan.windows = 5;
  const TimingRecord r = timed_windows(run, plan, clock);
  REQUIRE(r.per_window.size() == 5);
  for (double w : r.per_window) CHECK(w == doctest::Approx(1e-6).epsilon(1e-12));
  CHECK(r.mean == doctest::Approx(1e-6).epsilon(1e-12));
  CHECK(r.stddev == 0.0);
  CHECK(r.warmup_windows == 2);

  const auto idle = [&] {
    now += 2'000'000'000;
    return std::uint64_t{0};
  };
  CHECK_THROWS_AS(timed_windows(idle, plan, clock), std::runtime_error);
  plan.windows = 0;
  CHECK_THROWS_AS(timed_windows(run, plan, clock), std::invalid_argument);
  plan.windows = 1;
  plan.window_seconds = 0;
  CHECK_THROWS_AS(timed_windows(run, plan, clock), std::invalid_argument);
}

TEST_CASE("warmup stops on stabilization or at the cap") {
  std::uint64_t now = 0;
  const Clock clock = [&] { return now; };
  int calls = 0;
  // Per-evaluation time halves every window.
  const auto drifting = [&] {
    now += 1'000'000'000;
    return std::uint64_t{1} << ++calls;
  };
  WindowPlan plan;
  plan.windows = 2;
  const TimingRecord r = timed_windows(drifting, plan, clock);
  CHECK(r.warmup_windows == plan.max_warmup);
  CHECK(r.per_window.size() == 2);
  CHECK(r.stddev > 0);
}

TEST_CASE("windows repeat short runs until the window length elapses") {
  std::uint64_t now = 0;
  const Clock clock = [&] { return now; };
  const auto run = [&] {
    now += 100'000'000;
    return std::uint64_t{10};
  };
  WindowPlan plan;
  plan.windows = 1;
  const TimingRecord r = timed_windows(run, plan, clock);
  CHECK(r.mean == doctest::Approx(0.01));
}

TEST_CASE("pearson correlation") {
  const std::vector<double> xs{1, 2, 3, 4, 5};
  std::vector<double> lin, neg;
  for (double x : xs) {
    lin.push_back(2 * x + 1);
    neg.push_back(-x);
  }
  CHECK(pearson(xs, lin) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(pearson(xs, neg) == doctest::Approx(-1.0).epsilon(1e-15));

  const std::vector<double> a{0.5, 1.7, 2.2, 3.9, 4.1, 6.3};
  const std::vector<double> b{1.1, 0.4, 2.8, 3.0, 5.5, 5.2};
  // Direct single-pass textbook formula.
  double sa = 0, sb = 0, saa = 0, sbb = 0, sab = 0;
  const double m = static_cast<double>(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    sa += a[i];
    sb += b[i];
    saa += a[i] * a[i];
    sbb += b[i] * b[i];
    sab += a[i] * b[i];
  }
  const double direct = (m * sab - sa * sb) / std::sqrt((m * saa - sa * sa) * (m * sbb - sb * sb));
  CHECK(std::abs(pearson(a, b) - direct) < 1e-12);

  CHECK_THROWS_AS(pearson(xs, a), std::invalid_argument);
  CHECK_THROWS_AS(pearson(std::vector<double>{1}, std::vector<double>{2}), std::invalid_argument);
  CHECK_THROWS_AS(pearson(xs, std::vector<double>(5, 3.0)), std::invalid_argument);
}

TEST_CASE("summary statistics") {
  const std::vector<double> xs{2, 4, 4, 4, 5, 5, 7, 9};
  CHECK(mean(xs) == 5.0);
  CHECK(sample_stddev(xs) == doctest::Approx(std::sqrt(32.0 / 7.0)));
  CHECK(sample_stddev(std::vector<double>{3.0}) == 0.0);
  CHECK(sample_stddev(std::vector<double>{3.0, 3.0}) == 0.0);
}

TEST_CASE("names and parsing") {
  CHECK(parse_algorithm("mpo10") == Algorithm::TenPlusOne);
  CHECK(parse_store("naive") == StoreKind::Naive);
  CHECK(name(Algorithm::OnePlusOne) == "opo");
  CHECK_THROWS_AS(parse_algorithm("ga"), std::invalid_argument);
  CHECK_THROWS_AS(parse_store("tree"), std::invalid_argument);
}

TEST_CASE("cell seeds depend on coordinates but not on the store") {
  CHECK(cell_seed(1, "onemax-scaling", Algorithm::Rls, 32) == cell_seed(1, "onemax-scaling", Algorithm::Rls, 32));
  CHECK(cell_seed(1, "onemax-scaling", Algorithm::Rls, 32) != cell_seed(2, "onemax-scaling", Algorithm::Rls, 32));
  CHECK(cell_seed(1, "onemax-scaling", Algorithm::Rls, 32) != cell_seed(1, "onemax-scaling", Algorithm::Rls, 64));
  CHECK(cell_seed(1, "onemax-scaling", Algorithm::Rls, 32) != cell_seed(1, "knapsack-budget", Algorithm::Rls, 32));
}

TEST_CASE("scaling experiment output") {
  ScalingConfig cfg;
  cfg.algorithms = {Algorithm::Rls, Algorithm::TwoPlusOne};
  cfg.stores = {StoreKind::Mst, StoreKind::Naive};
  cfg.k_min = 5;
  cfg.k_max = 6;
  cfg.budget = 300;
  cfg.plan.windows = 2;
  cfg.plan.window_seconds = 0.005;
  const auto rows = knapsack_budget(cfg);
  REQUIRE(rows.size() == 8);
  for (const auto& r : rows) {
    CHECK(r.timing.per_window.size() == 2);
    CHECK(r.timing.mean > 0);
  }
  CHECK(rows[0].seed == rows[1].seed);
  std::ostringstream os;
  write_scaling_csv(os, rows);
  const std::string csv = os.str();
  CHECK(csv.rfind("algorithm,store,n,mean_s,std_s,windows,seed\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 9);
  CHECK(csv.find("rls,mst,32,") != std::string::npos);
  CHECK(csv.find("mpo2,naive,64,") != std::string::npos);

  cfg.k_min = 4;
  CHECK_THROWS_AS(onemax_scaling(cfg), std::invalid_argument);
  cfg.k_min = 5;
  cfg.k_max = 25;
  CHECK_THROWS_AS(onemax_scaling(cfg), std::invalid_argument);
  cfg.k_max = 5;
  cfg.algorithms.clear();
  CHECK_THROWS_AS(onemax_scaling(cfg), std::invalid_argument);
}

TEST_CASE("trace experiment structure is deterministic") {
  TraceConfig cfg;
  cfg.n = 500;
  cfg.budget = 3000;
  cfg.stride = 10;
  cfg.seed = 4;
  const TraceResult a = knapsack_trace(cfg);
  const TraceResult b = knapsack_trace(cfg);
  REQUIRE(a.records.size() == 300);
  REQUIRE(b.records.size() == 300);
  for (std::size_t i = 0; i < a.records.size(); ++i) {
    CHECK(a.records[i].evaluations == 10 * (i + 1));
    CHECK(a.records[i].evaluations == b.records[i].evaluations);
    CHECK(a.records[i].total_patch_size == b.records[i].total_patch_size);
    CHECK(a.records[i].min_patch == b.records[i].min_patch);
    CHECK(a.records[i].max_patch == b.records[i].max_patch);
    CHECK(a.records[i].avg_op_time_s >= 0);
  }
  CHECK(a.correlation >= -1.0);
  CHECK(a.correlation <= 1.0);

  std::ostringstream os;
  write_trace_csv(os, a);
  CHECK(os.str().rfind("evals,avg_op_time_s,total_patch_size,min_patch,max_patch\n10,", 0) == 0);

  cfg.stride = 0;
  CHECK_THROWS_AS(knapsack_trace(cfg), std::invalid_argument);
}

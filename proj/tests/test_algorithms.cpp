#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/binomial.hpp>

#include "doctest.h"
#include "oracles.hpp"
#include "patchpop/algorithms.hpp"
#include "patchpop/naive_store.hpp"
#include "patchpop/population_tree.hpp"

using namespace patchpop;

namespace {

std::vector<std::string> trajectory(auto& store, auto&& run) {
  std::vector<std::string> out;
  RunOptions opts;
  opts.variation = Variation::Explicit;
  opts.observer = [&](std::uint64_t, const FitnessValue& f) { out.push_back(to_string(f)); };
  run(store, opts);
  return out;
}

}  // namespace

TEST_CASE("binomial sampler edge cases") {
  Rng rng(1);
  for (int i = 0; i < 100; ++i) {
    CHECK(sample_binomial(17, 0.0, rng) == 0);
    CHECK(sample_binomial(17, 1.0, rng) == 17);
    CHECK(sample_binomial(0, 0.4, rng) == 0);
    CHECK(sample_binomial(9, 0.7, rng) <= 9);
  }
  CHECK_THROWS_AS(sample_binomial(5, -0.1, rng), std::invalid_argument);
  CHECK_THROWS_AS(sample_binomial(5, 1.5, rng), std::invalid_argument);
}

TEST_CASE("binomial sampler mean and variance") {
  Rng rng(2);
  for (auto [n, p] : {std::pair{1000ul, 0.002}, {50ul, 0.5}, {30ul, 0.95}, {1ul, 0.3}}) {
    const int trials = 200000;
    double sum = 0, sq = 0;
    for (int i = 0; i < trials; ++i) {
      const double x = static_cast<double>(sample_binomial(n, p, rng));
      sum += x;
      sq += x * x;
    }
    const boost::math::binomial_distribution<double> dist(static_cast<double>(n), p);
    const double m = sum / trials;
    const double var = sq / trials - m * m;
    CHECK(std::abs(m - boost::math::mean(dist)) <= 5 * std::sqrt(boost::math::variance(dist) / trials));
    CHECK(var == doctest::Approx(boost::math::variance(dist)).epsilon(0.05));
  }
}

TEST_CASE("mutation spec") {
  Rng rng(3);
  CHECK(MutationSpec::fixed(1).sample(10, rng) == 1);
  for (int i = 0; i < 1000; ++i) CHECK(MutationSpec::standard(0.3).sample(10, rng) <= 10);
  CHECK_THROWS_AS(MutationSpec::standard(1.2), std::invalid_argument);
}

TEST_CASE("uniform crossover spec") {
  Rng rng(4);
  const CrossoverFn f = uniform_crossover_spec(20, 0.1, rng);
  for (int i = 0; i < 2000; ++i) {
    const std::size_t d = rng.below(21);
    const CrossoverCounts c = f(d);
    CHECK(c.differing <= d);
    CHECK(c.same <= 20 - d);
    CHECK(f(0).differing == 0);
  }
  const CrossoverFn none = uniform_crossover_spec(20, 0.0, rng);
  for (int i = 0; i < 200; ++i) CHECK(none(7).same == 0);
  CHECK_THROWS_AS(uniform_crossover_spec(20, -1.0, rng), std::invalid_argument);

  SUBCASE("differing positions come from either parent equally often") {
    const std::size_t n = 16;
    PopulationTree t(Evaluator::onemax(n), BitString(n), 9);
    const NodeId x1 = t.anchor();
    const NodeId x2 = t.mutate_explicit(x1, Patch{0, 1, 2, 3, 4, 5, 6, 7});
    Rng r(10);
    const CrossoverFn spec = uniform_crossover_spec(n, 0.0, r);
    const int trials = 10000;
    std::vector<int> from_second(8, 0);
    for (int i = 0; i < trials; ++i) {
      const NodeId c = t.crossover(x1, x2, spec);
      const BitString b = t.reconstruct(c);
      for (std::size_t k = 0; k < 8; ++k) from_second[k] += b[k];
      for (std::size_t k = 8; k < n; ++k) REQUIRE_FALSE(b[k]);
      t.discard(c);
    }
    for (int v : from_second) CHECK(std::abs(v - trials / 2.0) <= 5 * std::sqrt(trials * 0.25));
  }
}

TEST_CASE("RLS") {
  SUBCASE("starting at the optimum stops immediately") {
    PopulationTree t(Evaluator::onemax(32), BitString::parse(std::string(32, '1')), 1);
    const RunTrace r = run_rls(t, TargetFitness{32});
    CHECK(r.evaluations == 1);
    CHECK(r.target_reached);
  }
  SUBCASE("always reaches the optimum on 64 bits") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      PopulationTree t(Evaluator::onemax(64), seed);
      const RunTrace r = run_rls(t, TargetFitness{64});
      CHECK(r.target_reached);
      CHECK(r.best == FitnessValue{OneMaxFitness{64}});
      CHECK(t.vertex_count() == 1);
    }
  }
  SUBCASE("budget is respected and best-so-far never decreases") {
    Rng g(5);
    PopulationTree t(Evaluator::knapsack(generate_instance(100, g)), 5);
    std::int64_t best = std::numeric_limits<std::int64_t>::min();
    std::uint64_t last = 0;
    RunOptions opts;
    opts.observer = [&](std::uint64_t i, const FitnessValue& f) {
      CHECK(i == last + 1);
      last = i;
      best = std::max(best, t.evaluator().key(f));
    };
    const RunTrace r = run_rls(t, Budget{500}, opts);
    CHECK(r.evaluations == 500);
    CHECK(t.evaluator().key(r.best) == best);
    CHECK_THROWS_AS(run_rls(t, Budget{0}), std::invalid_argument);
  }
}

TEST_CASE("(1+1) EA") {
  SUBCASE("zero rate never changes fitness") {
    PopulationTree t(Evaluator::onemax(40), 2);
    const FitnessValue start = t.fitness(t.anchor());
    RunOptions opts;
    opts.observer = [&](std::uint64_t, const FitnessValue& f) { CHECK(f == start); };
    const RunTrace r = run_one_plus_one(t, 0.0, Budget{300}, opts);
    CHECK(r.best == start);
  }
  SUBCASE("elitism on knapsack") {
    Rng g(6);
    const Evaluator e = Evaluator::knapsack(generate_instance(200, g));
    PopulationTree t(e, 6);
    std::int64_t best = std::numeric_limits<std::int64_t>::min();
    std::int64_t accepted = e.key(t.fitness(t.anchor()));
    RunOptions opts;
    opts.observer = [&](std::uint64_t, const FitnessValue& f) { best = std::max(best, e.key(f)); };
    run_one_plus_one(t, 1.0 / 200, Budget{2000}, opts);
    CHECK(best >= accepted);
    CHECK(e.key(t.fitness(t.anchor())) == best);
    CHECK(oracle::verify(t, true) == "");
  }
}

TEST_CASE("(mu+1) GA") {
  SUBCASE("population stays at mu") {
    for (std::size_t mu : {1u, 2u, 5u, 10u}) {
      Rng g(mu);
      const Evaluator e = Evaluator::knapsack(generate_instance(60, g));
      PopulationTree t(e, mu);
      NaiveStore s(e, mu);
      run_mu_plus_one(t, mu, 1.4 / 60, 0.9, Budget{1000});
      run_mu_plus_one(s, mu, 1.4 / 60, 0.9, Budget{1000});
      CHECK(s.size() == mu);
      std::size_t alive = 0;
      for (const NodeId& id : t.stored()) alive += t.alive(id);
      CHECK(alive == mu);
      CHECK(oracle::verify(t, true) == "");
    }
  }
  SUBCASE("invalid parameters") {
    PopulationTree t(Evaluator::onemax(8), 1);
    CHECK_THROWS_AS(run_mu_plus_one(t, 0, 0.1, 0.9, Budget{10}), std::invalid_argument);
    CHECK_THROWS_AS(run_mu_plus_one(t, 2, 0.1, 1.5, Budget{10}), std::invalid_argument);
  }
  SUBCASE("solves small OneMax") {
    PopulationTree t(Evaluator::onemax(32), 8);
    const RunTrace r = run_mu_plus_one(t, 2, 1.2 / 32, 0.9, TargetFitness{32});
    CHECK(r.target_reached);
  }
  SUBCASE("mu = 1 without crossover accepts exactly the (1+1) way") {
    Rng g(9);
    PopulationTree t(Evaluator::onemax(50), 9);
    std::int64_t parent = t.evaluator().key(t.fitness(t.anchor()));
    std::uint64_t count = 0;
    RunOptions opts;
    opts.observer = [&](std::uint64_t, const FitnessValue& f) {
      if (count++ == 0) return;
      parent = std::max(parent, t.evaluator().key(f));
    };
    const RunTrace r = run_mu_plus_one(t, 1, 1.0 / 50, 0.0, Budget{3000}, opts);
    CHECK(t.evaluator().key(r.best) == parent);
  }
}

TEST_CASE("explicit variation gives identical trajectories on both stores") {
  const std::size_t n = 64;
  Rng g(12);
  const Evaluator e = Evaluator::knapsack(generate_instance(n, g));
  const BitString start = BitString::random(n, g);
  auto check = [&](auto run) {
    PopulationTree t(e, start, 77);
    NaiveStore s(e, start, 77);
    const auto a = trajectory(t, run);
    const auto b = trajectory(s, run);
    CHECK(a.size() == b.size());
    CHECK(a == b);
  };
  check([](auto& st, const RunOptions& o) { run_rls(st, Budget{2000}, o); });
  check([](auto& st, const RunOptions& o) { run_one_plus_one(st, 1.0 / 64, Budget{2000}, o); });
  check([](auto& st, const RunOptions& o) { run_mu_plus_one(st, 10, 1.4 / 64, 0.9, Budget{2000}, o); });
}

TEST_CASE("checkpoints") {
  Rng g(13);
  const Evaluator e = Evaluator::knapsack(generate_instance(100, g));
  PopulationTree t(e, 13);
  RunOptions opts;
  opts.checkpoint_stride = 10;
  const RunTrace r = run_mu_plus_one(t, 10, 0.014, 0.9, Budget{1000}, opts);
  REQUIRE(r.checkpoints.size() == 100);
  for (std::size_t i = 0; i < r.checkpoints.size(); ++i) {
    const Checkpoint& c = r.checkpoints[i];
    CHECK(c.evaluations == 10 * (i + 1));
    CHECK(c.min_patch_size <= c.mean_patch_size);
    CHECK(c.mean_patch_size <= c.max_patch_size);
  }
}

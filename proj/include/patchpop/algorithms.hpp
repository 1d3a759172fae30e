#pragma once

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <limits>
#include <optional>
#include <stdexcept>
#include <variant>
#include <vector>

#include "patchpop/fitness.hpp"
#include "patchpop/index_set.hpp"
#include "patchpop/rng.hpp"
#include "patchpop/sampling.hpp"
#include "patchpop/store.hpp"

namespace patchpop {

/// Distribution of the number of bits an unbiased mutation flips.
class MutationSpec {
 public:
  /// Always flips exactly `count` bits (RLS uses 1).
  static MutationSpec fixed(std::size_t count) { return MutationSpec(count, -1.0); }
  /// Standard bit mutation: Bin(n, rate).
  static MutationSpec standard(double rate);

  std::size_t sample(std::size_t n, Rng& rng) const;

 private:
  MutationSpec(std::size_t count, double rate) : count_(count), rate_(rate) {}

  std::size_t count_;
  double rate_;
};

/// Uniform crossover followed by standard bit mutation with rate p_m,
/// expressed as counts: Bin(d, 1/2) differing and Bin(n - d, p_m) same
/// positions are flipped in the first parent.
CrossoverFn uniform_crossover_spec(std::size_t n, double mutation_rate, Rng& rng);

struct TargetFitness {
  std::int64_t key;  // stop once a fitness key >= this is found
};
struct Budget {
  std::uint64_t evaluations;
};
using StopCondition = std::variant<TargetFitness, Budget>;

/// How operator positions are chosen.
///
/// Native lets the store sample positions with its own index set.
/// Explicit samples them on the optimizer side from the canonical parent
/// difference and passes them to mutate_explicit; runs are then identical
/// across store implementations for a given seed.
enum class Variation { Native, Explicit };

/// Population statistics over one checkpoint interval.
struct Checkpoint {
  std::uint64_t evaluations = 0;
  double mean_patch_size = 0;
  std::uint64_t min_patch_size = 0;
  std::uint64_t max_patch_size = 0;
  std::chrono::steady_clock::time_point at;
};

struct RunOptions {
  Variation variation = Variation::Native;
  /// Record a Checkpoint every `stride` evaluations (0 disables). Samples
  /// the store's total patch size after every evaluation.
  std::uint64_t checkpoint_stride = 0;
  /// Called after every evaluation with the evaluation index and the
  /// fitness of the newly evaluated individual.
  std::function<void(std::uint64_t, const FitnessValue&)> observer;
};

struct RunTrace {
  std::uint64_t evaluations = 0;
  FitnessValue best;
  bool target_reached = false;
  std::vector<Checkpoint> checkpoints;
};

namespace detail {

inline bool should_stop(const StopCondition& stop, std::uint64_t evaluations, std::int64_t best_key) {
  if (const auto* t = std::get_if<TargetFitness>(&stop)) return best_key >= t->key;
  return evaluations >= std::get<Budget>(stop).evaluations;
}

inline void validate(const StopCondition& stop) {
  if (const auto* b = std::get_if<Budget>(&stop); b && b->evaluations == 0)
    throw std::invalid_argument("evaluation budget must be at least 1");
}

// Counts evaluations and maintains checkpoints.
template <PopulationStore S>
class EvaluationLog {
 public:
  EvaluationLog(S& store, const RunOptions& options, RunTrace& trace)
      : store_(store), options_(options), trace_(trace) {}

  void record(const FitnessValue& f) {
    const std::uint64_t index = ++trace_.evaluations;
    if (options_.observer) options_.observer(index, f);
    if (options_.checkpoint_stride == 0) return;
    const std::uint64_t patch = store_.total_patch_size();
    sum_ += patch;
    min_ = std::min(min_, patch);
    max_ = std::max(max_, patch);
    ++samples_;
    if (index % options_.checkpoint_stride == 0) {
      trace_.checkpoints.push_back(Checkpoint{index, static_cast<double>(sum_) / static_cast<double>(samples_),
                                              min_, max_, std::chrono::steady_clock::now()});
      sum_ = 0;
      samples_ = 0;
      min_ = std::numeric_limits<std::uint64_t>::max();
      max_ = 0;
    }
  }

 private:
  S& store_;
  const RunOptions& options_;
  RunTrace& trace_;
  std::uint64_t sum_ = 0;
  std::uint64_t samples_ = 0;
  std::uint64_t min_ = std::numeric_limits<std::uint64_t>::max();
  std::uint64_t max_ = 0;
};

// Optimizer-side position sampling for Variation::Explicit.
class Picker {
 public:
  Picker(Variation v, std::size_t n) {
    if (v == Variation::Explicit) set_.emplace(n);
  }
  bool active() const { return set_.has_value(); }

  Patch draw(std::size_t count, Rng& rng) {
    set_->clear();
    for (std::size_t i = 0; i < count; ++i) set_->add_random_absent(rng);
    return set_->snapshot();
  }

  Patch recombine(const Patch& diff, const CrossoverFn& counts, std::size_t n, Rng& rng) {
    set_->clear();
    set_->merge(diff);
    const std::size_t d = diff.size();
    const CrossoverCounts c = counts(d);
    if (c.differing > d || c.same > n - d) throw std::out_of_range("crossover counts outside the admissible range");
    set_->flip_random(c.same, d - c.differing, rng);
    return set_->snapshot();
  }

 private:
  std::optional<IndexSet> set_;
};

template <PopulationStore S>
NodeId mutate(S& store, Picker& picker, NodeId parent, std::size_t count) {
  if (!picker.active()) return store.mutate(parent, count);
  if (count > store.problem_size()) throw std::invalid_argument("cannot flip more bits than the problem size");
  return store.mutate_explicit(parent, picker.draw(count, store.rng()));
}

template <PopulationStore S>
NodeId crossover(S& store, Picker& picker, NodeId first, NodeId second, const CrossoverFn& counts) {
  if (!picker.active()) return store.crossover(first, second, counts);
  const Patch diff = store.difference(first, second);
  return store.mutate_explicit(first, picker.recombine(diff, counts, store.problem_size(), store.rng()));
}

template <PopulationStore S>
RunTrace run_elitist(S& store, const MutationSpec& mutation, const StopCondition& stop, const RunOptions& options) {
  validate(stop);
  const Evaluator& eval = store.evaluator();
  const std::size_t n = store.problem_size();
  Rng& rng = store.rng();
  Picker picker(options.variation, n);
  RunTrace trace;
  EvaluationLog<S> log(store, options, trace);

  NodeId parent = store.anchor();
  std::int64_t parent_key = eval.key(store.fitness(parent));
  log.record(store.fitness(parent));
  while (!should_stop(stop, trace.evaluations, parent_key)) {
    const NodeId child = mutate(store, picker, parent, mutation.sample(n, rng));
    const FitnessValue child_fitness = store.fitness(child);
    const std::int64_t child_key = eval.key(child_fitness);
    if (child_key >= parent_key) {
      store.discard(parent);
      parent = child;
      parent_key = child_key;
    } else {
      store.discard(child);
    }
    log.record(child_fitness);
  }
  trace.best = store.fitness(parent);
  trace.target_reached = std::holds_alternative<TargetFitness>(stop) && should_stop(stop, 0, parent_key);
  return trace;
}

}  // namespace detail

/// Randomized local search: flip one uniformly chosen bit, keep the
/// offspring if it is not worse.
template <PopulationStore S>
RunTrace run_rls(S& store, const StopCondition& stop, const RunOptions& options = {}) {
  return detail::run_elitist(store, MutationSpec::fixed(1), stop, options);
}

/// (1+1) EA with standard bit mutation of the given rate.
template <PopulationStore S>
RunTrace run_one_plus_one(S& store, double rate, const StopCondition& stop, const RunOptions& options = {}) {
  return detail::run_elitist(store, MutationSpec::standard(rate), stop, options);
}

/// Steady-state (mu+1) GA.
///
/// The first individual is the store's initial one, the other mu-1 come
/// from add_random. Each iteration draws, in this order: the branch
/// (crossover with probability p_c), the parent indices, the operator
/// counts and positions, and finally the tie-break among the
/// minimum-fitness members (only when there is more than one), one of
/// which is discarded.
template <PopulationStore S>
RunTrace run_mu_plus_one(S& store, std::size_t mu, double mutation_rate, double crossover_rate,
                         const StopCondition& stop, const RunOptions& options = {}) {
  if (mu == 0) throw std::invalid_argument("population size must be positive");
  if (!(crossover_rate >= 0.0 && crossover_rate <= 1.0))
    throw std::invalid_argument("crossover probability outside [0, 1]");
  detail::validate(stop);
  const Evaluator& eval = store.evaluator();
  const std::size_t n = store.problem_size();
  const MutationSpec mutation = MutationSpec::standard(mutation_rate);
  Rng& rng = store.rng();
  detail::Picker picker(options.variation, n);
  RunTrace trace;
  detail::EvaluationLog<S> log(store, options, trace);

  std::vector<NodeId> population{store.anchor()};
  std::vector<std::int64_t> keys{eval.key(store.fitness(population[0]))};
  log.record(store.fitness(population[0]));
  while (population.size() < mu) {
    NodeId x;
    if (picker.active())
      x = detail::mutate(store, picker, store.anchor(), sample_binomial(n, 0.5, rng));
    else
      x = store.add_random();
    population.push_back(x);
    keys.push_back(eval.key(store.fitness(x)));
    log.record(store.fitness(x));
  }

  const CrossoverFn counts = uniform_crossover_spec(n, mutation_rate, rng);
  std::vector<std::size_t> worst;
  auto best_key = [&] { return *std::max_element(keys.begin(), keys.end()); };
  while (!detail::should_stop(stop, trace.evaluations, best_key())) {
    NodeId child;
    if (rng.unit() < crossover_rate) {
      const NodeId a = population[rng.below(mu)];
      const NodeId b = population[rng.below(mu)];
      child = detail::crossover(store, picker, a, b, counts);
    } else {
      const NodeId a = population[rng.below(mu)];
      child = detail::mutate(store, picker, a, mutation.sample(n, rng));
    }
    const FitnessValue child_fitness = store.fitness(child);
    population.push_back(child);
    keys.push_back(eval.key(child_fitness));

    const std::int64_t lowest = *std::min_element(keys.begin(), keys.end());
    worst.clear();
    for (std::size_t i = 0; i < keys.size(); ++i)
      if (keys[i] == lowest) worst.push_back(i);
    const std::size_t victim = worst.size() == 1 ? worst[0] : worst[rng.below(worst.size())];
    store.discard(population[victim]);
    population[victim] = population.back();
    keys[victim] = keys.back();
    population.pop_back();
    keys.pop_back();
    log.record(child_fitness);
  }

  const auto best = std::max_element(keys.begin(), keys.end()) - keys.begin();
  trace.best = store.fitness(population[static_cast<std::size_t>(best)]);
  trace.target_reached = std::holds_alternative<TargetFitness>(stop) && detail::should_stop(stop, 0, best_key());
  return trace;
}

}  // namespace patchpop

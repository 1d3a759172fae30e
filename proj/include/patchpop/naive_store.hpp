#pragma once

#include <cstdint>
#include <vector>

#include "patchpop/fitness.hpp"
#include "patchpop/index_set.hpp"
#include "patchpop/rng.hpp"
#include "patchpop/store.hpp"

namespace patchpop {

/// Baseline store: every individual is a full bit string.
///
/// Operators copy the parent, flip the sampled positions and evaluate the
/// offspring from scratch, so each operation costs Theta(n). Discarded
/// individuals are dropped immediately.
class NaiveStore {
 public:
  NaiveStore(Evaluator evaluator, std::uint64_t seed);
  NaiveStore(Evaluator evaluator, BitString initial, std::uint64_t seed);

  const Evaluator& evaluator() const { return evaluator_; }
  std::size_t problem_size() const { return evaluator_.size(); }
  Rng& rng() { return rng_; }

  /// The most recently created individual.
  NodeId anchor() const { return anchor_; }

  NodeId add_random();
  NodeId mutate(NodeId parent, std::size_t count);
  NodeId mutate_explicit(NodeId parent, const Patch& flips);
  NodeId crossover(NodeId first, NodeId second, const CrossoverFn& counts);
  Patch difference(NodeId a, NodeId b);
  void discard(NodeId x);

  const FitnessValue& fitness(NodeId x) const { return slot(x).fitness; }
  bool alive(NodeId x) const { return slot(x).alive; }
  bool contains(NodeId x) const;

  const BitString& bits(NodeId x) const { return slot(x).bits; }

  /// Weight of a minimum spanning tree over the stored individuals under
  /// Hamming distance. Computed on demand in O(count^2 n); for tests only.
  std::uint64_t total_patch_size();

  std::size_t size() const { return count_; }

 private:
  struct Individual {
    BitString bits;
    FitnessValue fitness;
    std::uint64_t serial = 0;
    bool alive = false;
  };

  const Individual& slot(NodeId x) const;
  const Individual& alive_slot(NodeId x) const;
  NodeId store(BitString bits, FitnessValue fitness);
  NodeId offspring_from_scratch(const BitString& parent);

  Evaluator evaluator_;
  Rng rng_;
  IndexSet scratch_;
  std::vector<Individual> slots_;
  std::vector<std::uint32_t> free_;
  std::uint64_t next_serial_ = 1;
  std::size_t count_ = 0;
  NodeId anchor_;
  BitString discarded_anchor_;  // base for add_random once the anchor is gone
};

static_assert(PopulationStore<NaiveStore>);

}  // namespace patchpop

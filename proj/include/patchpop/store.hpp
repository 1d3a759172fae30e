#pragma once

#include <concepts>
#include <cstdint>
#include <functional>
#include <ostream>
#include <stdexcept>

#include "patchpop/fitness.hpp"
#include "patchpop/index_set.hpp"
#include "patchpop/rng.hpp"

namespace patchpop {

/// Stable handle of a stored individual.
///
/// The serial number is unique for the lifetime of a store and increases
/// with every created individual; the slot is the storage position, which
/// may be recycled. A handle whose serial no longer matches its slot is
/// dangling.
struct NodeId {
  std::uint64_t serial = 0;
  std::uint32_t slot = 0;

  friend bool operator==(const NodeId&, const NodeId&) = default;
};

inline std::ostream& operator<<(std::ostream& os, const NodeId& id) { return os << '#' << id.serial; }

/// Numbers of differing and same positions to flip in the first parent.
struct CrossoverCounts {
  std::size_t differing = 0;
  std::size_t same = 0;
};

/// Maps the parent distance d to the counts to flip.
using CrossoverFn = std::function<CrossoverCounts(std::size_t d)>;

/// Raised for unknown, dangling or discarded handles.
class UnknownNode : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

/// The operation set shared by the patch tree and the naive store.
template <class S>
concept PopulationStore = requires(S s, const S cs, NodeId id, std::size_t count, const Patch& patch,
                                   const CrossoverFn& fn) {
  { cs.evaluator() } -> std::same_as<const Evaluator&>;
  { cs.problem_size() } -> std::same_as<std::size_t>;
  { s.rng() } -> std::same_as<Rng&>;
  { cs.anchor() } -> std::same_as<NodeId>;
  { s.add_random() } -> std::same_as<NodeId>;
  { s.mutate(id, count) } -> std::same_as<NodeId>;
  { s.mutate_explicit(id, patch) } -> std::same_as<NodeId>;
  { s.crossover(id, id, fn) } -> std::same_as<NodeId>;
  { s.difference(id, id) } -> std::same_as<Patch>;
  { s.discard(id) };
  { cs.fitness(id) } -> std::same_as<const FitnessValue&>;
  { cs.alive(id) } -> std::same_as<bool>;
  { cs.contains(id) } -> std::same_as<bool>;
  { s.total_patch_size() } -> std::same_as<std::uint64_t>;
};

}  // namespace patchpop

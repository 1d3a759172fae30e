#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "patchpop/fitness.hpp"
#include "patchpop/index_set.hpp"
#include "patchpop/rng.hpp"
#include "patchpop/store.hpp"

namespace patchpop {

/// Population kept as a minimum spanning tree of patches.
///
/// Only one individual (the complete individual) is materialized; every
/// other one is reachable by applying the patches on the tree path from the
/// anchor vertex. Vertices hold the fitness value and an alive flag. Edge
/// weights are patch sizes and the edge set is kept a minimum spanning tree
/// of all stored vertices under Hamming distance.
///
/// Each operator promotes the complete individual to the (first) parent,
/// builds the offspring patch in an O(n)-word index set, evaluates the
/// offspring incrementally, and inserts it with one traversal of the whole
/// tree. The offspring becomes the new anchor.
///
/// Discarded individuals stay in the tree while they have degree two or
/// more; leaves are removed as soon as they are discarded, cascading through
/// discarded neighbours.
class PopulationTree {
 public:
  /// Samples the complete individual uniformly and stores it as the first vertex.
  PopulationTree(Evaluator evaluator, std::uint64_t seed);
  /// Starts from a given individual instead of a random one.
  PopulationTree(Evaluator evaluator, BitString initial, std::uint64_t seed);

  const Evaluator& evaluator() const { return evaluator_; }
  std::size_t problem_size() const { return complete_.size(); }
  Rng& rng() { return rng_; }

  NodeId anchor() const { return id_of(anchor_); }
  const BitString& complete() const { return complete_; }

  /// An offspring of the anchor with Bin(n, 1/2) flipped bits, which is
  /// distributed as a uniformly random individual.
  NodeId add_random();

  /// Flips `count` distinct uniformly chosen bits of `parent`.
  NodeId mutate(NodeId parent, std::size_t count);
  /// Flips exactly the given positions of `parent`.
  NodeId mutate_explicit(NodeId parent, const Patch& flips);
  /// Unbiased crossover: flips in `first` the numbers of differing and same
  /// positions returned by `counts` for the parents' distance.
  NodeId crossover(NodeId first, NodeId second, const CrossoverFn& counts);

  /// Positions where the two individuals differ.
  Patch difference(NodeId a, NodeId b);

  /// Moves the complete individual onto `x`.
  void promote(NodeId x);

  void discard(NodeId x);

  const FitnessValue& fitness(NodeId x) const { return vertex(x).fitness; }
  bool alive(NodeId x) const { return vertex(x).alive; }
  bool contains(NodeId x) const;

  /// Materializes the bit string of `x` without moving the anchor.
  BitString reconstruct(NodeId x) const;

  /// Sum of patch sizes over all tree edges.
  std::uint64_t total_patch_size() const { return total_patch_size_; }

  std::size_t vertex_count() const { return vertex_count_; }
  std::size_t edge_count() const { return edge_count_; }
  std::vector<NodeId> stored() const;

  /// One `vertex <id> fitness=<f> alive=<0|1>` line per stored vertex and
  /// one `edge <id> <id> <k> <i_1> ... <i_k>` line per tree edge, ids in
  /// increasing order.
  void dump(std::ostream& out) const;

 private:
  static constexpr std::uint32_t kNone = 0xffffffffu;

  struct Vertex {
    FitnessValue fitness;
    std::uint64_t serial = 0;  // 0 marks a free slot
    bool alive = false;
    std::vector<std::uint32_t> edges;
  };

  struct Edge {
    std::uint32_t a = kNone;
    std::uint32_t b = kNone;
    Patch patch;

    std::uint32_t other(std::uint32_t v) const { return v == a ? b : a; }
  };

  // Candidate edge of the insertion update. Ordered by weight, then tree
  // edges before edges to the new vertex, then DFS preorder.
  struct Candidate {
    std::uint64_t weight = 0;
    bool to_new = false;
    std::uint32_t order = 0;
    std::uint32_t id = kNone;  // vertex slot for new edges, edge slot otherwise

    bool heavier_than(const Candidate& o) const {
      if (weight != o.weight) return weight > o.weight;
      if (to_new != o.to_new) return to_new;
      return order > o.order;
    }
  };

  struct Frame {
    std::uint32_t v;
    std::uint32_t via;
    std::uint32_t next;
  };

  const Vertex& vertex(NodeId x) const;
  std::uint32_t slot_of(NodeId x) const;
  NodeId id_of(std::uint32_t slot) const { return {vertices_[slot].serial, slot}; }

  std::uint32_t new_vertex(FitnessValue fitness);
  std::uint32_t new_edge(std::uint32_t a, std::uint32_t b, Patch patch);
  void remove_edge(std::uint32_t e);
  void free_vertex(std::uint32_t v);

  // Fills parent_edge_ with a DFS tree rooted at `root`, stopping once
  // `target` is reached (kNone traverses everything).
  void find_path(std::uint32_t root, std::uint32_t target);
  std::uint32_t alive_slot(NodeId x) const;
  NodeId mutate_slot(std::uint32_t parent, std::size_t count);
  void promote_slot(std::uint32_t x);
  // scratch_ <- positions where x and y differ.
  void load_difference(std::uint32_t x, std::uint32_t y);
  // Applies the patch in scratch_ to the anchor and inserts the result.
  NodeId finish_offspring();
  void insert_vertex(std::uint32_t z);
  void prune_from(std::uint32_t v);
  void ensure_work_arrays();

  Evaluator evaluator_;
  Rng rng_;
  BitString complete_;
  IndexSet scratch_;
  std::uint32_t anchor_ = kNone;

  std::vector<Vertex> vertices_;
  std::vector<std::uint32_t> free_vertices_;
  std::vector<Edge> edges_;
  std::vector<std::uint32_t> free_edges_;
  std::uint64_t next_serial_ = 1;
  std::size_t vertex_count_ = 0;
  std::size_t edge_count_ = 0;
  std::uint64_t total_patch_size_ = 0;

  // Per-slot traversal state, reused between operations.
  std::vector<std::uint32_t> parent_edge_;
  std::vector<std::uint64_t> distance_;
  std::vector<std::uint32_t> preorder_;
  std::vector<Candidate> path_max_;
  std::vector<std::uint8_t> keep_new_edge_;
  std::vector<std::uint32_t> visited_;
  std::vector<std::uint32_t> removed_edges_;
  std::vector<Frame> stack_;
};

static_assert(PopulationStore<PopulationTree>);

}  // namespace patchpop

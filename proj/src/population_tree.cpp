#include "patchpop/population_tree.hpp"

#include <algorithm>
#include <cassert>
#include <ostream>
#include <stdexcept>
#include <tuple>

#include "patchpop/sampling.hpp"

namespace patchpop {

PopulationTree::PopulationTree(Evaluator evaluator, std::uint64_t seed)
    : evaluator_(std::move(evaluator)),
      rng_(seed),
      complete_(BitString::random(evaluator_.size(), rng_)),
      scratch_(evaluator_.size()) {
  anchor_ = new_vertex(evaluator_.full(complete_));
}

PopulationTree::PopulationTree(Evaluator evaluator, BitString initial, std::uint64_t seed)
    : evaluator_(std::move(evaluator)), rng_(seed), complete_(std::move(initial)), scratch_(evaluator_.size()) {
  anchor_ = new_vertex(evaluator_.full(complete_));
}

bool PopulationTree::contains(NodeId x) const {
  return x.serial != 0 && x.slot < vertices_.size() && vertices_[x.slot].serial == x.serial;
}

std::uint32_t PopulationTree::slot_of(NodeId x) const {
  if (!contains(x)) throw UnknownNode("individual is not stored");
  return x.slot;
}

std::uint32_t PopulationTree::alive_slot(NodeId x) const {
  const std::uint32_t v = slot_of(x);
  if (!vertices_[v].alive) throw std::invalid_argument("individual has been discarded");
  return v;
}

const PopulationTree::Vertex& PopulationTree::vertex(NodeId x) const { return vertices_[slot_of(x)]; }

std::uint32_t PopulationTree::new_vertex(FitnessValue fitness) {
  std::uint32_t v;
  if (!free_vertices_.empty()) {
    v = free_vertices_.back();
    free_vertices_.pop_back();
  } else {
    v = static_cast<std::uint32_t>(vertices_.size());
    vertices_.emplace_back();
  }
  Vertex& vx = vertices_[v];
  vx.fitness = fitness;
  vx.serial = next_serial_++;
  vx.alive = true;
  vx.edges.clear();
  ++vertex_count_;
  return v;
}

void PopulationTree::free_vertex(std::uint32_t v) {
  Vertex& vx = vertices_[v];
  assert(vx.edges.empty());
  vx.serial = 0;
  vx.alive = false;
  free_vertices_.push_back(v);
  --vertex_count_;
}

std::uint32_t PopulationTree::new_edge(std::uint32_t a, std::uint32_t b, Patch patch) {
  std::uint32_t e;
  if (!free_edges_.empty()) {
    e = free_edges_.back();
    free_edges_.pop_back();
  } else {
    e = static_cast<std::uint32_t>(edges_.size());
    edges_.emplace_back();
  }
  total_patch_size_ += patch.size();
  edges_[e] = Edge{a, b, std::move(patch)};
  vertices_[a].edges.push_back(e);
  vertices_[b].edges.push_back(e);
  ++edge_count_;
  return e;
}

void PopulationTree::remove_edge(std::uint32_t e) {
  Edge& edge = edges_[e];
  for (std::uint32_t v : {edge.a, edge.b}) {
    auto& adj = vertices_[v].edges;
    auto it = std::find(adj.begin(), adj.end(), e);
    assert(it != adj.end());
    *it = adj.back();
    adj.pop_back();
  }
  total_patch_size_ -= edge.patch.size();
  edge = Edge{};
  free_edges_.push_back(e);
  --edge_count_;
}

void PopulationTree::ensure_work_arrays() {
  const std::size_t slots = vertices_.size();
  if (parent_edge_.size() >= slots) return;
  parent_edge_.resize(slots);
  distance_.resize(slots);
  preorder_.resize(slots);
  path_max_.resize(slots);
  keep_new_edge_.resize(slots);
}

void PopulationTree::find_path(std::uint32_t root, std::uint32_t target) {
  ensure_work_arrays();
  stack_.clear();
  parent_edge_[root] = kNone;
  if (root == target) return;
  stack_.push_back({root, kNone, 0});
  while (!stack_.empty()) {
    Frame& f = stack_.back();
    const auto& adj = vertices_[f.v].edges;
    if (f.next == adj.size()) {
      stack_.pop_back();
      continue;
    }
    const std::uint32_t e = adj[f.next++];
    if (e == f.via) continue;
    const std::uint32_t w = edges_[e].other(f.v);
    parent_edge_[w] = e;
    if (w == target) return;
    stack_.push_back({w, e, 0});
  }
  if (target != kNone) throw std::logic_error("population tree is disconnected");
}

void PopulationTree::promote_slot(std::uint32_t x) {
  if (x == anchor_) return;
  find_path(x, anchor_);
  for (std::uint32_t u = anchor_; u != x;) {
    const Edge& edge = edges_[parent_edge_[u]];
    apply(complete_, edge.patch);
    u = edge.other(u);
  }
  anchor_ = x;
}

void PopulationTree::promote(NodeId x) { promote_slot(slot_of(x)); }

void PopulationTree::load_difference(std::uint32_t x, std::uint32_t y) {
  scratch_.clear();
  if (x == y) return;
  find_path(x, y);
  for (std::uint32_t u = y; u != x;) {
    const Edge& edge = edges_[parent_edge_[u]];
    scratch_.merge(edge.patch);
    u = edge.other(u);
  }
}

Patch PopulationTree::difference(NodeId a, NodeId b) {
  load_difference(slot_of(a), slot_of(b));
  return scratch_.snapshot();
}

NodeId PopulationTree::add_random() {
  return mutate_slot(anchor_, sample_binomial(problem_size(), 0.5, rng_));
}

NodeId PopulationTree::mutate(NodeId parent, std::size_t count) {
  return mutate_slot(alive_slot(parent), count);
}

NodeId PopulationTree::mutate_slot(std::uint32_t parent, std::size_t count) {
  if (count > problem_size()) throw std::invalid_argument("cannot flip more bits than the problem size");
  promote_slot(parent);
  scratch_.clear();
  for (std::size_t i = 0; i < count; ++i) scratch_.add_random_absent(rng_);
  return finish_offspring();
}

NodeId PopulationTree::mutate_explicit(NodeId parent, const Patch& flips) {
  const std::uint32_t p = alive_slot(parent);
  if (!flips.fits(problem_size())) throw std::out_of_range("flip position beyond the problem size");
  promote_slot(p);
  scratch_.clear();
  scratch_.merge(flips);
  return finish_offspring();
}

NodeId PopulationTree::crossover(NodeId first, NodeId second, const CrossoverFn& counts) {
  const std::uint32_t a = alive_slot(first);
  const std::uint32_t b = alive_slot(second);
  promote_slot(a);
  load_difference(a, b);
  const std::size_t d = scratch_.size();
  const CrossoverCounts c = counts(d);
  if (c.differing > d || c.same > problem_size() - d)
    throw std::out_of_range("crossover counts outside the admissible range");
  scratch_.flip_random(c.same, d - c.differing, rng_);
  return finish_offspring();
}

NodeId PopulationTree::finish_offspring() {
  Patch flips = scratch_.snapshot();
  apply(complete_, flips);
  const FitnessValue f = evaluator_.delta(vertices_[anchor_].fitness, flips, complete_);
  const std::uint32_t z = new_vertex(f);
  insert_vertex(z);
  return id_of(z);
}

// Inserts vertex z, whose bit string differs from the anchor's by the
// contents of scratch_, keeping the tree a minimum spanning tree.
//
// One DFS from the anchor merges edge patches into scratch_, so on entering
// a vertex v the scratch size is the distance from z to v. In post-order
// each vertex keeps the heaviest edge on its path to z within the minimum
// spanning tree of its subtree plus z; joining a child closes a cycle
// through the child's tree edge, and its heaviest edge is dropped. Exactly
// one candidate is dropped per tree edge, so the survivors form a tree.
void PopulationTree::insert_vertex(std::uint32_t z) {
  ensure_work_arrays();
  visited_.clear();
  removed_edges_.clear();
  stack_.clear();

  std::uint32_t counter = 0;
  auto enter = [&](std::uint32_t v, std::uint32_t via) {
    distance_[v] = scratch_.size();
    preorder_[v] = counter++;
    parent_edge_[v] = via;
    keep_new_edge_[v] = 1;
    path_max_[v] = Candidate{distance_[v], true, preorder_[v], v};
    visited_.push_back(v);
    stack_.push_back({v, via, 0});
  };
  auto drop = [&](const Candidate& c) {
    if (c.to_new)
      keep_new_edge_[c.id] = 0;
    else
      removed_edges_.push_back(c.id);
  };

  enter(anchor_, kNone);
  while (!stack_.empty()) {
    Frame& f = stack_.back();
    const auto& adj = vertices_[f.v].edges;
    if (f.next < adj.size()) {
      const std::uint32_t e = adj[f.next++];
      if (e == f.via) continue;
      scratch_.merge(edges_[e].patch);
      enter(edges_[e].other(f.v), e);
      continue;
    }
    const Frame done = f;
    stack_.pop_back();
    if (done.via == kNone) break;

    const Edge& edge = edges_[done.via];
    scratch_.merge(edge.patch);
    const std::uint32_t parent = edge.other(done.v);
    Candidate k{edge.patch.size(), false, preorder_[done.v], done.via};
    if (path_max_[done.v].heavier_than(k)) k = path_max_[done.v];
    if (path_max_[parent].heavier_than(k)) {
      drop(path_max_[parent]);
      path_max_[parent] = k;
    } else {
      drop(k);
    }
  }

  // Patches for the surviving edges to z: scratch_ xor the path to the anchor.
  std::vector<std::pair<std::uint32_t, Patch>> attach;
  for (std::uint32_t v : visited_) {
    if (!keep_new_edge_[v]) continue;
    auto walk = [&] {
      for (std::uint32_t u = v; parent_edge_[u] != kNone;) {
        const Edge& edge = edges_[parent_edge_[u]];
        scratch_.merge(edge.patch);
        u = edge.other(u);
      }
    };
    walk();
    attach.emplace_back(v, scratch_.snapshot());
    walk();
    assert(attach.back().second.size() == distance_[v]);
  }

  std::vector<std::uint32_t> touched;
  touched.reserve(2 * removed_edges_.size() + attach.size());
  for (std::uint32_t e : removed_edges_) {
    touched.push_back(edges_[e].a);
    touched.push_back(edges_[e].b);
    remove_edge(e);
  }
  for (auto& [v, patch] : attach) {
    new_edge(z, v, std::move(patch));
    touched.push_back(v);
  }
  anchor_ = z;
  for (std::uint32_t v : touched)
    if (vertices_[v].serial != 0) prune_from(v);
}

void PopulationTree::prune_from(std::uint32_t v) {
  while (!vertices_[v].alive && vertices_[v].edges.size() == 1 && vertex_count_ > 1) {
    const std::uint32_t e = vertices_[v].edges.front();
    const std::uint32_t u = edges_[e].other(v);
    if (anchor_ == v) {
      apply(complete_, edges_[e].patch);
      anchor_ = u;
    }
    remove_edge(e);
    free_vertex(v);
    v = u;
  }
}

void PopulationTree::discard(NodeId x) {
  const std::uint32_t v = alive_slot(x);
  vertices_[v].alive = false;
  prune_from(v);
}

BitString PopulationTree::reconstruct(NodeId x) const {
  const std::uint32_t target = slot_of(x);
  BitString bits = complete_;
  // Local DFS so the shared traversal buffers stay untouched.
  std::vector<std::tuple<std::uint32_t, std::uint32_t, std::size_t>> stack{{anchor_, kNone, 0}};
  std::vector<std::uint32_t> path;  // edges from the anchor to the current vertex
  while (!stack.empty()) {
    auto& [v, via, next] = stack.back();
    if (v == target) break;
    const auto& adj = vertices_[v].edges;
    if (next == adj.size()) {
      stack.pop_back();
      if (!path.empty()) path.pop_back();
      continue;
    }
    const std::uint32_t e = adj[next++];
    if (e == via) continue;
    const std::uint32_t w = edges_[e].other(v);
    path.push_back(e);
    stack.emplace_back(w, e, 0);
  }
  for (std::uint32_t e : path) apply(bits, edges_[e].patch);
  return bits;
}

std::vector<NodeId> PopulationTree::stored() const {
  std::vector<NodeId> out;
  out.reserve(vertex_count_);
  for (std::uint32_t v = 0; v < vertices_.size(); ++v)
    if (vertices_[v].serial != 0) out.push_back(id_of(v));
  std::sort(out.begin(), out.end(), [](NodeId a, NodeId b) { return a.serial < b.serial; });
  return out;
}

void PopulationTree::dump(std::ostream& out) const {
  for (NodeId id : stored()) {
    const Vertex& vx = vertices_[id.slot];
    out << "vertex " << id.serial << " fitness=" << to_string(vx.fitness) << " alive=" << (vx.alive ? 1 : 0)
        << '\n';
  }
  std::vector<std::tuple<std::uint64_t, std::uint64_t, const Patch*>> lines;
  for (const Edge& edge : edges_) {
    if (edge.a == kNone) continue;
    auto sa = vertices_[edge.a].serial;
    auto sb = vertices_[edge.b].serial;
    lines.emplace_back(std::min(sa, sb), std::max(sa, sb), &edge.patch);
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& [a, b, patch] : lines) {
    out << "edge " << a << ' ' << b << ' ' << patch->size();
    for (Index i : *patch) out << ' ' << i;
    out << '\n';
  }
}

}  // namespace patchpop

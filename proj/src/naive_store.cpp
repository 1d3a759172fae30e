#include "patchpop/naive_store.hpp"

#include <limits>
#include <stdexcept>

#include "patchpop/sampling.hpp"

namespace patchpop {

NaiveStore::NaiveStore(Evaluator evaluator, std::uint64_t seed)
    : evaluator_(std::move(evaluator)), rng_(seed), scratch_(evaluator_.size()) {
  BitString first = BitString::random(evaluator_.size(), rng_);
  FitnessValue f = evaluator_.full(first);
  anchor_ = store(std::move(first), f);
}

NaiveStore::NaiveStore(Evaluator evaluator, BitString initial, std::uint64_t seed)
    : evaluator_(std::move(evaluator)), rng_(seed), scratch_(evaluator_.size()) {
  FitnessValue f = evaluator_.full(initial);
  anchor_ = store(std::move(initial), f);
}

bool NaiveStore::contains(NodeId x) const {
  return x.serial != 0 && x.slot < slots_.size() && slots_[x.slot].serial == x.serial;
}

const NaiveStore::Individual& NaiveStore::slot(NodeId x) const {
  if (!contains(x)) throw UnknownNode("individual is not stored");
  return slots_[x.slot];
}

const NaiveStore::Individual& NaiveStore::alive_slot(NodeId x) const {
  const Individual& ind = slot(x);
  if (!ind.alive) throw std::invalid_argument("individual has been discarded");
  return ind;
}

NodeId NaiveStore::store(BitString bits, FitnessValue fitness) {
  std::uint32_t s;
  if (!free_.empty()) {
    s = free_.back();
    free_.pop_back();
  } else {
    s = static_cast<std::uint32_t>(slots_.size());
    slots_.emplace_back();
  }
  slots_[s] = Individual{std::move(bits), fitness, next_serial_++, true};
  ++count_;
  anchor_ = NodeId{slots_[s].serial, s};
  return anchor_;
}

// Flips the positions held in scratch_ in a copy of the parent.
NodeId NaiveStore::offspring_from_scratch(const BitString& parent) {
  BitString child = parent;
  for (Index i : scratch_.members()) child.flip(i);
  FitnessValue f = evaluator_.full(child);
  return store(std::move(child), f);
}

NodeId NaiveStore::add_random() {
  const std::size_t count = sample_binomial(problem_size(), 0.5, rng_);
  scratch_.clear();
  for (std::size_t i = 0; i < count; ++i) scratch_.add_random_absent(rng_);
  return offspring_from_scratch(contains(anchor_) ? slot(anchor_).bits : discarded_anchor_);
}

NodeId NaiveStore::mutate(NodeId parent, std::size_t count) {
  const Individual& p = alive_slot(parent);
  if (count > problem_size()) throw std::invalid_argument("cannot flip more bits than the problem size");
  scratch_.clear();
  for (std::size_t i = 0; i < count; ++i) scratch_.add_random_absent(rng_);
  return offspring_from_scratch(p.bits);
}

NodeId NaiveStore::mutate_explicit(NodeId parent, const Patch& flips) {
  const Individual& p = alive_slot(parent);
  if (!flips.fits(problem_size())) throw std::out_of_range("flip position beyond the problem size");
  scratch_.clear();
  scratch_.merge(flips);
  return offspring_from_scratch(p.bits);
}

NodeId NaiveStore::crossover(NodeId first, NodeId second, const CrossoverFn& counts) {
  const Individual& a = alive_slot(first);
  const Individual& b = alive_slot(second);
  scratch_.clear();
  for (std::size_t i = 0; i < problem_size(); ++i)
    if (a.bits[i] != b.bits[i]) scratch_.toggle(static_cast<Index>(i));
  const std::size_t d = scratch_.size();
  const CrossoverCounts c = counts(d);
  if (c.differing > d || c.same > problem_size() - d)
    throw std::out_of_range("crossover counts outside the admissible range");
  scratch_.flip_random(c.same, d - c.differing, rng_);
  return offspring_from_scratch(a.bits);
}

Patch NaiveStore::difference(NodeId a, NodeId b) {
  return patchpop::difference(slot(a).bits, slot(b).bits);
}

void NaiveStore::discard(NodeId x) {
  alive_slot(x);
  if (x == anchor_) discarded_anchor_ = std::move(slots_[x.slot].bits);
  slots_[x.slot] = Individual{};
  free_.push_back(x.slot);
  --count_;
}

std::uint64_t NaiveStore::total_patch_size() {
  std::vector<const BitString*> members;
  for (const Individual& ind : slots_)
    if (ind.serial != 0) members.push_back(&ind.bits);
  if (members.size() < 2) return 0;

  auto hamming = [](const BitString& a, const BitString& b) {
    std::uint64_t d = 0;
    for (std::size_t i = 0; i < a.size(); ++i) d += a[i] != b[i];
    return d;
  };
  // Dense Prim.
  const std::size_t m = members.size();
  constexpr auto kInf = std::numeric_limits<std::uint64_t>::max();
  std::vector<std::uint64_t> best(m, kInf);
  std::vector<bool> in_tree(m, false);
  best[0] = 0;
  std::uint64_t total = 0;
  for (std::size_t step = 0; step < m; ++step) {
    std::size_t u = m;
    for (std::size_t v = 0; v < m; ++v)
      if (!in_tree[v] && (u == m || best[v] < best[u])) u = v;
    in_tree[u] = true;
    total += best[u];
    for (std::size_t v = 0; v < m; ++v)
      if (!in_tree[v]) best[v] = std::min(best[v], hamming(*members[u], *members[v]));
  }
  return total;
}

}  // namespace patchpop

#include "patchpop/fitness.hpp"

#include <istream>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace patchpop {

std::string to_string(const FitnessValue& f) {
  if (const auto* om = std::get_if<OneMaxFitness>(&f)) return std::to_string(om->ones);
  const auto& k = std::get<KnapsackFitness>(f);
  return std::to_string(k.weight) + "," + std::to_string(k.value);
}

KnapsackInstance generate_instance(std::size_t n, Rng& rng) {
  if (n == 0) throw std::invalid_argument("instance size must be positive");
  constexpr auto span = static_cast<std::uint64_t>(kMaxItemScore - kMinItemScore + 1);
  KnapsackInstance inst;
  inst.weights.resize(n);
  inst.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    inst.weights[i] = kMinItemScore + static_cast<std::int64_t>(rng.below(span));
    inst.values[i] = kMinItemScore + static_cast<std::int64_t>(rng.below(span));
  }
  inst.capacity = std::accumulate(inst.weights.begin(), inst.weights.end(), std::int64_t{0}) / 2;
  return inst;
}

KnapsackInstance read_instance(std::istream& in) {
  std::size_t n = 0;
  KnapsackInstance inst;
  if (!(in >> n >> inst.capacity) || n == 0) throw std::runtime_error("malformed instance header");
  if (inst.capacity < 0) throw std::runtime_error("negative knapsack capacity");
  inst.weights.resize(n);
  inst.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(in >> inst.weights[i] >> inst.values[i]))
      throw std::runtime_error("instance truncated at item " + std::to_string(i));
    if (inst.weights[i] <= 0 || inst.values[i] <= 0)
      throw std::runtime_error("item weights and values must be positive");
  }
  return inst;
}

void write_instance(std::ostream& out, const KnapsackInstance& inst) {
  out << inst.size() << ' ' << inst.capacity << '\n';
  for (std::size_t i = 0; i < inst.size(); ++i) out << inst.weights[i] << ' ' << inst.values[i] << '\n';
}

OneMaxFitness onemax_full(const BitString& bits) {
  std::int64_t ones = 0;
  for (std::uint8_t b : bits.data()) ones += b;
  return {ones};
}

OneMaxFitness onemax_delta(OneMaxFitness old, const Patch& flipped, const BitString& new_bits) {
  for (Index i : flipped) old.ones += new_bits[i] ? 1 : -1;
  return old;
}

KnapsackFitness knapsack_full(const BitString& bits, const KnapsackInstance& inst) {
  if (bits.size() != inst.size()) throw std::invalid_argument("bit string length differs from instance size");
  KnapsackFitness f;
  const auto data = bits.data();
  for (std::size_t i = 0; i < data.size(); ++i) {
    if (data[i]) {
      f.weight += inst.weights[i];
      f.value += inst.values[i];
    }
  }
  return f;
}

KnapsackFitness knapsack_delta(KnapsackFitness old, const Patch& flipped, const BitString& new_bits,
                               const KnapsackInstance& inst) {
  for (Index i : flipped) {
    const std::int64_t sign = new_bits[i] ? 1 : -1;
    old.weight += sign * inst.weights[i];
    old.value += sign * inst.values[i];
  }
  return old;
}

std::strong_ordering knapsack_compare(const KnapsackFitness& a, const KnapsackFitness& b,
                                      std::int64_t capacity) {
  return knapsack_key(a, capacity) <=> knapsack_key(b, capacity);
}

Evaluator Evaluator::onemax(std::size_t n) {
  if (n == 0) throw std::invalid_argument("problem size must be positive");
  return Evaluator(n, nullptr);
}

Evaluator Evaluator::knapsack(KnapsackInstance inst) {
  if (inst.size() == 0 || inst.values.size() != inst.size())
    throw std::invalid_argument("knapsack instance needs equally many weights and values");
  const std::size_t n = inst.size();
  return Evaluator(n, std::make_shared<const KnapsackInstance>(std::move(inst)));
}

const KnapsackInstance& Evaluator::instance() const {
  if (!knapsack_) throw std::logic_error("evaluator has no knapsack instance");
  return *knapsack_;
}

FitnessValue Evaluator::full(const BitString& bits) const {
  if (bits.size() != n_) throw std::invalid_argument("bit string length differs from problem size");
  if (knapsack_) return knapsack_full(bits, *knapsack_);
  return onemax_full(bits);
}

FitnessValue Evaluator::delta(const FitnessValue& old, const Patch& flipped, const BitString& new_bits) const {
  if (knapsack_) return knapsack_delta(std::get<KnapsackFitness>(old), flipped, new_bits, *knapsack_);
  return onemax_delta(std::get<OneMaxFitness>(old), flipped, new_bits);
}

std::int64_t Evaluator::key(const FitnessValue& f) const {
  if (knapsack_) {
    const auto* k = std::get_if<KnapsackFitness>(&f);
    if (!k) throw std::invalid_argument("expected a knapsack fitness value");
    return knapsack_key(*k, knapsack_->capacity);
  }
  const auto* om = std::get_if<OneMaxFitness>(&f);
  if (!om) throw std::invalid_argument("expected a OneMax fitness value");
  return om->ones;
}

std::strong_ordering Evaluator::compare(const FitnessValue& a, const FitnessValue& b) const {
  if (a.index() != b.index()) throw std::invalid_argument("cannot compare fitness values of different problems");
  return key(a) <=> key(b);
}

}  // namespace patchpop

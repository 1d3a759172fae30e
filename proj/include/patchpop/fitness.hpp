#pragma once

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>
#include <variant>
#include <vector>

#include "patchpop/index_set.hpp"
#include "patchpop/rng.hpp"

namespace patchpop {

struct OneMaxFitness {
  std::int64_t ones = 0;
  friend bool operator==(const OneMaxFitness&, const OneMaxFitness&) = default;
};

/// Phenotype pair of a knapsack selection: total weight and total value.
struct KnapsackFitness {
  std::int64_t weight = 0;
  std::int64_t value = 0;
  friend bool operator==(const KnapsackFitness&, const KnapsackFitness&) = default;
};

using FitnessValue = std::variant<OneMaxFitness, KnapsackFitness>;

std::string to_string(const FitnessValue& f);

struct KnapsackInstance {
  std::vector<std::int64_t> weights;
  std::vector<std::int64_t> values;
  std::int64_t capacity = 0;

  std::size_t size() const { return weights.size(); }
};

inline constexpr std::int64_t kMinItemScore = 10000;
inline constexpr std::int64_t kMaxItemScore = 20000;

/// Uncorrelated instance: weights and values uniform in
/// [kMinItemScore, kMaxItemScore], capacity half the total weight (rounded down).
KnapsackInstance generate_instance(std::size_t n, Rng& rng);

/// Text format: "n capacity" on the first line, then n lines "weight value".
KnapsackInstance read_instance(std::istream& in);
void write_instance(std::ostream& out, const KnapsackInstance& inst);

OneMaxFitness onemax_full(const BitString& bits);
/// new_bits is the state after the patch was applied.
OneMaxFitness onemax_delta(OneMaxFitness old, const Patch& flipped, const BitString& new_bits);

KnapsackFitness knapsack_full(const BitString& bits, const KnapsackInstance& inst);
KnapsackFitness knapsack_delta(KnapsackFitness old, const Patch& flipped, const BitString& new_bits,
                               const KnapsackInstance& inst);

/// Value when the selection fits, negated weight otherwise.
constexpr std::int64_t knapsack_key(const KnapsackFitness& f, std::int64_t capacity) {
  return f.weight <= capacity ? f.value : -f.weight;
}

std::strong_ordering knapsack_compare(const KnapsackFitness& a, const KnapsackFitness& b,
                                      std::int64_t capacity);

/// Problem-bound fitness evaluation. Immutable once built; copies share the
/// instance data.
class Evaluator {
 public:
  static Evaluator onemax(std::size_t n);
  static Evaluator knapsack(KnapsackInstance inst);

  std::size_t size() const { return n_; }
  bool is_knapsack() const { return knapsack_ != nullptr; }
  const KnapsackInstance& instance() const;

  FitnessValue full(const BitString& bits) const;
  FitnessValue delta(const FitnessValue& old, const Patch& flipped, const BitString& new_bits) const;

  /// Scalar key inducing the fitness order (larger is better).
  std::int64_t key(const FitnessValue& f) const;
  /// Throws std::invalid_argument when the variants do not match the problem.
  std::strong_ordering compare(const FitnessValue& a, const FitnessValue& b) const;

  /// Best attainable key where it is known in closed form (OneMax only).
  std::int64_t onemax_optimum() const { return static_cast<std::int64_t>(n_); }

 private:
  Evaluator(std::size_t n, std::shared_ptr<const KnapsackInstance> inst)
      : n_(n), knapsack_(std::move(inst)) {}

  std::size_t n_;
  std::shared_ptr<const KnapsackInstance> knapsack_;
};

}  // namespace patchpop

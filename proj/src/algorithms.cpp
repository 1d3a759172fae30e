#include "patchpop/algorithms.hpp"

namespace patchpop {

MutationSpec MutationSpec::standard(double rate) {
  if (!(rate >= 0.0 && rate <= 1.0)) throw std::invalid_argument("mutation rate outside [0, 1]");
  return MutationSpec(0, rate);
}

std::size_t MutationSpec::sample(std::size_t n, Rng& rng) const {
  if (rate_ < 0.0) {
    if (count_ > n) throw std::invalid_argument("fixed flip count exceeds the problem size");
    return count_;
  }
  return sample_binomial(n, rate_, rng);
}

CrossoverFn uniform_crossover_spec(std::size_t n, double mutation_rate, Rng& rng) {
  if (!(mutation_rate >= 0.0 && mutation_rate <= 1.0)) throw std::invalid_argument("mutation rate outside [0, 1]");
  return [n, mutation_rate, &rng](std::size_t d) {
    CrossoverCounts c;
    c.differing = sample_binomial(d, 0.5, rng);
    c.same = sample_binomial(n - d, mutation_rate, rng);
    return c;
  };
}

}  // namespace patchpop

#include "patchpop/sampling.hpp"

#include <cmath>
#include <stdexcept>

namespace patchpop {

namespace {

std::uint64_t count_successes(std::uint64_t n, double p, Rng& rng) {
  if (p <= 0.0 || n == 0) return 0;
  const double log_q = std::log1p(-p);
  std::uint64_t successes = 0;
  std::uint64_t next = 0;  // index of the next trial to consider
  while (true) {
    const double u = 1.0 - rng.unit();  // (0, 1]
    const double gap = std::floor(std::log(u) / log_q);
    if (gap >= static_cast<double>(n - next)) break;
    next += static_cast<std::uint64_t>(gap);
    ++successes;
    if (++next >= n) break;
  }
  return successes;
}

}  // namespace

std::uint64_t sample_binomial(std::uint64_t n, double p, Rng& rng) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binomial probability outside [0, 1]");
  if (p == 1.0) return n;
  if (p > 0.5) return n - count_successes(n, 1.0 - p, rng);
  return count_successes(n, p, rng);
}

}  // namespace patchpop

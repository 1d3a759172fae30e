#pragma once

#include <cstdint>

#include "patchpop/rng.hpp"

namespace patchpop {

/// Exact Bin(n, p) sample in expected O(min(p, 1-p) * n + 1) time.
///
/// Walks the trials by geometrically distributed gaps between successes;
/// for p > 1/2 the complement n - Bin(n, 1 - p) is sampled instead.
/// Throws std::invalid_argument when p is outside [0, 1].
std::uint64_t sample_binomial(std::uint64_t n, double p, Rng& rng);

}  // namespace patchpop

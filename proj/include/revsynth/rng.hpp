#pragma once

#include <cstdint>
#include <random>

#include "revsynth/f2linalg.hpp"
#include "revsynth/permutation.hpp"

namespace revsynth {

// std::mt19937_64 has a fully specified output sequence, and the helpers
// below avoid std::uniform_int_distribution on purpose: its mapping is
// implementation-defined, which would break cross-platform reproducibility.
using Rng = std::mt19937_64;

/// Uniform draw from [0, bound) by rejection sampling; bound >= 1.
std::uint64_t uniform_below(Rng& rng, std::uint64_t bound);

/// Fisher-Yates shuffle of the full image table.
Permutation random_permutation(Rng& rng, int n);

/// Uniform permutation moving exactly k points: a random k-subset carries a
/// random derangement, everything else is fixed. Requires k == 0 or k >= 2.
Permutation random_support_k_permutation(Rng& rng, int n, int k);

BitMatrix random_invertible_matrix(Rng& rng, int n);

}  // namespace revsynth

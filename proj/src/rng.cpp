#include "revsynth/rng.hpp"

#include <cassert>
#include <numeric>
#include <vector>

namespace revsynth {

std::uint64_t uniform_below(Rng& rng, std::uint64_t bound) {
  assert(bound >= 1);
  const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
  for (;;) {
    const std::uint64_t x = rng();
    if (x >= threshold) return x % bound;
  }
}

Permutation random_permutation(Rng& rng, int n) {
  const std::uint64_t size = std::uint64_t{1} << n;
  std::vector<std::uint64_t> images(size);
  std::iota(images.begin(), images.end(), 0);
  for (std::uint64_t i = size - 1; i >= 1; --i) {
    const std::uint64_t j = uniform_below(rng, i + 1);
    std::swap(images[i], images[j]);
  }
  return Permutation::from_images(n, std::move(images));
}

Permutation random_support_k_permutation(Rng& rng, int n, int k) {
  assert(k == 0 || k >= 2);
  const std::uint64_t size = std::uint64_t{1} << n;
  assert(static_cast<std::uint64_t>(k) <= size);
  std::vector<std::uint64_t> points(size);
  std::iota(points.begin(), points.end(), 0);
  for (int i = 0; i < k; ++i) {
    const std::uint64_t j = i + uniform_below(rng, size - i);
    std::swap(points[i], points[j]);
  }
  std::vector<int> sigma(k);
  for (;;) {
    std::iota(sigma.begin(), sigma.end(), 0);
    for (int i = k - 1; i >= 1; --i) {
      const int j = static_cast<int>(uniform_below(rng, i + 1));
      std::swap(sigma[i], sigma[j]);
    }
    bool deranged = true;
    for (int i = 0; i < k; ++i) {
      if (sigma[i] == i) {
        deranged = false;
        break;
      }
    }
    if (deranged || k == 0) break;
  }
  std::vector<std::uint64_t> images(size);
  std::iota(images.begin(), images.end(), 0);
  for (int i = 0; i < k; ++i) images[points[i]] = points[sigma[i]];
  return Permutation::from_images(n, std::move(images));
}

BitMatrix random_invertible_matrix(Rng& rng, int n) {
  for (;;) {
    std::vector<BitVec> rows;
    rows.reserve(n);
    for (int i = 0; i < n; ++i) {
      const std::uint64_t word =
          n == 64 ? rng() : rng() & ((std::uint64_t{1} << n) - 1);
      rows.push_back(BitVec::from_uint(n, word));
    }
    BitMatrix m = BitMatrix::from_rows(rows);
    if (rank(m) == n) return m;
  }
}

}  // namespace revsynth

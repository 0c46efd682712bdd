#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "revsynth/errors.hpp"

namespace revsynth {

/// Widest permutation we store densely (2^28 images of 8 bytes each).
inline constexpr int kMaxPermutationWidth = 28;

/// A reversible n-bit function, stored as the image table of the
/// corresponding permutation of [0, 2^n).
class Permutation {
 public:
  Permutation() = default;

  /// Validates that `images` is a bijection on [0, 2^n).
  /// Throws LengthMismatchError, NotABijectionError or TooWideError.
  static Permutation from_images(int n, std::vector<std::uint64_t> images);

  static Permutation identity(int n);

  /// The permutation exchanging a and b and fixing everything else.
  static Permutation transposition(int n, std::uint64_t a, std::uint64_t b);

  int width() const { return n_; }
  std::uint64_t size() const { return std::uint64_t{1} << n_; }

  std::uint64_t operator()(std::uint64_t i) const { return images_[i]; }
  const std::vector<std::uint64_t>& images() const { return images_; }

  bool is_identity() const;

  friend bool operator==(const Permutation&, const Permutation&) = default;

 private:
  int n_ = 0;
  std::vector<std::uint64_t> images_;
};

/// The set of points moved by a permutation, sorted ascending.
/// Closed under the permutation: i moved implies f(i) moved.
struct Support {
  std::vector<std::uint64_t> moved;

  std::size_t size() const { return moved.size(); }
  bool empty() const { return moved.empty(); }
};

Support support(const Permutation& p);

/// Matrix-order composition: compose(a, b)(i) = a(b(i)), so that
/// compose(q, p) is "q applied after p". Throws WidthMismatchError.
Permutation compose(const Permutation& a, const Permutation& b);

Permutation inverse(const Permutation& p);

/// Truth-table text format. Canonical form:
///   n <width>
///   <image of 0>
///   ...
/// '#' starts a comment. A single "perm: i0 i1 ..." line is also accepted,
/// with the width inferred from the image count.
Permutation parse_truth_table(std::istream& in);
void emit_truth_table(const Permutation& p, std::ostream& out);

}  // namespace revsynth

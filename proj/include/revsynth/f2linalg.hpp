#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "revsynth/circuit.hpp"
#include "revsynth/errors.hpp"

namespace revsynth {

/// Vector over GF(2). Index 1 is the most significant position, so the
/// length-n vector of the integer i has bit j equal to bit n-j of i.
class BitVec {
 public:
  BitVec() = default;
  explicit BitVec(int n);
  /// The column vector of an integer in [0, 2^n); n <= 64.
  static BitVec from_uint(int n, std::uint64_t value);

  int size() const { return n_; }
  bool get(int index) const;
  void set(int index, bool bit);
  void flip(int index);

  BitVec& operator^=(const BitVec& other);
  friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }

  bool is_zero() const;
  /// Smallest index holding a 1 (the pivot), or 0 for the zero vector.
  int leading_index() const;
  int popcount() const;
  std::uint64_t to_uint() const;  // n <= 64
  std::string to_string() const;  // '0'/'1' characters, index 1 first

  friend bool operator==(const BitVec&, const BitVec&) = default;

 private:
  // Bit j lives at position n-j of the word array, so to_uint is direct.
  int n_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Column-major matrix over GF(2).
class BitMatrix {
 public:
  BitMatrix() = default;
  BitMatrix(int rows, int cols);
  static BitMatrix identity(int n);
  static BitMatrix from_columns(int rows, std::vector<BitVec> columns);
  static BitMatrix from_rows(const std::vector<BitVec>& rows);

  int rows() const { return rows_; }
  int cols() const { return static_cast<int>(columns_.size()); }

  bool get(int row, int col) const { return columns_[col - 1].get(row); }
  void set(int row, int col, bool bit) { columns_[col - 1].set(row, bit); }
  void flip(int row, int col) { columns_[col - 1].flip(row); }

  const BitVec& column(int col) const { return columns_[col - 1]; }
  void append_column(const BitVec& column);
  BitVec row(int row) const;
  std::vector<BitVec> to_rows() const;

  BitVec apply(const BitVec& x) const;  // M x
  BitMatrix multiply(const BitMatrix& other) const;
  BitMatrix transposed() const;

  std::string to_string() const;  // rows of '0'/'1', row 1 first

  friend bool operator==(const BitMatrix&, const BitMatrix&) = default;

 private:
  int rows_ = 0;
  std::vector<BitVec> columns_;
};

int rank(const BitMatrix& m);

/// GF(2) inverse of a square matrix. Throws SingularMatrixError.
BitMatrix invert(const BitMatrix& m);

/// Incrementally row-reduced basis answering span-membership queries.
class SpanTracker {
 public:
  explicit SpanTracker(int n) : n_(n) {}

  int dimension() const { return n_; }
  int size() const { return static_cast<int>(basis_.size()); }

  /// True iff v is a GF(2) linear combination of the inserted vectors.
  /// The zero vector is always contained.
  bool contains(const BitVec& v) const;

  /// Inserts v; returns false (and leaves the basis unchanged) if v was
  /// already in the span.
  bool insert(const BitVec& v);

 private:
  int n_;
  std::vector<BitVec> basis_;  // distinct leading indices, kept sorted
};

bool span_contains(const SpanTracker& tracker, const BitVec& v);

/// Default elimination partition width for pmh_synthesize.
int default_section_size(int n);

/// Synthesizes the linear map x -> Mx as a CNOT-only circuit using
/// partitioned row elimination: within each column section, sub-rows with
/// equal patterns are collapsed before the diagonal sweep, which brings the
/// count to about n^2/log2(n) for large random matrices.
/// Throws SingularMatrixError.
Circuit pmh_synthesize(const BitMatrix& m, int section_size);
Circuit pmh_synthesize(const BitMatrix& m);

/// Plain Gaussian elimination baseline: below-diagonal sweep first, then
/// back substitution. O(n^2) CNOTs.
Circuit gaussian_synthesize(const BitMatrix& m);

}  // namespace revsynth

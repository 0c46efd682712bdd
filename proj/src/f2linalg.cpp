#include "revsynth/f2linalg.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cmath>
#include <utility>

namespace revsynth {

namespace {

std::size_t word_count(int n) { return static_cast<std::size_t>((n + 63) / 64); }

}  // namespace

BitVec::BitVec(int n) : n_(n), words_(word_count(n), 0) { assert(n >= 0); }

BitVec BitVec::from_uint(int n, std::uint64_t value) {
  assert(n >= 1 && n <= 64);
  assert(n == 64 || value < (std::uint64_t{1} << n));
  BitVec v(n);
  v.words_[0] = value;
  return v;
}

bool BitVec::get(int index) const {
  assert(index >= 1 && index <= n_);
  const int p = n_ - index;
  return (words_[p >> 6] >> (p & 63)) & 1;
}

void BitVec::set(int index, bool bit) {
  assert(index >= 1 && index <= n_);
  const int p = n_ - index;
  const std::uint64_t mask = std::uint64_t{1} << (p & 63);
  if (bit)
    words_[p >> 6] |= mask;
  else
    words_[p >> 6] &= ~mask;
}

void BitVec::flip(int index) {
  assert(index >= 1 && index <= n_);
  const int p = n_ - index;
  words_[p >> 6] ^= std::uint64_t{1} << (p & 63);
}

BitVec& BitVec::operator^=(const BitVec& other) {
  assert(n_ == other.n_);
  for (std::size_t w = 0; w < words_.size(); ++w) words_[w] ^= other.words_[w];
  return *this;
}

bool BitVec::is_zero() const {
  for (const auto w : words_)
    if (w) return false;
  return true;
}

int BitVec::leading_index() const {
  for (std::size_t w = words_.size(); w-- > 0;) {
    if (!words_[w]) continue;
    const int p = static_cast<int>(w) * 64 + std::bit_width(words_[w]) - 1;
    return n_ - p;
  }
  return 0;
}

int BitVec::popcount() const {
  int total = 0;
  for (const auto w : words_) total += std::popcount(w);
  return total;
}

std::uint64_t BitVec::to_uint() const {
  assert(n_ <= 64);
  return words_.empty() ? 0 : words_[0];
}

std::string BitVec::to_string() const {
  std::string s(n_, '0');
  for (int j = 1; j <= n_; ++j)
    if (get(j)) s[j - 1] = '1';
  return s;
}

BitMatrix::BitMatrix(int rows, int cols)
    : rows_(rows), columns_(cols, BitVec(rows)) {}

BitMatrix BitMatrix::identity(int n) {
  BitMatrix m(n, n);
  for (int j = 1; j <= n; ++j) m.set(j, j, true);
  return m;
}

BitMatrix BitMatrix::from_columns(int rows, std::vector<BitVec> columns) {
  BitMatrix m;
  m.rows_ = rows;
  for ([[maybe_unused]] const auto& c : columns) assert(c.size() == rows);
  m.columns_ = std::move(columns);
  return m;
}

BitMatrix BitMatrix::from_rows(const std::vector<BitVec>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = rows.empty() ? 0 : rows[0].size();
  BitMatrix m(r, c);
  for (int i = 1; i <= r; ++i)
    for (int j = 1; j <= c; ++j)
      if (rows[i - 1].get(j)) m.set(i, j, true);
  return m;
}

void BitMatrix::append_column(const BitVec& column) {
  assert(column.size() == rows_);
  columns_.push_back(column);
}

BitVec BitMatrix::row(int row) const {
  BitVec r(cols());
  for (int j = 1; j <= cols(); ++j)
    if (get(row, j)) r.set(j, true);
  return r;
}

std::vector<BitVec> BitMatrix::to_rows() const {
  std::vector<BitVec> rows;
  rows.reserve(rows_);
  for (int i = 1; i <= rows_; ++i) rows.push_back(row(i));
  return rows;
}

BitVec BitMatrix::apply(const BitVec& x) const {
  assert(x.size() == cols());
  BitVec result(rows_);
  for (int j = 1; j <= cols(); ++j)
    if (x.get(j)) result ^= columns_[j - 1];
  return result;
}

BitMatrix BitMatrix::multiply(const BitMatrix& other) const {
  assert(cols() == other.rows());
  std::vector<BitVec> columns;
  columns.reserve(other.cols());
  for (int j = 1; j <= other.cols(); ++j)
    columns.push_back(apply(other.column(j)));
  return from_columns(rows_, std::move(columns));
}

BitMatrix BitMatrix::transposed() const {
  BitMatrix t(cols(), rows_);
  for (int i = 1; i <= rows_; ++i)
    for (int j = 1; j <= cols(); ++j)
      if (get(i, j)) t.set(j, i, true);
  return t;
}

std::string BitMatrix::to_string() const {
  std::string s;
  for (int i = 1; i <= rows_; ++i) {
    for (int j = 1; j <= cols(); ++j) s += get(i, j) ? '1' : '0';
    s += '\n';
  }
  return s;
}

int rank(const BitMatrix& m) {
  std::vector<BitVec> rows = m.to_rows();
  const int cols = m.cols();
  int r = 0;
  for (int j = 1; j <= cols && r < m.rows(); ++j) {
    int pivot = -1;
    for (int i = r; i < m.rows(); ++i) {
      if (rows[i].get(j)) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(rows[r], rows[pivot]);
    for (int i = 0; i < m.rows(); ++i)
      if (i != r && rows[i].get(j)) rows[i] ^= rows[r];
    ++r;
  }
  return r;
}

BitMatrix invert(const BitMatrix& m) {
  assert(m.rows() == m.cols());
  const int n = m.rows();
  std::vector<BitVec> a = m.to_rows();
  std::vector<BitVec> inv = BitMatrix::identity(n).to_rows();
  for (int j = 1; j <= n; ++j) {
    int pivot = -1;
    for (int i = j - 1; i < n; ++i) {
      if (a[i].get(j)) {
        pivot = i;
        break;
      }
    }
    if (pivot < 0) throw SingularMatrixError("matrix has rank below " +
                                             std::to_string(n));
    std::swap(a[j - 1], a[pivot]);
    std::swap(inv[j - 1], inv[pivot]);
    for (int i = 0; i < n; ++i) {
      if (i != j - 1 && a[i].get(j)) {
        a[i] ^= a[j - 1];
        inv[i] ^= inv[j - 1];
      }
    }
  }
  return BitMatrix::from_rows(inv);
}

bool SpanTracker::contains(const BitVec& v) const {
  assert(v.size() == n_);
  BitVec r = v;
  for (const BitVec& b : basis_) {
    if (r.is_zero()) return true;
    if (r.leading_index() == b.leading_index()) r ^= b;
  }
  return r.is_zero();
}

bool SpanTracker::insert(const BitVec& v) {
  assert(v.size() == n_);
  BitVec r = v;
  for (const BitVec& b : basis_) {
    if (r.leading_index() == b.leading_index()) r ^= b;
  }
  if (r.is_zero()) return false;
  const int lead = r.leading_index();
  auto pos = std::lower_bound(
      basis_.begin(), basis_.end(), lead,
      [](const BitVec& b, int l) { return b.leading_index() < l; });
  basis_.insert(pos, std::move(r));
  return true;
}

bool span_contains(const SpanTracker& tracker, const BitVec& v) {
  return tracker.contains(v);
}

int default_section_size(int n) {
  return std::max(1, static_cast<int>(std::lround(std::log2(n) / 2.0)));
}

namespace {

using RowOp = std::pair<int, int>;  // row[target] ^= row[control]

std::uint64_t section_pattern(const BitVec& row, int lo, int hi) {
  std::uint64_t pattern = 0;
  for (int j = lo; j <= hi; ++j) pattern = pattern << 1 | row.get(j);
  return pattern;
}

// Reduces `rows` to upper triangular form with a unit diagonal, recording
// the row operations. Within each column section, rows whose section
// patterns coincide are collapsed first so the diagonal sweep below touches
// each pattern once.
void lower_eliminate(std::vector<BitVec>& rows, int section,
                     std::vector<RowOp>& ops) {
  const int n = static_cast<int>(rows.size());
  for (int lo = 1; lo <= n; lo += section) {
    const int hi = std::min(lo + section - 1, n);
    const int width = hi - lo + 1;
    std::vector<int> seen(std::size_t{1} << width, 0);
    for (int i = lo; i <= n; ++i) {
      const std::uint64_t pattern = section_pattern(rows[i - 1], lo, hi);
      if (!pattern) continue;
      if (const int first = seen[pattern]; first) {
        rows[i - 1] ^= rows[first - 1];
        ops.emplace_back(first, i);
      } else {
        seen[pattern] = i;
      }
    }
    for (int j = lo; j <= hi; ++j) {
      if (!rows[j - 1].get(j)) {
        int source = -1;
        for (int i = j + 1; i <= n; ++i) {
          if (rows[i - 1].get(j)) {
            source = i;
            break;
          }
        }
        if (source < 0)
          throw SingularMatrixError("matrix is singular at column " +
                                    std::to_string(j));
        rows[j - 1] ^= rows[source - 1];
        ops.emplace_back(source, j);
      }
      for (int i = j + 1; i <= n; ++i) {
        if (rows[i - 1].get(j)) {
          rows[i - 1] ^= rows[j - 1];
          ops.emplace_back(j, i);
        }
      }
    }
  }
}

std::vector<BitVec> transposed_rows(const std::vector<BitVec>& rows) {
  const int n = static_cast<int>(rows.size());
  std::vector<BitVec> t(n, BitVec(n));
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (rows[i - 1].get(j)) t[j - 1].set(i, true);
  return t;
}

}  // namespace

Circuit pmh_synthesize(const BitMatrix& m, int section_size) {
  assert(m.rows() == m.cols());
  assert(section_size >= 1);
  const int n = m.rows();
  std::vector<BitVec> rows = m.to_rows();

  std::vector<RowOp> lower_ops;
  lower_eliminate(rows, section_size, lower_ops);

  std::vector<BitVec> upper = transposed_rows(rows);
  std::vector<RowOp> upper_ops;
  lower_eliminate(upper, section_size, upper_ops);

  // With R the recorded left factors and C the transposed-stage factors,
  // M = R_1..R_s C_r^T..C_1^T; a circuit applies its first gate as the
  // rightmost factor, so the transposed ops come first with control and
  // target swapped, then the lower ops reversed.
  Circuit circuit(n);
  for (const auto& [control, target] : upper_ops)
    circuit.push_back(Gate::cx(target, control));
  for (auto it = lower_ops.rbegin(); it != lower_ops.rend(); ++it)
    circuit.push_back(Gate::cx(it->first, it->second));
  return circuit;
}

Circuit pmh_synthesize(const BitMatrix& m) {
  return pmh_synthesize(m, default_section_size(m.rows()));
}

Circuit gaussian_synthesize(const BitMatrix& m) {
  assert(m.rows() == m.cols());
  const int n = m.rows();
  std::vector<BitVec> rows = m.to_rows();
  std::vector<RowOp> ops;
  for (int j = 1; j <= n; ++j) {
    if (!rows[j - 1].get(j)) {
      int source = -1;
      for (int i = j + 1; i <= n; ++i) {
        if (rows[i - 1].get(j)) {
          source = i;
          break;
        }
      }
      if (source < 0)
        throw SingularMatrixError("matrix is singular at column " +
                                  std::to_string(j));
      rows[j - 1] ^= rows[source - 1];
      ops.emplace_back(source, j);
    }
    for (int i = j + 1; i <= n; ++i) {
      if (rows[i - 1].get(j)) {
        rows[i - 1] ^= rows[j - 1];
        ops.emplace_back(j, i);
      }
    }
  }
  for (int j = n; j >= 2; --j) {
    for (int i = j - 1; i >= 1; --i) {
      if (rows[i - 1].get(j)) {
        rows[i - 1] ^= rows[j - 1];
        ops.emplace_back(j, i);
      }
    }
  }
  Circuit circuit(n);
  for (auto it = ops.rbegin(); it != ops.rend(); ++it)
    circuit.push_back(Gate::cx(it->first, it->second));
  return circuit;
}

}  // namespace revsynth

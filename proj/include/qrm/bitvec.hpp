#pragma once

// Dense bit-packed linear algebra over GF(2): vectors, matrices, rank,
// reduced echelon form with a caller-chosen column priority, kernels.
//
// All types are immutable values once constructed and shared; every
// operation is a pure function returning new values, so parallel callers
// need no synchronization.

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qrm/errors.hpp"

namespace qrm {

/// A length-n binary vector packed into 64-bit words.  Unused high bits of
/// the last word are kept zero, so equality and weight are plain word-wise
/// operations.
class BitVector {
 public:
  BitVector() = default;

  explicit BitVector(std::size_t length)
      : length_(length), words_((length + 63) / 64, 0) {}

  /// Builds from a character string of '0'/'1', index 0 first.
  static BitVector from_string(std::string_view bits) {
    BitVector v(bits.size());
    for (std::size_t i = 0; i < bits.size(); ++i) {
      if (bits[i] == '1') {
        v.set(i, true);
      } else if (bits[i] != '0') {
        throw std::invalid_argument("BitVector::from_string: expected '0' or '1'");
      }
    }
    return v;
  }

  /// Builds from raw words; masks any stray bits above `length`.
  static BitVector from_words(std::vector<std::uint64_t> words, std::size_t length) {
    BitVector v;
    v.length_ = length;
    v.words_ = std::move(words);
    v.words_.resize((length + 63) / 64, 0);
    v.mask_tail();
    return v;
  }

  std::size_t size() const noexcept { return length_; }

  bool get(std::size_t i) const {
    check_index(i);
    return (words_[i >> 6] >> (i & 63)) & 1;
  }

  void set(std::size_t i, bool value) {
    check_index(i);
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value) {
      words_[i >> 6] |= mask;
    } else {
      words_[i >> 6] &= ~mask;
    }
  }

  void flip(std::size_t i) {
    check_index(i);
    words_[i >> 6] ^= std::uint64_t{1} << (i & 63);
  }

  /// Hamming weight.
  std::size_t weight() const noexcept {
    std::size_t w = 0;
    for (std::uint64_t word : words_) w += static_cast<std::size_t>(std::popcount(word));
    return w;
  }

  /// Number of set bits at positions >= begin.
  std::size_t weight_from(std::size_t begin) const {
    if (begin >= length_) return 0;
    const std::size_t wi = begin >> 6;
    std::size_t w = static_cast<std::size_t>(
        std::popcount(words_[wi] & (~std::uint64_t{0} << (begin & 63))));
    for (std::size_t j = wi + 1; j < words_.size(); ++j) {
      w += static_cast<std::size_t>(std::popcount(words_[j]));
    }
    return w;
  }

  bool is_zero() const noexcept {
    for (std::uint64_t word : words_) {
      if (word != 0) return false;
    }
    return true;
  }

  BitVector& operator^=(const BitVector& other) {
    check_same_length(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] ^= other.words_[i];
    return *this;
  }

  friend BitVector operator^(BitVector a, const BitVector& b) {
    a ^= b;
    return a;
  }

  bool operator==(const BitVector& other) const = default;

  /// Parity of the AND of the two payloads.
  int parity_and(const BitVector& other) const {
    check_same_length(other);
    std::uint64_t acc = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) acc ^= words_[i] & other.words_[i];
    return std::popcount(acc) & 1;
  }

  /// Number of shared set bits.
  std::size_t overlap(const BitVector& other) const {
    check_same_length(other);
    std::size_t w = 0;
    for (std::size_t i = 0; i < words_.size(); ++i) {
      w += static_cast<std::size_t>(std::popcount(words_[i] & other.words_[i]));
    }
    return w;
  }

  BitVector& operator&=(const BitVector& other) {
    check_same_length(other);
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= other.words_[i];
    return *this;
  }

  /// Copies bits [from, from+count) into a new vector.
  BitVector slice(std::size_t from, std::size_t count) const {
    if (from + count > length_) throw std::out_of_range("BitVector::slice out of range");
    BitVector out(count);
    for (std::size_t i = 0; i < count; ++i) {
      if (get(from + i)) out.set(i, true);
    }
    return out;
  }

  std::span<const std::uint64_t> words() const noexcept { return words_; }

 private:
  void check_index(std::size_t i) const {
    if (i >= length_) throw std::out_of_range("BitVector index out of range");
  }

  void check_same_length(const BitVector& other) const {
    if (length_ != other.length_) {
      throw std::invalid_argument("length mismatch: " + std::to_string(length_) +
                                  " vs " + std::to_string(other.length_));
    }
  }

  void mask_tail() {
    if (length_ & 63) {
      words_.back() &= ~std::uint64_t{0} >> (64 - (length_ & 63));
    }
  }

  std::size_t length_ = 0;
  std::vector<std::uint64_t> words_;
};

/// GF(2) inner product; the lengths must agree.
inline int inner_product(const BitVector& a, const BitVector& b) {
  return a.parity_and(b);
}

/// A rows x cols binary matrix stored as a list of equal-length rows.
class BitMatrix {
 public:
  BitMatrix() = default;

  BitMatrix(std::size_t rows, std::size_t cols)
      : cols_(cols), rows_(rows, BitVector(cols)) {}

  explicit BitMatrix(std::vector<BitVector> rows) : rows_(std::move(rows)) {
    cols_ = rows_.empty() ? 0 : rows_[0].size();
    for (const BitVector& r : rows_) {
      if (r.size() != cols_) throw std::invalid_argument("BitMatrix: ragged rows");
    }
  }

  static BitMatrix identity(std::size_t n) {
    BitMatrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, true);
    return m;
  }

  /// Builds from strings of '0'/'1', one per row; convenient in tests.
  static BitMatrix from_strings(std::initializer_list<std::string_view> rows) {
    std::vector<BitVector> rv;
    rv.reserve(rows.size());
    for (std::string_view s : rows) rv.push_back(BitVector::from_string(s));
    return BitMatrix(std::move(rv));
  }

  std::size_t rows() const noexcept { return rows_.size(); }
  std::size_t cols() const noexcept { return cols_; }

  const BitVector& row(std::size_t i) const { return rows_.at(i); }
  bool get(std::size_t i, std::size_t j) const { return rows_.at(i).get(j); }
  void set(std::size_t i, std::size_t j, bool v) { rows_.at(i).set(j, v); }

  void append_row(BitVector r) {
    if (rows_.empty() && cols_ == 0) cols_ = r.size();
    if (r.size() != cols_) throw std::invalid_argument("BitMatrix: row length mismatch");
    rows_.push_back(std::move(r));
  }

  bool operator==(const BitMatrix& other) const = default;

  const std::vector<BitVector>& row_list() const noexcept { return rows_; }

 private:
  std::size_t cols_ = 0;
  std::vector<BitVector> rows_;
};

/// Vertical concatenation; column counts must agree (unless one is empty).
inline BitMatrix stack(const BitMatrix& top, const BitMatrix& bottom) {
  if (top.rows() == 0) return bottom;
  if (bottom.rows() == 0) return top;
  if (top.cols() != bottom.cols()) {
    throw std::invalid_argument("stack: column count mismatch");
  }
  std::vector<BitVector> rows = top.row_list();
  rows.insert(rows.end(), bottom.row_list().begin(), bottom.row_list().end());
  return BitMatrix(std::move(rows));
}

struct RrefResult {
  BitMatrix reduced;                 // zero rows dropped, pivot rows in priority order
  std::vector<std::size_t> pivots;   // pivot columns, in priority order
};

/// Reduced row echelon form with greedy pivot selection following
/// `column_priority` (a permutation of 0..cols-1).  Among candidate rows the
/// lowest index wins, so the result is deterministic.  Pivot columns end up
/// with exactly one set bit across the returned rows.
inline RrefResult rref_pivot_order(const BitMatrix& m,
                                   std::span<const std::size_t> column_priority) {
  if (column_priority.size() != m.cols()) {
    throw std::invalid_argument("rref_pivot_order: priority size != cols");
  }
  std::vector<bool> seen(m.cols(), false);
  for (std::size_t c : column_priority) {
    if (c >= m.cols() || seen[c]) {
      throw std::invalid_argument("rref_pivot_order: priority is not a permutation");
    }
    seen[c] = true;
  }

  std::vector<BitVector> rows = m.row_list();
  std::vector<std::size_t> pivots;
  std::size_t next = 0;
  for (std::size_t c : column_priority) {
    std::size_t sel = next;
    while (sel < rows.size() && !rows[sel].get(c)) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[next], rows[sel]);
    for (std::size_t j = 0; j < rows.size(); ++j) {
      if (j != next && rows[j].get(c)) rows[j] ^= rows[next];
    }
    pivots.push_back(c);
    ++next;
  }
  rows.resize(next, BitVector(m.cols()));
  return RrefResult{BitMatrix(std::move(rows)), std::move(pivots)};
}

inline RrefResult rref(const BitMatrix& m) {
  std::vector<std::size_t> natural(m.cols());
  std::iota(natural.begin(), natural.end(), 0);
  return rref_pivot_order(m, natural);
}

/// Dimension of the row space.
inline std::size_t rank(const BitMatrix& m) {
  std::vector<BitVector> rows = m.row_list();
  std::size_t next = 0;
  for (std::size_t c = 0; c < m.cols() && next < rows.size(); ++c) {
    std::size_t sel = next;
    while (sel < rows.size() && !rows[sel].get(c)) ++sel;
    if (sel == rows.size()) continue;
    std::swap(rows[next], rows[sel]);
    for (std::size_t j = sel + 1; j < rows.size(); ++j) {
      if (rows[j].get(c)) rows[j] ^= rows[next];
    }
    ++next;
  }
  return next;
}

/// Basis of {x : M x^T = 0}; returns cols - rank(M) rows.
inline BitMatrix kernel_basis(const BitMatrix& m) {
  const RrefResult r = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (std::size_t p : r.pivots) is_pivot[p] = true;

  std::vector<BitVector> basis;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    if (is_pivot[c]) continue;
    BitVector x(m.cols());
    x.set(c, true);
    for (std::size_t i = 0; i < r.pivots.size(); ++i) {
      if (r.reduced.get(i, c)) x.set(r.pivots[i], true);
    }
    basis.push_back(std::move(x));
  }
  if (basis.empty()) return BitMatrix(0, m.cols());
  return BitMatrix(std::move(basis));
}

/// True iff every row of a has even overlap with every row of b.
inline bool mutually_orthogonal(const BitMatrix& a, const BitMatrix& b) {
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < b.rows(); ++j) {
      if (inner_product(a.row(i), b.row(j)) != 0) return false;
    }
  }
  return true;
}

/// True iff the row space of `sub` is contained in the row space of `space`.
inline bool row_space_contains(const BitMatrix& space, const BitMatrix& sub) {
  if (sub.rows() == 0) return true;
  return rank(stack(space, sub)) == rank(space);
}

}  // namespace qrm

#pragma once

// Naive reference implementations used as independent oracles in tests.
// Everything here works on unpacked int vectors straight from definitions
// and must stay independent of the bit-packed library paths it checks.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <random>
#include <vector>

#include "qrm/bitvec.hpp"

namespace oracle {

using Row = std::vector<int>;
using Mat = std::vector<Row>;

inline int rank(Mat m) {
  if (m.empty()) return 0;
  const std::size_t cols = m[0].size();
  std::size_t next = 0;
  for (std::size_t c = 0; c < cols && next < m.size(); ++c) {
    std::size_t sel = next;
    while (sel < m.size() && m[sel][c] == 0) ++sel;
    if (sel == m.size()) continue;
    std::swap(m[next], m[sel]);
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j != next && m[j][c] == 1) {
        for (std::size_t t = 0; t < cols; ++t) m[j][t] ^= m[next][t];
      }
    }
    ++next;
  }
  return static_cast<int>(next);
}

inline bool in_row_space(const Mat& space, const Row& v) {
  Mat extended = space;
  extended.push_back(v);
  return rank(extended) == rank(space);
}

/// Points of F_2^m in (weight, value) order, matching the library's
/// canonical coordinate convention.
inline std::vector<std::uint32_t> sorted_points(int m) {
  std::vector<std::uint32_t> pts(std::size_t{1} << m);
  for (std::uint32_t v = 0; v < pts.size(); ++v) pts[v] = v;
  std::sort(pts.begin(), pts.end(), [](std::uint32_t a, std::uint32_t b) {
    const int wa = std::popcount(a), wb = std::popcount(b);
    return wa != wb ? wa < wb : a < b;
  });
  return pts;
}

/// All monomial masks of degree <= r on m variables (any order).
inline std::vector<std::uint32_t> monomials(int r, int m) {
  std::vector<std::uint32_t> masks;
  for (std::uint32_t t = 0; t < (std::uint32_t{1} << m); ++t) {
    if (std::popcount(t) <= r) masks.push_back(t);
  }
  return masks;
}

/// Truth table (indexed by the integer point v) of the polynomial whose
/// monomial coefficients are the bits of `message` over `masks`.
inline Row eval_table(const std::vector<std::uint32_t>& masks, std::uint64_t message, int m) {
  Row table(std::size_t{1} << m, 0);
  for (std::uint32_t v = 0; v < table.size(); ++v) {
    int val = 0;
    for (std::size_t i = 0; i < masks.size(); ++i) {
      if (((message >> i) & 1) && (v & masks[i]) == masks[i]) val ^= 1;
    }
    table[v] = val;
  }
  return table;
}

/// Generator of RM(r, m) as an unpacked matrix over the sorted points.
inline Mat rm_matrix(int r, int m) {
  const std::vector<std::uint32_t> masks = monomials(r, m);
  const std::vector<std::uint32_t> pts = sorted_points(m);
  Mat rows;
  for (std::uint32_t mask : masks) {
    Row row(pts.size(), 0);
    for (std::size_t j = 0; j < pts.size(); ++j) {
      row[j] = (pts[j] & mask) == mask ? 1 : 0;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

inline Row to_row(const qrm::BitVector& v) {
  Row out(v.size(), 0);
  for (std::size_t i = 0; i < v.size(); ++i) out[i] = v.get(i) ? 1 : 0;
  return out;
}

inline Mat to_mat(const qrm::BitMatrix& m) {
  Mat out;
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(to_row(m.row(i)));
  return out;
}

inline qrm::BitVector random_vector(std::mt19937& rng, std::size_t n) {
  qrm::BitVector v(n);
  std::bernoulli_distribution bit(0.5);
  for (std::size_t i = 0; i < n; ++i) {
    if (bit(rng)) v.set(i, true);
  }
  return v;
}

inline qrm::BitMatrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols) {
  std::vector<qrm::BitVector> rv;
  for (std::size_t i = 0; i < rows; ++i) rv.push_back(random_vector(rng, cols));
  return qrm::BitMatrix(std::move(rv));
}

}  // namespace oracle

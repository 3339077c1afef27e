#pragma once

// Reed-Muller, punctured and shortened Reed-Muller generator matrices in a
// canonical coordinate order, plus exhaustive oracles over their codewords.
//
// Coordinates are the points of F_2^m sorted by Hamming weight, ties broken
// by the integer value of the point (x_1 = least significant bit).  With
// that order the points of weight <= w occupy the first binom(m,<=w)
// positions, so puncturing is a prefix drop and serialized codes are
// reproducible bit for bit.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qrm/bitvec.hpp"
#include "qrm/errors.hpp"
#include "qrm/wideint.hpp"

namespace qrm {

/// Default cap on enumeration steps for the exhaustive oracles.
inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 22;

/// The 2^m points of F_2^m in canonical (weight, value) order.
struct CoordinateOrder {
  int m = 0;
  std::vector<std::uint32_t> points;

  static CoordinateOrder canonical(int m) {
    if (m < 0 || m > 30) throw std::invalid_argument("CoordinateOrder: 0 <= m <= 30");
    CoordinateOrder order;
    order.m = m;
    order.points.resize(std::size_t{1} << m);
    for (std::uint32_t v = 0; v < order.points.size(); ++v) order.points[v] = v;
    std::sort(order.points.begin(), order.points.end(),
              [](std::uint32_t a, std::uint32_t b) {
                const int wa = std::popcount(a), wb = std::popcount(b);
                return wa != wb ? wa < wb : a < b;
              });
    return order;
  }

  /// Number of points with |v| <= w (they form a prefix).
  std::size_t prefix_size(int w) const {
    if (w < 0) return 0;
    return binom_sum_le(m, w).convert_to<std::size_t>();
  }
};

enum class CodeKind { RM, PRM, SRM };

struct RmSpec {
  int r = 0;  // degree bound, -1 admits the zero code
  int m = 0;  // variable count
  int w = -1; // puncture threshold; w < 0 means no puncturing
};

/// A binary linear code given by a full-row-rank generator matrix together
/// with the point labels of its columns.
struct LinearCode {
  RmSpec spec;
  CodeKind kind = CodeKind::RM;
  BitMatrix generator;
  std::vector<std::uint32_t> coordinates;  // point of F_2^m labeling each column
};

namespace detail {

/// Monomial masks of degree <= r over m variables, ordered by degree
/// ascending and lexicographic subset order within a degree.
inline std::vector<std::uint32_t> monomial_masks(int r, int m) {
  std::vector<std::uint32_t> masks;
  if (r < 0) return masks;
  for (int d = 0; d <= std::min(r, m); ++d) {
    // combinations of {0..m-1} of size d in lexicographic order
    std::vector<int> idx(d);
    for (int i = 0; i < d; ++i) idx[i] = i;
    while (true) {
      std::uint32_t mask = 0;
      for (int i : idx) mask |= std::uint32_t{1} << i;
      masks.push_back(mask);
      int pos = d - 1;
      while (pos >= 0 && idx[pos] == m - d + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int j = pos + 1; j < d; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return masks;
}

inline void check_rm_size(int r, int m) {
  // Dense generator storage: refuse matrices past ~1 GiB of bits.
  const WideInt bits = binom_sum_le(m, std::max(r, 0)) << m;
  if (bits > (WideInt{1} << 33)) {
    throw std::invalid_argument("rm_generator: matrix too large (m=" + std::to_string(m) +
                                ", r=" + std::to_string(r) + ")");
  }
}

}  // namespace detail

/// Generator of RM(r, m): one row per monomial of degree <= r, evaluated at
/// all 2^m points in canonical column order.  r = -1 yields the zero code.
inline LinearCode rm_generator(int r, int m) {
  if (m < 0 || m > 30) throw std::invalid_argument("rm_generator: 0 <= m <= 30 required");
  if (r > m) throw std::invalid_argument("rm_generator: r <= m required");
  if (r < -1) throw std::invalid_argument("rm_generator: r >= -1 required");
  detail::check_rm_size(r, m);

  const CoordinateOrder order = CoordinateOrder::canonical(m);
  const std::vector<std::uint32_t> masks = detail::monomial_masks(r, m);
  const std::size_t n = order.points.size();

  BitMatrix gen(masks.size(), n);
  for (std::size_t i = 0; i < masks.size(); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      if ((order.points[j] & masks[i]) == masks[i]) gen.set(i, j, true);
    }
  }
  return LinearCode{RmSpec{r, m, -1}, CodeKind::RM, std::move(gen), order.points};
}

namespace detail {

/// Rows of the full RM(r,m) generator after elimination with punctured
/// columns first: `pierced` rows carry the identity block on the punctured
/// prefix, `vanishing` rows are zero there.  Full 2^m-column matrices.
struct PunctureSplit {
  BitMatrix pierced;    // [I_k | G_T], k rows
  BitMatrix vanishing;  // [0 | G_0]
  std::size_t prefix;   // number of punctured columns
};

inline PunctureSplit puncture_split(int r, int m, int w) {
  const LinearCode rm = rm_generator(r, m);
  const std::size_t prefix = CoordinateOrder::canonical(m).prefix_size(w);
  const RrefResult red = rref(rm.generator);  // natural order = punctured first

  std::vector<BitVector> pierced, vanishing;
  for (std::size_t i = 0; i < red.pivots.size(); ++i) {
    if (red.pivots[i] < prefix) {
      pierced.push_back(red.reduced.row(i));
    } else {
      vanishing.push_back(red.reduced.row(i));
    }
  }
  for (const BitVector& row : vanishing) {
    if (row.weight() != row.weight_from(prefix)) {
      throw std::logic_error("puncture_split: vanishing row is nonzero on the prefix");
    }
  }
  const std::size_t cols = rm.generator.cols();
  BitMatrix top = pierced.empty() ? BitMatrix(0, cols) : BitMatrix(std::move(pierced));
  BitMatrix bot = vanishing.empty() ? BitMatrix(0, cols) : BitMatrix(std::move(vanishing));
  return PunctureSplit{std::move(top), std::move(bot), prefix};
}

inline BitMatrix drop_prefix(const BitMatrix& m, std::size_t prefix) {
  std::vector<BitVector> rows;
  rows.reserve(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i) {
    rows.push_back(m.row(i).slice(prefix, m.cols() - prefix));
  }
  if (rows.empty()) return BitMatrix(0, m.cols() - prefix);
  return BitMatrix(std::move(rows));
}

}  // namespace detail

/// Generator of PRM(r, m, w): RM(r, m) with the coordinates |v| <= w dropped.
/// Requires m - r > w, the regime in which puncturing keeps full row rank.
inline LinearCode prm_generator(int r, int m, int w) {
  if (w >= m) throw std::invalid_argument("prm_generator: w < m required");
  if (!(m - r > w)) throw std::invalid_argument("m - r > w violated");
  LinearCode rm = rm_generator(r, m);
  const std::size_t prefix = CoordinateOrder::canonical(m).prefix_size(w);
  BitMatrix gen = detail::drop_prefix(rm.generator, prefix);
  if (rank(gen) != gen.rows()) {
    throw std::logic_error("prm_generator: rank loss under puncturing");
  }
  std::vector<std::uint32_t> coords(rm.coordinates.begin() + prefix, rm.coordinates.end());
  return LinearCode{RmSpec{r, m, w}, CodeKind::PRM, std::move(gen), std::move(coords)};
}

/// Generator of SRM(r, m, w): polynomials of degree <= r vanishing on all
/// points |v| <= w, reported on the unpunctured coordinates.
inline LinearCode srm_generator(int r, int m, int w) {
  if (r < 0 || r > m) throw std::invalid_argument("srm_generator: 0 <= r <= m required");
  if (w >= m) throw std::invalid_argument("srm_generator: w < m required");
  detail::PunctureSplit split = detail::puncture_split(r, m, w);
  if (w < m - r) {
    const WideInt expect = binom_sum_le(m, r) - binom_sum_le(m, w);
    if (WideInt(split.vanishing.rows()) != expect) {
      throw std::logic_error("srm_generator: unexpected dimension");
    }
  }
  BitMatrix gen = detail::drop_prefix(split.vanishing, split.prefix);
  const CoordinateOrder order = CoordinateOrder::canonical(m);
  std::vector<std::uint32_t> coords(order.points.begin() + split.prefix, order.points.end());
  return LinearCode{RmSpec{r, m, w}, CodeKind::SRM, std::move(gen), std::move(coords)};
}

namespace detail {

/// Visits every nonzero row combination of `gen` in Gray-code order (one row
/// XOR per step).  visit(message, codeword) gets the Gray-coded message.
template <class Visit>
void for_each_nonzero_codeword(const BitMatrix& gen, Visit&& visit) {
  const std::size_t dim = gen.rows();
  if (dim >= 63) throw std::invalid_argument("codeword sweep: dimension too large");
  const std::uint64_t count = std::uint64_t{1} << dim;
  BitVector word(gen.cols());
  for (std::uint64_t u = 1; u < count; ++u) {
    word ^= gen.row(static_cast<std::size_t>(std::countr_zero(u)));
    visit(u ^ (u >> 1), word);
  }
}

}  // namespace detail

/// Exhaustive minimum of |f|_{>w} over the nonzero codewords of RM(r, m).
/// Refuses when 2^dim exceeds the budget.
inline WideInt min_punctured_weight_brute(int r, int m, int w,
                                          std::uint64_t budget = kDefaultBudget) {
  if (r < 0) throw std::invalid_argument("min_punctured_weight_brute: r >= 0 required");
  const LinearCode rm = rm_generator(r, m);
  detail::require_budget_pow2(static_cast<int>(rm.generator.rows()), budget,
                              "min_punctured_weight_brute");
  const std::size_t prefix = CoordinateOrder::canonical(m).prefix_size(w);
  std::size_t best = SIZE_MAX;
  detail::for_each_nonzero_codeword(rm.generator,
                                    [&](std::uint64_t, const BitVector& f) {
                                      const std::size_t wt = f.weight_from(prefix);
                                      if (wt < best) best = wt;
                                    });
  return WideInt(best);
}

/// True iff every codeword weight of RM(r, m) is divisible by 2^nu.
/// Requires m > nu*r unless `force` (used for negative controls).
inline bool weight_divisibility_check(int r, int m, int nu,
                                      std::uint64_t budget = kDefaultBudget,
                                      bool force = false) {
  if (nu < 1 || nu > 62) throw std::invalid_argument("weight_divisibility_check: 1 <= nu <= 62");
  if (!force && !(m > nu * r)) throw std::invalid_argument("m > nu*r violated");
  const LinearCode rm = rm_generator(r, m);
  detail::require_budget_pow2(static_cast<int>(rm.generator.rows()), budget,
                              "weight_divisibility_check");
  const std::uint64_t modulus = std::uint64_t{1} << nu;
  bool ok = true;
  detail::for_each_nonzero_codeword(rm.generator,
                                    [&](std::uint64_t, const BitVector& f) {
                                      if (f.weight() % modulus != 0) ok = false;
                                    });
  return ok;
}

/// Verifies SRM(r,m,w) = PRM(m-r-1,m,w)^dual inside PRM(r,m,w):
/// (a) the two row spaces are orthogonal, (b) their ranks sum to the code
/// length, (c) the SRM row space lies inside PRM(r,m,w).
inline bool duality_check(int r, int m, int w, std::uint64_t budget = kDefaultBudget) {
  if (!(w < r)) throw std::invalid_argument("w < r violated");
  if (!(m - r > w)) throw std::invalid_argument("m - r > w violated");
  detail::require_budget_pow2(m, budget, "duality_check");

  const LinearCode srm = srm_generator(r, m, w);
  const LinearCode dual = prm_generator(m - r - 1, m, w);
  const LinearCode prm = prm_generator(r, m, w);

  if (!mutually_orthogonal(srm.generator, dual.generator)) return false;
  const WideInt rank_sum = WideInt(rank(srm.generator)) + WideInt(rank(dual.generator));
  if (rank_sum != binom_sum_gt(m, w)) return false;
  return row_space_contains(prm.generator, srm.generator);
}

}  // namespace qrm

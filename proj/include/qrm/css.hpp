#pragma once

// The quantum CSS code family built from shortened Reed-Muller stabilizer
// spaces, with paired logical bases extracted from the [I_k G_T; 0 G_0]
// elimination, and exhaustive oracles for its distance, commutation and
// transversal-phase-gate claims.

#include <bit>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qrm/bitvec.hpp"
#include "qrm/errors.hpp"
#include "qrm/rm.hpp"
#include "qrm/wideint.hpp"

namespace qrm {

/// The integer triple (m, r, w) plus the derived Clifford-hierarchy level
/// nu = largest integer with m > nu*r.
struct CodeFamilyParams {
  int m = 0;
  int r = 0;
  int w = 0;
  int nu = 0;

  /// Validates 0 <= 2w < 2r < m and derives nu; names the violated
  /// inequality on failure.
  static CodeFamilyParams validated(int m, int r, int w) {
    if (!(0 <= w)) throw std::invalid_argument("0 <= w violated");
    if (!(w < r)) throw std::invalid_argument("w < r violated");
    if (!(2 * r < m)) throw std::invalid_argument("2r < m violated");
    return CodeFamilyParams{m, r, w, (m - 1) / r};
  }
};

/// Exact [[n, k, d]] parameters of one family member.
struct CodeParams {
  int m = 0, r = 0, w = 0, nu = 0;
  WideInt n, k, d;
  double gamma = 0.0;
};

/// n = binom(m,>w), k = binom(m,<=w), d = binom(r+1,>w); exact integers.
inline CodeParams params_formula(int m, int r, int w) {
  const CodeFamilyParams p = CodeFamilyParams::validated(m, r, w);
  CodeParams out;
  out.m = m;
  out.r = r;
  out.w = w;
  out.nu = p.nu;
  out.n = binom_sum_gt(m, w);
  out.k = binom_sum_le(m, w);
  out.d = binom_sum_gt(r + 1, w);
  out.gamma = (log2_wide(out.n) - log2_wide(out.k)) / log2_wide(out.d);
  return out;
}

/// X/Z stabilizer generators and paired logical bases, all on the n
/// unpunctured coordinates.  Row i of logical_x pairs with row i of
/// logical_z; both correspond to the punctured point at prefix position i.
struct CssCode {
  CodeFamilyParams params;
  WideInt n, k;
  BitMatrix x_stabilizers;  // basis of SRM(r, m, w)
  BitMatrix z_stabilizers;  // basis of SRM(m-r-1, m, w)
  BitMatrix logical_x;      // G_T rows from the RM(r, m) side
  BitMatrix logical_z;      // G_T rows from the RM(m-r-1, m) side
};

/// True iff the stabilizers are mutually orthogonal, logicals commute with
/// the opposite stabilizers, and the logical pairing is exactly delta_ij.
inline bool commutation_check(const CssCode& code) {
  if (!mutually_orthogonal(code.x_stabilizers, code.z_stabilizers)) return false;
  if (!mutually_orthogonal(code.logical_x, code.z_stabilizers)) return false;
  if (!mutually_orthogonal(code.logical_z, code.x_stabilizers)) return false;
  for (std::size_t i = 0; i < code.logical_x.rows(); ++i) {
    for (std::size_t j = 0; j < code.logical_z.rows(); ++j) {
      if (inner_product(code.logical_x.row(i), code.logical_z.row(j)) != (i == j ? 1 : 0)) {
        return false;
      }
    }
  }
  return true;
}

/// Builds the CSS code for validated (m, r, w) and self-verifies every
/// commutation and dimension invariant before returning.
inline CssCode build_code(int m, int r, int w) {
  const CodeFamilyParams params = CodeFamilyParams::validated(m, r, w);

  detail::PunctureSplit x_side = detail::puncture_split(r, m, w);
  detail::PunctureSplit z_side = detail::puncture_split(m - r - 1, m, w);

  CssCode code;
  code.params = params;
  code.k = binom_sum_le(m, w);
  code.n = binom_sum_gt(m, w);

  if (WideInt(x_side.pierced.rows()) != code.k || WideInt(z_side.pierced.rows()) != code.k) {
    throw std::logic_error("build_code: punctured block is rank deficient (expected k = " +
                           code.k.str() + ")");
  }

  code.logical_x = detail::drop_prefix(x_side.pierced, x_side.prefix);
  code.x_stabilizers = detail::drop_prefix(x_side.vanishing, x_side.prefix);
  code.logical_z = detail::drop_prefix(z_side.pierced, z_side.prefix);
  code.z_stabilizers = detail::drop_prefix(z_side.vanishing, z_side.prefix);

  if (WideInt(code.logical_x.cols()) != code.n) {
    throw std::logic_error("build_code: length mismatch");
  }
  if (!commutation_check(code)) {
    throw std::logic_error("build_code: commutation/pairing self-check failed for (m=" +
                           std::to_string(m) + ", r=" + std::to_string(r) +
                           ", w=" + std::to_string(w) + ")");
  }
  return code;
}

struct DistanceResult {
  std::uint64_t d_z = 0;  // min weight over PRM(m-r-1,m,w) \ SRM(m-r-1,m,w)
  std::uint64_t d_x = 0;  // min weight over PRM(r,m,w) \ SRM(r,m,w)
};

namespace detail {

/// Min weight over combinations of [logicals; stabilizers] that use at
/// least one logical row.
inline std::uint64_t min_logical_weight(const BitMatrix& logicals,
                                        const BitMatrix& stabilizers,
                                        std::uint64_t budget, const char* what) {
  const BitMatrix gen = stack(logicals, stabilizers);
  require_budget_pow2(static_cast<int>(gen.rows()), budget, what);
  const std::uint64_t logical_mask = (std::uint64_t{1} << logicals.rows()) - 1;
  std::uint64_t best = UINT64_MAX;
  for_each_nonzero_codeword(gen, [&](std::uint64_t msg, const BitVector& v) {
    if ((msg & logical_mask) == 0) return;
    const std::uint64_t wt = v.weight();
    if (wt < best) best = wt;
  });
  return best;
}

}  // namespace detail

/// Exhaustive minimum logical-operator weights on both sides.  The code
/// distance is min(d_z, d_x).
inline DistanceResult distance_brute(const CssCode& code,
                                     std::uint64_t budget = kDefaultBudget) {
  DistanceResult out;
  out.d_z = detail::min_logical_weight(code.logical_z, code.z_stabilizers, budget,
                                       "distance_brute (Z side)");
  out.d_x = detail::min_logical_weight(code.logical_x, code.x_stabilizers, budget,
                                       "distance_brute (X side)");
  return out;
}

/// Minimum nonzero weight over both stabilizer groups.
inline std::uint64_t min_stabilizer_weight(const CssCode& code,
                                           std::uint64_t budget = kDefaultBudget) {
  std::uint64_t best = UINT64_MAX;
  for (const BitMatrix* group : {&code.x_stabilizers, &code.z_stabilizers}) {
    detail::require_budget_pow2(static_cast<int>(group->rows()), budget,
                                "min_stabilizer_weight");
    detail::for_each_nonzero_codeword(*group, [&](std::uint64_t, const BitVector& v) {
      const std::uint64_t wt = v.weight();
      if (wt < best) best = wt;
    });
  }
  return best;
}

namespace detail {

struct SplitMix64 {
  std::uint64_t state;
  std::uint64_t next() {
    state += 0x9e3779b97f4a7c15ULL;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
};

/// Independent, reproducible stream for one (seed, index) pair.
inline SplitMix64 stream_for(std::uint64_t seed, std::uint64_t index) {
  SplitMix64 mixer{seed ^ (0x2545f4914f6cdd1dULL * (index + 1))};
  return SplitMix64{mixer.next()};
}

}  // namespace detail

struct TransversalOptions {
  // Exhaustive up to 2^24 coset elements by default; past that the check
  // samples uniform (S, s) pairs.
  std::uint64_t budget = std::uint64_t{1} << 24;
  std::uint64_t trials = 1'000'000;
  std::uint64_t seed = 12345;
  bool force = false;  // skip the m > nu*r guard (negative controls)
};

struct TransversalResult {
  bool passed = false;
  bool exhaustive = false;
  std::uint64_t checked = 0;  // coset elements visited or trials sampled
};

/// Checks that the transversal gate diag(1, e^{2 pi i / 2^nu}) acts as the
/// inverse phase on every logical qubit with no residual phase: for every
/// subset S of logical indices and every X-stabilizer-group element s,
///   weight(sum_{i in S} logical_x[i] + s) + |S| == 0  (mod 2^nu).
/// The S = {} case is the stabilizer weight-divisibility condition.
inline TransversalResult transversal_phase_check(const CssCode& code, int nu,
                                                 const TransversalOptions& opts = {}) {
  if (nu < 1 || nu > 62) throw std::invalid_argument("transversal_phase_check: 1 <= nu <= 62");
  if (!opts.force && !(code.params.m > nu * code.params.r)) {
    throw std::invalid_argument("m > nu*r violated");
  }
  const BitMatrix gen = stack(code.logical_x, code.x_stabilizers);
  const std::uint64_t modulus = std::uint64_t{1} << nu;
  const std::size_t k = code.logical_x.rows();
  const std::size_t dim = gen.rows();

  TransversalResult out;
  if (dim < 63 && (std::uint64_t{1} << dim) <= opts.budget) {
    out.exhaustive = true;
    out.checked = std::uint64_t{1} << dim;
    out.passed = true;
    const std::uint64_t logical_mask = (std::uint64_t{1} << k) - 1;
    detail::for_each_nonzero_codeword(gen, [&](std::uint64_t msg, const BitVector& v) {
      const std::uint64_t s_size = std::popcount(msg & logical_mask);
      if ((v.weight() + s_size) % modulus != 0) out.passed = false;
    });
    return out;
  }

  // Sampling mode: uniform message over [logicals; stabilizers].
  out.exhaustive = false;
  out.passed = true;
  for (std::uint64_t t = 0; t < opts.trials && out.passed; ++t) {
    ++out.checked;
    detail::SplitMix64 rng = detail::stream_for(opts.seed, t);
    BitVector v(gen.cols());
    std::uint64_t s_size = 0;
    for (std::size_t i = 0; i < dim; i += 64) {
      std::uint64_t bits = rng.next();
      const std::size_t chunk = std::min<std::size_t>(64, dim - i);
      if (chunk < 64) bits &= (std::uint64_t{1} << chunk) - 1;
      for (std::size_t j = 0; j < chunk; ++j) {
        if ((bits >> j) & 1) {
          v ^= gen.row(i + j);
          if (i + j < k) ++s_size;
        }
      }
    }
    if ((v.weight() + s_size) % modulus != 0) out.passed = false;
  }
  return out;
}

/// Checks that every set of l distinct rows of the stacked [I_k G_T; 0 G_0]
/// matrix, taken as full RM(r, m) codewords including the punctured
/// coordinates, has common support divisible by 2^(nu-l+1), for each
/// l = 2..l_max.  (l = 1 is weight divisibility, checked elsewhere.)
inline bool overlap_divisibility_check(const CssCode& code, int nu, int l_max,
                                       std::uint64_t budget = kDefaultBudget) {
  if (l_max < 2) throw std::invalid_argument("overlap_divisibility_check: l_max >= 2 required");
  if (l_max > nu) throw std::invalid_argument("overlap_divisibility_check: l_max <= nu required");

  // Rebuild the full-length rows: logical row i is e_i | G_T[i], stabilizer
  // rows are 0 | G_0.
  const std::size_t k = code.logical_x.rows();
  const std::size_t n = code.logical_x.cols();
  std::vector<BitVector> rows;
  for (std::size_t i = 0; i < k; ++i) {
    BitVector full(k + n);
    full.set(i, true);
    for (std::size_t j = 0; j < n; ++j) {
      if (code.logical_x.get(i, j)) full.set(k + j, true);
    }
    rows.push_back(std::move(full));
  }
  for (std::size_t i = 0; i < code.x_stabilizers.rows(); ++i) {
    BitVector full(k + n);
    for (std::size_t j = 0; j < n; ++j) {
      if (code.x_stabilizers.get(i, j)) full.set(k + j, true);
    }
    rows.push_back(std::move(full));
  }

  WideInt subsets = 0;
  for (int l = 2; l <= l_max; ++l) subsets += binom(static_cast<int>(rows.size()), l);
  if (subsets > budget) {
    throw BudgetExceeded("overlap_divisibility_check: subset count exceeds budget",
                         subsets > UINT64_MAX ? UINT64_MAX : subsets.convert_to<std::uint64_t>(),
                         budget);
  }

  // DFS over subsets, keeping the running AND of the chosen rows.
  bool ok = true;
  auto descend = [&](auto&& self, std::size_t start, int depth, const BitVector& cur) -> void {
    if (!ok) return;
    for (std::size_t i = start; i < rows.size() && ok; ++i) {
      BitVector next = cur;
      next &= rows[i];
      const int l = depth + 1;
      if (l >= 2 && next.weight() % (std::uint64_t{1} << (nu - l + 1)) != 0) {
        ok = false;
        return;
      }
      if (l < l_max) self(self, i + 1, l, next);
    }
  };
  for (std::size_t i = 0; i < rows.size() && ok; ++i) {
    descend(descend, i + 1, 1, rows[i]);
  }
  return ok;
}

}  // namespace qrm

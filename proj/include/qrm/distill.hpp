#pragma once

// Distillation overhead analysis: the exponent gamma = log(n/k)/log d,
// concatenation schedules for the per-level error map e' = A (n e)^d, the
// asymptotic exponent 3 (1 - S(p)) / S(3p) with its optimizer, the (m, r, w)
// parameter-space scanner, and exact / Monte Carlo output-error estimates
// for the detect-and-postselect protocol under iid Z noise.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "qrm/css.hpp"
#include "qrm/errors.hpp"
#include "qrm/rm.hpp"
#include "qrm/wideint.hpp"

namespace qrm {

/// Overhead exponent log(n/k)/log(d) from exact integer logarithms.
inline double gamma(const WideInt& n, const WideInt& k, const WideInt& d) {
  if (!(k >= 1 && n > k)) throw std::invalid_argument("n > k >= 1 violated");
  if (!(d >= 2)) throw std::invalid_argument("d >= 2 violated");
  return (log2_wide(n) - log2_wide(k)) / log2_wide(d);
}

/// Binary entropy -p log2 p - (1-p) log2 (1-p), with 0 log 0 = 0.
inline double binary_entropy(double p) {
  if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("binary_entropy: p in [0,1] required");
  double s = 0.0;
  if (p > 0.0) s -= p * std::log2(p);
  if (p < 1.0) s -= (1.0 - p) * std::log2(1.0 - p);
  return s;
}

/// Large-r limit of gamma along m = 3r+1, w = 3rp: 3 (1 - S(p)) / S(3p).
/// Defined on [1/6, 1/3); the right endpoint is singular (S(1) = 0).
inline double asymptotic_gamma(double p) {
  if (!(p >= 1.0 / 6.0 && p < 1.0 / 3.0)) {
    throw std::invalid_argument("asymptotic_gamma: p in [1/6, 1/3) required");
  }
  return 3.0 * (1.0 - binary_entropy(p)) / binary_entropy(3.0 * p);
}

struct AsymptoticPoint {
  double p = 0.0;
  double gamma = 0.0;
};

/// Golden-section minimizer of asymptotic_gamma over (1/6, 1/3), to bracket
/// width tol.
inline AsymptoticPoint optimize_p(double tol) {
  if (!(tol > 0.0)) throw std::invalid_argument("optimize_p: tol > 0 required");
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 1.0 / 6.0 + 1e-9;
  double b = 1.0 / 3.0 - 1e-9;
  double c = b - (b - a) * inv_phi;
  double d = a + (b - a) * inv_phi;
  double fc = asymptotic_gamma(c);
  double fd = asymptotic_gamma(d);
  while (b - a > tol) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - (b - a) * inv_phi;
      fc = asymptotic_gamma(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + (b - a) * inv_phi;
      fd = asymptotic_gamma(d);
    }
  }
  const double p = (a + b) / 2.0;
  return AsymptoticPoint{p, asymptotic_gamma(p)};
}

/// Per-level error map e' = prefactor * (n e)^d for an [[n, k, d]] code.
struct OverheadModel {
  WideInt n, k, d;
  double prefactor = 1.0;

  void validate() const {
    if (!(k >= 1 && n > k)) throw std::invalid_argument("n > k >= 1 violated");
    if (!(d >= 2)) throw std::invalid_argument("d >= 2 violated");
    if (!(prefactor > 0.0)) throw std::invalid_argument("prefactor > 0 violated");
  }
};

struct ConcatLevel {
  int z = 0;
  double eps = 0.0;      // may underflow to 0 for very deep levels
  double log_eps = 0.0;  // natural log, exact recurrence carrier
};

struct ConcatenationTrace {
  std::vector<ConcatLevel> levels;  // levels[0] is the input error rate
  int z_final = 0;
  WideInt input_count, output_count;  // n^z and k^z, exact
  double ratio = 1.0;                 // (n/k)^z
};

/// Iterates the error map from eps_in until it reaches eps_target.  The map
/// must contract at the first level, else the input is below threshold.
inline ConcatenationTrace concat_trace(const OverheadModel& model, double eps_in,
                                       double eps_target) {
  model.validate();
  if (!(eps_in > 0.0 && eps_in < 1.0)) {
    throw std::invalid_argument("concat_trace: eps_in in (0,1) required");
  }
  if (!(eps_target > 0.0)) throw std::invalid_argument("concat_trace: eps_target > 0 required");

  ConcatenationTrace trace;
  trace.levels.push_back({0, eps_in, std::log(eps_in)});
  if (eps_in <= eps_target) {
    trace.input_count = 1;
    trace.output_count = 1;
    return trace;
  }

  const double log_n = log_wide(model.n);
  const double d = wide_to_double(model.d);
  const double log_a = std::log(model.prefactor);
  double log_eps = std::log(eps_in);
  const double log_first = log_a + d * (log_n + log_eps);
  if (!(log_first < log_eps)) {
    throw std::invalid_argument(
        "below threshold: prefactor*(n*eps_in)^d >= eps_in, the level map does not contract");
  }

  const double log_target = std::log(eps_target);
  int z = 0;
  while (log_eps > log_target) {
    log_eps = log_a + d * (log_n + log_eps);
    ++z;
    trace.levels.push_back({z, std::exp(log_eps), log_eps});
    if (z > 10000) throw std::runtime_error("concat_trace: failed to converge");
  }
  trace.z_final = z;
  trace.input_count = boost::multiprecision::pow(model.n, static_cast<unsigned>(z));
  trace.output_count = boost::multiprecision::pow(model.k, static_cast<unsigned>(z));
  trace.ratio = std::exp(static_cast<double>(z) * (log_n - log_wide(model.k)));
  if (boost::multiprecision::msb(trace.input_count) <= 1020) {
    trace.ratio = wide_to_double(trace.input_count) / wide_to_double(trace.output_count);
  }
  return trace;
}

/// Least-squares slope of log(ratio) against log log(1/eps_out) over the
/// given targets, where eps_out is the error rate actually achieved.  For a
/// fixed code the slope approaches gamma as the targets shrink.
inline double overhead_scaling_exponent(const OverheadModel& model, double eps_in,
                                        const std::vector<double>& targets) {
  if (targets.size() < 3) {
    throw std::invalid_argument("overhead_scaling_exponent: at least 3 targets required");
  }
  std::vector<double> xs, ys;
  for (double target : targets) {
    const ConcatenationTrace t = concat_trace(model, eps_in, target);
    xs.push_back(std::log(-t.levels.back().log_eps));
    ys.push_back(static_cast<double>(t.z_final) * (log_wide(model.n) - log_wide(model.k)));
  }
  const double xbar = std::accumulate(xs.begin(), xs.end(), 0.0) / xs.size();
  const double ybar = std::accumulate(ys.begin(), ys.end(), 0.0) / ys.size();
  double sxy = 0.0, sxx = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sxy += (xs[i] - xbar) * (ys[i] - ybar);
    sxx += (xs[i] - xbar) * (xs[i] - xbar);
  }
  if (sxx == 0.0) return 0.0;  // all targets landed on one level
  return sxy / sxx;
}

enum class ScanConstraint { general, m3r1 };

struct ScanRow {
  int m = 0, r = 0, w = 0, nu = 0;
  WideInt n, k, d;
  double gamma = 0.0;
  bool css_ok = false;    // 0 <= 2w < 2r < m
  bool level_ok = false;  // m > nu_min * r
};

/// Enumerates family members with 0 <= 2w < 2r < m, m > nu_min*r and
/// r <= r_max, sorted by gamma ascending.  Under the m3r1 constraint m is
/// pinned to 3r+1; in general mode m ranges up to m_max (default 3*r_max+1).
inline std::vector<ScanRow> scan(int r_max, ScanConstraint constraint, int nu_min,
                                 int m_max = 0) {
  if (r_max < 0) throw std::invalid_argument("scan: r_max >= 0 required");
  if (nu_min < 1) throw std::invalid_argument("scan: nu_min >= 1 required");
  if (m_max == 0) m_max = 3 * r_max + 1;

  std::vector<ScanRow> rows;
  for (int r = 1; r <= r_max; ++r) {
    std::vector<int> ms;
    if (constraint == ScanConstraint::m3r1) {
      if (3 * r + 1 > nu_min * r) ms.push_back(3 * r + 1);
    } else {
      for (int m = std::max(2 * r + 1, nu_min * r + 1); m <= m_max; ++m) ms.push_back(m);
    }
    for (int m : ms) {
      for (int w = 0; w < r; ++w) {
        const CodeParams p = params_formula(m, r, w);
        ScanRow row;
        row.m = m;
        row.r = r;
        row.w = w;
        row.nu = p.nu;
        row.n = p.n;
        row.k = p.k;
        row.d = p.d;
        row.gamma = p.gamma;
        row.css_ok = true;
        row.level_ok = m > nu_min * r;
        rows.push_back(std::move(row));
      }
    }
  }
  std::sort(rows.begin(), rows.end(), [](const ScanRow& a, const ScanRow& b) {
    if (a.gamma != b.gamma) return a.gamma < b.gamma;
    return std::tie(a.m, a.r, a.w) < std::tie(b.m, b.r, b.w);
  });
  return rows;
}

/// Weight distribution of the row span of `gen` (rows must be independent).
inline std::vector<WideInt> weight_enumerator(const BitMatrix& gen,
                                              std::uint64_t budget = kDefaultBudget) {
  if (rank(gen) != gen.rows()) {
    throw std::invalid_argument("weight_enumerator: generator rows must be independent");
  }
  detail::require_budget_pow2(static_cast<int>(gen.rows()), budget, "weight_enumerator");
  std::vector<WideInt> counts(gen.cols() + 1, 0);
  counts[0] = 1;
  detail::for_each_nonzero_codeword(
      gen, [&](std::uint64_t, const BitVector& v) { counts[v.weight()] += 1; });
  return counts;
}

struct ExactOutputError {
  double p_accept = 0.0;
  double eps_block = 0.0;
};

namespace detail {

inline double binomial_term(std::uint64_t count, std::size_t w, std::size_t n, double eps) {
  if (count == 0) return 0.0;
  if (eps == 0.0) return w == 0 ? static_cast<double>(count) : 0.0;
  const double log_term = static_cast<double>(w) * std::log(eps) +
                          static_cast<double>(n - w) * std::log1p(-eps);
  return static_cast<double>(count) * std::exp(log_term);
}

}  // namespace detail

/// Exact acceptance probability and post-selected block error rate under
/// iid Z flips of rate eps.  The X syndrome is trivial iff the error lies
/// in PRM(m-r-1, m, w); the accepted block is correct iff it lies in
/// SRM(m-r-1, m, w).  Computed from the exact weight enumerators of the two
/// spaces in a single sweep.
inline ExactOutputError exact_output_error(const CssCode& code, double eps,
                                           std::uint64_t budget = kDefaultBudget) {
  if (!(eps >= 0.0 && eps < 1.0)) {
    throw std::invalid_argument("exact_output_error: eps in [0,1) required");
  }
  const BitMatrix gen = stack(code.logical_z, code.z_stabilizers);
  detail::require_budget_pow2(static_cast<int>(gen.rows()), budget, "exact_output_error");

  const std::size_t n = gen.cols();
  const std::uint64_t logical_mask = (std::uint64_t{1} << code.logical_z.rows()) - 1;
  std::vector<std::uint64_t> accepted(n + 1, 0), harmless(n + 1, 0);
  accepted[0] = 1;
  harmless[0] = 1;
  detail::for_each_nonzero_codeword(gen, [&](std::uint64_t msg, const BitVector& v) {
    const std::size_t w = v.weight();
    ++accepted[w];
    if ((msg & logical_mask) == 0) ++harmless[w];
  });

  double p_accept = 0.0, p_bad = 0.0;
  for (std::size_t w = 0; w <= n; ++w) {
    p_accept += detail::binomial_term(accepted[w], w, n, eps);
    p_bad += detail::binomial_term(accepted[w] - harmless[w], w, n, eps);
  }
  return ExactOutputError{p_accept, p_accept > 0.0 ? p_bad / p_accept : 0.0};
}

struct McOutputError {
  double p_accept = 0.0;
  double p_accept_sigma = 0.0;
  double eps_block = 0.0;
  double eps_block_sigma = 0.0;
  std::uint64_t trials = 0;
  std::uint64_t accepted = 0;
  std::uint64_t accepted_error = 0;
};

/// Monte Carlo estimate of the same quantities: samples iid Z-error
/// patterns, rejects on any nonzero X-stabilizer syndrome, and detects
/// residual logical-Z content by pairing against logical_x.  Each trial
/// draws from an independent stream of (seed, trial), so results are
/// reproducible regardless of scheduling.
inline McOutputError mc_output_error(const CssCode& code, double eps, std::uint64_t trials,
                                     std::uint64_t seed) {
  if (trials < 1) throw std::invalid_argument("mc_output_error: trials >= 1 required");
  if (!(eps >= 0.0 && eps < 1.0)) {
    throw std::invalid_argument("mc_output_error: eps in [0,1) required");
  }
  const std::size_t n = static_cast<std::size_t>(code.logical_x.cols());
  const std::uint64_t threshold =
      static_cast<std::uint64_t>(eps * 18446744073709551616.0 /* 2^64 */);

  McOutputError out;
  out.trials = trials;
  for (std::uint64_t t = 0; t < trials; ++t) {
    detail::SplitMix64 rng = detail::stream_for(seed, t);
    BitVector error(n);
    for (std::size_t i = 0; i < n; ++i) {
      if (rng.next() < threshold) error.set(i, true);
    }
    bool rejected = false;
    for (std::size_t i = 0; i < code.x_stabilizers.rows() && !rejected; ++i) {
      rejected = inner_product(error, code.x_stabilizers.row(i)) != 0;
    }
    if (rejected) continue;
    ++out.accepted;
    for (std::size_t i = 0; i < code.logical_x.rows(); ++i) {
      if (inner_product(error, code.logical_x.row(i)) != 0) {
        ++out.accepted_error;
        break;
      }
    }
  }

  const double pa = static_cast<double>(out.accepted) / static_cast<double>(trials);
  out.p_accept = pa;
  out.p_accept_sigma = std::sqrt(pa * (1.0 - pa) / static_cast<double>(trials));
  if (out.accepted > 0) {
    const double pb =
        static_cast<double>(out.accepted_error) / static_cast<double>(out.accepted);
    out.eps_block = pb;
    out.eps_block_sigma = std::sqrt(pb * (1.0 - pb) / static_cast<double>(out.accepted));
  }
  return out;
}

}  // namespace qrm

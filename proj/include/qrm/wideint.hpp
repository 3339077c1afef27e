#pragma once

// Exact wide-integer arithmetic for code parameters.  Binomial sums for the
// large family members overflow 64 bits (n on 58 variables is ~2^58, and the
// scanner goes well past 128 bits), so everything here is arbitrary
// precision; nothing ever wraps.

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace qrm {

using WideInt = boost::multiprecision::cpp_int;

/// Exact binomial coefficient C(m, i); zero outside 0 <= i <= m.
inline WideInt binom(int m, int i) {
  if (m < 0) throw std::invalid_argument("binom: m >= 0 required");
  if (i < 0 || i > m) return 0;
  if (i > m - i) i = m - i;
  WideInt c = 1;
  for (int j = 1; j <= i; ++j) {
    c *= m - j + 1;
    c /= j;  // exact at every step: c is C(m, j)
  }
  return c;
}

/// Sum of C(m, i) for 0 <= i <= t; zero when t < 0.
inline WideInt binom_sum_le(int m, int t) {
  if (m < 0) throw std::invalid_argument("binom_sum_le: m >= 0 required");
  if (t < 0) return 0;
  WideInt total = 0;
  WideInt c = 1;
  const int hi = t < m ? t : m;
  for (int i = 0; i <= hi; ++i) {
    if (i > 0) {
      c *= m - i + 1;
      c /= i;
    }
    total += c;
  }
  return total;
}

/// Sum of C(m, i) for i > w, i.e. the complement of binom_sum_le.
inline WideInt binom_sum_gt(int m, int w) {
  return (WideInt{1} << m) - binom_sum_le(m, w);
}

/// log2 of a positive wide integer with ~1e-15 relative error.
inline double log2_wide(const WideInt& x) {
  if (x <= 0) throw std::invalid_argument("log2_wide: positive argument required");
  const std::size_t bits = boost::multiprecision::msb(x);  // floor(log2 x)
  if (bits <= 62) {
    return std::log2(static_cast<double>(x.convert_to<std::uint64_t>()));
  }
  const std::uint64_t top = (x >> (bits - 63)).convert_to<std::uint64_t>();
  return std::log2(static_cast<double>(top)) + static_cast<double>(bits - 63);
}

/// Natural log of a positive wide integer.
inline double log_wide(const WideInt& x) { return log2_wide(x) * M_LN2; }

/// x as double; falls back to 2^log2 for values beyond double range.
inline double wide_to_double(const WideInt& x) {
  if (x == 0) return 0.0;
  if (x < 0) throw std::invalid_argument("wide_to_double: negative");
  if (boost::multiprecision::msb(x) <= 1020) return x.convert_to<double>();
  return std::exp2(log2_wide(x));
}

}  // namespace qrm

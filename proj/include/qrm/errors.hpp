#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace qrm {

/// Thrown when an exhaustive enumeration would exceed its step budget.
/// Callers can distinguish a refusal from a computed result.
class BudgetExceeded : public std::runtime_error {
 public:
  BudgetExceeded(std::string what, std::uint64_t required, std::uint64_t allowed)
      : std::runtime_error(std::move(what)), required_(required), allowed_(allowed) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t allowed() const noexcept { return allowed_; }

 private:
  std::uint64_t required_;
  std::uint64_t allowed_;
};

/// File could not be opened, read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// File contents are not a valid code file (bad JSON, bad schema, bad hex).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

/// Refuses enumerations of 2^log2_count steps that exceed `budget`.
inline void require_budget_pow2(int log2_count, std::uint64_t budget, const char* what) {
  if (log2_count >= 63 || (std::uint64_t{1} << log2_count) > budget) {
    const std::uint64_t req =
        log2_count >= 63 ? UINT64_MAX : (std::uint64_t{1} << log2_count);
    throw BudgetExceeded(std::string(what) + ": 2^" + std::to_string(log2_count) +
                             " enumeration steps exceed budget " + std::to_string(budget),
                         req, budget);
  }
}

inline void require_budget(std::uint64_t count, std::uint64_t budget, const char* what) {
  if (count > budget) {
    throw BudgetExceeded(std::string(what) + ": " + std::to_string(count) +
                             " enumeration steps exceed budget " + std::to_string(budget),
                         count, budget);
  }
}

}  // namespace detail

}  // namespace qrm

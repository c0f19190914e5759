#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace corrwit {

using Int = std::int64_t;

enum class ErrorCode {
  LengthMismatch,
  PreconditionViolated,
  DegenerateTarget,
  NotRepresentableAsPositiveTriple,
  InternalInvariantBroken,
  NotDeJonquieresType,
  ReplayMismatch,
  BoundTooLargeForBudget,
  InvalidIndexRange,
  ArithmeticOverflow,
  MalformedInput,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::LengthMismatch: return "LengthMismatch";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::DegenerateTarget: return "DegenerateTarget";
    case ErrorCode::NotRepresentableAsPositiveTriple: return "NotRepresentableAsPositiveTriple";
    case ErrorCode::InternalInvariantBroken: return "InternalInvariantBroken";
    case ErrorCode::NotDeJonquieresType: return "NotDeJonquieresType";
    case ErrorCode::ReplayMismatch: return "ReplayMismatch";
    case ErrorCode::BoundTooLargeForBudget: return "BoundTooLargeForBudget";
    case ErrorCode::InvalidIndexRange: return "InvalidIndexRange";
    case ErrorCode::ArithmeticOverflow: return "ArithmeticOverflow";
    case ErrorCode::MalformedInput: return "MalformedInput";
  }
  return "Unknown";
}

/// Every failure raised by the library carries one of the codes above.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Overflow-checked arithmetic. Results never wrap.
namespace checked {

inline Int add(Int x, Int y) {
  Int r;
  if (__builtin_add_overflow(x, y, &r)) throw Error(ErrorCode::ArithmeticOverflow, "addition");
  return r;
}

inline Int sub(Int x, Int y) {
  Int r;
  if (__builtin_sub_overflow(x, y, &r)) throw Error(ErrorCode::ArithmeticOverflow, "subtraction");
  return r;
}

inline Int mul(Int x, Int y) {
  Int r;
  if (__builtin_mul_overflow(x, y, &r)) throw Error(ErrorCode::ArithmeticOverflow, "multiplication");
  return r;
}

}  // namespace checked

/// Largest r with r*r <= n. Requires n >= 0.
inline Int isqrt(Int n) {
  if (n < 0) throw Error(ErrorCode::PreconditionViolated, "isqrt of a negative number");
  auto r = static_cast<Int>(__builtin_sqrtl(static_cast<long double>(n)));
  while (r > 0 && static_cast<__int128>(r) * r > n) --r;
  while (static_cast<__int128>(r + 1) * (r + 1) <= n) ++r;
  return r;
}

}  // namespace corrwit

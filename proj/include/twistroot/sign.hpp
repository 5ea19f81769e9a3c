#pragma once

#include <ostream>
#include <string>

#include "twistroot/error.hpp"

namespace twistroot {

/// A value in {+1, -1}: local and global root numbers, Jacobi symbols of
/// units, correction factors.
enum class Sign : int { minus = -1, plus = 1 };

constexpr int toInt(Sign s) { return static_cast<int>(s); }

constexpr Sign operator*(Sign x, Sign y) {
  return x == y ? Sign::plus : Sign::minus;
}

constexpr Sign& operator*=(Sign& x, Sign y) { return x = x * y; }

constexpr Sign operator-(Sign x) {
  return x == Sign::plus ? Sign::minus : Sign::plus;
}

/// Converts +1/-1. Zero (a Jacobi symbol of a non-unit) is rejected.
inline Sign signFromInt(int v) {
  if (v == 1) return Sign::plus;
  if (v == -1) return Sign::minus;
  throw DomainError(ErrorKind::invalidArgument,
                    "expected a sign +1/-1, got " + std::to_string(v));
}

inline std::string toString(Sign s) { return s == Sign::plus ? "+1" : "-1"; }

inline std::ostream& operator<<(std::ostream& os, Sign s) {
  return os << toString(s);
}

}  // namespace twistroot

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <limits>
#include <string>
#include <string_view>

#include "twistroot/error.hpp"

namespace twistroot {

/// Arbitrary precision signed integer used across the public API.
using Integer = boost::multiprecision::cpp_int;

inline bool fitsInt64(const Integer& n) {
  return n >= std::numeric_limits<std::int64_t>::min() &&
         n <= std::numeric_limits<std::int64_t>::max();
}

inline bool fitsUint64(const Integer& n) {
  return n >= 0 && n <= std::numeric_limits<std::uint64_t>::max();
}

inline int sgn(const Integer& n) { return n.sign(); }

/// Least nonnegative residue of n modulo m (m > 0).
inline std::uint64_t residue(const Integer& n, std::uint64_t m) {
  if (fitsInt64(n)) {
    const auto v = static_cast<std::int64_t>(n);
    if (v >= 0) return static_cast<std::uint64_t>(v) % m;
    // -(v+1) never overflows; residue of v is m-1-((-(v+1)) mod m).
    const auto w = static_cast<std::uint64_t>(-(v + 1)) % m;
    return m - 1 - w;
  }
  Integer r = n % m;
  if (r < 0) r += m;
  return static_cast<std::uint64_t>(r);
}

inline Integer ipow(Integer base, unsigned exp) {
  Integer result = 1;
  while (exp) {
    if (exp & 1u) result *= base;
    exp >>= 1;
    if (exp) base *= base;
  }
  return result;
}

/// Parses a decimal integer of arbitrary length, with optional sign.
inline Integer parseInteger(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) {
    throw DomainError(ErrorKind::invalidArgument,
                      "not an integer: '" + std::string(text) + "'");
  }
  Integer value = 0;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c < '0' || c > '9') {
      throw DomainError(ErrorKind::invalidArgument,
                        "not an integer: '" + std::string(text) + "'");
    }
    value = value * 10 + (c - '0');
  }
  return negative ? Integer(-value) : value;
}

inline std::string toString(const Integer& n) { return n.str(); }

}  // namespace twistroot

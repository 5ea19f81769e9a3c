#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "twistroot/error.hpp"
#include "twistroot/factor.hpp"
#include "twistroot/integer.hpp"
#include "twistroot/sign.hpp"

namespace twistroot {

struct Valuation {
  unsigned v = 0;
  Integer unit;  // n / p^v, keeps the sign of n
};

namespace detail {

inline void requireNonzero(const Integer& n, const char* what) {
  if (n == 0) throw DomainError(ErrorKind::zeroInput, std::string(what) + ": zero input");
}

inline Valuation valuationUnchecked(const Integer& n, const Integer& p) {
  Valuation r{0, n};
  if (fitsInt64(n) && fitsUint64(p)) {
    auto x = static_cast<std::int64_t>(n);
    const auto q = static_cast<std::int64_t>(static_cast<std::uint64_t>(p));
    while (x % q == 0) {
      x /= q;
      ++r.v;
    }
    r.unit = x;
    return r;
  }
  Integer quotient, remainder;
  for (;;) {
    boost::multiprecision::divide_qr(r.unit, p, quotient, remainder);
    if (remainder != 0) break;
    r.unit = quotient;
    ++r.v;
  }
  return r;
}

inline int jacobi64(std::uint64_t a, std::uint64_t n) {
  a %= n;
  int result = 1;
  while (a != 0) {
    const int tz = __builtin_ctzll(a);
    a >>= tz;
    if ((tz & 1) && ((n & 7) == 3 || (n & 7) == 5)) result = -result;
    if ((a & 3) == 3 && (n & 3) == 3) result = -result;
    const std::uint64_t r = n % a;
    n = a;
    a = r;
  }
  return n == 1 ? result : 0;
}

}  // namespace detail

/// n = p^v * unit with p not dividing unit.
inline Valuation valuation(const Integer& n, const Integer& p) {
  detail::requireNonzero(n, "valuation");
  if (!isPrime(p)) {
    throw DomainError(ErrorKind::notPrime, "valuation: " + p.str() + " is not prime");
  }
  return detail::valuationUnchecked(n, p);
}

/// |n| with every prime factor of m removed.
inline Integer primeToPart(const Integer& n, const Integer& m) {
  detail::requireNonzero(n, "primeToPart");
  detail::requireNonzero(m, "primeToPart");
  Integer x = abs(n);
  Integer g = boost::multiprecision::gcd(x, abs(m));
  while (g > 1) {
    x /= g;
    g = boost::multiprecision::gcd(x, g);
  }
  return x;
}

/// sq(n): the product of primes dividing n to even positive multiplicity.
inline Integer squarePart(const Factored& f) {
  Integer s = 1;
  for (const auto& [p, e] : f.factors) {
    if (e % 2 == 0) s *= p;
  }
  return s;
}

inline Integer squarePart(const Integer& n) {
  detail::requireNonzero(n, "squarePart");
  return squarePart(factor(n));
}

/// Jacobi symbol (a/n) for odd n >= 1. Returns 0 when gcd(a, n) > 1.
inline int jacobi(const Integer& a, const Integer& n) {
  if (n <= 0 || !boost::multiprecision::bit_test(n, 0)) {
    throw DomainError(ErrorKind::notOdd,
                      "jacobi: modulus must be odd and positive, got " + n.str());
  }
  if (fitsUint64(n)) {
    const auto m = static_cast<std::uint64_t>(n);
    return detail::jacobi64(residue(a, m), m);
  }
  Integer x = a % n;
  if (x < 0) x += n;
  Integer y = n;
  int result = 1;
  while (x != 0) {
    const unsigned tz = boost::multiprecision::lsb(x);
    x >>= tz;
    const unsigned y8 = static_cast<unsigned>(y & 7);
    if ((tz & 1) && (y8 == 3 || y8 == 5)) result = -result;
    if (static_cast<unsigned>(x & 3) == 3 && (y8 & 3) == 3) result = -result;
    Integer r = y % x;
    y = std::move(x);
    x = std::move(r);
  }
  return y == 1 ? result : 0;
}

/// Jacobi symbol of a unit; gcd(a, n) > 1 is a caller bug.
inline Sign jacobiSign(const Integer& a, const Integer& n) {
  const int j = jacobi(a, n);
  if (j == 0) {
    throw DomainError(ErrorKind::invalidArgument,
                      "jacobi(" + a.str() + ", " + n.str() + ") is not a unit");
  }
  return j > 0 ? Sign::plus : Sign::minus;
}

/// t = sign * 2^twoExp * 3^threeExp * prod_{i=1}^{k-1} t_i^i.
struct PowerfreeDecomposition {
  unsigned k = 2;
  std::vector<Integer> parts;  // parts[i-1] = t_i
  unsigned twoExp = 0;
  unsigned threeExp = 0;
  Sign sign = Sign::plus;

  const Integer& part(unsigned i) const { return parts.at(i - 1); }

  Integer value() const {
    Integer v = ipow(Integer(2), twoExp) * ipow(Integer(3), threeExp);
    for (unsigned i = 1; i < k; ++i) v *= ipow(part(i), i);
    return sign == Sign::minus ? Integer(-v) : v;
  }

  /// Product of the odd-exponent parts (tau_1).
  Integer oddExponentPart() const {
    Integer v = 1;
    for (unsigned i = 1; i < k; i += 2) v *= part(i);
    return v;
  }

  /// Product of the even-exponent parts; equals sq(t) with 2 and 3 removed.
  Integer evenExponentPart() const {
    Integer v = 1;
    for (unsigned i = 2; i < k; i += 2) v *= part(i);
    return v;
  }
};

inline bool isPowerfree(const Factored& f, unsigned k) {
  for (const auto& pp : f.factors) {
    if (pp.exponent >= k) return false;
  }
  return true;
}

/// Removes k-th powers: every exponent taken mod k.
inline Factored reducePowers(const Factored& f, unsigned k) {
  Factored out;
  out.sign = f.sign;
  for (const auto& [p, e] : f.factors) {
    if (e % k) out.factors.push_back({p, e % k});
  }
  return out;
}

/// Product of two factorizations.
inline Factored multiply(const Factored& x, const Factored& y) {
  Factored out;
  out.sign = x.sign * y.sign;
  std::size_t i = 0, j = 0;
  while (i < x.factors.size() || j < y.factors.size()) {
    if (j == y.factors.size() ||
        (i < x.factors.size() && x.factors[i].prime < y.factors[j].prime)) {
      out.factors.push_back(x.factors[i++]);
    } else if (i == x.factors.size() || y.factors[j].prime < x.factors[i].prime) {
      out.factors.push_back(y.factors[j++]);
    } else {
      out.factors.push_back({x.factors[i].prime, x.factors[i].exponent + y.factors[j].exponent});
      ++i;
      ++j;
    }
  }
  return out;
}

inline PowerfreeDecomposition powerfreeDecompose(const Factored& f, unsigned k) {
  if (k != 2 && k != 4 && k != 6) {
    throw DomainError(ErrorKind::invalidArgument,
                      "powerfreeDecompose: k must be 2, 4 or 6, got " + std::to_string(k));
  }
  PowerfreeDecomposition d;
  d.k = k;
  d.sign = f.sign;
  d.parts.assign(k - 1, Integer(1));
  for (const auto& [p, e] : f.factors) {
    if (e >= k) {
      throw DomainError(ErrorKind::notPowerfree, "powerfreeDecompose: " + p.str() + "^" +
                                                     std::to_string(e) + " exceeds k = " +
                                                     std::to_string(k));
    }
    if (p == 2) {
      d.twoExp = e;
    } else if (p == 3) {
      d.threeExp = e;
    } else {
      d.parts[e - 1] *= p;
    }
  }
  return d;
}

inline PowerfreeDecomposition powerfreeDecompose(const Integer& t, unsigned k,
                                                 const FactorOptions& options = {}) {
  detail::requireNonzero(t, "powerfreeDecompose");
  return powerfreeDecompose(factor(t, options), k);
}

}  // namespace twistroot

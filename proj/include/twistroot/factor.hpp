#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "twistroot/error.hpp"
#include "twistroot/integer.hpp"
#include "twistroot/sign.hpp"

namespace twistroot {

struct PrimePower {
  Integer prime;
  unsigned exponent = 0;

  friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// A nonzero integer as sign * prod p_i^{e_i} with strictly increasing,
/// certified primes.
struct Factored {
  Sign sign = Sign::plus;
  std::vector<PrimePower> factors;

  Integer value() const {
    Integer v = 1;
    for (const auto& [p, e] : factors) v *= ipow(p, e);
    return sign == Sign::minus ? Integer(-v) : v;
  }

  unsigned exponentOf(const Integer& p) const {
    for (const auto& f : factors) {
      if (f.prime == p) return f.exponent;
      if (f.prime > p) break;
    }
    return 0;
  }

  friend bool operator==(const Factored&, const Factored&) = default;
};

/// Effort limits for factor(). The defaults factor every |n| <= 10^12
/// instantly, and any n whose second largest prime factor is below ~10^11.
struct FactorOptions {
  std::uint64_t trialBound = 1u << 16;
  std::uint64_t rhoIterations = 1u << 22;
};

namespace detail {

inline std::uint64_t mulmod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

inline std::uint64_t powmod(std::uint64_t b, std::uint64_t e, std::uint64_t m) {
  std::uint64_t r = 1 % m;
  b %= m;
  while (e) {
    if (e & 1) r = mulmod(r, b, m);
    b = mulmod(b, b, m);
    e >>= 1;
  }
  return r;
}

inline const std::vector<std::uint32_t>& smallPrimes() {
  static const std::vector<std::uint32_t> primes = [] {
    constexpr std::uint32_t limit = 1u << 16;
    std::vector<bool> composite(limit + 1, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i <= limit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t{i} * i; j <= limit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

// Deterministic for every 64-bit n (Sinclair's base set).
inline bool millerRabin64(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
    if (n % p == 0) return n == p;
  }
  std::uint64_t d = n - 1;
  unsigned s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 325ull, 9375ull, 28178ull, 450775ull, 9780504ull,
                          1795265022ull}) {
    a %= n;
    if (a == 0) continue;
    std::uint64_t x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Miller-Rabin with the first 13 prime bases; a proof of primality for
// n < 3317044064679887385961981.
inline const Integer& mrCertifiedBound() {
  static const Integer bound("3317044064679887385961981");
  return bound;
}

inline Integer powmodBig(Integer b, Integer e, const Integer& m) {
  return boost::multiprecision::powm(b, e, m);
}

inline bool millerRabinBig(const Integer& n) {
  Integer d = n - 1;
  unsigned s = 0;
  while (!boost::multiprecision::bit_test(d, 0)) {
    d >>= 1;
    ++s;
  }
  for (unsigned a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u, 41u}) {
    Integer x = powmodBig(Integer(a), d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (unsigned r = 1; r < s; ++r) {
      x = x * x % n;
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

inline std::uint64_t pollardBrent64(std::uint64_t n) {
  if ((n & 1) == 0) return 2;
  for (std::uint64_t c = 1;; ++c) {
    auto f = [&](std::uint64_t x) { return (mulmod(x, x, n) + c) % n; };
    std::uint64_t y = 2, x = 2, ys = 2, g = 1, q = 1;
    const std::uint64_t m = 128;
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += m) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = mulmod(q, x > y ? x - y : y - x, n);
        }
        g = std::gcd(q, n);
      }
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

inline void factor64(std::uint64_t n, std::vector<std::pair<Integer, unsigned>>& out) {
  const auto& primes = smallPrimes();
  for (std::uint32_t p : primes) {
    if (p > 1024 || std::uint64_t{p} * p > n) break;
    if (n % p) continue;
    unsigned e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    out.emplace_back(p, e);
  }
  if (n == 1) return;
  std::vector<std::uint64_t> stack{n};
  while (!stack.empty()) {
    const std::uint64_t m = stack.back();
    stack.pop_back();
    if (m < 1024ull * 1024ull || millerRabin64(m)) {
      out.emplace_back(m, 1);
      continue;
    }
    const std::uint64_t d = pollardBrent64(m);
    stack.push_back(d);
    stack.push_back(m / d);
  }
}

inline Integer pollardBrentBig(const Integer& n, std::uint64_t budget) {
  std::uint64_t spent = 0;
  for (unsigned c = 1; c < 64; ++c) {
    auto f = [&](const Integer& x) { return (x * x + c) % n; };
    Integer y = 2, x = 2, ys = 2, g = 1, q = 1;
    const std::uint64_t m = 128;
    for (std::uint64_t r = 1; g == 1; r <<= 1) {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) y = f(y);
      for (std::uint64_t k = 0; k < r && g == 1; k += m) {
        ys = y;
        for (std::uint64_t i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = q * (x > y ? Integer(x - y) : Integer(y - x)) % n;
        }
        g = boost::multiprecision::gcd(q, n);
        spent += m;
        if (spent > budget) return 0;
      }
      spent += r;
    }
    if (g == n) {
      do {
        ys = f(ys);
        g = boost::multiprecision::gcd(x > ys ? Integer(x - ys) : Integer(ys - x), n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
  return 0;
}

}  // namespace detail

/// Deterministic primality. Throws unfactoredCofactor for probable primes
/// beyond the range where the Miller-Rabin base set is a proof.
inline bool isPrime(const Integer& n) {
  if (n < 2) return false;
  if (n < (1u << 16)) {
    const auto& primes = detail::smallPrimes();
    return std::binary_search(primes.begin(), primes.end(), static_cast<std::uint32_t>(n));
  }
  if (fitsUint64(n)) return detail::millerRabin64(static_cast<std::uint64_t>(n));
  for (std::uint32_t p : detail::smallPrimes()) {
    if (p > 1000) break;
    if (n % p == 0) return false;
  }
  if (!detail::millerRabinBig(n)) return false;
  if (n >= detail::mrCertifiedBound()) {
    throw DomainError(ErrorKind::unfactoredCofactor,
                      "cannot certify primality of " + n.str());
  }
  return true;
}

/// Certified prime factorization of a nonzero integer.
inline Factored factor(const Integer& n, const FactorOptions& options = {}) {
  if (n == 0) throw DomainError(ErrorKind::zeroInput, "factor: zero has no factorization");
  std::vector<std::pair<Integer, unsigned>> raw;
  Integer m = n < 0 ? Integer(-n) : n;
  if (fitsUint64(m)) {
    detail::factor64(static_cast<std::uint64_t>(m), raw);
  } else {
    for (std::uint32_t p : detail::smallPrimes()) {
      if (p > options.trialBound) break;
      if (Integer(p) * p > m) break;
      if (m % p != 0) continue;
      unsigned e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      raw.emplace_back(p, e);
      if (fitsUint64(m)) break;
    }
    std::vector<Integer> stack{m};
    while (!stack.empty()) {
      Integer c = std::move(stack.back());
      stack.pop_back();
      if (c == 1) continue;
      if (fitsUint64(c)) {
        detail::factor64(static_cast<std::uint64_t>(c), raw);
        continue;
      }
      if (isPrime(c)) {
        raw.emplace_back(c, 1);
        continue;
      }
      Integer d = detail::pollardBrentBig(c, options.rhoIterations);
      if (d == 0) {
        throw DomainError(ErrorKind::unfactoredCofactor,
                          "factorization effort exceeded; unfactored cofactor " + c.str());
      }
      stack.push_back(c / d);
      stack.push_back(std::move(d));
    }
  }
  std::sort(raw.begin(), raw.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  Factored out;
  out.sign = n < 0 ? Sign::minus : Sign::plus;
  for (auto& [p, e] : raw) {
    if (!out.factors.empty() && out.factors.back().prime == p) {
      out.factors.back().exponent += e;
    } else {
      out.factors.push_back({std::move(p), e});
    }
  }
  return out;
}

}  // namespace twistroot

#pragma once

#include <algorithm>
#include <compare>
#include <optional>
#include <ostream>
#include <string>

#include "twistroot/arith.hpp"
#include "twistroot/error.hpp"
#include "twistroot/integer.hpp"

namespace twistroot {

enum class FamilyKind { quadratic, quartic, sextic };

constexpr std::string_view name(FamilyKind k) {
  switch (k) {
    case FamilyKind::quadratic: return "quadratic";
    case FamilyKind::quartic: return "quartic";
    case FamilyKind::sextic: return "sextic";
  }
  return "unknown";
}

/// y^2 = x^3 + a x + b.
class Curve {
 public:
  Curve(Integer a, Integer b) : a_(std::move(a)), b_(std::move(b)) {
    disc_ = -16 * (4 * a_ * a_ * a_ + 27 * b_ * b_);
    if (disc_ == 0) {
      throw DomainError(ErrorKind::singularCurve,
                        "y^2 = x^3 + (" + a_.str() + ")x + (" + b_.str() + ") is singular");
    }
  }

  const Integer& a() const { return a_; }
  const Integer& b() const { return b_; }
  Integer c4() const { return -48 * a_; }
  Integer c6() const { return -864 * b_; }
  const Integer& discriminant() const { return disc_; }

  FamilyKind kind() const {
    if (b_ == 0) return FamilyKind::quartic;
    if (a_ == 0) return FamilyKind::sextic;
    return FamilyKind::quadratic;
  }

  std::string str() const {
    return "y^2 = x^3 + (" + a_.str() + ")x + (" + b_.str() + ")";
  }

  friend bool operator==(const Curve& x, const Curve& y) { return x.a_ == y.a_ && x.b_ == y.b_; }

 private:
  Integer a_, b_, disc_;
};

/// p-adic order with an explicit infinity for the zero element.
class Order {
 public:
  constexpr Order() = default;
  constexpr explicit Order(unsigned v) : v_(v) {}
  static constexpr Order infinity() {
    Order o;
    o.inf_ = true;
    return o;
  }

  constexpr bool isInfinite() const { return inf_; }
  unsigned value() const {
    if (inf_) throw DomainError(ErrorKind::invalidArgument, "infinite valuation has no value");
    return v_;
  }
  constexpr bool atLeast(unsigned k) const { return inf_ || v_ >= k; }
  constexpr bool equals(unsigned k) const { return !inf_ && v_ == k; }

  constexpr Order minus(unsigned k) const { return inf_ ? *this : Order(v_ - k); }

  std::string str() const { return inf_ ? "inf" : std::to_string(v_); }

  friend constexpr bool operator==(Order, Order) = default;

 private:
  unsigned v_ = 0;
  bool inf_ = false;
};

inline Order orderAt(const Integer& n, const Integer& p) {
  if (n == 0) return Order::infinity();
  return Order(detail::valuationUnchecked(n, p).v);
}

struct Triplet {
  Order alpha, beta;
  unsigned delta = 0;

  std::string str() const {
    return "(" + alpha.str() + "," + beta.str() + "," + std::to_string(delta) + ")";
  }
  friend bool operator==(const Triplet&, const Triplet&) = default;
};

/// (v(c4), v(c6), v(Delta)) minus the largest multiple of (4,6,12) that keeps
/// every entry nonnegative.
inline Triplet minimalTriplet(Order c4, Order c6, unsigned delta) {
  unsigned k = delta / 12;
  if (!c4.isInfinite()) k = std::min(k, c4.value() / 4);
  if (!c6.isInfinite()) k = std::min(k, c6.value() / 6);
  return {c4.minus(4 * k), c6.minus(6 * k), delta - 12 * k};
}

inline Triplet tripletAt(const Curve& e, const Integer& p) {
  return minimalTriplet(orderAt(e.c4(), p), orderAt(e.c6(), p),
                        detail::valuationUnchecked(e.discriminant(), p).v);
}

class KodairaType {
 public:
  enum class Symbol { I0, In, II, III, IV, I0s, Ins, IVs, IIIs, IIs };

  constexpr KodairaType() = default;
  constexpr KodairaType(Symbol s, unsigned m = 0) : s_(s), m_(m) {}

  static constexpr KodairaType I0() { return {Symbol::I0}; }
  static constexpr KodairaType In(unsigned m) { return {Symbol::In, m}; }
  static constexpr KodairaType II() { return {Symbol::II}; }
  static constexpr KodairaType III() { return {Symbol::III}; }
  static constexpr KodairaType IV() { return {Symbol::IV}; }
  static constexpr KodairaType I0s() { return {Symbol::I0s}; }
  static constexpr KodairaType Ins(unsigned m) { return {Symbol::Ins, m}; }
  static constexpr KodairaType IVs() { return {Symbol::IVs}; }
  static constexpr KodairaType IIIs() { return {Symbol::IIIs}; }
  static constexpr KodairaType IIs() { return {Symbol::IIs}; }

  constexpr Symbol symbol() const { return s_; }
  constexpr unsigned m() const { return m_; }
  constexpr bool isGood() const { return s_ == Symbol::I0; }
  constexpr bool isMultiplicative() const { return s_ == Symbol::In; }
  constexpr bool isAdditive() const { return !isGood() && !isMultiplicative(); }

  /// Type of the quadratic twist by a p-adic uniformizer (p >= 5).
  constexpr KodairaType quadraticPartner() const {
    switch (s_) {
      case Symbol::I0: return I0s();
      case Symbol::I0s: return I0();
      case Symbol::In: return Ins(m_);
      case Symbol::Ins: return In(m_);
      case Symbol::II: return IVs();
      case Symbol::IVs: return II();
      case Symbol::IIs: return IV();
      case Symbol::IV: return IIs();
      case Symbol::III: return IIIs();
      case Symbol::IIIs: return III();
    }
    return *this;
  }

  std::string str() const {
    switch (s_) {
      case Symbol::I0: return "I0";
      case Symbol::In: return "I" + std::to_string(m_);
      case Symbol::II: return "II";
      case Symbol::III: return "III";
      case Symbol::IV: return "IV";
      case Symbol::I0s: return "I0*";
      case Symbol::Ins: return "I" + std::to_string(m_) + "*";
      case Symbol::IVs: return "IV*";
      case Symbol::IIIs: return "III*";
      case Symbol::IIs: return "II*";
    }
    return "?";
  }

  static KodairaType parse(std::string_view text) {
    for (KodairaType k : {I0(), II(), III(), IV(), I0s(), IVs(), IIIs(), IIs()}) {
      if (k.str() == text) return k;
    }
    const bool star = !text.empty() && text.back() == '*';
    std::string_view digits = text.substr(1, text.size() - 1 - (star ? 1 : 0));
    if (text.size() >= 2 && text[0] == 'I' && !digits.empty() &&
        std::all_of(digits.begin(), digits.end(), [](char c) { return c >= '0' && c <= '9'; })) {
      const auto m = static_cast<unsigned>(std::stoul(std::string(digits)));
      if (m > 0) return star ? Ins(m) : In(m);
    }
    throw DomainError(ErrorKind::invalidArgument, "unknown Kodaira type '" + std::string(text) + "'");
  }

  friend constexpr bool operator==(KodairaType, KodairaType) = default;

 private:
  Symbol s_ = Symbol::I0;
  unsigned m_ = 0;
};

inline std::ostream& operator<<(std::ostream& os, KodairaType k) { return os << k.str(); }

namespace detail {

inline void requireLargePrime(const Integer& p, const char* what) {
  if (p < 5) {
    throw DomainError(ErrorKind::primeTooSmall,
                      std::string(what) + ": needs p >= 5, got " + p.str());
  }
  if (!isPrime(p)) {
    throw DomainError(ErrorKind::notPrime, std::string(what) + ": " + p.str() + " is not prime");
  }
}

// p >= 5 classification from the orders of c4, c6 and Delta.
inline KodairaType classifyLargePrime(Order c4, Order c6, unsigned d) {
  if (d == 0) return KodairaType::I0();
  if (c4.equals(0)) return KodairaType::In(d);
  if (d > 6 && c4.equals(2) && c6.equals(3)) return KodairaType::Ins(d - 6);
  switch (d) {
    case 2: return KodairaType::II();
    case 3: return KodairaType::III();
    case 4: return KodairaType::IV();
    case 6: return KodairaType::I0s();
    case 8: return KodairaType::IVs();
    case 9: return KodairaType::IIIs();
    case 10: return KodairaType::IIs();
    default: break;
  }
  throw DomainError(ErrorKind::invalidArgument,
                    "inconsistent valuations (" + c4.str() + "," + c6.str() + "," +
                        std::to_string(d) + ")");
}

}  // namespace detail

/// Kodaira type at p >= 5 of a model that is minimal at p.
inline KodairaType baseReduction(const Curve& e, const Integer& p) {
  detail::requireLargePrime(p, "baseReduction");
  const Order c4 = orderAt(e.c4(), p);
  const Order c6 = orderAt(e.c6(), p);
  const unsigned d = detail::valuationUnchecked(e.discriminant(), p).v;
  if (c4.atLeast(4) && c6.atLeast(6) && d >= 12) {
    throw DomainError(ErrorKind::nonMinimal,
                      "baseReduction: " + e.str() + " is not minimal at " + p.str());
  }
  return detail::classifyLargePrime(c4, c6, d);
}

/// The fiber of the family at parameter t.
inline Curve twistedCurve(const Curve& base, FamilyKind kind, const Integer& t) {
  switch (kind) {
    case FamilyKind::quadratic: return Curve(base.a() * t * t, base.b() * t * t * t);
    case FamilyKind::quartic: return Curve(base.a() * t, 0);
    case FamilyKind::sextic: return Curve(0, base.b() * t);
  }
  throw DomainError(ErrorKind::invalidArgument, "unknown family kind");
}

/// Removes (p^4, p^6) scalings from a short Weierstrass model.
inline Curve minimalizeAt(const Curve& e, const Integer& p) {
  Integer a = e.a(), b = e.b();
  const Integer p4 = ipow(p, 4), p6 = ipow(p, 6);
  while ((a == 0 || a % p4 == 0) && (b == 0 || b % p6 == 0)) {
    a /= p4;
    b /= p6;
  }
  return Curve(a, b);
}

inline void requireFamily(const Curve& base, FamilyKind kind) {
  if (base.kind() != kind) {
    throw DomainError(ErrorKind::wrongFamily, base.str() + " is a " +
                                                  std::string(name(base.kind())) +
                                                  " base, expected " + std::string(name(kind)));
  }
}

/// Type at p >= 5 of the fiber E_t, read off the family structure. For
/// quadratic families the base type is computed from a model minimal at p.
inline KodairaType kodairaAtLargePrime(const Curve& base, FamilyKind kind, const Integer& t,
                                       const Integer& p) {
  detail::requireLargePrime(p, "kodairaAtLargePrime");
  detail::requireNonzero(t, "kodairaAtLargePrime");
  requireFamily(base, kind);
  switch (kind) {
    case FamilyKind::sextic: {
      static constexpr KodairaType byOrder[6] = {
          KodairaType::I0(),  KodairaType::II(),  KodairaType::IV(),
          KodairaType::I0s(), KodairaType::IVs(), KodairaType::IIs()};
      return byOrder[detail::valuationUnchecked(base.b() * t, p).v % 6];
    }
    case FamilyKind::quartic: {
      static constexpr KodairaType byOrder[4] = {KodairaType::I0(), KodairaType::III(),
                                                 KodairaType::I0s(), KodairaType::IIIs()};
      return byOrder[detail::valuationUnchecked(base.a() * t, p).v % 4];
    }
    case FamilyKind::quadratic: {
      const KodairaType k = baseReduction(minimalizeAt(base, p), p);
      return detail::valuationUnchecked(t, p).v % 2 ? k.quadraticPartner() : k;
    }
  }
  throw DomainError(ErrorKind::invalidArgument, "unknown family kind");
}

}  // namespace twistroot

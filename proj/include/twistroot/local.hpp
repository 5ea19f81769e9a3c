#pragma once

#include <string>
#include <string_view>

#include "twistroot/arith.hpp"
#include "twistroot/reduction.hpp"
#include "twistroot/sign.hpp"

namespace twistroot {

enum class LocalRule {
  rohrlichP5,
  vaSextic2,
  vaSextic3,
  vaQuartic2,
  vaQuartic3,
  quadraticSpecial2,
  quadraticSpecial3,
  userTable,
};

constexpr std::string_view name(LocalRule r) {
  switch (r) {
    case LocalRule::rohrlichP5: return "rohrlich-p5";
    case LocalRule::vaSextic2: return "va-sextic-2";
    case LocalRule::vaSextic3: return "va-sextic-3";
    case LocalRule::vaQuartic2: return "va-quartic-2";
    case LocalRule::vaQuartic3: return "va-quartic-3";
    case LocalRule::quadraticSpecial2: return "quadratic-special-2";
    case LocalRule::quadraticSpecial3: return "quadratic-special-3";
    case LocalRule::userTable: return "user-table";
  }
  return "unknown";
}

inline LocalRule parseLocalRule(std::string_view text) {
  for (LocalRule r : {LocalRule::rohrlichP5, LocalRule::vaSextic2, LocalRule::vaSextic3,
                      LocalRule::vaQuartic2, LocalRule::vaQuartic3, LocalRule::quadraticSpecial2,
                      LocalRule::quadraticSpecial3, LocalRule::userTable}) {
    if (name(r) == text) return r;
  }
  throw DomainError(ErrorKind::invalidArgument, "unknown local rule '" + std::string(text) + "'");
}

struct LocalRootResult {
  Integer p;
  Sign sign = Sign::plus;
  LocalRule rule = LocalRule::rohrlichP5;

  friend bool operator==(const LocalRootResult&, const LocalRootResult&) = default;
};

namespace detail {

// Signed unit part of n at p, reduced into [0, m).
inline std::uint64_t unitResidue(const Integer& n, unsigned p, std::uint64_t m) {
  return residue(valuationUnchecked(n, Integer(p)).unit, m);
}

inline Sign minusIf(bool c) { return c ? Sign::minus : Sign::plus; }

}  // namespace detail

/// Rohrlich's local root number at p >= 5. For multiplicative types b is the
/// constant coefficient of a model minimal at p.
inline Sign rohrlichLocal(KodairaType type, const Integer& p, const Integer& b = 0) {
  detail::requireLargePrime(p, "rohrlichLocal");
  using S = KodairaType::Symbol;
  switch (type.symbol()) {
    case S::I0: return Sign::plus;
    case S::II:
    case S::IIs:
    case S::I0s:
    case S::Ins: return jacobiSign(-1, p);
    case S::III:
    case S::IIIs: return jacobiSign(-2, p);
    case S::IV:
    case S::IVs: return jacobiSign(-3, p);
    case S::In: {
      if (b == 0 || b % p == 0) {
        throw DomainError(ErrorKind::invalidArgument,
                          "rohrlichLocal: b must be a unit at " + p.str() + " for type " +
                              type.str());
      }
      return -jacobiSign(6 * b, p);
    }
  }
  return Sign::plus;
}

/// W_2 of y^2 = x^3 + u.
inline Sign w2Sextic(const Integer& u) {
  detail::requireNonzero(u, "w2Sextic");
  const auto [v, unit] = detail::valuationUnchecked(u, 2);
  const unsigned r = v % 6;
  if (r == 0 || r == 2) return Sign::minus;
  return detail::minusIf(residue(unit, 4) == 3);
}

/// W_3 of y^2 = x^3 + u.
inline Sign w3Sextic(const Integer& u) {
  detail::requireNonzero(u, "w3Sextic");
  const auto [v, unit] = detail::valuationUnchecked(u, 3);
  const unsigned r = v % 6;
  const std::uint64_t u3 = residue(unit, 3), u9 = residue(unit, 9);
  switch (r) {
    case 1:
    case 2: return detail::minusIf(u3 == 1);
    case 4:
    case 5: return detail::minusIf(u3 == 2);
    case 0: return detail::minusIf(u9 == 5 || u9 == 7);
    default: return detail::minusIf(u9 == 2 || u9 == 4);
  }
}

/// W_2 of y^2 = x^3 + u x.
inline Sign w2Quartic(const Integer& u) {
  detail::requireNonzero(u, "w2Quartic");
  const auto [v, unit] = detail::valuationUnchecked(u, 2);
  const std::uint64_t u8 = residue(unit, 8), u16 = residue(unit, 16);
  switch (v % 4) {
    case 1: return detail::minusIf(u8 == 1 || u8 == 3);
    case 3: return detail::minusIf(u8 == 5 || u8 == 7);
    case 0: return detail::minusIf(u16 != 3 && u16 != 7);
    default: return detail::minusIf(u16 != 9 && u16 != 13);
  }
}

/// W_3 of y^2 = x^3 + u x.
inline Sign w3Quartic(const Integer& u) {
  detail::requireNonzero(u, "w3Quartic");
  return detail::minusIf(detail::valuationUnchecked(u, 3).v % 4 == 2);
}

struct SpecialTwoVerdict {
  bool isSpecial = false;
  Sign epsilon = Sign::plus;  // meaningful only when isSpecial
  Triplet triplet;
};

/// Whether W_2(E_t) follows the Jacobi-like law eps * chi_{-4}(t_(2)).
inline SpecialTwoVerdict specialTwoVerdict(const Curve& base) {
  requireFamily(base, FamilyKind::quadratic);
  SpecialTwoVerdict out;
  out.triplet = tripletAt(base, 2);
  const Triplet& tr = out.triplet;
  const std::uint64_t b4 = detail::unitResidue(base.b(), 2, 4);
  const bool firstGroup = (tr.alpha.equals(0) && tr.beta.equals(0) && tr.delta == 0) ||
                          (tr.alpha.equals(2) && tr.beta.equals(3) && tr.delta == 6);
  const bool secondGroup = (tr.alpha.atLeast(4) && tr.beta.equals(3) && tr.delta == 0) ||
                           (tr.alpha.atLeast(6) && tr.beta.equals(6) && tr.delta == 6);
  if (firstGroup) {
    out.isSpecial = true;
    out.epsilon = b4 == 3 ? Sign::plus : Sign::minus;
  } else if (secondGroup) {
    out.isSpecial = true;
    out.epsilon = b4 == 1 ? Sign::plus : Sign::minus;
  }
  return out;
}

/// chi_{-4} of the signed odd part of t.
inline Sign chiMinus4OddPart(const Integer& t) {
  return residue(detail::valuationUnchecked(t, 2).unit, 4) == 1 ? Sign::plus : Sign::minus;
}

inline Sign w2QuadraticSpecial(const SpecialTwoVerdict& verdict, const Integer& t) {
  detail::requireNonzero(t, "w2QuadraticSpecial");
  if (!verdict.isSpecial) {
    throw DomainError(ErrorKind::insufficientLocalData,
                      "W2: base triplet " + verdict.triplet.str() +
                          " is not special at 2; a user local table is required");
  }
  return verdict.epsilon * chiMinus4OddPart(t);
}

inline Sign w2QuadraticSpecial(const Curve& base, const Integer& t) {
  return w2QuadraticSpecial(specialTwoVerdict(base), t);
}

struct SpecialThreeVerdict {
  bool isSpecial = false;
  Sign eta = Sign::plus;  // W_3(E); meaningful only when isSpecial
  Triplet triplet;
};

/// Whether W_3(E_t) = eta * (-1)^{v_3(t)}.
inline SpecialThreeVerdict specialThreeVerdict(const Curve& base) {
  requireFamily(base, FamilyKind::quadratic);
  SpecialThreeVerdict out;
  out.triplet = tripletAt(base, 3);
  const Triplet& tr = out.triplet;
  const bool aTwo = detail::unitResidue(base.a(), 3, 3) == 2;
  auto is = [&](unsigned al, unsigned be, unsigned de) {
    return tr.alpha.equals(al) && tr.beta.equals(be) && tr.delta == de;
  };
  if (is(0, 0, 0) || (tr.alpha.equals(1) && tr.beta.atLeast(3) && tr.delta == 0) ||
      (is(1, 2, 0) && aTwo)) {
    out.isSpecial = true;
    out.eta = Sign::plus;
  } else if (is(2, 3, 6) || (tr.alpha.equals(3) && tr.beta.atLeast(6) && tr.delta == 6) ||
             (is(3, 5, 6) && aTwo)) {
    out.isSpecial = true;
    out.eta = Sign::minus;
  }
  return out;
}

inline Sign w3QuadraticSpecial(const SpecialThreeVerdict& verdict, const Integer& t) {
  detail::requireNonzero(t, "w3QuadraticSpecial");
  if (!verdict.isSpecial) {
    throw DomainError(ErrorKind::insufficientLocalData,
                      "W3: base triplet " + verdict.triplet.str() +
                          " is not special at 3; a user local table is required");
  }
  return verdict.eta * detail::minusIf(detail::valuationUnchecked(t, 3).v % 2 == 1);
}

inline Sign w3QuadraticSpecial(const Curve& base, const Integer& t) {
  return w3QuadraticSpecial(specialThreeVerdict(base), t);
}

}  // namespace twistroot

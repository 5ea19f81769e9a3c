#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "twistroot/arith.hpp"
#include "twistroot/local.hpp"
#include "twistroot/local_table.hpp"
#include "twistroot/reduction.hpp"

namespace twistroot {

struct JacobiFactor {
  std::string symbol;
  Sign sign = Sign::plus;

  friend bool operator==(const JacobiFactor&, const JacobiFactor&) = default;
};

struct LargePrimeFactor {
  Integer p;
  Sign sign = Sign::plus;
  KodairaType type;

  friend bool operator==(const LargePrimeFactor&, const LargePrimeFactor&) = default;
};

struct RootNumberBreakdown {
  FamilyKind kind = FamilyKind::sextic;
  Integer a, b, t;
  Integer parameter;  // effective parameter: reduced bt, at, or squarefree t
  Sign total = Sign::plus;
  Sign leadingInfinity = Sign::minus;
  LocalRootResult w2, w3;
  std::vector<JacobiFactor> jacobiFactors;
  std::vector<LargePrimeFactor> largePrimeFactors;
  std::vector<std::string> notices;

  Sign product() const {
    Sign s = leadingInfinity * w2.sign * w3.sign;
    for (const auto& j : jacobiFactors) s *= j.sign;
    for (const auto& l : largePrimeFactors) s *= l.sign;
    return s;
  }

  friend bool operator==(const RootNumberBreakdown&, const RootNumberBreakdown&) = default;
};

/// Parameter of a quartic/sextic fiber (coefficient times t, k-th powers removed)
/// or the squarefree kernel of a quadratic t.
struct EffectiveParameter {
  Integer value;
  Factored factored;
  bool reduced = false;
};

inline unsigned powerDegree(FamilyKind kind) {
  switch (kind) {
    case FamilyKind::quadratic: return 2;
    case FamilyKind::quartic: return 4;
    case FamilyKind::sextic: return 6;
  }
  return 2;
}

inline EffectiveParameter effectiveParameter(FamilyKind kind, const Factored& coefficient,
                                             const Integer& t, const FactorOptions& options = {}) {
  detail::requireNonzero(t, "effectiveParameter");
  const unsigned k = powerDegree(kind);
  const Factored raw = multiply(coefficient, factor(t, options));
  EffectiveParameter out;
  out.reduced = !isPowerfree(raw, k);
  out.factored = out.reduced ? reducePowers(raw, k) : raw;
  out.value = out.factored.value();
  return out;
}

inline EffectiveParameter effectiveParameter(FamilyKind kind, const Integer& coefficient,
                                             const Integer& t, const FactorOptions& options = {}) {
  detail::requireNonzero(coefficient, "effectiveParameter");
  return effectiveParameter(kind, factor(coefficient, options), t, options);
}

namespace detail {

inline std::string jacobiText(const std::string& top, const Integer& bottom) {
  return "(" + top + "/" + bottom.str() + ")";
}

}  // namespace detail

/// -W2(u) W3(u) (-1/|u_(6)|) (sq(u)_(6)/3) for a 6th-powerfree u.
inline Sign sexticSign(const Factored& u) {
  const Integer value = u.value();
  const auto d = powerfreeDecompose(u, 6);
  return -(w2Sextic(value) * w3Sextic(value) * jacobiSign(-1, d.oddExponentPart()) *
           jacobiSign(d.evenExponentPart(), 3));
}

/// -W2(u) W3(u) (-2/|u_(6)|) (-1/sq(u)_(6)) for a 4th-powerfree u.
inline Sign quarticSign(const Factored& u) {
  const Integer value = u.value();
  const auto d = powerfreeDecompose(u, 4);
  return -(w2Quartic(value) * w3Quartic(value) * jacobiSign(-2, d.oddExponentPart()) *
           jacobiSign(-1, d.evenExponentPart()));
}

namespace detail {

inline RootNumberBreakdown closedFormBreakdown(FamilyKind kind, const Integer& coefficient,
                                               const Integer& t, const FactorOptions& options) {
  detail::requireNonzero(coefficient, "root number");
  detail::requireNonzero(t, "root number");
  const auto eff = effectiveParameter(kind, coefficient, t, options);
  const bool sextic = kind == FamilyKind::sextic;
  RootNumberBreakdown r;
  r.kind = kind;
  r.a = sextic ? Integer(0) : coefficient;
  r.b = sextic ? coefficient : Integer(0);
  r.t = t;
  r.parameter = eff.value;
  if (eff.reduced) {
    r.notices.push_back(std::string(sextic ? "b*t = " : "a*t = ") + Integer(coefficient * t).str() +
                        " reduced by " + (sextic ? "6th" : "4th") + " powers to " +
                        eff.value.str());
  }
  const auto d = powerfreeDecompose(eff.factored, sextic ? 6 : 4);
  const Integer tau1 = d.oddExponentPart(), tau2 = d.evenExponentPart();
  if (sextic) {
    r.w2 = {2, w2Sextic(eff.value), LocalRule::vaSextic2};
    r.w3 = {3, w3Sextic(eff.value), LocalRule::vaSextic3};
    r.jacobiFactors.push_back({jacobiText("-1", tau1), jacobiSign(-1, tau1)});
    r.jacobiFactors.push_back({"(" + tau2.str() + "/3)", jacobiSign(tau2, 3)});
  } else {
    r.w2 = {2, w2Quartic(eff.value), LocalRule::vaQuartic2};
    r.w3 = {3, w3Quartic(eff.value), LocalRule::vaQuartic3};
    r.jacobiFactors.push_back({jacobiText("-2", tau1), jacobiSign(-2, tau1)});
    r.jacobiFactors.push_back({jacobiText("-1", tau2), jacobiSign(-1, tau2)});
  }
  r.total = r.product();
  return r;
}

}  // namespace detail

/// Root number of y^2 = x^3 + b t.
inline RootNumberBreakdown rootNumberSextic(const Integer& b, const Integer& t,
                                            const FactorOptions& options = {}) {
  return detail::closedFormBreakdown(FamilyKind::sextic, b, t, options);
}

/// Root number of y^2 = x^3 + a t x.
inline RootNumberBreakdown rootNumberQuartic(const Integer& a, const Integer& t,
                                             const FactorOptions& options = {}) {
  return detail::closedFormBreakdown(FamilyKind::quartic, a, t, options);
}

enum class VariationReason { coprimeMult, coprimeOther, IIIPair, I0Pair, IIIVPair, ImPair };

constexpr std::string_view name(VariationReason r) {
  switch (r) {
    case VariationReason::coprimeMult: return "coprime-mult";
    case VariationReason::coprimeOther: return "coprime-other";
    case VariationReason::IIIPair: return "III-pair";
    case VariationReason::I0Pair: return "I0-pair";
    case VariationReason::IIIVPair: return "II-IV-pair";
    case VariationReason::ImPair: return "Im-pair";
  }
  return "unknown";
}

struct VariationFactor {
  Integer p;
  Sign dp = Sign::plus;
  VariationReason reason = VariationReason::coprimeOther;
};

/// D_p = W_p(E_t) W_p(E) for p >= 5, squarefree t and b_unit = b_(p) of a model
/// of E minimal at p.
inline VariationFactor variationFactor(KodairaType baseType, const Integer& p, const Integer& t,
                                       const Integer& bUnit) {
  detail::requireLargePrime(p, "variationFactor");
  detail::requireNonzero(t, "variationFactor");
  const auto [v, tUnit] = detail::valuationUnchecked(t, p);
  VariationFactor out{p, Sign::plus, VariationReason::coprimeOther};
  using S = KodairaType::Symbol;
  if (v == 0) {
    if (baseType.isMultiplicative()) {
      out.dp = jacobiSign(t, p);
      out.reason = VariationReason::coprimeMult;
    }
    return out;
  }
  switch (baseType.symbol()) {
    case S::III:
    case S::IIIs: out.reason = VariationReason::IIIPair; break;
    case S::I0:
    case S::I0s:
      out.dp = jacobiSign(-1, p);
      out.reason = VariationReason::I0Pair;
      break;
    case S::II:
    case S::IIs:
    case S::IV:
    case S::IVs:
      out.dp = jacobiSign(3, p);
      out.reason = VariationReason::IIIVPair;
      break;
    case S::In:
      out.dp = -jacobiSign(-6 * bUnit, p);
      out.reason = VariationReason::ImPair;
      break;
    case S::Ins:
      out.dp = -jacobiSign(-6 * bUnit * tUnit, p);
      out.reason = VariationReason::ImPair;
      break;
  }
  return out;
}

struct BadPrime {
  Integer p;
  KodairaType type;
  Integer bUnit;  // b_(p) of a model minimal at p
};

/// A quadratic-twist base curve with everything that does not depend on t.
class QuadraticBase {
 public:
  explicit QuadraticBase(Curve curve, std::optional<UserLocalTable> table = std::nullopt,
                         const FactorOptions& options = {})
      : curve_(std::move(curve)), table_(std::move(table)), options_(options) {
    requireFamily(curve_, FamilyKind::quadratic);
    disc_ = factor(curve_.discriminant(), options_);
    for (const auto& [p, e] : disc_.factors) {
      if (p < 5) continue;
      const Curve m = minimalizeAt(curve_, p);
      bad_.push_back({p, baseReduction(m, p), detail::valuationUnchecked(m.b(), p).unit});
      if (bad_.back().type.isMultiplicative()) deltaM_ *= p;
    }
    two_ = specialTwoVerdict(curve_);
    three_ = specialThreeVerdict(curve_);
  }

  const Curve& curve() const { return curve_; }
  const Factored& discriminant() const { return disc_; }
  const std::vector<BadPrime>& badPrimes() const { return bad_; }
  const Integer& deltaM() const { return deltaM_; }
  const SpecialTwoVerdict& two() const { return two_; }
  const SpecialThreeVerdict& three() const { return three_; }
  const std::optional<UserLocalTable>& table() const { return table_; }
  const FactorOptions& options() const { return options_; }

  /// W_2(E_t), from the user table if it covers 2, else the special law.
  std::optional<LocalRootResult> w2(const Integer& t) const {
    if (table_ && table_->covers(2)) return LocalRootResult{2, *table_->lookup(2, t), LocalRule::userTable};
    if (two_.isSpecial) return LocalRootResult{2, w2QuadraticSpecial(two_, t), LocalRule::quadraticSpecial2};
    return std::nullopt;
  }

  std::optional<LocalRootResult> w3(const Integer& t) const {
    if (table_ && table_->covers(3)) return LocalRootResult{3, *table_->lookup(3, t), LocalRule::userTable};
    if (three_.isSpecial) return LocalRootResult{3, w3QuadraticSpecial(three_, t), LocalRule::quadraticSpecial3};
    return std::nullopt;
  }

  bool hasLocalData() const {
    return (two_.isSpecial || (table_ && table_->covers(2))) &&
           (three_.isSpecial || (table_ && table_->covers(3)));
  }

  /// Squarefree kernel of t (sign kept).
  Factored kernel(const Integer& t) const {
    detail::requireNonzero(t, "quadratic twist");
    return reducePowers(factor(t, options_), 2);
  }

 private:
  Curve curve_;
  std::optional<UserLocalTable> table_;
  FactorOptions options_;
  Factored disc_;
  std::vector<BadPrime> bad_;
  Integer deltaM_ = 1;
  SpecialTwoVerdict two_;
  SpecialThreeVerdict three_;
};

namespace detail {

[[noreturn]] inline void missingLocalData(const QuadraticBase& base, bool need2, bool need3) {
  std::string which = need2 && need3 ? "W2 and W3" : need2 ? "W2" : "W3";
  throw DomainError(ErrorKind::insufficientLocalData,
                    which + " of twists of " + base.curve().str() +
                        " not covered by the special laws; supply a local table");
}

// W_p(E_t) at a bad prime p >= 5 for squarefree t via the pairing of types.
inline LargePrimeFactor twistedBadFactor(const BadPrime& bp, const Integer& t) {
  const auto [v, tUnit] = valuationUnchecked(t, bp.p);
  const KodairaType type = v % 2 ? bp.type.quadraticPartner() : bp.type;
  Sign s;
  if (type.isMultiplicative()) {
    s = -jacobiSign(6 * bp.bUnit * tUnit, bp.p);
  } else {
    s = rohrlichLocal(type, bp.p);
  }
  return {bp.p, s, type};
}

}  // namespace detail

/// Product formula for a squarefree t with caller-supplied W2(E_t), W3(E_t).
inline RootNumberBreakdown rootNumberQuadraticAbsolute(const QuadraticBase& base, const Integer& t,
                                                       const LocalRootResult& w2,
                                                       const LocalRootResult& w3) {
  const Factored k = base.kernel(t);
  RootNumberBreakdown r;
  r.kind = FamilyKind::quadratic;
  r.a = base.curve().a();
  r.b = base.curve().b();
  r.t = t;
  r.parameter = k.value();
  if (r.parameter != t) {
    r.notices.push_back("t = " + t.str() + " replaced by its squarefree kernel " +
                        r.parameter.str());
  }
  r.w2 = w2;
  r.w3 = w3;
  Integer t6D = abs(r.parameter);
  for (const auto& [p, e] : k.factors) {
    if (p == 2 || p == 3) t6D /= p;
  }
  for (const auto& bp : base.badPrimes()) {
    if (k.exponentOf(bp.p)) t6D /= bp.p;
    r.largePrimeFactors.push_back(detail::twistedBadFactor(bp, r.parameter));
  }
  r.jacobiFactors.push_back({detail::jacobiText("-1", t6D), jacobiSign(-1, t6D)});
  r.total = r.product();
  return r;
}

inline RootNumberBreakdown rootNumberQuadraticAbsolute(const QuadraticBase& base,
                                                       const Integer& t) {
  const Integer kt = base.kernel(t).value();
  const auto w2 = base.w2(kt);
  const auto w3 = base.w3(kt);
  if (!w2 || !w3) detail::missingLocalData(base, !w2, !w3);
  return rootNumberQuadraticAbsolute(base, t, *w2, *w3);
}

inline RootNumberBreakdown rootNumberQuadratic(const Curve& base, const Integer& t) {
  return rootNumberQuadraticAbsolute(QuadraticBase(base), t);
}

struct CFactorReport {
  Sign c2 = Sign::plus, c3 = Sign::plus, cM = Sign::plus, c0 = Sign::plus, cDelta = Sign::plus;
  Sign product = Sign::plus;
  Sign d2 = Sign::plus, d3 = Sign::plus;
  std::string d2Source, d3Source;  // "special-law", "user-table" or "local-square"
  std::vector<VariationFactor> factors;
};

/// C with W(E_t) = C * W(E) for squarefree t.
inline CFactorReport rootNumberQuadraticRelative(const QuadraticBase& base, const Integer& t) {
  const Factored k = base.kernel(t);
  const Integer kt = k.value();
  CFactorReport c;
  auto local = [&](unsigned p, std::uint64_t squareResidue, std::string& source) -> std::optional<Sign> {
    const auto wt = p == 2 ? base.w2(kt) : base.w3(kt);
    const auto w1 = p == 2 ? base.w2(1) : base.w3(1);
    if (wt && w1) {
      source = wt->rule == LocalRule::userTable ? "user-table" : "special-law";
      return wt->sign * w1->sign;
    }
    if (residue(kt, p == 2 ? 8 : 3) == squareResidue) {
      source = "local-square";
      return Sign::plus;
    }
    return std::nullopt;
  };
  const auto d2 = local(2, 1, c.d2Source);
  const auto d3 = local(3, 1, c.d3Source);
  if (!d2 || !d3) detail::missingLocalData(base, !d2, !d3);
  c.d2 = *d2;
  c.d3 = *d3;
  const auto [v2, t2] = detail::valuationUnchecked(kt, 2);
  const auto v3 = detail::valuationUnchecked(kt, 3).v;
  c.c2 = c.d2 * jacobiSign(-1, abs(t2));
  c.c3 = c.d3 * detail::minusIf(v3 % 2 == 1);
  Integer tPrime = 1;
  for (const auto& bp : base.badPrimes()) {
    const auto vf = variationFactor(bp.type, bp.p, kt, bp.bUnit);
    if (bp.type.isMultiplicative()) {
      c.cM *= vf.dp;
    } else {
      c.c0 *= vf.dp;
    }
    if (k.exponentOf(bp.p)) tPrime *= bp.p;
    c.factors.push_back(vf);
  }
  c.cDelta = jacobiSign(-1, tPrime);
  c.product = c.c2 * c.c3 * c.cM * c.c0 * c.cDelta;
  return c;
}

inline Sign oracleRootNumber(const QuadraticBase& base, const Integer& t) {
  const Factored k = base.kernel(t);
  const Integer kt = k.value();
  const auto w2 = base.w2(kt);
  const auto w3 = base.w3(kt);
  if (!w2 || !w3) detail::missingLocalData(base, !w2, !w3);
  Sign total = -(w2->sign * w3->sign);
  const Curve fiber = twistedCurve(base.curve(), FamilyKind::quadratic, kt);
  std::vector<Integer> primes;
  for (const auto& [p, e] : k.factors) primes.push_back(p);
  for (const auto& bp : base.badPrimes()) primes.push_back(bp.p);
  std::sort(primes.begin(), primes.end());
  primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
  for (const auto& p : primes) {
    if (p < 5) continue;
    const Curve m = minimalizeAt(fiber, p);
    const KodairaType type = baseReduction(m, p);
    total *= type.isMultiplicative()
                 ? rohrlichLocal(type, p, detail::valuationUnchecked(m.b(), p).unit)
                 : rohrlichLocal(type, p);
  }
  return total;
}

/// Per-prime product -W2 W3 prod_{p >= 5} W_p(E_t), each W_p read from the
/// twisted model minimalized at p. Shares no Jacobi aggregation with the
/// closed forms.
inline Sign oracleRootNumber(FamilyKind kind, const Curve& base, const Integer& t,
                             const FactorOptions& options = {}) {
  requireFamily(base, kind);
  detail::requireNonzero(t, "oracleRootNumber");
  Sign w2 = Sign::plus, w3 = Sign::plus;
  Integer param;
  Factored primes;
  switch (kind) {
    case FamilyKind::sextic: {
      const auto eff = effectiveParameter(kind, base.b(), t, options);
      param = eff.value;
      primes = eff.factored;
      w2 = w2Sextic(param);
      w3 = w3Sextic(param);
      break;
    }
    case FamilyKind::quartic: {
      const auto eff = effectiveParameter(kind, base.a(), t, options);
      param = eff.value;
      primes = eff.factored;
      w2 = w2Quartic(param);
      w3 = w3Quartic(param);
      break;
    }
    case FamilyKind::quadratic: {
      const QuadraticBase qb(base, std::nullopt, options);
      return oracleRootNumber(qb, t);
    }
  }
  Sign total = -(w2 * w3);
  const Curve fiber = kind == FamilyKind::sextic ? Curve(0, param) : Curve(param, 0);
  for (const auto& [p, e] : primes.factors) {
    if (p < 5) continue;
    total *= rohrlichLocal(baseReduction(minimalizeAt(fiber, p), p), p);
  }
  return total;
}

}  // namespace twistroot

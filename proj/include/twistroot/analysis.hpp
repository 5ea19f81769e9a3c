#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include "twistroot/global.hpp"

namespace twistroot {

/// A base curve together with its twist shape; evaluates W(E_t).
class TwistFamily {
 public:
  static TwistFamily sextic(const Integer& b, const FactorOptions& options = {}) {
    detail::requireNonzero(b, "sextic family");
    return TwistFamily(FamilyKind::sextic, Curve(0, b), factor(b, options), options);
  }
  static TwistFamily quartic(const Integer& a, const FactorOptions& options = {}) {
    detail::requireNonzero(a, "quartic family");
    return TwistFamily(FamilyKind::quartic, Curve(a, 0), factor(a, options), options);
  }
  static TwistFamily quadratic(QuadraticBase base) {
    TwistFamily f(FamilyKind::quadratic, base.curve(), Factored{}, base.options());
    f.quad_ = std::move(base);
    return f;
  }

  FamilyKind kind() const { return kind_; }
  const Curve& curve() const { return curve_; }
  const QuadraticBase* quadratic() const { return quad_ ? &*quad_ : nullptr; }
  const FactorOptions& options() const { return options_; }
  unsigned degree() const { return powerDegree(kind_); }

  /// The effective parameter of t (reduced bt, at, or t itself for quadratic).
  Factored parameter(const Factored& t) const {
    if (kind_ == FamilyKind::quadratic) return reducePowers(t, 2);
    return reducePowers(multiply(coefficient_, t), degree());
  }

  /// W(E_t) for t in the powerfree domain; nullopt when local data is missing.
  std::optional<Sign> rootNumber(const Factored& t) const {
    switch (kind_) {
      case FamilyKind::sextic: return sexticSign(parameter(t));
      case FamilyKind::quartic: return quarticSign(parameter(t));
      case FamilyKind::quadratic: {
        const Integer v = t.value();
        const auto w2 = quad_->w2(v);
        const auto w3 = quad_->w3(v);
        if (!w2 || !w3) return std::nullopt;
        return rootNumberQuadraticAbsolute(*quad_, v, *w2, *w3).total;
      }
    }
    return std::nullopt;
  }

  /// W(E_t)/W(E) for quadratic families; nullopt when D2 or D3 is unknown.
  std::optional<Sign> relative(const Integer& t) const {
    if (kind_ != FamilyKind::quadratic) {
      throw DomainError(ErrorKind::wrongFamily, "relative root numbers need a quadratic family");
    }
    try {
      return rootNumberQuadraticRelative(*quad_, t).product;
    } catch (const DomainError& e) {
      if (e.kind() == ErrorKind::insufficientLocalData) return std::nullopt;
      throw;
    }
  }

 private:
  TwistFamily(FamilyKind k, Curve c, Factored coeff, FactorOptions options)
      : kind_(k), curve_(std::move(c)), coefficient_(std::move(coeff)), options_(options) {}

  FamilyKind kind_;
  Curve curve_;
  Factored coefficient_;
  FactorOptions options_;
  std::optional<QuadraticBase> quad_;
};

namespace detail {

inline unsigned workerCount(std::size_t work) {
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  return static_cast<unsigned>(std::min<std::size_t>(hw, std::max<std::size_t>(1, work / 4096)));
}

/// Calls f(lo, hi, out) on contiguous chunks of [0, n) and concatenates the
/// per-chunk outputs in chunk order.
template <class T, class F>
std::vector<T> chunked(std::size_t n, F f) {
  const unsigned workers = workerCount(n);
  std::vector<std::vector<T>> parts(workers);
  std::vector<std::exception_ptr> errors(workers);
  auto body = [&](unsigned w) {
    try {
      f(n * w / workers, n * (w + 1) / workers, parts[w]);
    } catch (...) {
      errors[w] = std::current_exception();
    }
  };
  if (workers == 1) {
    body(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(body, w);
    for (auto& th : pool) th.join();
  }
  for (auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  std::vector<T> out;
  for (auto& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

inline std::int64_t checkedBound(const Integer& n, const char* what) {
  if (!fitsInt64(n) || n > (Integer(1) << 62)) {
    throw DomainError(ErrorKind::invalidArgument, std::string(what) + " is too large");
  }
  return static_cast<std::int64_t>(n);
}

}  // namespace detail

enum class ClassState { plus, minus, mixed, undetermined };

struct ClassKey {
  int sign = 1;
  std::uint64_t residue = 0;
  std::uint64_t sqClass = 0;

  friend auto operator<=>(const ClassKey&, const ClassKey&) = default;
};

struct ClassEntry {
  ClassState state = ClassState::undetermined;
  std::int64_t witness = 0;
  std::optional<std::int64_t> conflict;  // second witness of a mixed class
  std::uint64_t count = 0;
};

/// One scanned parameter: t with the class data of its effective parameter.
struct ProfileSample {
  std::int64_t t = 0;
  std::uint64_t residue = 0;  // mod the profile modulus
  std::uint8_t sqResidue = 0;
  std::int8_t sign = 1;  // sign of the effective parameter
  std::int8_t w = 0;     // root number, 0 when undetermined
};

struct PeriodicityProfile {
  FamilyKind kind = FamilyKind::sextic;
  Integer a, b;
  std::uint64_t modulus = 1;
  std::uint64_t squareModulus = 1;
  std::uint64_t scanBound = 0;
  std::map<ClassKey, ClassEntry> classes;
  std::vector<ProfileSample> samples;

  std::size_t count(ClassState s) const {
    return static_cast<std::size_t>(std::count_if(
        classes.begin(), classes.end(), [&](const auto& kv) { return kv.second.state == s; }));
  }
  std::size_t mixedCount() const { return count(ClassState::mixed); }
};

inline std::map<ClassKey, ClassEntry> bucket(const std::vector<ProfileSample>& samples,
                                             std::uint64_t modulus, std::uint64_t squareModulus) {
  std::map<ClassKey, ClassEntry> classes;
  for (const auto& s : samples) {
    ClassKey key{s.sign, s.residue % modulus, s.sqResidue % squareModulus};
    auto [it, fresh] = classes.try_emplace(key);
    ClassEntry& e = it->second;
    ++e.count;
    if (fresh) e.witness = s.t;
    if (s.w == 0) continue;
    const ClassState st = s.w > 0 ? ClassState::plus : ClassState::minus;
    if (e.state == ClassState::undetermined) {
      e.state = st;
      e.witness = s.t;
    } else if (e.state != ClassState::mixed && e.state != st) {
      e.state = ClassState::mixed;
      e.conflict = s.t;
    }
  }
  return classes;
}

namespace detail {

inline std::vector<ProfileSample> collectSamples(const TwistFamily& family, std::int64_t bound,
                                                 std::uint64_t modulus,
                                                 std::uint64_t squareModulus) {
  const std::size_t n = static_cast<std::size_t>(2 * bound);
  return chunked<ProfileSample>(n, [&](std::size_t lo, std::size_t hi,
                                       std::vector<ProfileSample>& out) {
    for (std::size_t i = lo; i < hi; ++i) {
      // i -> -bound..-1, 1..bound
      const std::int64_t t = static_cast<std::int64_t>(i) < bound
                                 ? static_cast<std::int64_t>(i) - bound
                                 : static_cast<std::int64_t>(i) - bound + 1;
      const Factored ft = factor(t, family.options());
      if (!isPowerfree(ft, family.degree())) continue;
      const Factored u = family.parameter(ft);
      ProfileSample s;
      s.t = t;
      const Integer uv = u.value();
      s.residue = residue(uv, modulus);
      s.sign = static_cast<std::int8_t>(uv.sign());
      if (squareModulus > 1) {
        const auto d = powerfreeDecompose(u, family.degree());
        s.sqResidue = static_cast<std::uint8_t>(residue(d.evenExponentPart(), squareModulus));
      }
      const auto w = family.rootNumber(ft);
      s.w = static_cast<std::int8_t>(w ? toInt(*w) : 0);
      out.push_back(s);
    }
  });
}

}  // namespace detail

inline constexpr std::uint64_t sexticModulus = 279936;  // 2^7 3^7
inline constexpr std::uint64_t quarticModulus = 5184;   // 2^6 3^4

/// W_p(E_t) is constant on squarefree t in one class mod the returned modulus.
inline std::uint64_t localPeriod(const QuadraticBase& base, const Integer& p) {
  if (!isPrime(p)) throw DomainError(ErrorKind::notPrime, "localPeriod: " + p.str() + " is not prime");
  if (p >= 5) {
    if (!fitsUint64(p) || p > (Integer(1) << 31)) {
      throw DomainError(ErrorKind::invalidArgument, "localPeriod: prime too large");
    }
    const auto q = static_cast<std::uint64_t>(p);
    return q * q;
  }
  const unsigned q = static_cast<unsigned>(p);
  // Q_p^*/(Q_p^*)^2 is read off t mod 16 (p = 2) or t mod 9 (p = 3).
  std::uint64_t period = q == 2 ? 16 : 9;
  if (base.table() && base.table()->covers(q)) {
    period = std::min(period, *base.table()->period(q));
  } else if (q == 2 && base.two().isSpecial) {
    period = 8;
  } else if (q == 3 && base.three().isSpecial) {
    period = 3;
  }
  return period;
}

inline std::uint64_t quadraticModulus(const QuadraticBase& base) {
  std::uint64_t m = std::max<std::uint64_t>(8, localPeriod(base, 2)) *
                    std::max<std::uint64_t>(3, localPeriod(base, 3));
  for (const auto& bp : base.badPrimes()) {
    const std::uint64_t q = localPeriod(base, bp.p);
    if (m > (std::uint64_t{1} << 62) / q) {
      throw DomainError(ErrorKind::invalidArgument, "period modulus overflows 64 bits");
    }
    m *= q;
  }
  return m;
}

inline PeriodicityProfile profileFamily(const TwistFamily& family, std::uint64_t scanBound,
                                        std::uint64_t modulus, std::uint64_t squareModulus) {
  if (modulus == 0 || squareModulus == 0) {
    throw DomainError(ErrorKind::invalidArgument, "moduli must be positive");
  }
  if (scanBound / 3 < modulus) {
    throw DomainError(ErrorKind::scanBoundTooSmall,
                      "scan bound " + std::to_string(scanBound) + " is below three periods (3*" +
                          std::to_string(modulus) + ")");
  }
  const auto bound = detail::checkedBound(Integer(scanBound), "scan bound");
  PeriodicityProfile p;
  p.kind = family.kind();
  p.a = family.curve().a();
  p.b = family.curve().b();
  p.modulus = modulus;
  p.squareModulus = squareModulus;
  p.scanBound = scanBound;
  p.samples = detail::collectSamples(family, bound, modulus, squareModulus);
  p.classes = bucket(p.samples, modulus, squareModulus);
  return p;
}

inline PeriodicityProfile profileSextic(const Integer& b, std::uint64_t scanBound,
                                        const FactorOptions& options = {}) {
  return profileFamily(TwistFamily::sextic(b, options), scanBound, sexticModulus, 3);
}

inline PeriodicityProfile profileQuartic(const Integer& a, std::uint64_t scanBound,
                                         const FactorOptions& options = {}) {
  return profileFamily(TwistFamily::quartic(a, options), scanBound, quarticModulus, 4);
}

inline PeriodicityProfile profileQuadratic(const QuadraticBase& base, std::uint64_t scanBound) {
  return profileFamily(TwistFamily::quadratic(base), scanBound, quadraticModulus(base), 1);
}

/// Class map over explicit parameter values (e.g. the points of a subfamily).
inline PeriodicityProfile profileValues(const TwistFamily& family, const std::vector<Integer>& ts,
                                        std::uint64_t modulus, std::uint64_t squareModulus) {
  PeriodicityProfile p;
  p.kind = family.kind();
  p.a = family.curve().a();
  p.b = family.curve().b();
  p.modulus = modulus;
  p.squareModulus = squareModulus;
  for (const auto& t : ts) {
    const Factored ft = reducePowers(factor(t, family.options()), family.degree());
    const Factored u = family.parameter(ft);
    ProfileSample s;
    s.t = detail::checkedBound(ft.value(), "parameter");
    const Integer uv = u.value();
    s.residue = residue(uv, modulus);
    s.sign = static_cast<std::int8_t>(uv.sign());
    if (squareModulus > 1) {
      s.sqResidue = static_cast<std::uint8_t>(
          residue(powerfreeDecompose(u, family.degree()).evenExponentPart(), squareModulus));
    }
    const auto w = family.rootNumber(ft);
    s.w = static_cast<std::int8_t>(w ? toInt(*w) : 0);
    p.samples.push_back(s);
  }
  p.classes = bucket(p.samples, modulus, squareModulus);
  return p;
}

struct ModulusCheck {
  std::uint64_t modulus = 1;
  std::uint64_t squareModulus = 1;
  std::size_t classes = 0;
  std::size_t mixed = 0;
  bool valid() const { return mixed == 0; }
};

inline ModulusCheck checkModulus(const PeriodicityProfile& p, std::uint64_t modulus,
                                 std::uint64_t squareModulus) {
  if (modulus == 0 || p.modulus % modulus != 0 || squareModulus == 0 ||
      p.squareModulus % squareModulus != 0) {
    throw DomainError(ErrorKind::invalidArgument,
                      "(" + std::to_string(modulus) + ", " + std::to_string(squareModulus) +
                          ") must divide the profile moduli (" + std::to_string(p.modulus) +
                          ", " + std::to_string(p.squareModulus) + ")");
  }
  const auto classes = bucket(p.samples, modulus, squareModulus);
  ModulusCheck c{modulus, squareModulus, classes.size(), 0};
  for (const auto& [k, e] : classes) c.mixed += e.state == ClassState::mixed;
  return c;
}

/// Smallest divisor moduli with no mixed class over the scanned samples,
/// found by removing one prime factor at a time.
inline ModulusCheck searchMinimalModulus(const PeriodicityProfile& p) {
  ModulusCheck best = checkModulus(p, p.modulus, p.squareModulus);
  if (!best.valid()) return best;
  std::vector<std::uint64_t> primes;
  {
    std::uint64_t m = p.modulus;
    for (std::uint64_t q = 2; q * q <= m; ++q) {
      if (m % q == 0) primes.push_back(q);
      while (m % q == 0) m /= q;
    }
    if (m > 1) primes.push_back(m);
  }
  for (std::uint64_t q : primes) {
    while (best.modulus % q == 0) {
      const auto c = checkModulus(p, best.modulus / q, best.squareModulus);
      if (!c.valid()) break;
      best = c;
    }
  }
  for (std::uint64_t s = 1; s < best.squareModulus; ++s) {
    if (p.squareModulus % s) continue;
    const auto c = checkModulus(p, best.modulus, s);
    if (c.valid()) {
      best = c;
      break;
    }
  }
  return best;
}

enum class ConstancyOverall { signDetermined, notSignDetermined, undetermined };

constexpr std::string_view name(ConstancyOverall o) {
  switch (o) {
    case ConstancyOverall::signDetermined: return "sign-determined";
    case ConstancyOverall::notSignDetermined: return "not-sign-determined";
    case ConstancyOverall::undetermined: return "undetermined";
  }
  return "unknown";
}

struct ConstancyVerdict {
  bool holdsA = false, holdsB = false, holdsC = false, holdsD = false;
  std::vector<std::string> diagnostics;
  ConstancyOverall overall = ConstancyOverall::undetermined;
};

/// Whether W(E_t) depends only on sgn(t) for squarefree t.
inline ConstancyVerdict constancyCriterion(const Curve& curve, const FactorOptions& options = {}) {
  requireFamily(curve, FamilyKind::quadratic);
  ConstancyVerdict v;
  std::optional<QuadraticBase> base;
  try {
    base.emplace(curve, std::nullopt, options);
  } catch (const DomainError& e) {
    if (e.kind() != ErrorKind::unfactoredCofactor) throw;
    v.diagnostics.push_back(std::string("discriminant: ") + e.what());
    return v;
  }
  v.holdsA = true;
  v.holdsD = true;
  for (const auto& bp : base->badPrimes()) {
    using S = KodairaType::Symbol;
    const std::string where = "p = " + bp.p.str() + " (" + bp.type.str() + ")";
    const auto s = bp.type.symbol();
    if (s == S::In) {
      v.holdsA = false;
      v.diagnostics.push_back("(a) fails: multiplicative reduction at " + where);
    } else if (s == S::Ins) {
      v.holdsD = false;
      v.diagnostics.push_back("(d) fails: potentially multiplicative reduction at " + where);
    } else if ((s == S::III || s == S::IIIs) && residue(bp.p, 4) != 1) {
      v.holdsD = false;
      v.diagnostics.push_back("(d) fails: " + where + " with p != 1 mod 4");
    } else if ((s == S::II || s == S::IIs || s == S::IV || s == S::IVs) &&
               residue(bp.p, 6) != 1) {
      v.holdsD = false;
      v.diagnostics.push_back("(d) fails: " + where + " with p != 1 mod 6");
    } else {
      v.diagnostics.push_back("p = " + bp.p.str() + ": " + bp.type.str() + " ok");
    }
  }
  v.holdsB = base->two().isSpecial;
  v.holdsC = base->three().isSpecial;
  v.diagnostics.push_back(std::string("(b) triplet at 2 ") + base->two().triplet.str() +
                          (v.holdsB ? " special" : " not special"));
  v.diagnostics.push_back(std::string("(c) triplet at 3 ") + base->three().triplet.str() +
                          (v.holdsC ? " special" : " not special"));
  v.overall = v.holdsA && v.holdsB && v.holdsC && v.holdsD ? ConstancyOverall::signDetermined
                                                           : ConstancyOverall::notSignDetermined;
  return v;
}

enum class ScanMode { absolute, relative };

struct SignScan {
  ScanMode mode = ScanMode::absolute;
  std::uint64_t plusCount = 0, minusCount = 0, undetermined = 0, skipped = 0;
  std::vector<Integer> plusSamples, minusSamples;
};

/// W(E_t) (or W(E_t)/W(E) in relative mode) over the powerfree t in [lo, hi].
inline SignScan scanSigns(const TwistFamily& family, const Integer& lo, const Integer& hi,
                          ScanMode mode = ScanMode::absolute, std::size_t maxSamples = 10) {
  if (lo > hi) throw DomainError(ErrorKind::invalidArgument, "empty range");
  if (mode == ScanMode::relative && family.kind() != FamilyKind::quadratic) {
    throw DomainError(ErrorKind::wrongFamily, "relative scans need a quadratic family");
  }
  const auto l = detail::checkedBound(lo, "range"), h = detail::checkedBound(hi, "range");
  struct Hit {
    std::int64_t t;
    std::int8_t w;
  };
  const auto n = static_cast<std::size_t>(h - l + 1);
  const auto hits = detail::chunked<Hit>(n, [&](std::size_t a, std::size_t b, std::vector<Hit>& out) {
    for (std::size_t i = a; i < b; ++i) {
      const std::int64_t t = l + static_cast<std::int64_t>(i);
      if (t == 0) continue;
      const Factored ft = factor(t, family.options());
      if (!isPowerfree(ft, family.degree())) {
        out.push_back({t, 2});
        continue;
      }
      const auto w = mode == ScanMode::absolute ? family.rootNumber(ft) : family.relative(t);
      out.push_back({t, static_cast<std::int8_t>(w ? toInt(*w) : 0)});
    }
  });
  SignScan s;
  s.mode = mode;
  for (const auto& [t, w] : hits) {
    if (w == 2) {
      ++s.skipped;
    } else if (w == 1) {
      if (s.plusSamples.size() < maxSamples) s.plusSamples.push_back(t);
      ++s.plusCount;
    } else if (w == -1) {
      if (s.minusSamples.size() < maxSamples) s.minusSamples.push_back(t);
      ++s.minusCount;
    } else {
      ++s.undetermined;
    }
  }
  return s;
}

struct FlipWitness {
  Integer t;
  CFactorReport factors;
};

/// A squarefree t > 0, t = 1 mod 24, with W(E_t) = -W(E). Candidates are
/// q and c*q for primes q and c a bad prime of the base.
inline std::optional<FlipWitness> flipWitness(const QuadraticBase& base,
                                              std::uint64_t searchLimit = 100000) {
  std::vector<Integer> cofactors{1};
  for (const auto& bp : base.badPrimes()) cofactors.push_back(bp.p);
  for (std::uint64_t q = 5; q <= searchLimit; ++q) {
    if (!isPrime(q)) continue;
    for (const auto& c : cofactors) {
      if (c == q) continue;
      const Integer t = c * q;
      if (residue(t, 24) != 1) continue;
      try {
        auto r = rootNumberQuadraticRelative(base, t);
        if (r.product == Sign::minus) return FlipWitness{t, std::move(r)};
      } catch (const DomainError& e) {
        if (e.kind() != ErrorKind::insufficientLocalData) throw;
      }
    }
  }
  return std::nullopt;
}

}  // namespace twistroot

#include <gtest/gtest.h>

#include "twistroot/reduction.hpp"

using namespace twistroot;

namespace {

std::vector<std::int64_t> largePrimes(std::int64_t limit) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 5; p < limit; ++p) {
    if (isPrime(p)) out.push_back(p);
  }
  return out;
}

}  // namespace

TEST(Curve, Invariants) {
  const Curve e(-91, 182);
  EXPECT_EQ(e.c4(), 48 * 91);
  EXPECT_EQ(e.c6(), -864 * 182);
  EXPECT_EQ(e.discriminant(), ipow(Integer(2), 12) * 49 * 169);
  EXPECT_EQ(e.kind(), FamilyKind::quadratic);
  EXPECT_EQ(Curve(0, 5).kind(), FamilyKind::sextic);
  EXPECT_EQ(Curve(5, 0).kind(), FamilyKind::quartic);
  EXPECT_THROW(Curve(-3, 2), DomainError);
  EXPECT_THROW(Curve(0, 0), DomainError);
}

TEST(MinimalTriplet, Examples) {
  EXPECT_EQ(minimalTriplet(Order(8), Order(11), 12), (Triplet{Order(4), Order(5), 0}));
  EXPECT_EQ(minimalTriplet(Order(0), Order(0), 0), (Triplet{Order(0), Order(0), 0}));
  EXPECT_EQ(minimalTriplet(Order::infinity(), Order(13), 26),
            (Triplet{Order::infinity(), Order(1), 2}));
  EXPECT_EQ(minimalTriplet(Order(9), Order::infinity(), 27),
            (Triplet{Order(1), Order::infinity(), 3}));
}

TEST(MinimalTriplet, E1PlusAtTwo) {
  // raw orders of y^2 = x^3 - 91x + 182 at 2 are (4, 6, 12); one step reduces to (0,0,0)
  const Curve e(-91, 182);
  EXPECT_EQ(orderAt(e.c4(), 2), Order(4));
  EXPECT_EQ(orderAt(e.c6(), 2), Order(6));
  EXPECT_EQ(detail::valuationUnchecked(e.discriminant(), 2).v, 12u);
  EXPECT_EQ(tripletAt(e, 2), (Triplet{Order(0), Order(0), 0}));
  EXPECT_EQ(tripletAt(e, 3), (Triplet{Order(1), Order(3), 0}));
}

TEST(KodairaType, NamesAndPartners) {
  EXPECT_EQ(KodairaType::Ins(3).str(), "I3*");
  EXPECT_EQ(KodairaType::parse("I3*"), KodairaType::Ins(3));
  EXPECT_EQ(KodairaType::parse("IV*"), KodairaType::IVs());
  EXPECT_EQ(KodairaType::parse("I12"), KodairaType::In(12));
  EXPECT_THROW(KodairaType::parse("V"), DomainError);
  EXPECT_THROW(KodairaType::parse("I0x"), DomainError);
  for (auto k : {KodairaType::I0(), KodairaType::In(4), KodairaType::II(), KodairaType::III(),
                 KodairaType::IV(), KodairaType::I0s(), KodairaType::Ins(2), KodairaType::IVs(),
                 KodairaType::IIIs(), KodairaType::IIs()}) {
    EXPECT_EQ(k.quadraticPartner().quadraticPartner(), k);
    EXPECT_EQ(KodairaType::parse(k.str()), k);
  }
  EXPECT_EQ(KodairaType::II().quadraticPartner(), KodairaType::IVs());
  EXPECT_EQ(KodairaType::IIs().quadraticPartner(), KodairaType::IV());
}

TEST(BaseReduction, Examples) {
  EXPECT_EQ(baseReduction(Curve(-91, 182), 7), KodairaType::II());
  EXPECT_EQ(baseReduction(Curve(-91, 182), 13), KodairaType::II());
  EXPECT_EQ(baseReduction(Curve(-91, 182), 5), KodairaType::I0());
  // Delta = -16 * 27 * 125 * 129 with c4 a 5-unit
  const Curve m(-3, 2 + 125);
  ASSERT_EQ(detail::valuationUnchecked(m.discriminant(), 5).v, 3u);
  EXPECT_EQ(baseReduction(m, 5), KodairaType::In(3));
}

TEST(BaseReduction, Errors) {
  EXPECT_THROW(baseReduction(Curve(-91, 182), 3), DomainError);
  EXPECT_THROW(baseReduction(Curve(-91, 182), 9), DomainError);
  try {
    baseReduction(Curve(625, 15625), 5);
    FAIL();
  } catch (const DomainError& e) {
    EXPECT_EQ(e.kind(), ErrorKind::nonMinimal);
  }
}

TEST(KodairaAtLargePrime, Examples) {
  const Integer p = 7;
  EXPECT_EQ(kodairaAtLargePrime(Curve(0, 1), FamilyKind::sextic, ipow(p, 4), p), KodairaType::IVs());
  EXPECT_EQ(kodairaAtLargePrime(Curve(1, 0), FamilyKind::quartic, 3, p), KodairaType::I0());
  EXPECT_EQ(kodairaAtLargePrime(Curve(-91, 182), FamilyKind::quadratic, 7, p), KodairaType::IVs());
  EXPECT_THROW(kodairaAtLargePrime(Curve(0, 1), FamilyKind::sextic, 2, 3), DomainError);
  EXPECT_THROW(kodairaAtLargePrime(Curve(0, 1), FamilyKind::quartic, 2, 7), DomainError);
}

TEST(KodairaAtLargePrime, SexticMatchesTwistedModel) {
  for (std::int64_t b : {1, 6, 16, -432}) {
    const Curve base(0, b);
    for (std::int64_t t = -10000; t <= 10000; ++t) {
      if (t == 0) continue;
      const Factored ft = factor(t);
      if (!isPowerfree(ft, 6)) continue;
      const Factored u = multiply(factor(b), ft);
      const Curve fiber = twistedCurve(base, FamilyKind::sextic, t);
      for (const auto& [p, e] : u.factors) {
        if (p < 5) continue;
        ASSERT_EQ(kodairaAtLargePrime(base, FamilyKind::sextic, t, p),
                  baseReduction(minimalizeAt(fiber, p), p))
            << "b=" << b << " t=" << t << " p=" << p;
      }
    }
  }
}

TEST(KodairaAtLargePrime, QuarticMatchesTwistedModel) {
  for (std::int64_t a : {1, -1, -49, 10}) {
    const Curve base(a, 0);
    for (std::int64_t t = -5000; t <= 5000; ++t) {
      if (t == 0) continue;
      const Factored ft = factor(t);
      if (!isPowerfree(ft, 4)) continue;
      const Curve fiber = twistedCurve(base, FamilyKind::quartic, t);
      for (const auto& [p, e] : multiply(factor(a), ft).factors) {
        if (p < 5) continue;
        ASSERT_EQ(kodairaAtLargePrime(base, FamilyKind::quartic, t, p),
                  baseReduction(minimalizeAt(fiber, p), p));
      }
    }
  }
}

TEST(KodairaAtLargePrime, QuadraticPairingMatchesTwistedModel) {
  // bases covering I0, I_m, I_m*, II, III, IV, I0* and starred types at small primes
  const std::vector<std::pair<int, int>> bases = {
      {-91, 182}, {-200, -398}, {-200, -250}, {-176, -242}, {-140, -350},
      {-100, -250}, {-1, 1}, {5, -7}, {-43, 166}, {35, 98}, {-25 * 7, 125 * 2}};
  for (const auto& [a, b] : bases) {
    const Curve base(a, b);
    for (std::int64_t t = -300; t <= 300; ++t) {
      if (t == 0) continue;
      const Factored ft = factor(t);
      if (!isPowerfree(ft, 2)) continue;
      const Curve fiber = twistedCurve(base, FamilyKind::quadratic, t);
      for (std::int64_t p : largePrimes(40)) {
        ASSERT_EQ(kodairaAtLargePrime(base, FamilyKind::quadratic, t, p),
                  baseReduction(minimalizeAt(fiber, p), p))
            << a << " " << b << " t=" << t << " p=" << p;
      }
    }
  }
}

TEST(KodairaAtLargePrime, TwistInvolution) {
  const Curve base(-91, 182);
  for (std::int64_t t : {5, 7, -13, 91, 35, -1, 1}) {
    for (std::int64_t p : largePrimes(50)) {
      const KodairaType once = kodairaAtLargePrime(base, FamilyKind::quadratic, t, p);
      const Curve twice = twistedCurve(twistedCurve(base, FamilyKind::quadratic, t),
                                       FamilyKind::quadratic, t);
      EXPECT_EQ(baseReduction(minimalizeAt(twice, p), p), baseReduction(minimalizeAt(base, p), p));
      EXPECT_EQ(once.quadraticPartner().quadraticPartner(), once);
    }
  }
}

TEST(KodairaAtLargePrime, DependsOnlyOnOrderClass) {
  for (std::int64_t t = 1; t <= 400; ++t) {
    for (std::int64_t p : {5, 7, 11}) {
      const Integer tp6 = Integer(t) * ipow(Integer(p), 6);
      const Integer tp4 = Integer(t) * ipow(Integer(p), 4);
      EXPECT_EQ(kodairaAtLargePrime(Curve(0, 1), FamilyKind::sextic, t, p),
                kodairaAtLargePrime(Curve(0, 1), FamilyKind::sextic, tp6, p));
      EXPECT_EQ(kodairaAtLargePrime(Curve(1, 0), FamilyKind::quartic, t, p),
                kodairaAtLargePrime(Curve(1, 0), FamilyKind::quartic, tp4, p));
    }
  }
}

#include <gtest/gtest.h>

#include <set>
#include <sstream>

#include "twistroot/local_table.hpp"

using namespace twistroot;

namespace {

const Curve e1plus(-91, 182);

UserLocalTable tableFrom(const std::string& text) {
  std::istringstream in(text);
  return UserLocalTable::parse(in);
}

ErrorKind tableError(const std::string& text) {
  try {
    tableFrom(text);
  } catch (const DomainError& e) {
    return e.kind();
  }
  ADD_FAILURE() << "table accepted";
  return ErrorKind::invalidArgument;
}

}  // namespace

TEST(Rohrlich, Examples) {
  EXPECT_EQ(rohrlichLocal(KodairaType::I0(), 101), Sign::plus);
  EXPECT_EQ(rohrlichLocal(KodairaType::III(), 5), Sign::minus);
  EXPECT_EQ(rohrlichLocal(KodairaType::IV(), 7), Sign::plus);
  EXPECT_EQ(rohrlichLocal(KodairaType::II(), 7), Sign::minus);
  EXPECT_EQ(rohrlichLocal(KodairaType::Ins(4), 13), Sign::plus);
  EXPECT_EQ(rohrlichLocal(KodairaType::In(2), 5, 1), -jacobiSign(6, 5));
  EXPECT_THROW(rohrlichLocal(KodairaType::II(), 3), DomainError);
  EXPECT_THROW(rohrlichLocal(KodairaType::In(1), 5, 10), DomainError);
}

TEST(Rohrlich, MultiplicativeAgreesWithLegendre) {
  for (std::int64_t p = 5; p < 1000; ++p) {
    if (!isPrime(p)) continue;
    for (std::int64_t b = 1; b < 40; ++b) {
      if (b % p == 0) continue;
      std::int64_t r = 6 * b % p;
      bool square = false;
      for (std::int64_t x = 1; x < p && !square; ++x) square = x * x % p == r;
      EXPECT_EQ(rohrlichLocal(KodairaType::In(2), p, b), square ? Sign::minus : Sign::plus);
    }
  }
}

TEST(VaSextic, Examples) {
  EXPECT_EQ(w2Sextic(5), Sign::minus);
  EXPECT_EQ(w3Sextic(5), Sign::minus);
  EXPECT_EQ(w2Sextic(6), Sign::minus);
}

TEST(VaSextic, PeriodicOnPowerfreeClasses) {
  // W2 is 2^6-periodic in the 2-unit and W3 3^6-periodic in the 3-unit; check
  // three repetitions of each period at every valuation class.
  for (unsigned v = 0; v < 6; ++v) {
    for (std::int64_t u = 1; u < 64; u += 2) {
      const Sign ref = w2Sextic(ipow(Integer(2), v) * u);
      for (int k = 1; k <= 3; ++k) {
        EXPECT_EQ(w2Sextic(ipow(Integer(2), v) * (u + 64 * k)), ref);
        EXPECT_EQ(w2Sextic(ipow(Integer(2), v) * (u - 64 * k)), ref);
      }
    }
    for (std::int64_t u = 1; u < 729; ++u) {
      if (u % 3 == 0) continue;
      const Sign ref = w3Sextic(ipow(Integer(3), v) * u);
      for (int k = 1; k <= 3; ++k) EXPECT_EQ(w3Sextic(ipow(Integer(3), v) * (u + 729 * k)), ref);
    }
  }
}

TEST(VaQuartic, Examples) {
  EXPECT_EQ(w3Quartic(9), Sign::minus);
  EXPECT_EQ(w3Quartic(3), Sign::plus);
  EXPECT_EQ(w2Quartic(1), Sign::minus);
}

TEST(VaQuartic, DependsOnlyOnClasses) {
  for (std::int64_t t = -3000; t <= 3000; ++t) {
    if (t == 0) continue;
    const auto v2 = valuation(t, 2), v3 = valuation(t, 3);
    const Integer shifted2 = ipow(Integer(2), v2.v + 4) * (v2.unit + 16);
    EXPECT_EQ(w2Quartic(t), w2Quartic(shifted2));
    EXPECT_EQ(w3Quartic(t), w3Quartic(ipow(Integer(3), v3.v + 4) * (v3.unit * 5)));
  }
}

TEST(VaQuartic, IsogenyInvariance) {
  // y^2 = x^3 + u x and y^2 = x^3 - 4u x are 2-isogenous; local root numbers agree.
  for (std::int64_t u = -4096; u <= 4096; ++u) {
    if (u == 0) continue;
    EXPECT_EQ(w2Quartic(u), w2Quartic(-4 * u)) << u;
    EXPECT_EQ(w3Quartic(u), w3Quartic(-4 * u)) << u;
  }
}

TEST(SpecialTwo, Examples) {
  const auto v = specialTwoVerdict(e1plus);
  EXPECT_TRUE(v.isSpecial);
  EXPECT_EQ(v.triplet, (Triplet{Order(0), Order(0), 0}));
  EXPECT_EQ(v.epsilon, Sign::plus);  // b_(2) = 91 = 3 mod 4
  EXPECT_FALSE(specialTwoVerdict(Curve(-1, 1)).isSpecial);

  const Curve g236(-300, -2608), g430(-288, -2992), g666(-300, -2998);
  EXPECT_EQ(specialTwoVerdict(g236).triplet, (Triplet{Order(2), Order(3), 6}));
  EXPECT_EQ(specialTwoVerdict(g430).triplet, (Triplet{Order(5), Order(3), 0}));
  EXPECT_EQ(specialTwoVerdict(g666).triplet.delta, 6u);
  for (const Curve& c : {g236, g430, g666}) EXPECT_TRUE(specialTwoVerdict(c).isSpecial);
  // b_(2): 2608 = 16 * 163, -163 = 1 mod 4; 2992 = 16 * 187, -187 = 1; 2998 = 2 * 1499, -1499 = 1
  EXPECT_EQ(specialTwoVerdict(g236).epsilon, Sign::minus);
  EXPECT_EQ(specialTwoVerdict(g430).epsilon, Sign::plus);
  EXPECT_EQ(specialTwoVerdict(g666).epsilon, Sign::plus);
  EXPECT_THROW(specialTwoVerdict(Curve(0, 1)), DomainError);
}

TEST(SpecialTwo, LawShape) {
  const auto v = specialTwoVerdict(e1plus);
  EXPECT_EQ(w2QuadraticSpecial(v, 1), Sign::plus);
  for (std::int64_t t = 1; t <= 256; ++t) {
    EXPECT_EQ(w2QuadraticSpecial(v, -t), -w2QuadraticSpecial(v, t));
  }
  for (std::int64_t t = -256; t <= 256; ++t) {
    for (std::int64_t s = -256; s <= 256; ++s) {
      if (t == 0 || s == 0 || (t > 0) != (s > 0)) continue;
      const auto ut = valuation(t, 2), us = valuation(s, 2);
      if (ut.v % 2 != us.v % 2 || residue(ut.unit, 4) != residue(us.unit, 4)) continue;
      EXPECT_EQ(w2QuadraticSpecial(v, t), w2QuadraticSpecial(v, s));
    }
  }
  EXPECT_THROW(w2QuadraticSpecial(Curve(-1, 1), 5), DomainError);
}

TEST(SpecialThree, Examples) {
  const auto v = specialThreeVerdict(e1plus);
  EXPECT_TRUE(v.isSpecial);
  EXPECT_EQ(v.triplet, (Triplet{Order(1), Order(3), 0}));
  EXPECT_EQ(v.eta, Sign::plus);
  EXPECT_EQ(w3QuadraticSpecial(v, 1), Sign::plus);
  EXPECT_EQ(w3QuadraticSpecial(v, 3), Sign::minus);
  EXPECT_EQ(w3QuadraticSpecial(v, -21), Sign::minus);
  EXPECT_EQ(w3QuadraticSpecial(v, 9 * 2), Sign::plus);

  const auto g236 = specialThreeVerdict(Curve(-300, -2999));
  EXPECT_EQ(g236.triplet, (Triplet{Order(2), Order(3), 6}));
  EXPECT_TRUE(g236.isSpecial);
  EXPECT_EQ(g236.eta, Sign::minus);
  const auto g3x6 = specialThreeVerdict(Curve(-288, -2997));
  EXPECT_TRUE(g3x6.isSpecial);
  EXPECT_EQ(g3x6.eta, Sign::minus);
  EXPECT_THROW(w3QuadraticSpecial(Curve(0, 1), 5), DomainError);
}

TEST(SpecialThree, ResidueCondition) {
  // (1,2,0) and (3,5,6) are special only when a_(3) = 2 mod 3
  const Curve plain120(-162, -2673), special120(162, -2673);
  ASSERT_EQ(specialThreeVerdict(plain120).triplet, (Triplet{Order(1), Order(2), 0}));
  ASSERT_EQ(specialThreeVerdict(special120).triplet, (Triplet{Order(1), Order(2), 0}));
  EXPECT_FALSE(specialThreeVerdict(plain120).isSpecial);
  EXPECT_TRUE(specialThreeVerdict(special120).isSpecial);
  EXPECT_EQ(specialThreeVerdict(special120).eta, Sign::plus);

  const Curve plain356(-288, -2988), special356(288, -2988);
  ASSERT_EQ(specialThreeVerdict(plain356).triplet, (Triplet{Order(3), Order(5), 6}));
  ASSERT_EQ(specialThreeVerdict(special356).triplet, (Triplet{Order(3), Order(5), 6}));
  EXPECT_FALSE(specialThreeVerdict(plain356).isSpecial);
  EXPECT_TRUE(specialThreeVerdict(special356).isSpecial);
  EXPECT_EQ(specialThreeVerdict(special356).eta, Sign::minus);
  EXPECT_THROW(w3QuadraticSpecial(plain356, 7), DomainError);
}

TEST(UserTable, LoadAndLookup) {
  const auto table = tableFrom(
      "# W2 only\n"
      "rootnum-local-table 1\n"
      "2, 2, 4, 0, 1 -> +1\n"
      "2, 2, 4, 0, 3 -> -1\n"
      "2, 2, 4, 1, 1 -> -1   # trailing comment\n"
      "2, 2, 4, 1, 3 -> +1\n");
  EXPECT_TRUE(table.covers(2));
  EXPECT_FALSE(table.covers(3));
  EXPECT_EQ(*table.lookup(2, 5), Sign::plus);
  EXPECT_EQ(*table.lookup(2, -5), Sign::minus);
  EXPECT_EQ(*table.lookup(2, 10), Sign::minus);
  EXPECT_FALSE(table.lookup(3, 5).has_value());
  EXPECT_EQ(*table.period(2), 8u);
}

TEST(UserTable, Errors) {
  EXPECT_EQ(tableError("2, 1, 4, 0, 1 -> +1\n"), ErrorKind::malformedTable);
  EXPECT_EQ(tableError("rootnum-local-table 1\n2, 1, 4, 0, 1 -> +1\n"), ErrorKind::incompleteTable);
  EXPECT_EQ(tableError("rootnum-local-table 1\n2, 1, 2, 0, 1 -> +1\n2, 1, 2, 0, 1 -> -1\n"),
            ErrorKind::duplicateTableEntry);
  EXPECT_EQ(tableError("rootnum-local-table 1\n2, 1, 6, 0, 1 -> +1\n"), ErrorKind::malformedTable);
  EXPECT_EQ(tableError("rootnum-local-table 1\n5, 1, 5, 0, 1 -> +1\n"), ErrorKind::malformedTable);
  EXPECT_EQ(tableError("rootnum-local-table 1\n3, 1, 3, 0, 1 -> 0\n"), ErrorKind::malformedTable);
  EXPECT_EQ(tableError("rootnum-local-table 1\n3, 1, 3, 0, 3 -> +1\n"), ErrorKind::malformedTable);
  EXPECT_EQ(tableError("rootnum-local-table 1\n3, 1, 3, 0, 1 -> +1\n3, 2, 3, 0, 2 -> +1\n"),
            ErrorKind::malformedTable);
  EXPECT_EQ(tableError(""), ErrorKind::malformedTable);
}

TEST(UserTable, AuditAgainstSpecialLaws) {
  const auto good = UserLocalTable::load(std::string(TWISTROOT_SAMPLES) + "/e1plus.table");
  EXPECT_TRUE(auditTable(good, e1plus).empty());
  const auto flipped = tableFrom(
      "rootnum-local-table 1\n"
      "3, 2, 3, 0, 1 -> +1\n3, 2, 3, 0, 2 -> +1\n"
      "3, 2, 3, 1, 1 -> +1\n3, 2, 3, 1, 2 -> +1\n");
  const auto issues = auditTable(flipped, e1plus);
  EXPECT_FALSE(issues.empty());
  for (const auto& d : issues) EXPECT_EQ(d.p, 3u);
}

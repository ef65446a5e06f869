#include <gtest/gtest.h>

#include <numeric>

#include "besse/seifert.hpp"

using namespace besse;

// L(p,a) and L(p,b) are homeomorphic iff b = +-a^(+-1) mod p.
bool homeomorphic_by_search(long long p, long long a, long long b) {
  auto md = [p](long long x) { return ((x % p) + p) % p; };
  for (long long sign : {1, -1}) {
    if (md(b - sign * a) == 0)
      return true;
    if (md(a * b - sign) == 0)
      return true;
  }
  return false;
}

TEST(Lens, NormalFormIsTheLeastEquivalentResidue) {
  for (long long p = 2; p <= 40; ++p)
    for (long long q = -p; q <= 2 * p; ++q) {
      if (std::gcd(p, q) != 1)
        continue;
      LensSpace l = lens_normalize(p, q);
      EXPECT_EQ(l.p, p);
      long long least = p;
      for (long long c = 0; c < p; ++c)
        if (std::gcd(c, p) == 1 && homeomorphic_by_search(p, q, c)) {
          least = c;
          break;
        }
      EXPECT_EQ(l.q, least) << "p=" << p << " q=" << q;
    }
}

TEST(Lens, EquivalenceMatchesSearch) {
  for (long long p = 2; p <= 25; ++p)
    for (long long a = 1; a < p; ++a)
      for (long long b = 1; b < p; ++b)
        if (std::gcd(a, p) == 1 && std::gcd(b, p) == 1) {
          EXPECT_EQ(lens_equivalent({p, a}, {p, b}), homeomorphic_by_search(p, a, b))
              << p << " " << a << " " << b;
        }
}

TEST(Lens, DegenerateCases) {
  EXPECT_EQ(lens_normalize(1, 5), (LensSpace{1, 0}));
  EXPECT_EQ(lens_normalize(0, 1), (LensSpace{0, 0}));
  EXPECT_EQ(lens_normalize(-7, 3), lens_normalize(7, 3));
  EXPECT_TRUE(lens_normalize(1, 0).is_sphere());
  EXPECT_EQ((LensSpace{0, 0}).str(), "S2xS1");
  try {
    lens_normalize(6, 4);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::NotCoprime);
  }
}

TEST(Lens, ParseRoundTrip) {
  EXPECT_EQ(LensSpace::parse("L(7,3)"), (LensSpace{7, 3}));
  EXPECT_EQ(LensSpace::parse("S2xS1"), (LensSpace{0, 0}));
  EXPECT_EQ(LensSpace::parse((LensSpace{5, 2}).str()), (LensSpace{5, 2}));
  EXPECT_THROW(LensSpace::parse("L(6,4)"), Error);
  EXPECT_THROW(LensSpace::parse("L(6)"), Error);
}

TEST(Gluing, ClassicalLensSpaces) {
  // meridian to meridian: S2 x S1; meridian to longitude: S3
  EXPECT_EQ(glue_solid_tori({1, 0}), (LensSpace{0, 0}));
  EXPECT_EQ(glue_solid_tori({0, 1}), (LensSpace{1, 0}));
  EXPECT_EQ(glue_solid_tori({-1, 5}), lens_normalize(5, 1));
  EXPECT_EQ(glue_solid_tori({2, 7}), lens_normalize(7, -2));
  EXPECT_THROW(glue_solid_tori({2, 4}), Error);
}

TEST(Gluing, IntegerMatrixAlgebra) {
  IntMat2 a{{2, 1, 1, 1}};
  EXPECT_EQ(a.det(), 1);
  IntMat2 id = a * a.inverse();
  EXPECT_EQ(id.a, (std::array<long long, 4>{1, 0, 0, 1}));
  EXPECT_THROW((IntMat2{{2, 0, 0, 2}}).inverse(), Error);
}

TEST(Gluing, SpindleUnitTangentBundleIsLensOfOrderPPlusQ) {
  for (long long p = 1; p <= 50; ++p)
    for (long long q = 1; q <= 50; ++q) {
      HomologyClass m = spindle_meridian_image(p, q);
      EXPECT_EQ(std::abs(m.r), p + q);
      EXPECT_EQ(unit_tangent_bundle_spindle(p, q), lens_normalize(p + q, 1)) << p << "," << q;
    }
  // the round sphere has unit tangent bundle RP3
  EXPECT_EQ(unit_tangent_bundle_spindle(1, 1).str(), "L(2,1)");
  EXPECT_TRUE(lens_equivalent({9, -1}, {9, 1}));
}

TEST(Fiberings, SolutionsExactlyAtTheThreeCases) {
  for (long long r = 2; r <= 100; ++r)
    for (long long k = 1; k <= 2 * r; ++k) {
      bool expected = k == 1 || (r % 2 == 0 && k == r / 2) || (r % 2 == 1 && k == r);
      // brute force over all (b, eps)
      bool any = false;
      for (int eps : {1, -1})
        for (long long b = 0; b <= k; ++b)
          any |= std::gcd(b, k) == 1 && r * b == k * (1 - eps);
      EXPECT_EQ(any, expected) << r << " " << k;
      if (expected) {
        FiberingCase c = solve_gluing_constraints(r, k);
        EXPECT_EQ(r * c.b, k * (1 - c.epsilon));
        if (k % 2 == 0) {
          EXPECT_EQ(r % 4, 0) << r << " " << k;
        }
      } else {
        try {
          solve_gluing_constraints(r, k);
          ADD_FAILURE() << r << " " << k;
        } catch (const Error& e) {
          EXPECT_EQ(e.code(), Errc::Incompatible);
        }
      }
    }
}

TEST(Fiberings, CaseTagsAndInvariants) {
  FiberingCase hopf = solve_gluing_constraints(2, 1);
  EXPECT_EQ(hopf.tag, FiberingTag::Hopf);
  EXPECT_EQ(seifert_invariants_of_case(hopf).str(), "M(0;(1,2))");
  EXPECT_EQ(seifert_invariants_of_case(solve_gluing_constraints(7, 1)).str(), "M(0;(1,7))");

  FiberingCase half = solve_gluing_constraints(12, 6);
  EXPECT_EQ(half.tag, FiberingTag::EvenHalf);
  EXPECT_EQ(half.b, 1);
  EXPECT_EQ(seifert_invariants_of_case(half).str(), "M(0;(6,1),(6,1))");

  FiberingCase odd = solve_gluing_constraints(9, 9);
  EXPECT_EQ(odd.tag, FiberingTag::OddEqual);
  EXPECT_EQ(odd.b, 2);
  EXPECT_EQ(seifert_invariants_of_case(odd).str(), "M(0;(9,5),(9,-4))");

  EXPECT_EQ(solve_gluing_constraints(6, 3).tag, FiberingTag::EvenHalf);
  EXPECT_THROW(solve_gluing_constraints(1, 1), Error);
}

TEST(Seifert, InvariantsHaveTheRightLensOrder) {
  for (long long r = 2; r <= 100; ++r)
    for (long long k : {1LL, r / 2, r}) {
      FiberingCase c;
      try {
        c = solve_gluing_constraints(r, k);
      } catch (const Error&) {
        continue;
      }
      SeifertInvariants inv = seifert_invariants_of_case(c);
      long long order = inv.pairs.size() == 1
                            ? std::abs(inv.pairs[0].beta)
                            : std::abs(inv.pairs[0].alpha * inv.pairs[1].beta +
                                       inv.pairs[1].alpha * inv.pairs[0].beta);
      EXPECT_EQ(order, r) << inv.str();
      // every pair has multiplicity k
      for (const auto& pr : inv.pairs)
        EXPECT_EQ(pr.alpha, k);
    }
}

TEST(Seifert, ParseAndNormalForm) {
  SeifertInvariants a = SeifertInvariants::parse("M(0;(3,1),(3,1))");
  EXPECT_EQ(a.pairs.size(), 2u);
  EXPECT_EQ(SeifertInvariants::parse(a.str()), a);
  SeifertNormalForm nf = seifert_normal_form(a);
  EXPECT_EQ(nf.euler_number, Rational(-2, 3));
  EXPECT_EQ(nf.exceptional, (std::vector<SeifertPair>{{3, 1}, {3, 1}}));

  // integer shifts between pairs do not change the space
  EXPECT_TRUE(seifert_equivalent(SeifertInvariants::parse("M(0;(3,4),(3,-2))"), a));
  EXPECT_TRUE(seifert_equivalent(SeifertInvariants::parse("M(0;(3,1),(3,1),(1,-1))"),
                                 SeifertInvariants::parse("M(0;(3,1),(3,-2))")));
  EXPECT_TRUE(seifert_equivalent(SeifertInvariants::parse("M(0;(1,5))"),
                                 SeifertInvariants::parse("M(0;(1,-5))")));
  EXPECT_FALSE(seifert_equivalent(SeifertInvariants::parse("M(0;(1,5))"),
                                  SeifertInvariants::parse("M(0;(1,4))")));
  EXPECT_THROW(SeifertInvariants::parse("M(1;(2,1))"), Error);
  EXPECT_THROW(SeifertInvariants::parse("M(0;(4,2))"), Error);
  EXPECT_THROW(SeifertInvariants::parse("M(0;(2,1)"), Error);
}

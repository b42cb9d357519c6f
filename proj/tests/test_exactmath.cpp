#include <gtest/gtest.h>

#include "generators.hpp"

using namespace tysys;
using tysys::testing::random_laurent;
using tysys::testing::random_positive_poly;
using tysys::testing::stream;

namespace {

LaurentPoly x(std::size_t i, std::size_t n = 2) { return LaurentPoly::generator(i, n); }
LaurentPoly c(int v, std::size_t n = 2) { return LaurentPoly::constant(BigRational(v), n); }
LaurentPoly mono(std::vector<int> e) { return LaurentPoly::monomial(std::move(e), BigRational(1)); }

}  // namespace

TEST(BigRational, ParsesAndPrintsReduced) {
  EXPECT_EQ(BigRational::parse("6/4").str(), "3/2");
  EXPECT_EQ(BigRational::parse("-5").str(), "-5/1");
  EXPECT_EQ(BigRational(2) / BigRational(6), BigRational::parse("1/3"));
}

TEST(BigRational, RejectsMalformedInputAndZeroDivision) {
  for (const char* bad : {"", "1/0", "abc", "1/2/3"}) {
    try {
      BigRational::parse(bad);
      ADD_FAILURE() << bad;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::ParseError);
    }
  }
  try {
    (void)(BigRational(1) / BigRational(0));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InverseOfZero);
  }
}

TEST(BigRational, NegativePowers) {
  EXPECT_EQ(BigRational::parse("2/3").pow(-2), BigRational::parse("9/4"));
  EXPECT_EQ(BigRational(5).pow(0), BigRational(1));
}

TEST(BigRational, RandomValuesAreNonzeroBoundedAndReproducible) {
  Rng a = stream(1), b = stream(1);
  const long bound = 1L << kDefaultRandomBits;
  for (int i = 0; i < 2000; ++i) {
    const BigRational r = random_nonzero_rational(a);
    EXPECT_EQ(r, random_nonzero_rational(b));
    ASSERT_FALSE(r.is_zero());
    EXPECT_LE(abs(r.numerator()), bound);
    EXPECT_LE(r.denominator(), bound);
    EXPECT_GE(r.denominator(), 1);
  }
}

TEST(LaurentPoly, ProductsAndCancellation) {
  EXPECT_EQ((x(0) + c(1)) * (x(0) - c(1)), x(0) * x(0) - c(1));
  EXPECT_EQ(mono({-1, 0}) * x(0), c(1));
  EXPECT_EQ((c(1) + x(0)) * (c(1) + x(1)), c(1) + x(0) + x(1) + x(0) * x(1));
}

TEST(LaurentPoly, ExactDivision) {
  const auto q = laurent_divide_exact(x(0) * x(0) - c(1), x(0) - c(1));
  ASSERT_TRUE(q.has_value());
  EXPECT_EQ(*q, x(0) + c(1));
  const auto mono_div = laurent_divide_exact(x(0) + x(1), x(0));
  ASSERT_TRUE(mono_div.has_value());
  EXPECT_EQ(*mono_div, c(1) + mono({-1, 1}));
  EXPECT_FALSE(laurent_divide_exact(x(0) + c(1), x(0) + c(2)).has_value());
  try {
    laurent_divide_exact(x(0), LaurentPoly(2));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::DivisionByZeroPoly);
  }
}

TEST(LaurentPoly, MixedUniversesArePadded) {
  EXPECT_EQ(LaurentPoly::generator(0, 1) + LaurentPoly::generator(2, 3),
            LaurentPoly::generator(0, 3) + LaurentPoly::generator(2, 3));
}

TEST(LaurentPolyProperty, RingAxioms) {
  Rng rng = stream(2);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const auto a = random_laurent(rng, n), b = random_laurent(rng, n), d = random_laurent(rng, n);
    EXPECT_EQ((a * b) * d, a * (b * d));
    EXPECT_EQ(a * (b + d), a * b + a * d);
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ(a * b, b * a);
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(LaurentPolyProperty, ExactDivisionRecoversFactor) {
  Rng rng = stream(3);
  for (int trial = 0; trial < 40; ++trial) {
    const auto a = random_laurent(rng, 2), b = random_laurent(rng, 2);
    if (b.is_zero()) continue;
    const auto q = laurent_divide_exact(a * b, b);
    ASSERT_TRUE(q.has_value());
    EXPECT_EQ(*q, a);
  }
}

TEST(LaurentPolyProperty, EvaluationIsAHomomorphism) {
  Rng rng = stream(4);
  for (int trial = 0; trial < 60; ++trial) {
    const auto a = random_laurent(rng, 3), b = random_laurent(rng, 3);
    const Assignment at = random_assignment(rng, 3);
    EXPECT_EQ((a * b).evaluate(at), a.evaluate(at) * b.evaluate(at));
    EXPECT_EQ((a + b).evaluate(at), a.evaluate(at) + b.evaluate(at));
  }
}

TEST(RationalFunction, InverseAndEvaluation) {
  const RationalFunction f(x(0), c(1) + x(1));
  EXPECT_EQ(f.inverse(), RationalFunction(c(1) + x(1), x(0)));
  EXPECT_EQ(f * f.inverse(), RationalFunction(1));
  const RationalFunction g(c(1) + x(1), x(0));
  const std::vector<BigRational> at{BigRational(2), BigRational(3)};
  EXPECT_EQ(g.evaluate(at), BigRational(2));
  const std::vector<BigRational> half{BigRational::parse("1/2"), BigRational(1)};
  EXPECT_EQ(RationalFunction(c(1), x(0)).evaluate(half), BigRational(2));
  const std::vector<BigRational> one{BigRational(1), BigRational(1)};
  try {
    RationalFunction(c(1), x(0) - c(1)).evaluate(one);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::EvalDivisionByZero);
  }
  try {
    RationalFunction(0).inverse();
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InverseOfZero);
  }
}

TEST(RationalFunction, EqualityByCrossMultiplication) {
  EXPECT_TRUE(eq_exact(RationalFunction(x(0) * x(0) - c(1), x(0) - c(1)), RationalFunction(x(0) + c(1))));
  EXPECT_FALSE(eq_exact(RationalFunction(x(1)), RationalFunction(c(1), x(1))));
  const RationalFunction f(c(1) + x(0), x(1));
  EXPECT_TRUE(eq_exact((f + RationalFunction(1)) - RationalFunction(1), f));
}

TEST(RationalFunctionProperty, EqualityAgreesWithEvaluation) {
  Rng rng = stream(5);
  for (int trial = 0; trial < 30; ++trial) {
    const RationalFunction a(random_laurent(rng, 2), random_positive_poly(rng, 2));
    const RationalFunction b(random_laurent(rng, 2), random_positive_poly(rng, 2));
    const RationalFunction lhs = (a + b) * (a - b), rhs = a * a - b * b;
    const RationalFunction wrong = a * a + b * b;
    EXPECT_TRUE(eq_exact(lhs, rhs));
    const bool same = eq_exact(lhs, wrong);
    for (int s = 0; s < 20; ++s) {
      Assignment at;
      for (int i = 0; i < 2; ++i) at.push_back(random_positive_rational(rng));
      EXPECT_EQ(lhs.evaluate(at), rhs.evaluate(at));
      if (!same) {
        if (lhs.evaluate(at) != wrong.evaluate(at)) break;
        ASSERT_LT(s, 19) << "distinct functions agree at 20 random points";
      }
    }
  }
}

TEST(Semifield, BasicOperations) {
  const auto y = SemifieldElement::generator(0, 1);
  const auto unit = LaurentPoly::constant(BigRational(1), 1);
  const auto gen = LaurentPoly::generator(0, 1);
  EXPECT_EQ(sf_inv(y), SemifieldElement(unit, gen));
  EXPECT_EQ(sf_one_plus(y), SemifieldElement(unit + gen, unit));
  EXPECT_EQ(sf_one_plus(sf_inv(y)), SemifieldElement(gen + unit, gen));
  EXPECT_FALSE(eq_exact(y, sf_inv(y)));
}

TEST(Semifield, RejectsNonPositiveConstants) {
  for (int v : {0, -3}) {
    try {
      SemifieldElement e(v);
      ADD_FAILURE() << v;
    } catch (const Error& e) {
      EXPECT_EQ(e.code(), ErrorCode::NotPositive);
    }
  }
}

TEST(SemifieldProperty, ClosedUnderOperationsWithPositiveCoefficients) {
  Rng rng = stream(6);
  for (int trial = 0; trial < 40; ++trial) {
    SemifieldElement acc(random_positive_poly(rng, 3), random_positive_poly(rng, 3));
    for (int step = 0; step < 5; ++step) {
      const SemifieldElement other(random_positive_poly(rng, 3, 2, 1), random_positive_poly(rng, 3, 2, 1));
      switch (tysys::testing::uniform(rng, 0, 3)) {
        case 0: acc = sf_add(acc, other); break;
        case 1: acc = sf_mul(acc, other); break;
        case 2: acc = sf_inv(acc); break;
        default: acc = sf_one_plus(acc); break;
      }
      EXPECT_TRUE(acc.num().all_coefficients_positive());
      EXPECT_TRUE(acc.den().all_coefficients_positive());
    }
    Assignment at;
    for (int i = 0; i < 3; ++i) at.push_back(random_positive_rational(rng));
    EXPECT_GT(acc.evaluate(at).sign(), 0);
  }
}

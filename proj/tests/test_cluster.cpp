#include <gtest/gtest.h>

#include "generators.hpp"
#include "tysys/acceptance.hpp"

using namespace tysys;
using tysys::testing::stream;
using tysys::testing::uniform;

namespace {

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return ErrorCode::Unsupported;
}

}  // namespace

TEST(ExchangeMatrix, BOfA2) {
  const ExchangeMatrix b = b_of_c(cartan_type_a(2));
  EXPECT_EQ(b.entries(), (IntMatrix{{0, 1}, {-1, 0}}));
  EXPECT_EQ(b.parity(), (Parity{Sign::Plus, Sign::Minus}));
  EXPECT_TRUE(mutate_class(b, Sign::Plus) == b.negated());
  EXPECT_TRUE(check_b1(b) && check_b2(b) && check_bb(b));
}

TEST(ExchangeMatrix, SymmetrizerOfBOfC) {
  const CartanMatrix cm(acceptance::finite_types_rank_le_4()[11].second);  // F4
  const ExchangeMatrix b = b_of_c(cm);
  EXPECT_EQ(b.skew_symmetrizer(), cm.d());
  for (int i = 0; i < b.size(); ++i)
    for (int j = 0; j < b.size(); ++j) EXPECT_EQ(b.skew_symmetrizer()[i] * b(i, j), -b.skew_symmetrizer()[j] * b(j, i));
}

TEST(ExchangeMatrix, RejectsBadInput) {
  EXPECT_EQ(code_of([] { ExchangeMatrix({{1, 0}, {0, 0}}); }), ErrorCode::NotSkewSymmetrizable);
  EXPECT_EQ(code_of([] { ExchangeMatrix({{0, 1}, {1, 0}}); }), ErrorCode::NotSkewSymmetrizable);
  EXPECT_EQ(code_of([] { ExchangeMatrix({{0, 1, -1}, {-1, 0, 1}, {2, -1, 0}}); }), ErrorCode::NotSkewSymmetrizable);
  EXPECT_EQ(code_of([] { ExchangeMatrix({{0, 1}, {-1, 0}}).parity(); }), ErrorCode::NoParity);
  EXPECT_EQ(code_of([] { mutate_matrix(ExchangeMatrix({{0, 1}, {-1, 0}}), 2); }), ErrorCode::IndexOutOfRange);
  EXPECT_EQ(code_of([] { b_of_c(acceptance::triangle()); }), ErrorCode::NotBipartite);
}

TEST(ExchangeMatrix, ExampleSevenNodeMatrix) {
  const ExchangeMatrix e = acceptance::example7();
  EXPECT_EQ(e(1, 0), 2);
  EXPECT_EQ(e(0, 2), 2);
  EXPECT_EQ(e(2, 3), 1);
  EXPECT_EQ(e(3, 1), 1);
  EXPECT_TRUE(check_b1(e));
  EXPECT_TRUE(check_b2(e));
  EXPECT_TRUE(check_bb(e));
}

TEST(ExchangeMatrix, SquareProductOfA2) {
  const CartanMatrix a2 = cartan_type_a(2);
  const ExchangeMatrix sq = square_product(a2, a2);
  EXPECT_EQ(sq.size(), 4);
  EXPECT_TRUE(check_b1(sq));
  EXPECT_TRUE(check_b2(sq));
  EXPECT_TRUE(check_bb(sq));
  // arrows (+-) -> (--) -> (-+) -> (++) -> (+-) with parity (1,1)=+, (1,2)=-, (2,1)=-, (2,2)=+
  const int pp = square_index(0, 0, 2), pm = square_index(0, 1, 2), mp = square_index(1, 0, 2),
            mm = square_index(1, 1, 2);
  EXPECT_EQ(sq(pm, mm), 1);
  EXPECT_EQ(sq(mm, mp), 1);
  EXPECT_EQ(sq(mp, pp), 1);
  EXPECT_EQ(sq(pp, pm), 1);
  EXPECT_EQ(sq.parity(pp), Sign::Plus);
  EXPECT_EQ(sq.parity(mm), Sign::Plus);
}

TEST(Seed, MutationOfBA2) {
  const Seed s = initial_seed(b_of_c(cartan_type_a(2)));
  const Seed m = mutate_seed(s, 0);
  const auto x1 = RationalFunction::generator(0, 2), x2 = RationalFunction::generator(1, 2);
  EXPECT_EQ(m.x[0], (RationalFunction(1) + x2) / x1);
  EXPECT_EQ(m.x[1], x2);
  const auto y1 = SemifieldElement::generator(0, 2), y2 = SemifieldElement::generator(1, 2);
  EXPECT_EQ(m.y[0], inverse(y1));
  EXPECT_EQ(m.y[1], y2 * y1 / one_plus(y1));
  EXPECT_TRUE(mutate_seed(m, 0) == s);
}

TEST(ExchangeProperty, MutationIsInvolutiveAndKeepsSymmetrizer) {
  Rng rng = stream(50);
  for (int trial = 0; trial < 100; ++trial) {
    const ExchangeMatrix e = tysys::testing::random_exchange(rng, uniform(rng, 1, 7));
    const int k = uniform(rng, 0, e.size() - 1);
    const ExchangeMatrix once = mutate_matrix(e, k);
    EXPECT_TRUE(mutate_matrix(once, k) == e);
    EXPECT_EQ(once.skew_symmetrizer(), e.skew_symmetrizer());
    for (int j = 0; j < e.size(); ++j) EXPECT_EQ(once(k, j), -e(k, j));
  }
}

TEST(ExchangeProperty, B2AgreesWithBilinearForm) {
  Rng rng = stream(51);
  int both = 0;
  for (int trial = 0; trial < 150; ++trial) {
    const int n = uniform(rng, 1, 6);
    const ExchangeMatrix e = trial % 2 ? acceptance::random_parity_matrix(rng, n)
                                       : b_of_c(tysys::testing::random_bipartite_cartan(rng, n));
    EXPECT_EQ(check_b2(e), check_bb(e));
    both += check_b2(e);
  }
  EXPECT_GT(both, 0);
}

TEST(ExchangeProperty, ClassMutationsCommuteUnderB1) {
  Rng rng = stream(52);
  for (int trial = 0; trial < 20; ++trial) {
    const ExchangeMatrix e = acceptance::random_parity_matrix(rng, uniform(rng, 2, 4));
    ASSERT_TRUE(check_b1(e));
    const Seed s = initial_seed(e);
    for (Sign c : {Sign::Plus, Sign::Minus}) EXPECT_TRUE(mutate_seed_class(s, c) == mutate_seed_class(s, c, true));
  }
}

TEST(SeedProperty, NumericMutationIsInvolutive) {
  Rng rng = stream(53);
  for (int trial = 0; trial < 50; ++trial) {
    const ExchangeMatrix e = tysys::testing::random_exchange(rng, uniform(rng, 1, 6));
    const NumericSeed s = random_numeric_seed(e, rng);
    const int k = uniform(rng, 0, e.size() - 1);
    EXPECT_TRUE(mutate_seed(mutate_seed(s, k), k) == s);
    for (const auto& y : mutate_seed(s, k).y) EXPECT_GT(y.sign(), 0);
  }
}

TEST(Belt, StepClasses) {
  EXPECT_EQ(step_class(0, +1), Sign::Plus);
  EXPECT_EQ(step_class(1, +1), Sign::Minus);
  EXPECT_EQ(step_class(0, -1), Sign::Minus);
  EXPECT_EQ(step_class(1, -1), Sign::Plus);
}

TEST(Belt, RequiresBipartiteConditions) {
  const ExchangeMatrix bad({{0, 1, 1}, {-1, 0, 1}, {-1, -1, 0}}, Parity{Sign::Plus, Sign::Minus, Sign::Minus});
  EXPECT_EQ(code_of([&] { run_sequence(bad, -1, 1); }), ErrorCode::ConditionsViolated);
}

TEST(Belt, LemmasForBA2) {
  const ExchangeMatrix e = b_of_c(cartan_type_a(2));
  const auto seq = run_sequence(e, -5, 5);
  EXPECT_TRUE(check_parity_lemmas(seq, e).pass());
  EXPECT_TRUE(check_tb(seq, e).pass());
  for (Sign eps : {Sign::Plus, Sign::Minus}) {
    const auto yb = check_yb(seq, e, eps);
    EXPECT_GT(yb.checked, 0u);
    EXPECT_TRUE(yb.pass());
    EXPECT_TRUE(t_to_y_b(seq.x, e, eps, seq.lo, seq.hi).pass());
  }
  EXPECT_TRUE(laurent_check(seq).pass());
}

TEST(Belt, ExampleSevenNodeMatrixShortRange) {
  const ExchangeMatrix e = acceptance::example7();
  const auto seq = run_sequence(e, -2, 2);
  EXPECT_TRUE(check_parity_lemmas(seq, e).pass());
  EXPECT_TRUE(check_tb(seq, e).pass());
  EXPECT_TRUE(check_yb(seq, e, Sign::Plus).pass());
  EXPECT_TRUE(check_yb(seq, e, Sign::Minus).pass());
  EXPECT_TRUE(laurent_check(seq).pass());
}

TEST(Belt, PerturbedFamilyFailsTB) {
  const ExchangeMatrix e = b_of_c(cartan_type_a(3));
  auto seq = run_sequence(e, -3, 3);
  seq.x[{1, 1}] = seq.x[{1, 1}] + RationalFunction(1);
  EXPECT_FALSE(check_tb(seq, e).pass());
}

TEST(BeltProperty, NumericBeltsOnRandomBipartiteMatrices) {
  Rng rng = stream(54);
  for (int trial = 0; trial < 20; ++trial) {
    const ExchangeMatrix e = b_of_c(tysys::testing::random_bipartite_cartan(rng, uniform(rng, 2, 5)));
    const auto seq = run_sequence(random_numeric_seed(e, rng), -10, 10);
    EXPECT_TRUE(check_parity_lemmas(seq, e).pass());
    EXPECT_TRUE(check_tb(seq, e).pass());
    EXPECT_TRUE(check_yb(seq, e, Sign::Plus).pass());
    EXPECT_TRUE(check_yb(seq, e, Sign::Minus).pass());
    for (const auto& [key, y] : seq.y) EXPECT_GT(y.sign(), 0);
  }
}

TEST(Correspondence, SmallCases) {
  EXPECT_TRUE(correspondence_check(cartan_type_a(3), 2).pass());
  EXPECT_TRUE(correspondence_check(cartan_type_a(2), 3).pass());
  const auto tri = correspondence_check(acceptance::triangle(), 2);
  EXPECT_TRUE(tri.via_double);
  EXPECT_TRUE(tri.pass());
  EXPECT_EQ(code_of([] { correspondence_check(acceptance::b2_like(), 2); }), ErrorCode::NotSimplyLaced);
}

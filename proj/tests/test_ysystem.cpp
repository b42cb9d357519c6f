#include <gtest/gtest.h>

#include "generators.hpp"
#include "tysys/acceptance.hpp"

using namespace tysys;
using tysys::testing::stream;
using tysys::testing::uniform;

namespace {

YFactor plus(LatticeVar v, int e = 1) { return {v, YKind::OnePlusY, e}; }
YFactor inv(LatticeVar v, int e = 1) { return {v, YKind::OnePlusYinv, e}; }

ValueTable<BigRational> capped_solution(const CartanMatrix& cm, Rng& rng) {
  return propagate_y(cm, SystemLevel::unrestricted(acceptance::kRoundtripCap), {0, acceptance::kRoundtripSlices - 1},
                     {}, rng);
}

}  // namespace

TEST(ZTerm, FactorCounts) {
  EXPECT_EQ(z_term_raw(1, 1, 3, 0), (std::vector<LatticeVar>{{1, 3, 0}}));
  for (int p = 1; p <= 4; ++p)
    for (int m = 1; m <= 5; ++m) EXPECT_EQ(static_cast<int>(z_term_raw(0, p, m, 0).size()), p * p);
}

TEST(YRelation, RestrictedA2DropsBoundaryFactors) {
  const auto rel = y_relation(cartan_type_a(2), 0, 1, 4, SystemLevel::restricted(2));
  EXPECT_EQ(rel.numerator, (std::vector<YFactor>{plus({1, 1, 4})}));
  EXPECT_TRUE(rel.denominator.empty());
  const auto top = y_relation(cartan_type_a(2), 0, 2, 4, SystemLevel::restricted(3));
  EXPECT_EQ(top.denominator, (std::vector<YFactor>{inv({0, 1, 4})}));
}

TEST(YRelation, NonDivisibleLevelContributesNothing) {
  const CartanMatrix b2 = acceptance::b2_like();
  const auto odd = y_relation(b2, 1, 3, 0, SystemLevel::unrestricted(8));
  EXPECT_TRUE(odd.numerator.empty());
  const auto even = y_relation(b2, 1, 4, 0, SystemLevel::unrestricted(8));
  EXPECT_EQ(even.numerator, (std::vector<YFactor>{plus({0, 2, 0})}));
  EXPECT_EQ(even.denominator, (std::vector<YFactor>{inv({1, 3, 0}), inv({1, 5, 0})}));
}

TEST(PropagateY, HandIteratedA2) {
  ValueTable<BigRational> init;
  for (int a = 0; a < 2; ++a)
    for (int k = 0; k < 2; ++k) init.set({a, 1, k}, BigRational(1));
  Rng rng = stream(30);
  const auto y = propagate_y(cartan_type_a(2), SystemLevel::restricted(2), {0, 12}, init, rng);
  EXPECT_EQ(y.at({0, 1, 2}), BigRational(2));
  EXPECT_EQ(y.at({1, 1, 2}), BigRational(2));
  // the level-2 A2 orbit returns after 10 slices
  for (int a = 0; a < 2; ++a) {
    EXPECT_EQ(y.at({a, 1, 10}), BigRational(1));
    EXPECT_EQ(y.at({a, 1, 11}), BigRational(1));
  }
}

TEST(PropagateY, RestrictedExampleMatrixIsSelfConsistent) {
  Rng rng = stream(31);
  const CartanMatrix cm = acceptance::example44();
  const auto level = SystemLevel::restricted(2);
  // heights grow quickly off finite type; 16 slices keep this short
  const Window w{0, 15};
  const auto y = propagate_y(cm, level, w, {}, rng);
  const auto r = check_y_solution(y, enumerate_y_relations(cm, level, w));
  EXPECT_GT(r.checked, 0u);
  EXPECT_TRUE(r.pass());
}

TEST(CheckY, RejectsAllOnesAndPerturbedTables) {
  const CartanMatrix a2 = cartan_type_a(2);
  const auto level = SystemLevel::restricted(2);
  const Window w{0, 8};
  ValueTable<BigRational> ones;
  for (int a = 0; a < 2; ++a)
    for (int k = 0; k <= 8; ++k) ones.set({a, 1, k}, BigRational(1));
  const auto rels = enumerate_y_relations(a2, level, w);
  EXPECT_EQ(check_y_solution(ones, rels).violations.size(), rels.size());
  Rng rng = stream(32);
  auto y = propagate_y(a2, level, w, {}, rng);
  y.set({0, 1, 4}, y.at({0, 1, 4}) + BigRational(1));
  EXPECT_FALSE(check_y_solution(y, rels).pass());
}

TEST(TToY, A1ImageIsConstantOne) {
  ValueTable<BigRational> t;
  const std::vector<std::string> vals{"1", "3", "2", "2/3", "1", "3", "2", "2/3"};
  for (std::size_t k = 0; k < vals.size(); ++k) t.set({0, 1, static_cast<int>(k)}, BigRational::parse(vals[k]));
  const auto level = SystemLevel::restricted(2);
  const auto image = t_to_y(cartan_type_a(1), level, t);
  ASSERT_FALSE(image.y.empty());
  for (const auto& [v, y] : image.y) EXPECT_EQ(y, BigRational(1)) << to_string(v);
  EXPECT_TRUE(image.pass());
  const auto w = complete_window(image.y, cartan_type_a(1), level);
  ASSERT_TRUE(w.has_value());
  EXPECT_TRUE(check_y_solution(image.y, enumerate_y_relations(cartan_type_a(1), level, *w)).pass());
}

TEST(TToYProperty, PropagatedTMapsToYSolution) {
  Rng rng = stream(33);
  const std::vector<CartanMatrix> ms = {cartan_type_a(3), acceptance::b2_like(),
                                        CartanMatrix(acceptance::finite_types_rank_le_4()[5].second)};
  for (const auto& cm : ms)
    for (int ell = 2; ell <= 3; ++ell) {
      const auto level = SystemLevel::restricted(ell);
      const auto t = propagate_t(cm, level, {0, 24}, {}, rng);
      const auto image = t_to_y(cm, level, t);
      EXPECT_TRUE(image.pass());
      const auto w = complete_window(image.y, cm, level);
      ASSERT_TRUE(w.has_value());
      const auto r = check_y_solution(image.y, enumerate_y_relations(cm, level, *w));
      EXPECT_GT(r.checked, 0u);
      EXPECT_TRUE(r.pass());
    }
}

TEST(YRelationProperty, TransposeFormAgreesOnRandomMatrices) {
  Rng rng = stream(34);
  const auto level = SystemLevel::unrestricted(1000);
  for (int trial = 0; trial < 40; ++trial) {
    const CartanMatrix cm = tysys::testing::random_tamely_laced(rng, uniform(rng, 1, 4));
    for (int s = 0; s < 10; ++s) {
      const int a = uniform(rng, 0, cm.rank() - 1), m = uniform(rng, 1, 7), k = uniform(rng, -5, 5);
      EXPECT_EQ(y_relation_via_transpose(cm, a, m, k), y_relation(cm, a, m, k, level));
    }
  }
}

TEST(YToT, RoundtripAndNonUniqueness) {
  Rng rng = stream(35);
  for (const auto& cm : {cartan_type_a(3), acceptance::b2_like()}) {
    const auto y = capped_solution(cm, rng);
    YToTOptions opt;
    opt.max_level = acceptance::kRoundtripLevel;
    const auto r1 = y_to_t(cm, y, rng, opt);
    const auto r2 = y_to_t(cm, y, rng, opt);
    EXPECT_FALSE(r1.t == r2.t);
    EXPECT_TRUE(check_roundtrip(cm, y, r1.t).pass());
    EXPECT_TRUE(check_roundtrip(cm, y, r2.t).pass());
    const auto claims = claim_identities_check(cm, r1.t, y);
    EXPECT_GT(claims.checked(), 0u);
    EXPECT_TRUE(claims.pass());
  }
}

TEST(YToT, UnitFreeChoiceIsDeterministic) {
  Rng rng = stream(36);
  const CartanMatrix cm = cartan_type_a(2);
  const auto y = capped_solution(cm, rng);
  YToTOptions opt;
  opt.free = FreeChoice::Unit;
  opt.max_level = 2;
  const auto r1 = y_to_t(cm, y, rng, opt);
  const auto r2 = y_to_t(cm, y, rng, opt);
  EXPECT_TRUE(r1.t == r2.t);
  for (const auto& v : r1.free_vars) EXPECT_EQ(r1.t.at(v), BigRational(1));
  EXPECT_TRUE(check_roundtrip(cm, y, r1.t).pass());
}

TEST(YToT, ExampleMatrixLadderGroups) {
  Rng rng = stream(37);
  const CartanMatrix cm = acceptance::example44();
  const auto y = capped_solution(cm, rng);
  YToTOptions opt;
  opt.max_level = acceptance::kRoundtripLevel;
  const auto r = y_to_t(cm, y, rng, opt);
  EXPECT_EQ(r.groups, (std::vector<std::vector<int>>{{1}, {2, 3}, {0}}));
  const auto tc =
      check_t_solution(r.t, enumerate_relations(cm, SystemLevel::unrestricted(r.max_level), r.interior));
  EXPECT_GT(tc.checked, 0u);
  EXPECT_TRUE(tc.pass());
}

TEST(YToT, PerturbedTFailsClaimIdentities) {
  Rng rng = stream(38);
  const CartanMatrix cm = cartan_type_a(2);
  const auto y = capped_solution(cm, rng);
  YToTOptions opt;
  opt.max_level = 2;
  auto r = y_to_t(cm, y, rng, opt);
  const LatticeVar v{0, 1, r.interior.lo + 2};
  r.t.set(v, r.t.at(v) * BigRational(3));
  EXPECT_FALSE(claim_identities_check(cm, r.t, y).pass());
}

TEST(YToT, NarrowWindowIsRejected) {
  Rng rng = stream(39);
  const CartanMatrix cm = acceptance::b2_like();
  ValueTable<BigRational> y;
  y.set({0, 1, 0}, BigRational(2));
  try {
    y_to_t(cm, y, rng);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::WindowTooNarrow);
  }
}

TEST(PeriodScan, SmallRestrictedOrbits) {
  Rng rng = stream(40);
  const auto a2 = period_scan(cartan_type_a(2), 2, 10, rng);
  ASSERT_TRUE(a2.period.has_value());
  EXPECT_EQ(*a2.period, 10);
  const auto a1 = period_scan(cartan_type_a(1), 2, 10, rng);
  ASSERT_TRUE(a1.period.has_value());
  EXPECT_EQ(*a1.period, 4);
  EXPECT_FALSE(period_scan(cartan_type_a(2), 2, 9, rng).period.has_value());
}

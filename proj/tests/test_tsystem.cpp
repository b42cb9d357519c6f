#include <gtest/gtest.h>

#include "generators.hpp"
#include "tysys/acceptance.hpp"

using namespace tysys;
using tysys::testing::stream;
using tysys::testing::uniform;

namespace {

std::vector<LatticeVar> sorted(std::vector<LatticeVar> v) {
  std::sort(v.begin(), v.end());
  return v;
}

ValueTable<BigRational> a1_values(const std::vector<std::string>& vals) {
  ValueTable<BigRational> t;
  for (std::size_t k = 0; k < vals.size(); ++k) t.set({0, 1, static_cast<int>(k)}, BigRational::parse(vals[k]));
  return t;
}

}  // namespace

TEST(STerm, ShapesForSmallSymmetrizers) {
  EXPECT_EQ(s_term_raw(1, 0, 4, 7), (std::vector<LatticeVar>{{0, 4, 7}}));
  EXPECT_EQ(sorted(s_term_raw(2, 0, 6, 7)), sorted({{0, 3, 6}, {0, 3, 8}}));
  EXPECT_EQ(sorted(s_term_raw(3, 0, 7, 7)), sorted({{0, 3, 7}, {0, 2, 6}, {0, 2, 8}}));
}

TEST(MTerm, SmallExamples) {
  EXPECT_TRUE(m_term(cartan_type_a(1), 0, 3, 0).empty());
  EXPECT_EQ(m_term(cartan_type_a(2), 0, 2, 5), (FactorList{{{1, 2, 5}, 1}}));
  EXPECT_EQ(m_term(acceptance::example44(), 0, 1, 4), (FactorList{{{1, 3, 4}, 1}}));
}

TEST(TRelation, RestrictedBoundarySubstitution) {
  const auto a1 = t_relation(cartan_type_a(1), 0, 1, 5, SystemLevel::restricted(2));
  EXPECT_EQ(a1.lhs[0], (LatticeVar{0, 1, 4}));
  EXPECT_EQ(a1.lhs[1], (LatticeVar{0, 1, 6}));
  EXPECT_TRUE(a1.termA.empty());
  EXPECT_TRUE(a1.termM.empty());
  const auto a2 = t_relation(cartan_type_a(2), 0, 1, 5, SystemLevel::restricted(2));
  EXPECT_TRUE(a2.termA.empty());
  EXPECT_EQ(a2.termM, (FactorList{{{1, 1, 5}, 1}}));
  const auto top = t_relation(cartan_type_a(2), 0, 2, 0, SystemLevel::restricted(3));
  EXPECT_EQ(top.termA, (FactorList{{{0, 1, 0}, 1}}));
  try {
    t_relation(cartan_type_a(2), 0, 2, 0, SystemLevel::restricted(2));
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::LevelOutOfRange);
  }
}

TEST(TRelation, EnumerationCounts) {
  EXPECT_EQ(enumerate_relations(cartan_type_a(1), SystemLevel::restricted(2), {0, 3}).size(), 2u);
  EXPECT_EQ(enumerate_relations(cartan_type_a(2), SystemLevel::restricted(2), {0, 3}).size(), 4u);
  const auto ex = enumerate_relations(acceptance::example44(), SystemLevel::restricted(2), {0, 5});
  for (const auto& r : ex) EXPECT_NE(r.center.a, 0);
}

TEST(CheckT, HandIteratedA1) {
  const auto rels = enumerate_relations(cartan_type_a(1), SystemLevel::restricted(2), {0, 3});
  EXPECT_TRUE(check_t_solution(a1_values({"1", "3", "2", "2/3"}), rels).pass());
  EXPECT_EQ(check_t_solution(a1_values({"1", "3", "5", "2/3"}), rels).violations.size(), 1u);
}

TEST(CheckT, AllOnesFailsForA2) {
  ValueTable<BigRational> t;
  for (int a = 0; a < 2; ++a)
    for (int k = 0; k <= 3; ++k) t.set({a, 1, k}, BigRational(1));
  const auto r = check_t_solution(t, enumerate_relations(cartan_type_a(2), SystemLevel::restricted(2), {0, 3}));
  EXPECT_EQ(r.violations.size(), r.checked);
  EXPECT_GT(r.checked, 0u);
}

TEST(CheckT, MissingValueIsAnError) {
  const auto rels = enumerate_relations(cartan_type_a(1), SystemLevel::restricted(2), {0, 3});
  try {
    check_t_solution(a1_values({"1", "3"}), rels);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::MissingValue);
  }
}

TEST(PropagateT, A1FromGivenSlab) {
  Rng rng = stream(20);
  const auto t = propagate_t(cartan_type_a(1), SystemLevel::restricted(2), {0, 4}, a1_values({"1", "3"}), rng);
  EXPECT_EQ(t.at({0, 1, 2}), BigRational(2));
  EXPECT_EQ(t.at({0, 1, 3}), BigRational::parse("2/3"));
  EXPECT_EQ(t.at({0, 1, 4}), BigRational(1));
}

TEST(PropagateT, DependencyCycleIsReported) {
  Rng rng = stream(21);
  try {
    propagate_t(acceptance::g2_like(), SystemLevel::restricted(2), {0, 20}, {}, rng);
    ADD_FAILURE();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::UnschedulableDependency);
  }
}

TEST(PropagateTProperty, SelfConsistentOnSmallSymmetrizers) {
  Rng rng = stream(22);
  const std::vector<CartanMatrix> ms = {cartan_type_a(1), cartan_type_a(2), cartan_type_a(4), acceptance::b2_like(),
                                        CartanMatrix(acceptance::finite_types_rank_le_4()[9].second)};
  for (const auto& cm : ms)
    for (int ell = 2; ell <= 3; ++ell) {
      const auto level = SystemLevel::restricted(ell);
      const Window w{0, 24};
      const auto t = propagate_t(cm, level, w, {}, rng);
      const auto r = check_t_solution(t, enumerate_relations(cm, level, w));
      EXPECT_GT(r.checked, 0u);
      EXPECT_TRUE(r.pass()) << "rank " << cm.rank() << " level " << ell;
    }
}

TEST(MTermProperty, UnifiedFormsAgreeOnRandomMatrices) {
  Rng rng = stream(23);
  for (int trial = 0; trial < 60; ++trial) {
    const CartanMatrix cm = tysys::testing::random_tamely_laced(rng, uniform(rng, 1, 5));
    for (int s = 0; s < 20; ++s) {
      const int a = uniform(rng, 0, cm.rank() - 1), m = uniform(rng, 1, 8), k = uniform(rng, -10, 10);
      const auto direct = acceptance::as_map(m_term(cm, a, m, k));
      EXPECT_EQ(direct, acceptance::as_map(m_term_unified(cm, a, m, k)));
      EXPECT_EQ(direct, g_exponents(cm, a, m, k));
      if (cm.d(a) == 1) {
        int expected = 0, got = 0;
        for (int b : cm.neighbors(a)) expected += cm.d(b);
        for (const auto& f : m_term(cm, a, m, k)) got += f.exponent;
        int dropped = 0;
        for (int b : cm.neighbors(a))
          for (const auto& v : s_term_raw(cm.d(b), b, m, k)) dropped += v.m == 0;
        EXPECT_EQ(got + dropped, expected);
      }
    }
  }
}

TEST(STermProperty, FactorCountEqualsSymmetrizer) {
  for (int d = 1; d <= 4; ++d)
    for (int m = 1; m <= 12; ++m) EXPECT_EQ(static_cast<int>(s_term_raw(d, 0, m, 0).size()), d);
}

TEST(TRelationProperty, RestrictedRelationsStayInsideLevels) {
  Rng rng = stream(24);
  for (int trial = 0; trial < 40; ++trial) {
    const CartanMatrix cm = tysys::testing::random_tamely_laced(rng, uniform(rng, 1, 5));
    const auto level = SystemLevel::restricted(uniform(rng, 2, 4));
    for (int a = 0; a < cm.rank(); ++a)
      for (int m : {1, level.max_level(cm, a)}) {
        const auto rel = t_relation(cm, a, m, 0, level);
        for_each_variable(rel, [&](const LatticeVar& v) {
          EXPECT_TRUE(level.in_range(cm, v.a, v.m)) << to_string(v);
        });
      }
  }
}

TEST(IdentityProperty, TelescopingOnRandomTables) {
  Rng rng = stream(25);
  for (int p = 1; p <= 4; ++p) {
    const Window centres{0, 9};
    const auto values = acceptance::random_table(rng, 3 * p, {-4 * p, 9 + 4 * p});
    const auto r1 = identity_check_1(p, centres, values);
    EXPECT_TRUE(r1.pass()) << "p=" << p;
    const auto r2 = identity_check_2(p, centres, values);
    EXPECT_TRUE(r2.pass()) << "d=" << p;
  }
}

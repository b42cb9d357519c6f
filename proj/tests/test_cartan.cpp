#include <gtest/gtest.h>

#include "generators.hpp"
#include "tysys/acceptance.hpp"

using namespace tysys;
using tysys::testing::stream;

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

TEST(Cartan, SymmetrizersOfSmallExamples) {
  const CartanMatrix ex = acceptance::example44();
  EXPECT_EQ(ex.d(), (std::vector<int>{3, 1, 2, 2}));
  EXPECT_EQ(ex.t(), 6);
  EXPECT_EQ(ex.t_a(), (std::vector<int>{2, 6, 3, 3}));
  const CartanMatrix a2 = cartan_type_a(2);
  EXPECT_EQ(a2.d(), (std::vector<int>{1, 1}));
  EXPECT_EQ(a2.t(), 1);
  const CartanMatrix b2 = acceptance::b2_like();
  EXPECT_EQ(b2.d(), (std::vector<int>{2, 1}));
  EXPECT_EQ(b2.t(), 2);
}

TEST(Cartan, LacingClassification) {
  EXPECT_TRUE(is_tamely_laced(acceptance::example44()));
  EXPECT_FALSE(is_tamely_laced(acceptance::affine_a1()));
  EXPECT_TRUE(is_simply_laced(cartan_type_a(2)));
  EXPECT_FALSE(is_simply_laced(acceptance::b2_like()));
  EXPECT_FALSE(is_simply_laced(acceptance::example44()));
  for (const auto& [name, m] : acceptance::finite_types_rank_le_4())
    EXPECT_TRUE(is_tamely_laced(CartanMatrix(m))) << name;
}

TEST(Cartan, RejectsInvalidMatrices) {
  EXPECT_EQ(code_of([] { CartanMatrix({{2, -1}, {0, 2}}); }), ErrorCode::NotGeneralizedCartan);
  EXPECT_EQ(code_of([] { CartanMatrix({{2, 1}, {1, 2}}); }), ErrorCode::NotGeneralizedCartan);
  EXPECT_EQ(code_of([] { CartanMatrix(IntMatrix{{3}}); }), ErrorCode::NotGeneralizedCartan);
  EXPECT_EQ(code_of([] { CartanMatrix({{2, -1, -1}, {-1, 2, -1}, {-2, -1, 2}}); }), ErrorCode::NotSymmetrizable);
}

TEST(Cartan, Bipartition) {
  const auto p = bipartition(cartan_type_a(2));
  ASSERT_TRUE(p.has_value());
  EXPECT_EQ(*p, (Parity{Sign::Plus, Sign::Minus}));
  EXPECT_FALSE(bipartition(acceptance::triangle()).has_value());
  EXPECT_FALSE(bipartition(acceptance::example44()).has_value());
}

TEST(Cartan, BipartiteDoubleOfTriangle) {
  const auto dbl = bipartite_double(acceptance::triangle());
  EXPECT_EQ(dbl.matrix.rank(), 6);
  EXPECT_TRUE(is_simply_laced(dbl.matrix));
  const auto p = bipartition(dbl.matrix);
  ASSERT_TRUE(p.has_value());
  for (int a = 0; a < 3; ++a) {
    EXPECT_EQ(dbl.matrix(dbl.plus[a], dbl.minus[a]), 0);
    for (int b = 0; b < 3; ++b)
      if (a != b) {
        EXPECT_EQ(dbl.matrix(dbl.plus[a], dbl.minus[b]), -1);
      }
  }
  EXPECT_EQ(code_of([] { bipartite_double(cartan_type_a(3)); }), ErrorCode::AlreadyBipartite);
  EXPECT_EQ(code_of([] { bipartite_double(acceptance::example44()); }), ErrorCode::NotSimplyLaced);
}

TEST(CartanProperty, SymmetrizerMakesDCSymmetric) {
  Rng rng = stream(10);
  for (int trial = 0; trial < 200; ++trial) {
    const CartanMatrix cm = tysys::testing::random_tamely_laced(rng, tysys::testing::uniform(rng, 1, 7));
    EXPECT_TRUE(is_tamely_laced(cm));
    int g = 0;
    for (int a = 0; a < cm.rank(); ++a) g = std::gcd(g, cm.d(a));
    EXPECT_EQ(g, 1);
    for (int i = 0; i < cm.rank(); ++i)
      for (int j = 0; j < cm.rank(); ++j) EXPECT_EQ(cm.d(i) * cm(i, j), cm.d(j) * cm(j, i));
    for (int a = 0; a < cm.rank(); ++a) EXPECT_EQ(cm.t_a(a) * cm.d(a), cm.t());
  }
}

TEST(CartanProperty, BipartitionColorsEveryEdge) {
  Rng rng = stream(11);
  for (int trial = 0; trial < 100; ++trial) {
    const CartanMatrix cm = tysys::testing::random_bipartite_cartan(rng, tysys::testing::uniform(rng, 1, 8));
    const auto p = bipartition(cm);
    ASSERT_TRUE(p.has_value());
    for (int i = 0; i < cm.rank(); ++i)
      for (int j = 0; j < cm.rank(); ++j)
        if (cm.adjacent(i, j)) {
          EXPECT_NE((*p)[i], (*p)[j]);
        }
  }
}

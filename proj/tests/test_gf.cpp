#include <gtest/gtest.h>

#include <set>

#include "szree/gf.hpp"

using namespace szree;

TEST(Gf, ModuliAreTheFixedTrinomials) {
  EXPECT_EQ(make_field(2, 3)->modulus_string(), "t^3+t+1");
  EXPECT_EQ(make_field(3, 3)->modulus_string(), "t^3+2t+1");
  EXPECT_EQ((make_field(2, 3)->modulus()), (std::vector<int>{1, 1, 0, 1}));
  EXPECT_EQ((make_field(3, 3)->modulus()), (std::vector<int>{1, 2, 0, 1}));
  EXPECT_EQ((make_field(3, 5)->modulus()), (std::vector<int>{1, 2, 0, 0, 0, 1}));
}

TEST(Gf, SmallProductsGf8) {
  auto F = make_field(2, 3);
  // t = 2, t^2 = 4 in the dense encoding; t^3 = t + 1
  EXPECT_EQ(F->mul(2, 4), 3u);
  EXPECT_EQ(F->add(5, 5), 0u);
}

TEST(Gf, CharacteristicThree) {
  auto F = make_field(3, 3);
  EXPECT_EQ(F->add(1, 2), 0u);
  EXPECT_EQ(F->neg(1), 2u);
  // t^3 = -2t - 1 = t + 2
  EXPECT_EQ(F->mul(3, 9), F->add(3, 2));
}

TEST(Gf, FieldAxiomsExhaustive) {
  for (auto F : {make_field(2, 3), make_field(2, 5), make_field(3, 3)}) {
    const elem_t q = F->q();
    for (elem_t a = 1; a < q; ++a) {
      EXPECT_EQ(F->mul(a, F->inv(a)), 1u);
      EXPECT_EQ(F->pow(a, q - 1), 1u);
      EXPECT_EQ(F->add(a, F->neg(a)), 0u);
      for (elem_t b = 0; b < q; ++b) {
        EXPECT_EQ(F->mul(a, b), F->mul(b, a));
        EXPECT_EQ(F->frobenius(F->mul(a, b), 1), F->mul(F->frobenius(a, 1), F->frobenius(b, 1)));
        EXPECT_EQ(F->frobenius(F->add(a, b), 1), F->add(F->frobenius(a, 1), F->frobenius(b, 1)));
      }
    }
  }
}

TEST(Gf, PrimitiveElementGeneratesUnits) {
  for (auto F : {make_field(2, 3), make_field(2, 5), make_field(3, 3), make_field(3, 5)}) {
    std::set<elem_t> seen;
    elem_t x = 1;
    for (elem_t i = 0; i + 1 < F->q(); ++i) {
      seen.insert(x);
      x = F->mul(x, F->primitive());
    }
    EXPECT_EQ(seen.size(), F->q() - 1);
  }
}

TEST(Gf, FrobeniusHasOrderM) {
  auto F = make_field(2, 9);
  for (elem_t x = 0; x < F->q(); x += 7) {
    EXPECT_EQ(F->frobenius(x, 9), x);
    EXPECT_EQ(F->frobenius(x, 1), F->mul(x, x));
  }
}

TEST(Gf, SuzukiThetaSquaresToFrobenius) {
  for (unsigned m : {3u, 5u, 9u}) {
    auto F = make_field(2, m);
    for (elem_t x = 0; x < F->q(); ++x) EXPECT_EQ(F->theta(F->theta(x)), F->mul(x, x));
    EXPECT_EQ(F->theta_exponent(), 1ull << ((m + 1) / 2));
  }
}

TEST(Gf, ReeThetaIsAnAutomorphismSquaringToFrobenius) {
  auto F = make_field(3, 3);
  for (elem_t x = 0; x < F->q(); ++x) {
    EXPECT_EQ(F->frobenius(F->theta(F->theta(x)), 1), x);
    for (elem_t y = 0; y < F->q(); ++y) EXPECT_EQ(F->theta(F->mul(x, y)), F->mul(F->theta(x), F->theta(y)));
  }
  EXPECT_EQ(F->r_exponent(), 9u);
}

TEST(Gf, DeltaSign) {
  EXPECT_EQ(delta_sign(bigint(8)), -1);
  EXPECT_EQ(delta_sign(bigint(32)), -1);
  EXPECT_EQ(delta_sign(bigint(512)), 1);
  EXPECT_THROW(delta_sign(bigint(2)), std::invalid_argument);
}

TEST(Gf, FieldOfOrder) {
  EXPECT_EQ(make_field_of_order(27)->p(), 3u);
  EXPECT_EQ(make_field_of_order(512)->m(), 9u);
  EXPECT_THROW(make_field_of_order(6), std::invalid_argument);
}

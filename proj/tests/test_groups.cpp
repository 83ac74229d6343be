#include <gtest/gtest.h>

#include "szree/identities.hpp"

using namespace szree;

TEST(Groups, Orders) {
  EXPECT_EQ(group_order(Family::Sz, 8), bigint(29120));
  EXPECT_EQ(group_order(Family::Ree, 27), bigint("10073444472"));
  EXPECT_EQ(group_order(Family::Sz, 2), bigint(20));
}

TEST(Groups, GeneratorsHaveDeterminantOne) {
  auto F = family_field(Family::Ree, 27);
  for (const auto& g : socle_generators(Family::Ree, *F)) EXPECT_EQ(g.matrix().determinant(), 1u);
  auto E = family_field(Family::Sz, 8);
  for (const auto& g : socle_generators(Family::Sz, *E)) EXPECT_EQ(g.matrix().determinant(), 1u);
}

TEST(Groups, InverseAndKeyRoundTrip) {
  auto F = family_field(Family::Sz, 32);
  const Matrix g = sz_chi(*F, 5, 17) * sz_kappa(*F, 3) * sz_tau(*F);
  EXPECT_TRUE((g * g.inverse()).is_identity());
  EXPECT_EQ(Matrix::from_key(F.get(), 4, g.key()), g);
}

TEST(Groups, ExtendedProductRule) {
  auto F = family_field(Family::Sz, 8);
  const ExtendedElement a(sz_chi(*F, 3, 1), 1), b(sz_kappa(*F, 5), 2);
  // (A,i)(B,j) = (A sigma^i(B), i+j)
  const ExtendedElement ab = a * b;
  EXPECT_EQ(ab.matrix(), a.matrix() * b.matrix().frobenius(1));
  EXPECT_EQ(ab.twist(), 0u);  // 3 = m wraps to 0
  EXPECT_TRUE((ab * ab.inverse()).is_identity());
}

TEST(Groups, FrobeniusOrderThree) {
  auto F = family_field(Family::Sz, 8);
  const auto f = ExtendedElement::twist_only(F.get(), 4, 1);
  EXPECT_EQ(f.order(), 3u);
}

TEST(Groups, SuzukiIdentitySuite) {
  for (std::uint64_t q : {8u, 32u, 512u}) {
    const auto rep = identity_suite(Family::Sz, q, 300);
    for (const auto& i : rep.items) EXPECT_EQ(i.failures, 0u) << q << " " << i.name << " " << i.counterexample;
  }
}

TEST(Groups, ReeIdentitySuiteCorrectedGenerators) {
  for (std::uint64_t q : {27u, 243u}) {
    const auto rep = identity_suite(Family::Ree, q, 300);
    for (const auto& i : rep.items) EXPECT_EQ(i.failures, 0u) << q << " " << i.name << " " << i.counterexample;
  }
}

TEST(Groups, PrintedReeGeneratorsFailTheProductRule) {
  const auto rep = identity_suite(Family::Ree, 27, 200);
  std::uint64_t product_failures = 0;
  for (const auto& i : rep.printed_items)
    if (i.name == "ree_printed.product") product_failures = i.failures;
  EXPECT_GT(product_failures, 0u);
}

TEST(Groups, ReeEtaIsCentralInvolutionOfItsCentralizer) {
  auto F = family_field(Family::Ree, 27);
  const Matrix eta = ree_eta(*F);
  EXPECT_TRUE((eta * eta).is_identity());
  EXPECT_EQ(eta * ree_tau(*F), ree_tau(*F) * eta);
  EXPECT_EQ(eta * ree_chi(*F, 0, 1, 0), ree_chi(*F, 0, 1, 0) * eta);
}

TEST(Groups, SubgroupClosure) {
  auto F = family_field(Family::Sz, 8);
  SubgroupHandle h({ExtendedElement(sz_chi(*F, 1, 0)), ExtendedElement(sz_tau(*F))});
  EXPECT_EQ(h.materialize().size(), 20u);
  EXPECT_EQ(h.order(), bigint(20));
  EXPECT_TRUE(h.contains(ExtendedElement(sz_tau(*F))));
}

TEST(Groups, FieldConjugacySz8) {
  const auto r = field_conjugacy_check(Family::Sz, 8, 3);
  EXPECT_TRUE(r.pass);
  EXPECT_EQ(r.order_r, 1456u);
  EXPECT_EQ(r.coset_size, 29120u);
  EXPECT_THROW(field_conjugacy_check(Family::Sz, 8, 2), group_error);
}

TEST(Groups, UnipotentNormalizerSz8) {
  const auto n = sz_unipotent_normalizer(8, 3, 5);
  EXPECT_TRUE(n.shape_ok);
  EXPECT_EQ(n.order, 16u);
}

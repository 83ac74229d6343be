#include <gtest/gtest.h>

#include "szree/suborbits.hpp"

using namespace szree;

namespace {

struct Fixture {
  SeedInfo s;
  OmegaIndex om;
  SuborbitReport rep;
};

Fixture make(Model m) {
  auto s = seed_catalog(Family::Sz, 8, m);
  BuildOptions o;
  o.expected_size = s.degree;
  auto om = OmegaIndex::build(s.socle, s.seed, o);
  auto rep = decompose(om, s.stabilizer);
  return {std::move(s), std::move(om), std::move(rep)};
}

}  // namespace

TEST(Suborbits, OvoidIsTwoTransitive) {
  const auto f = make(Model::Ovoid);
  ASSERT_EQ(f.rep.suborbits.size(), 2u);
  EXPECT_EQ(f.rep.suborbits[0].length, 1u);
  EXPECT_EQ(f.rep.suborbits[1].length, 64u);
  EXPECT_EQ(f.rep.regular_count, 0u);
}

TEST(Suborbits, CountsPerModel) {
  // (suborbits, regular) from the orbit computation
  const std::vector<std::tuple<Model, std::size_t, std::size_t>> want = {
      {Model::Pair, 165, 133}, {Model::Hall1, 79, 69}, {Model::Hall2, 17, 7}};
  for (auto [m, n, reg] : want) {
    const auto f = make(m);
    EXPECT_EQ(f.rep.suborbits.size(), n) << model_name(m);
    EXPECT_EQ(f.rep.regular_count, reg) << model_name(m);
    std::uint64_t total = 0;
    for (const auto& s : f.rep.suborbits) total += s.length;
    EXPECT_EQ(total, f.rep.degree);
  }
}

TEST(Suborbits, SeedMustBeFixed) {
  auto f = make(Model::Pair);
  EXPECT_THROW(decompose_perms(f.om.size(), f.om.generator_perms(), bigint(29120)), points_error);
}

TEST(Suborbits, FixedPointsOfFrobeniusLikeElements) {
  const auto f = make(Model::Ovoid);
  auto F = f.s.field;
  // chi(1,0) fixes only the point e1 on the ovoid
  EXPECT_EQ(fixed_points({ExtendedElement(sz_chi(*F, 1, 0))}, f.om).count, 1u);
}

TEST(Suborbits, PrimeClassesOfHall2) {
  auto f = make(Model::Hall2);
  const auto cls = prime_subgroup_classes(f.s.stabilizer);
  ASSERT_EQ(cls.size(), 2u);
  EXPECT_EQ(cls[0].label, "p2.1");
  EXPECT_EQ(cls[1].label, "p13.1");
  for (const auto& c : cls) EXPECT_EQ(c.normalizer_order, bigint(normalizer_order_scan(f.s.stabilizer, c.rep)));
}

TEST(Suborbits, NormalizerSumEqualsFixedPointsOnAllModels) {
  for (Model m : {Model::Ovoid, Model::Pair, Model::Hall1, Model::Hall2}) {
    auto f = make(m);
    const auto cls = prime_subgroup_classes(f.s.stabilizer);
    for (const auto& c : cls) {
      const auto mc = normalizer_sum_check(c.rep, cls, f.s.socle, bigint(29120), f.om);
      EXPECT_TRUE(mc.equal) << model_name(m) << " " << c.label << " " << mc.formula << " vs " << mc.brute;
    }
  }
}

TEST(Suborbits, PairFixedPointCounts) {
  auto f = make(Model::Pair);
  const auto cls = prime_subgroup_classes(f.s.stabilizer);
  std::map<std::string, std::uint64_t> fix;
  for (const auto& c : cls) fix[c.label] = fixed_points({c.rep}, f.om).count;
  EXPECT_EQ(fix["p2.1"], 32u);
  EXPECT_EQ(fix["p7.1"], 1u);
}

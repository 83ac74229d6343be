#include <gtest/gtest.h>

#include "szree/points.hpp"

using namespace szree;

namespace {

OmegaIndex build(Model m, SeedInfo* out = nullptr) {
  auto s = seed_catalog(Family::Sz, 8, m);
  BuildOptions o;
  o.expected_size = s.degree;
  auto om = OmegaIndex::build(s.socle, s.seed, o);
  if (out) *out = s;
  return om;
}

}  // namespace

TEST(Points, SzEightDegrees) {
  const std::vector<std::pair<Model, std::size_t>> want = {
      {Model::Ovoid, 65}, {Model::Pair, 2080}, {Model::Hall1, 1456}, {Model::Hall2, 560}, {Model::Sz2, 1456}};
  for (auto [m, d] : want) {
    SeedInfo s;
    const auto om = build(m, &s);
    EXPECT_EQ(om.size(), d) << model_name(m);
    EXPECT_EQ(s.degree, d) << model_name(m);
  }
}

TEST(Points, StabilizerOrders) {
  EXPECT_EQ(seed_catalog(Family::Sz, 8, Model::Hall1).stabilizer.order(), bigint(20));
  EXPECT_EQ(seed_catalog(Family::Sz, 8, Model::Hall2).stabilizer.order(), bigint(52));
  EXPECT_EQ(seed_catalog(Family::Ree, 27, Model::Involution).degree, 512487u);
}

TEST(Points, UnsupportedModels) {
  EXPECT_THROW(seed_catalog(Family::Ree, 27, Model::Ovoid), points_error);
  EXPECT_THROW(seed_catalog(Family::Sz, 8, Model::Involution), points_error);
  EXPECT_THROW(parse_model("subfield"), points_error);
}

TEST(Points, WitnessWordsReachTheirPoints) {
  const auto om = build(Model::Pair);
  for (std::uint32_t i = 0; i < om.size(); i += 37) {
    EXPECT_EQ(om.apply_word(0, om.witness_word(i)), i);
    EXPECT_EQ(act(om.point(0), om.transversal_element(i)).key, om.key(i));
  }
}

TEST(Points, PermutationsMatchAction) {
  const auto om = build(Model::Hall2);
  const auto& g = om.generators()[0];
  const Perm p = om.perm_of(g);
  for (std::uint32_t i = 0; i < om.size(); i += 11) EXPECT_EQ(om.key(p[i]), act(om.point(i), g).key);
}

TEST(Points, BuildIsDeterministic) {
  const auto a = build(Model::Hall1), b = build(Model::Hall1);
  ASSERT_EQ(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i) EXPECT_EQ(a.key(i), b.key(i));
}

TEST(Points, MemoryBudgetIsEnforced) {
  auto s = seed_catalog(Family::Sz, 8, Model::Pair);
  BuildOptions o;
  o.expected_size = s.degree;
  o.memory_budget = 1024;
  EXPECT_THROW(OmegaIndex::build(s.socle, s.seed, o), points_error);
}

TEST(Points, ParallelPermMatchesSerial) {
  const auto om = build(Model::Pair);
  const auto& g = om.generators()[1];
  EXPECT_EQ(om.perm_of(g, 1), om.perm_of(g, 3));
}

#include <gtest/gtest.h>

#include "szree/formulas.hpp"

using namespace szree;

namespace {

// Plain 128-bit evaluation of the suborbit counts, used as an oracle.
struct Small {
  __int128 q, qp, r, rp;
  int d, dp;
};

Small small(int l, int e) {
  const int m = l * e;
  Small s{__int128(1) << m, __int128(1) << l, __int128(1) << ((m + 1) / 2), __int128(1) << ((l + 1) / 2), 0, 0};
  // delta: the sign making q + delta r + 1 divisible by 5
  s.d = ((s.q + s.r + 1) % 5 == 0) ? 1 : -1;
  s.dp = ((s.qp + s.rp + 1) % 5 == 0) ? 1 : -1;
  return s;
}

rational R(__int128 x) {
  bigint b = 0;
  const bool neg = x < 0;
  unsigned __int128 u = neg ? -x : x;
  bigint scale = 1;
  while (u) {
    b += scale * static_cast<unsigned>(u % 1000000000u);
    scale *= 1000000000u;
    u /= 1000000000u;
  }
  return rational(neg ? -b : b);
}

}  // namespace

TEST(Formulas, SuborbitCountsAtThreeThree) {
  const auto L = sz_suborbit_counts(SzParams::make(3, 3));
  EXPECT_EQ(L.get("x1"), 9);
  EXPECT_EQ(L.get("x3"), 27);
  EXPECT_EQ(L.get("x5"), 72);
  EXPECT_TRUE(L.all_pass());
}

TEST(Formulas, FixTableAtThreeThree) {
  const auto L = sz_fix_table(SzParams::make(3, 3));
  EXPECT_EQ(L.get("fix.split_torus"), 73);
  EXPECT_EQ(L.get("fix.z4_in_q0"), 64);
  EXPECT_EQ(L.get("fix.involution"), 4096);
}

TEST(Formulas, CountsAgreeWithSmallOracle) {
  for (int l : {3, 5, 7})
    for (int e : {3, 5}) {
      if (l * e > 35) continue;
      const Small s = small(l, e);
      const auto p = SzParams::make(l, e);
      ASSERT_EQ(p.delta, s.d);
      ASSERT_EQ(p.deltap, s.dp);
      const auto L = sz_gamma0(p);
      const __int128 a = s.q / s.qp;
      EXPECT_EQ(L.get("x1"), R((a - 1) / (s.qp - 1)));
      EXPECT_EQ(L.get("x2"), R((s.qp / 2) * (a - 1) / (s.qp - 1)));
      EXPECT_EQ(L.get("x3"), R((s.q - s.qp + s.d * s.r - s.dp * s.rp) / (4 * (s.qp + s.dp * s.rp + 1))));
      EXPECT_EQ(L.get("x4"), R((s.q - s.qp - s.d * s.r + s.dp * s.rp) / (4 * (s.qp - s.dp * s.rp + 1))));
      EXPECT_EQ(L.get("x5"), R(a * (a - 1) / (s.qp * (s.qp - 1))));
      EXPECT_TRUE(L.verdict("gamma0.partition"));
      EXPECT_TRUE(L.verdict("gamma0.above_half"));
    }
}

TEST(Formulas, Gamma0IsMultipleOfM0) {
  const auto L = sz_gamma0(SzParams::make(3, 3));
  EXPECT_EQ(L.get("m0_order"), 29120);
  EXPECT_EQ(L.get("gamma0") / 29120, 41391);
}

TEST(Formulas, NprimeCases) {
  const auto p = SzParams::make(3, 5);
  // p0 = 3 != e: 2^10(2^10+1)(2^5-1) / [2^2(2^2+1)(2-1)]^2
  EXPECT_EQ(sz_nprime_p(p, 3, 15), rational(1024 * 1025 * 31, 400));
  EXPECT_EQ(sz_nprime_p(p, 5, 15), rational(65, 224) * 16 * 512);
  EXPECT_THROW(sz_nprime_p(p, 2, 15), formula_error);
  EXPECT_THROW(sz_nprime_p(p, 7, 15), formula_error);
}

TEST(Formulas, MainInequalityDefaultGrid) {
  for (const auto& L : sz_sweep({})) {
    EXPECT_TRUE(L.all_pass()) << L.label;
    EXPECT_GT(L.get("A0"), 0) << L.label;
  }
}

TEST(Formulas, MainInequalityRejectsSmallParameters) {
  EXPECT_THROW(SzParams::make(1, 3), formula_error);
  EXPECT_THROW(SzParams::make(3, 9), formula_error);
}

TEST(Formulas, DisplayedA0ChainOvershoots) {
  // the displayed chain leads with q'^(6e-5); A0 grows like q'^(5e-5)/2
  const auto L = sz_main_inequality(SzParams::make(3, 3));
  EXPECT_GT(L.get("A0.chain_lower"), L.get("A0"));
  EXPECT_FALSE(L.discrepancies.empty());
}

TEST(Formulas, PslSumEntries) {
  const auto L = ree_psl_qsum(5);
  const bigint q = 243;
  EXPECT_EQ(L.get("fix.eta"), rational((q * q - q + 2) / 2));
  EXPECT_EQ(L.get("fix.eta"), 29404);
  EXPECT_TRUE(L.verdict("exact.total.below_half"));
  EXPECT_THROW(ree_psl_qsum(3), formula_error);
}

TEST(Formulas, PslSumAllM) {
  for (long long m : {5, 7, 9, 11}) {
    const auto L = ree_psl_qsum(m);
    EXPECT_TRUE(L.all_pass()) << m;
    EXPECT_LT(L.get("exact.total"), rational(1, 2));
    // three involution classes push the sum past 1/2
    EXPECT_GT(L.get("classes.total"), rational(1, 2));
  }
}

TEST(Formulas, FieldLedgerGrid) {
  for (const auto& L : ree_sweep({})) EXPECT_TRUE(L.all_pass()) << L.label;
}

TEST(Formulas, FieldLedgerSpecialBranch) {
  const auto L = ree_field_ledger(ReeParams::make(1, 3));
  EXPECT_EQ(L.get("field.e_stated_bound"), rational(16, 100));
  EXPECT_LT(L.get("chain.total_upper"), rational(1, 2));
  EXPECT_TRUE(L.all_pass());
}

TEST(Formulas, RootPowerComparison) {
  EXPECT_TRUE(less_than_root_power(rational(3), 2, 5, 3));   // 3 < 2^(5/3) = 3.17
  EXPECT_FALSE(less_than_root_power(rational(4), 2, 5, 3));
  EXPECT_EQ(power_floor(2, 5, 3), 2);
  EXPECT_EQ(power_ceil(2, 5, 3), 4);
  EXPECT_EQ(power_floor(2, -5, 3), rational(1, 4));
}

TEST(Formulas, Catalog) {
  const auto c = maximal_subgroup_catalog(true, 512);
  ASSERT_EQ(c.size(), 5u);
  EXPECT_EQ(c[1].order, 1022);
  EXPECT_EQ(c.back().order, 29120);
  const auto r = maximal_subgroup_catalog(false, 27);
  EXPECT_EQ(r[4].order, 19656);
  EXPECT_THROW(maximal_subgroup_catalog(true, 64), formula_error);
}

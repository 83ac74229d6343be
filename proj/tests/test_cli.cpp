#include <gtest/gtest.h>

#include "szree/cli.hpp"

using namespace szree;
using szree::cli::json;

namespace {

struct Run {
  int code;
  std::string out;
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "szree");
  std::vector<const char*> argv;
  for (auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str()};
}

}  // namespace

TEST(Cli, IdentitiesSz8Pass) {
  const auto r = run({"identities", "--family", "sz", "--q", "8", "--trials", "100"});
  EXPECT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_TRUE(j["payload"]["all_pass"].get<bool>());
  EXPECT_TRUE(j["payload"]["field_conjugacy"][0]["pass"].get<bool>());
}

TEST(Cli, IdentitiesRee27Pass) {
  const auto r = run({"identities", "--family", "ree", "--q", "27", "--trials", "100"});
  EXPECT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_FALSE(j["discrepancies"].empty());  // printed generators
}

TEST(Cli, BadFieldIsConfigError) {
  EXPECT_EQ(run({"identities", "--family", "sz", "--q", "6"}).code, 3);
  EXPECT_EQ(run({"identities", "--family", "sz", "--q", "4"}).code, 3);
}

TEST(Cli, SuborbitsPair) {
  const auto r = run({"suborbits", "--family", "sz", "--q", "8", "--model", "pair"});
  EXPECT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["payload"]["degree"], "2080");
  EXPECT_EQ(j["payload"]["regular_count"], "133");
  for (const auto& c : j["payload"]["prime_classes"]) EXPECT_TRUE(c["agree"].get<bool>());
}

TEST(Cli, UnsupportedModelListsSupported) {
  const auto r = run({"suborbits", "--family", "ree", "--q", "27", "--model", "pair"});
  EXPECT_EQ(r.code, 3);
  EXPECT_NE(r.out.find("supported: involution"), std::string::npos);
}

TEST(Cli, BgHall1Holds) {
  const auto r = run({"bg", "--family", "sz", "--q", "8", "--model", "hall1"});
  EXPECT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_TRUE(j["payload"]["socle"]["holds"].get<bool>());
  EXPECT_EQ(j["payload"]["q_check"]["total"], "3/52");
}

TEST(Cli, BgOvoidHasDistinctExitCode) {
  const auto r = run({"bg", "--family", "sz", "--q", "8", "--model", "ovoid"});
  EXPECT_EQ(r.code, 4);
  EXPECT_TRUE(json::parse(r.out)["payload"]["gamma_empty"].get<bool>());
}

TEST(Cli, BgExtendMustDivideM) {
  EXPECT_EQ(run({"bg", "--family", "sz", "--q", "8", "--model", "pair", "--extend", "2"}).code, 3);
  const auto r = run({"bg", "--family", "sz", "--q", "8", "--model", "pair", "--extend", "3"});
  EXPECT_EQ(r.code, 0);
  EXPECT_EQ(json::parse(r.out)["payload"]["extension"]["m_order"], "42");
}

TEST(Cli, SweepDefaultGrids) {
  EXPECT_EQ(run({"sweep", "--family", "sz", "--grid", "default"}).code, 0);
  const auto r = run({"sweep", "--family", "ree"});
  EXPECT_EQ(r.code, 0);
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["payload"]["ledgers"].size(), 13u);
}

TEST(Cli, SweepEmptyGrid) {
  const auto r = run({"sweep", "--family", "sz", "--grid", "empty"});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(json::parse(r.out)["payload"]["ledgers"].empty());
}

TEST(Cli, SweepCustomGridAndBadGrid) {
  const auto r = run({"sweep", "--family", "sz", "--grid", "l=3;e=3"});
  const auto j = json::parse(r.out);
  ASSERT_EQ(j["payload"]["ledgers"].size(), 1u);
  EXPECT_EQ(j["payload"]["ledgers"][0]["values"]["x3"], "27");
  EXPECT_EQ(run({"sweep", "--family", "sz", "--grid", "l=4;e=3"}).code, 3);
  EXPECT_EQ(run({"sweep", "--family", "sz", "--grid", "nonsense"}).code, 3);
}

TEST(Cli, ReportsAreDeterministic) {
  const std::vector<std::string> args = {"bg", "--family", "sz", "--q", "8", "--model", "hall2"};
  EXPECT_EQ(run(args).out, run(args).out);
  const std::vector<std::string> csv = {"sweep", "--family", "sz", "--grid", "l=3;e=3", "--format", "csv"};
  const auto a = run(csv);
  EXPECT_EQ(a.out, run(csv).out);
  EXPECT_EQ(a.out.rfind("key,value\n", 0), 0u);
  EXPECT_NE(a.out.find("payload.ledgers.0.values.x1,9"), std::string::npos);
}

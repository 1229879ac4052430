#include <gtest/gtest.h>

#include <cmath>
#include <set>

#include "ctp/engine.hpp"
#include "ctp/errors.hpp"
#include "ctp/strategies.hpp"

namespace ctp {
namespace {

// Explores fan path 0 twice regardless of the outcome.
class StubbornStrategy : public Strategy {
 public:
  std::string name() const override { return "stubborn"; }
  bool deterministic() const override { return true; }
  void execute(Navigator& nav, Chooser&) const override {
    nav.explore(nav.fan_route(0));
    nav.explore(nav.fan_route(0));
  }
};

// Gives up after one exploration.
class QuitterStrategy : public Strategy {
 public:
  std::string name() const override { return "quitter"; }
  bool deterministic() const override { return true; }
  void execute(Navigator& nav, Chooser&) const override { nav.explore(nav.fan_route(0)); }
};

DisjointInstance uniform_fan(int k, int paths, std::vector<int> blocked) {
  return gen_gstar(k, std::vector<Number>(paths, Number(1)), blocked, {});
}

TEST(Engine, BacktrackHandTraceOnUniformFan) {
  RunTrace t = run(make_backtrack(), uniform_fan(2, 3, {0, 1}));
  EXPECT_EQ(t.alg, Number(5));
  EXPECT_EQ(t.opt, Number(1));
  EXPECT_EQ(t.ratio, Number(5));
  ASSERT_EQ(t.actions.size(), 3u);
  EXPECT_EQ(t.actions[0].outcome, "blocked");
  EXPECT_EQ(t.actions[2].outcome, "open");
}

TEST(Engine, NoBlockedEdgesGivesRatioOne) {
  auto inst = gen_gstar(2, {Number(1), Number(2), Number(3)}, {}, {});
  for (const auto& name : strategy_names()) {
    std::optional<Number> eps;
    if (name != "backtrack" && name != "err1" && name != "rand-backtrack") eps = Number::fraction(1, 2);
    if (name == "rand-one") continue;  // k = 1 only
    if (name == "rand-uniform") continue;  // uniform costs only
    auto s = make_strategy(name, eps, 2);
    RunTrace t = run(s, inst, std::uint64_t{3});
    EXPECT_EQ(t.ratio, Number(1)) << name;
    EXPECT_EQ(t.alg, Number(1)) << name;
  }
}

TEST(Engine, BlockedPrefixIsChargedTwice) {
  auto inst = gen_gstar(1, {Number(4), Number(6)}, {0}, {}, std::vector<Number>{Number::fraction(3, 2), Number(6)});
  RunTrace t = run(make_backtrack(), inst);
  EXPECT_EQ(t.alg, Number(3) + Number(6));
  EXPECT_EQ(t.ratio, Number::fraction(3, 2));
}

TEST(Engine, GeneralEncodingMatchesFanForBacktrack) {
  EnumerationSpec spec;
  spec.k_max = 3;
  spec.cost_grid = {Number(1), Number(2), Number::fraction(7, 3)};
  spec.prefix_positions = {Number::fraction(1, 2), Number(1)};
  spec.max_paths = 3;
  auto backtrack = make_backtrack();
  int checked = 0;
  for (const auto& inst : enumerate_instances(spec)) {
    RunTrace fan = run(backtrack, inst);
    RunTrace graph = run(backtrack, to_general(inst));
    EXPECT_EQ(fan.alg, graph.alg) << to_json(inst).dump();
    ++checked;
  }
  EXPECT_GT(checked, 100);
}

TEST(Engine, ReexploringAKnownBlockIsAContractViolation) {
  auto s = std::make_shared<StubbornStrategy>();
  EXPECT_THROW(run(s, uniform_fan(1, 2, {0})), ContractViolation);
  auto q = std::make_shared<QuitterStrategy>();
  EXPECT_THROW(run(q, uniform_fan(1, 2, {0})), ContractViolation);
}

TEST(Engine, ZeroOptimumHasNoRatio) {
  GeneralInstance inst{Graph({"s", "m", "t"}, "s", "t"), {}, {}, 1};
  inst.graph.add_edge(0, "s", "m", Number(0));
  inst.graph.add_edge(1, "m", "t", Number(0));
  inst.graph.add_edge(2, "s", "t", Number(3));
  EXPECT_THROW(run(make_backtrack(), inst), UndefinedRatioError);
}

TEST(Engine, RandomizedRunsNeedSeedsAndFans) {
  auto inst = uniform_fan(2, 3, {0});
  EXPECT_THROW(run(make_rand_backtrack(2), inst), UnsupportedError);
  EXPECT_THROW(run(make_rand_backtrack(2), to_general(inst), std::uint64_t{1}), UnsupportedError);
  EXPECT_THROW(run(make_e_backtrack(Number(1), 3), inst), UnsupportedError);
}

TEST(Engine, IdenticalSeedsReproduceTraces) {
  auto inst = gen_gstar(3, {Number(1), Number(1), Number(2), Number(3)}, {0, 1, 2}, {3});
  auto s = make_e_rand_backtrack(Number(1), 3);
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    EXPECT_EQ(to_json(run(s, inst, seed)).dump(), to_json(run(s, inst, seed)).dump());
  }
}

TEST(Engine, DeriveSeedSeparatesIndices) {
  std::set<std::uint64_t> seen;
  for (std::uint64_t i = 0; i < 1000; ++i) seen.insert(derive_seed(42, i));
  EXPECT_EQ(seen.size(), 1000u);
  EXPECT_EQ(derive_seed(42, 7), derive_seed(42, 7));
}

TEST(Engine, ExpectationBranchesResum) {
  auto inst = gen_gstar(3, {Number(1), Number(2), Number(2), Number(5)}, {0, 2}, {1});
  auto s = make_rand_backtrack(3);
  ExpectationResult r = exact_expectation(s, inst);
  Number mass(0);
  Number cost(0);
  for (const auto& b : r.branches) {
    mass += b.probability;
    cost += b.probability * b.cost;
    // Replaying a branch's choices reproduces its cost.
    EXPECT_EQ(run_scripted(s, inst, b.choices).alg, b.cost);
  }
  EXPECT_EQ(mass, Number(1));
  EXPECT_EQ(cost, r.expected_cost);
  EXPECT_EQ(r.ratio, r.expected_cost / r.opt);
  EXPECT_GT(r.branch_count(), 1u);
}

TEST(Engine, DeterministicExpectationIsTheRun) {
  auto inst = uniform_fan(2, 3, {1, 2});
  ExpectationResult r = exact_expectation(make_backtrack(), inst);
  EXPECT_EQ(r.branch_count(), 1u);
  EXPECT_EQ(r.expected_cost, run(make_backtrack(), inst).alg);
}

TEST(Engine, MonteCarloAgreesWithExpectation) {
  auto inst = gen_gstar(2, {Number(1), Number(2), Number(3)}, {0, 1}, {0});
  auto s = make_e_rand_backtrack(Number(1), 2);
  ExpectationResult exact = exact_expectation(s, inst);
  MonteCarloResult mc = monte_carlo(s, inst, 20000, 99);
  double se = mc.std_dev / std::sqrt(static_cast<double>(mc.n));
  EXPECT_LE(std::abs(mc.mean.to_double() - exact.expected_cost.to_double()), 3 * se + 1e-12);
  EXPECT_LE(mc.ci_low, mc.mean.to_double());
  EXPECT_GE(mc.ci_high, mc.mean.to_double());
}

TEST(Engine, FamilyRatioTakesTheWorstMember) {
  InstanceFamily fam = gen_theorem_family(TheoremTag::T7, 2);
  FamilyRatio det = family_worst_ratio(make_backtrack(), fam, RatioMode::kDeterministic);
  Number worst(0);
  for (const auto& m : fam.members) worst = max(worst, run(make_backtrack(), m).ratio);
  EXPECT_EQ(det.worst, worst);
  EXPECT_EQ(det.per_member.size(), fam.members.size());
  FamilyRatio rnd = family_worst_ratio(make_rand_backtrack(2), fam, RatioMode::kExpected);
  ASSERT_TRUE(rnd.weighted);
  EXPECT_LE(*rnd.weighted, rnd.worst);
}

TEST(Engine, StageDistributionValidity) {
  StageDistribution ok{{{0, Number::fraction(1, 3)}, {1, Number::fraction(2, 3)}}};
  EXPECT_TRUE(ok.is_valid());
  StageDistribution bad{{{0, Number::fraction(1, 3)}, {1, Number::fraction(1, 3)}}};
  EXPECT_FALSE(bad.is_valid());
  StageDistribution negative{{{0, Number(2)}, {1, Number(-1)}}};
  EXPECT_FALSE(negative.is_valid());
}

}  // namespace
}  // namespace ctp

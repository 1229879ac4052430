#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "ctp/errors.hpp"
#include "ctp/oracle.hpp"
#include "ctp/strategies.hpp"

namespace ctp {
namespace {

// Walks `order` with terminal blocks: each failure costs a round trip.
Number walk_cost(const std::vector<Number>& costs, const std::vector<int>& order, const BlockedMask& blocked) {
  Number total(0);
  for (int i : order) {
    if (!blocked[i]) return total + costs[i];
    total += Number(2) * costs[i];
  }
  ADD_FAILURE() << "order never reaches a free path";
  return total;
}

Number cheapest_free(const std::vector<Number>& costs, const BlockedMask& blocked) {
  std::optional<Number> best;
  for (std::size_t i = 0; i < costs.size(); ++i) {
    if (!blocked[i] && (!best || costs[i] < *best)) best = costs[i];
  }
  return *best;
}

// min over all permutations of max over scenarios, by exhaustion.
Number brute_minimax(const FamilySpec& spec) {
  std::vector<int> order(spec.size());
  std::iota(order.begin(), order.end(), 0);
  auto scenarios = adversary_scenarios(spec);
  std::optional<Number> best;
  do {
    Number worst(0);
    for (const auto& s : scenarios) {
      worst = max(worst, walk_cost(spec.costs, order, s) / cheapest_free(spec.costs, s));
    }
    if (!best || worst < *best) best = worst;
  } while (std::next_permutation(order.begin(), order.end()));
  return *best;
}

std::vector<FamilySpec> sample_specs() {
  std::vector<FamilySpec> out;
  out.push_back({1, {Number(1), Number(3)}, {false, false}, 2});
  out.push_back({2, {Number(1), Number(1), Number(1)}, {false, false, false}, 2});
  out.push_back({2, {Number(1), Number(2), Number(4)}, {true, false, false}, 1});
  out.push_back({2, {Number(1), Number(2), Number(2), Number(6)}, {true, true, false, false}, 2});
  out.push_back({3, {Number(1), Number(1), Number(3), Number(4)}, {false, false, false, false}, 4});
  for (auto tag : {TheoremTag::T7, TheoremTag::T8, TheoremTag::T12, TheoremTag::T13}) {
    out.push_back(gen_theorem_family(tag, 2).base);
  }
  return out;
}

TEST(Oracle, OrderCostAgreesWithWalk) {
  std::vector<Number> costs{Number(1), Number(2), Number(5)};
  BlockedMask blocked{true, false, true};
  EXPECT_EQ(order_cost(costs, {0, 2, 1}, blocked), Number(2 + 10 + 2));
  EXPECT_EQ(scenario_opt(costs, blocked), Number(2));
}

TEST(Oracle, DetMinimaxMatchesExhaustion) {
  for (const auto& spec : sample_specs()) {
    DetGameValue v = det_minimax(spec);
    ASSERT_TRUE(v.feasible);
    EXPECT_EQ(v.value, brute_minimax(spec));
    // The reported order and reply realize the value.
    EXPECT_EQ(order_cost(spec.costs, v.order, v.worst_scenario) / scenario_opt(spec.costs, v.worst_scenario),
              v.value);
  }
}

TEST(Oracle, DetMinimaxIsScaleInvariant) {
  const Number factor = Number::fraction(7, 3);
  for (auto spec : sample_specs()) {
    Number base = det_minimax(spec).value;
    for (auto& c : spec.costs) c *= factor;
    EXPECT_EQ(det_minimax(spec).value, base);
  }
}

TEST(Oracle, RandomizedValueNeverExceedsDeterministic) {
  for (const auto& spec : sample_specs()) {
    RandGameValue r = rand_game_value(spec);
    EXPECT_TRUE(r.certified);
    EXPECT_LE(r.value, det_minimax(spec).value);
    Number mass(0);
    for (const auto& p : r.mix) mass += p;
    EXPECT_EQ(mass, Number(1));
  }
}

TEST(Oracle, KnownGameValues) {
  EXPECT_EQ(det_minimax(gen_theorem_family(TheoremTag::T9, 1).base).value, Number(3));
  EXPECT_EQ(det_minimax(gen_theorem_family(TheoremTag::T10, 2).base).value, Number::golden17());
  for (int k = 1; k <= 3; ++k) {
    EXPECT_EQ(det_minimax(gen_theorem_family(TheoremTag::T7, k).base).value, Number(2 * k + 1));
    EXPECT_EQ(rand_game_value(gen_theorem_family(TheoremTag::T12, k).base).value, Number(k + 1));
  }
}

TEST(Oracle, ConsistencyConstraintOnTradeoffFamily) {
  for (int k = 1; k <= 2; ++k) {
    for (const Number& eps : {Number::fraction(1, 2), Number(1)}) {
      InstanceFamily fam = gen_theorem_family(TheoremTag::T3, k, eps);
      ConsistencyConstraint c{eps, family_scenarios(fam)[*fam.reference]};
      RandGameValue r = rand_game_value(fam.base, c);
      EXPECT_EQ(r.value, Number(k) + Number(k) / eps);
      EXPECT_TRUE(r.certified);
    }
  }
}

TEST(Oracle, DeterministicFilterCanExcludeEverything) {
  InstanceFamily fam = gen_theorem_family(TheoremTag::T1, 1, Number(1));
  ConsistencyConstraint c{Number::fraction(1, 1000000), family_scenarios(fam)[*fam.reference]};
  // Only exploring the predicted-free path first stays under 1 + eps here.
  DetGameValue v = det_minimax(fam.base, c);
  if (v.feasible) {
    EXPECT_EQ(order_cost(fam.base.costs, v.order, c.reference), scenario_opt(fam.base.costs, c.reference));
  }
}

TEST(Oracle, SizeLimits) {
  FamilySpec big{2, std::vector<Number>(9, Number(1)), std::vector<bool>(9, false), 2};
  EXPECT_THROW(det_minimax(big), SizeError);
  FamilySpec mid{2, std::vector<Number>(8, Number(1)), std::vector<bool>(8, false), 2};
  EXPECT_THROW(rand_game_value(mid), SizeError);
}

TEST(Oracle, ClaimedBounds) {
  auto inst = gen_gstar(2, {Number(1), Number(1), Number(1)}, {0, 1}, {0, 1});
  auto b = claimed_upper_bound(*make_backtrack(), inst);
  ASSERT_TRUE(b);
  EXPECT_EQ(b->value, Number(5));
  auto e = claimed_upper_bound(*make_e_backtrack(Number(1), 2), inst);
  ASSERT_TRUE(e);
  EXPECT_EQ(e->value, Number(2));
  EXPECT_TRUE(e->strict);
  auto wrong = gen_gstar(2, {Number(1), Number(1), Number(1)}, {0, 1}, {});
  auto r = claimed_upper_bound(*make_e_rand_backtrack(Number(1), 2), wrong);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->value, Number(10));
  EXPECT_FALSE(claimed_upper_bound(*make_err1_backtrack(2), wrong));  // error 2
}

TEST(Oracle, VerifyReportsAndRejectsUnknownTags) {
  VerifyReport r = verify_bound("Thm9");
  EXPECT_TRUE(r.pass());
  ASSERT_FALSE(r.checks.empty());
  EXPECT_EQ(r.checks[0].measured, Number(3));
  VerifyReport yao = verify_bound("Thm12", {3});
  EXPECT_TRUE(yao.pass());
  bool saw_four = false;
  for (const auto& c : yao.checks) saw_four = saw_four || c.measured == Number(4);
  EXPECT_TRUE(saw_four);
  EXPECT_THROW(verify_bound("Thm99"), RangeError);
  EXPECT_EQ(to_json(r)["tag"], "Thm9");
}

}  // namespace
}  // namespace ctp

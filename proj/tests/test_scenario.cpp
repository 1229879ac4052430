#include <gtest/gtest.h>

#include <set>

#include "ctp/errors.hpp"
#include "ctp/scenario.hpp"

namespace ctp {
namespace {

long choose(int n, int r) {
  if (r < 0 || r > n) return 0;
  long out = 1;
  for (int i = 1; i <= r; ++i) out = out * (n - r + i) / i;
  return out;
}

TEST(Scenario, GstarBuildsTheFan) {
  auto inst = gen_gstar(2, {Number(1), Number(2), Number(3)}, {0}, {0, 1});
  EXPECT_EQ(inst.size(), 3u);
  EXPECT_TRUE(inst.paths[0].blocked);
  EXPECT_EQ(inst.paths[0].block_prefix, Number(1));
  EXPECT_EQ(prediction_error(inst), 1);
  EXPECT_EQ(optimal_cost(inst), Number(2));
  EXPECT_EQ(blocked_count(inst), 1);
  EXPECT_EQ(predicted_count(inst), 2);
}

TEST(Scenario, ValidateRejectsBadInstances) {
  EXPECT_THROW(gen_gstar(1, {Number(1), Number(2)}, {0, 1}, {}), InvalidInstanceError);
  EXPECT_THROW(gen_gstar(2, {Number(1), Number(2)}, {0, 1}, {}), InvalidInstanceError);
  EXPECT_THROW(gen_gstar(1, {Number(1), Number(2)}, {5}, {}), InvalidInstanceError);
  EXPECT_THROW(gen_gstar(1, {Number(-1), Number(2)}, {}, {}), InvalidInstanceError);
  EXPECT_THROW(gen_gstar(1, {Number(1), Number(2)}, {0}, {}, std::vector<Number>{Number(3), Number(2)}),
               InvalidInstanceError);
}

TEST(Scenario, GeneralEncodingPreservesOptimumAndError) {
  EnumerationSpec spec;
  spec.k_max = 2;
  spec.cost_grid = {Number(1), Number(3)};
  spec.prefix_positions = {Number::fraction(1, 2), Number(1)};
  int seen = 0;
  for (const auto& inst : enumerate_instances(spec)) {
    GeneralInstance g = to_general(inst);
    EXPECT_EQ(optimal_cost(g), optimal_cost(inst));
    EXPECT_EQ(prediction_error(g), prediction_error(inst));
    EXPECT_TRUE(validate(g).empty());
    for (std::size_t i = 0; i < inst.size(); ++i) {
      EXPECT_EQ(g.blocked.count(blockable_edge(static_cast<int>(i))) != 0, inst.paths[i].blocked);
    }
    ++seen;
  }
  EXPECT_GT(seen, 100);
}

TEST(Scenario, EnumerationCountMatchesClosedForm) {
  EnumerationSpec spec;
  spec.k_min = 1;
  spec.k_max = 3;
  spec.cost_grid = {Number(1), Number(2), Number(5)};
  spec.prefix_positions = {Number::fraction(1, 3), Number(1)};
  const int g = 3;
  const int q = 2;
  long expected = 0;
  for (int k = 1; k <= 3; ++k) {
    for (int n = 2; n <= k + 1; ++n) {
      long tuples = choose(g + n - 1, n);
      long blocked = 0;
      for (int b = 0; b <= std::min(k, n - 1); ++b) {
        long ways = choose(n, b);
        for (int i = 0; i < b; ++i) ways *= q;
        blocked += ways;
      }
      long predicted = 0;
      for (int p = 0; p <= std::min(k, n); ++p) predicted += choose(n, p);
      expected += tuples * blocked * predicted;
    }
  }
  auto all = enumerate_instances(spec);
  EXPECT_EQ(static_cast<long>(all.size()), expected);
  std::set<std::string> unique;
  for (const auto& inst : all) {
    EXPECT_TRUE(validate(inst).empty());
    unique.insert(to_json(inst).dump());
  }
  EXPECT_EQ(unique.size(), all.size());
}

TEST(Scenario, EnumerationIsReproducibleAndFiltersByError) {
  EnumerationSpec spec;
  spec.k_max = 2;
  spec.cost_grid = {Number(1), Number(2)};
  auto a = enumerate_instances(spec);
  auto b = enumerate_instances(spec);
  EXPECT_EQ(a, b);
  spec.max_error = 1;
  auto filtered = enumerate_instances(spec);
  std::size_t expected = 0;
  for (const auto& inst : a) expected += prediction_error(inst) <= 1;
  EXPECT_EQ(filtered.size(), expected);
  for (const auto& inst : filtered) EXPECT_LE(prediction_error(inst), 1);
}

TEST(Scenario, AdversaryScenarioCount) {
  // No error bound: every proper subset of size <= k.
  FamilySpec spec{3, {Number(1), Number(1), Number(1), Number(1)}, {false, false, false, false}, 4};
  EXPECT_EQ(adversary_scenarios(spec).size(), static_cast<std::size_t>(choose(4, 0) + choose(4, 1) +
                                                                       choose(4, 2) + choose(4, 3)));
  // Error <= 1 against prediction {0}: {}, {0}, {0,j}.
  FamilySpec err1{2, {Number(1), Number(1), Number(1)}, {true, false, false}, 1};
  EXPECT_EQ(adversary_scenarios(err1).size(), 4u);
  for (const auto& mask : adversary_scenarios(err1)) {
    EXPECT_TRUE(validate(realize(err1, mask)).empty());
    EXPECT_LE(prediction_error(realize(err1, mask)), 1);
  }
}

class FamilyTest : public ::testing::TestWithParam<std::pair<TheoremTag, int>> {};

TEST_P(FamilyTest, MembersAreValidAndWeighted) {
  auto [tag, k] = GetParam();
  std::optional<Number> eps;
  if (tag == TheoremTag::T1 || tag == TheoremTag::T3) eps = Number(1);
  InstanceFamily fam = gen_theorem_family(tag, k, eps);
  EXPECT_NO_THROW(require_valid(fam));
  Number total(0);
  for (const auto& w : fam.weights) total += w;
  EXPECT_EQ(total, Number(1));
  for (const auto& m : fam.members) {
    EXPECT_EQ(budget(m), k);
    EXPECT_LE(prediction_error(m), fam.error_budget);
  }
  if (fam.reference) EXPECT_EQ(prediction_error(fam.members[*fam.reference]), 0);
  InstanceFamily back = family_from_json(to_json(fam));
  EXPECT_EQ(to_json(back), to_json(fam));
  EXPECT_TRUE(is_family_json(to_json(fam)));
}

INSTANTIATE_TEST_SUITE_P(
    AllTags, FamilyTest,
    ::testing::Values(std::pair{TheoremTag::T1, 1}, std::pair{TheoremTag::T1, 3}, std::pair{TheoremTag::T3, 2},
                      std::pair{TheoremTag::T7, 2}, std::pair{TheoremTag::T8, 3}, std::pair{TheoremTag::T9, 1},
                      std::pair{TheoremTag::T10, 2}, std::pair{TheoremTag::T12, 3},
                      std::pair{TheoremTag::T13, 2}));

TEST(Scenario, FamilyParameterRanges) {
  EXPECT_THROW(gen_theorem_family(TheoremTag::T1, 2), RangeError);
  EXPECT_THROW(gen_theorem_family(TheoremTag::T1, 2, Number(5)), RangeError);
  EXPECT_THROW(gen_theorem_family(TheoremTag::T3, 2, Number(3)), RangeError);
  EXPECT_THROW(gen_theorem_family(TheoremTag::T9, 2), RangeError);
  EXPECT_THROW(gen_theorem_family(TheoremTag::T10, 3), RangeError);
  EXPECT_THROW(gen_theorem_family(TheoremTag::T8, 2, {}, Number(5)), RangeError);
  EXPECT_THROW(parse_theorem_tag("T99"), RangeError);
  EXPECT_EQ(to_string(parse_theorem_tag("T12")), "T12");
}

TEST(Scenario, T10CostsUseTheGoldenConstant) {
  InstanceFamily fam = gen_theorem_family(TheoremTag::T10, 2);
  bool found = false;
  for (const auto& c : fam.base.costs) found = found || !c.is_rational();
  EXPECT_TRUE(found);
}

TEST(Scenario, InstanceJsonRoundTrip) {
  auto inst = gen_gstar(2, {Number(1), Number::fraction(5, 2), Number(4)}, {0, 1}, {1},
                        std::vector<Number>{Number::fraction(1, 2), Number(1), Number(4)});
  EXPECT_EQ(disjoint_from_json(to_json(inst)), inst);
  GeneralInstance g = to_general(inst);
  GeneralInstance back = general_from_json(to_json(g));
  EXPECT_EQ(back.blocked, g.blocked);
  EXPECT_EQ(back.predicted, g.predicted);
  EXPECT_EQ(optimal_cost(back), optimal_cost(g));
  EXPECT_TRUE(std::holds_alternative<GeneralInstance>(instance_from_json(to_json(g))));
  EXPECT_FALSE(is_family_json(to_json(inst)));
}

}  // namespace
}  // namespace ctp

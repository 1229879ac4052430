#ifndef CTP_ORACLE_HPP_
#define CTP_ORACLE_HPP_

#include "json.hpp"

#include <optional>
#include <string>
#include <vector>

#include "ctp/engine.hpp"
#include "ctp/lp.hpp"
#include "ctp/number.hpp"
#include "ctp/scenario.hpp"

namespace ctp {

using BlockedMask = std::vector<bool>;

Number offline_opt(const Instance& inst);

// Cost of exploring fan paths in `order` until the first free one, with every
// block terminal. `order` must reach a free path.
Number order_cost(const std::vector<Number>& costs, const std::vector<int>& order,
                  const BlockedMask& blocked);
Number scenario_opt(const std::vector<Number>& costs, const BlockedMask& blocked);

// Restricts pure strategies to those whose ratio on `reference` stays below
// 1 + epsilon (strictly for the deterministic filter; <= for the LP).
struct ConsistencyConstraint {
  Number epsilon;
  BlockedMask reference;
};

struct DetGameValue {
  bool feasible = true;  // false: the filter excludes every order
  Number value;
  std::vector<int> order;      // an optimal pure exploration order
  BlockedMask worst_scenario;  // adversary reply reaching `value` on `order`
};

/// Exact value of min over deterministic strategies of max over scenarios of
/// ALG/OPT. Scenarios default to adversary_scenarios(spec). At most 8 paths.
DetGameValue det_minimax(const FamilySpec& spec,
                         const std::optional<ConsistencyConstraint>& filter = {},
                         const std::optional<std::vector<BlockedMask>>& scenarios = {});

struct RandGameValue {
  Number value;
  std::vector<std::vector<int>> orders;
  std::vector<Number> mix;  // probability of each order
  std::vector<BlockedMask> scenarios;
  std::vector<Number> adversary;  // probability of each scenario
  Number side_multiplier{0};
  bool certified = false;  // exact duality certificate verified
};

/// Optimal randomized ratio as a zero-sum game between distributions over
/// exploration orders and scenarios. At most 7 paths. InfeasibleError when
/// the consistency constraint cannot be met.
RandGameValue rand_game_value(const FamilySpec& spec,
                              const std::optional<ConsistencyConstraint>& constraint = {},
                              const std::optional<std::vector<BlockedMask>>& scenarios = {});

BlockedMask blocked_mask(const DisjointInstance& inst);
std::vector<BlockedMask> family_scenarios(const InstanceFamily& family);

nlohmann::json to_json(const DetGameValue& v);
nlohmann::json to_json(const RandGameValue& v);

// Upper bound a strategy guarantees on one instance, if any applies.
struct ClaimedBound {
  Number value;
  bool strict = false;  // ratio must stay strictly below value
};

std::optional<ClaimedBound> claimed_upper_bound(const Strategy& strategy, const Instance& inst);

struct BoundCheck {
  std::string label;
  int k = 0;
  std::optional<Number> epsilon;
  Number measured;
  Number bound;
  std::string relation;  // "<", "<=", "==", ">="
  std::size_t cases = 1;
  bool pass = false;
};

struct VerifyReport {
  std::string tag;
  std::vector<BoundCheck> checks;
  std::vector<nlohmann::json> violations;  // instance plus trace per failure

  bool pass() const;
};

nlohmann::json to_json(const VerifyReport& r);

const std::vector<std::string>& verify_tags();

/// Recomputes the claim named by `tag` over `ks` and `epsilons` (defaults
/// per tag when empty) and compares with its closed form. RangeError for an
/// unknown tag.
VerifyReport verify_bound(const std::string& tag, const std::vector<int>& ks = {},
                          const std::vector<Number>& epsilons = {});

}  // namespace ctp

#endif  // CTP_ORACLE_HPP_

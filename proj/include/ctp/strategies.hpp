#ifndef CTP_STRATEGIES_HPP_
#define CTP_STRATEGIES_HPP_

#include <optional>
#include <string>
#include <vector>

#include "ctp/engine.hpp"
#include "ctp/number.hpp"

namespace ctp {

StrategyHandle make_backtrack();
StrategyHandle make_e_backtrack(const Number& epsilon, int k);
/// k >= 3: Err1-Backtrack; k = 2: Err1-Backtrack2; k = 1 hands back
/// Backtrack (optimal there) with a note on the handle.
StrategyHandle make_err1_backtrack(int k);
StrategyHandle make_rand_backtrack(int budget);
StrategyHandle make_e_rand_backtrack(const Number& epsilon, int k);
StrategyHandle make_rand_backtrack_one(const Number& epsilon);
StrategyHandle make_rand_backtrack_u(const Number& epsilon, int k);

/// Lookup by CLI name. `budget` applies to rand-backtrack and defaults to k.
StrategyHandle make_strategy(const std::string& name, const std::optional<Number>& epsilon,
                             const std::optional<int>& k, const std::optional<int>& budget = {});
const std::vector<std::string>& strategy_names();

// Optimal mixed exploration order for the b+1 cheapest of `costs` against an
// adversary that blocks at most b of them. Orders hold positions into
// `candidates`; weights are symmetric across equal-cost candidates.
struct ExplorationMix {
  std::vector<int> candidates;
  std::vector<std::vector<int>> orders;
  std::vector<Number> weights;
  Number value;
};

ExplorationMix exploration_mix(const std::vector<Number>& costs, int budget);

/// First-move marginal of exploration_mix, indexed by position in `costs`.
StageDistribution stage_distribution(const std::vector<Number>& costs, int budget);

/// Distribution of the next candidate given the candidates (positions in
/// mix.candidates) already explored and found blocked, in order.
StageDistribution next_stage(const ExplorationMix& mix, const std::vector<int>& explored);

}  // namespace ctp

#endif  // CTP_STRATEGIES_HPP_

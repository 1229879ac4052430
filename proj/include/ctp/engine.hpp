#ifndef CTP_ENGINE_HPP_
#define CTP_ENGINE_HPP_

#include "json.hpp"

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ctp/graph.hpp"
#include "ctp/number.hpp"
#include "ctp/scenario.hpp"

namespace ctp {

// Discrete distribution over candidate paths (fan indices).
struct StageDistribution {
  std::vector<std::pair<int, Number>> entries;

  Number total() const;
  bool is_valid() const;  // non-negative and summing to exactly 1
};

class Chooser {
 public:
  virtual ~Chooser() = default;
  // Index into d.entries of the sampled candidate.
  virtual std::size_t choose(const StageDistribution& d) = 0;
};

struct Exploration {
  bool reached = false;
  std::optional<EdgeId> blocked_edge;  // set when the route was cut
};

struct Action {
  std::string kind;  // explore | traverse | return
  int path = -1;     // fan index for explore actions
  EdgeId edge = -1;  // traversed edge on general graphs
  Number cost;
  std::string outcome;  // open | blocked, empty for traverse/return
};

/// The agent's view of a run. The engine owns the true blocked set and only
/// answers what the online model allows: an edge's status becomes known when
/// the agent stands on one of its endpoints.
class Navigator {
 public:
  virtual ~Navigator() = default;

  virtual int k() const = 0;
  // Predicted blocked edges; on a fan the edge of path i has id i.
  virtual const EdgeSet& predicted() const = 0;
  virtual const EdgeSet& known_blocked() const = 0;
  virtual const Number& spent() const = 0;
  virtual bool done() const = 0;

  virtual std::optional<PathWitness> cheapest_route(const EdgeSet& excluded) const = 0;
  /// Walk `route` from s. On a cut the agent walks back to s and the walk is
  /// charged. Throws ContractViolation if the route uses an edge that was
  /// already known to be blocked, or if t was already reached.
  virtual Exploration explore(const PathWitness& route) = 0;

  // Path costs of a fan instance; nullptr on general graphs.
  virtual const std::vector<Number>* fan_costs() const = 0;
  PathWitness fan_route(int path) const;
};

/// Deterministic strategies never call the chooser.
class Strategy {
 public:
  virtual ~Strategy() = default;
  virtual std::string name() const = 0;
  virtual bool deterministic() const = 0;
  virtual void execute(Navigator& nav, Chooser& chooser) const = 0;

  std::optional<Number> epsilon;
  std::optional<int> k;       // instance budget the handle was validated for
  std::optional<int> budget;  // RandBacktrack parameter
  std::string note;           // dispatch remark, e.g. a substituted strategy
};

using StrategyHandle = std::shared_ptr<const Strategy>;

struct RunTrace {
  std::string strategy;
  std::vector<Action> actions;
  std::vector<std::size_t> choices;  // positions picked at each random stage
  PathWitness final_route;
  Number alg;
  Number opt;
  Number ratio;
  int prediction_error = 0;
  std::optional<std::uint64_t> seed;
};

nlohmann::json to_json(const Action& a);
nlohmann::json to_json(const RunTrace& t);

/// One simulated run. Randomized strategies need a seed and a fan instance.
RunTrace run(const StrategyHandle& strategy, const Instance& inst,
             std::optional<std::uint64_t> seed = {});

/// Run with a fixed script of choices; stages past the script take the first
/// positive-probability entry. `decisions` receives every stage distribution
/// met along the way.
RunTrace run_scripted(const StrategyHandle& strategy, const Instance& inst,
                      const std::vector<std::size_t>& script,
                      std::vector<StageDistribution>* decisions = nullptr);

struct Branch {
  Number probability;
  Number cost;
  std::vector<std::size_t> choices;
};

struct ExpectationResult {
  Number expected_cost;
  Number opt;
  Number ratio;  // expected_cost / opt
  std::vector<Branch> branches;

  std::size_t branch_count() const { return branches.size(); }
};

nlohmann::json to_json(const ExpectationResult& r);

/// Enumerates the full decision tree of the strategy on `inst`.
ExpectationResult exact_expectation(const StrategyHandle& strategy, const Instance& inst);

// Per-run seed of run `index` in a batch started from `master`.
std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index);

struct MonteCarloResult {
  std::size_t n = 0;
  Number mean;  // exact mean cost
  double std_dev = 0;  // sample standard deviation of the cost
  double ci_low = 0;   // 99% normal interval on the mean
  double ci_high = 0;
  Number opt;
};

nlohmann::json to_json(const MonteCarloResult& r);

MonteCarloResult monte_carlo(const StrategyHandle& strategy, const Instance& inst,
                             std::size_t n, std::uint64_t seed);

enum class RatioMode { kDeterministic, kExpected };

struct FamilyRatio {
  Number worst;  // max over members of ALG/OPT (or E[ALG]/OPT)
  std::optional<Number> weighted;  // sum w E[ALG] / sum w OPT in expected mode
  std::vector<Number> per_member;
};

FamilyRatio family_worst_ratio(const StrategyHandle& strategy, const InstanceFamily& family,
                               RatioMode mode);

}  // namespace ctp

#endif  // CTP_ENGINE_HPP_

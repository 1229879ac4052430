#ifndef CTP_SCENARIO_HPP_
#define CTP_SCENARIO_HPP_

#include "json.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ctp/graph.hpp"
#include "ctp/number.hpp"

namespace ctp {

// One s-t path of a fan of node-disjoint paths. A blocked path is discovered
// after walking `block_prefix` from s; failing on it therefore costs
// 2 * block_prefix.
struct PathSpec {
  Number cost;
  bool blocked = false;
  Number block_prefix;
  bool predicted = false;

  friend bool operator==(const PathSpec&, const PathSpec&) = default;
};

struct DisjointInstance {
  int k = 1;
  std::vector<PathSpec> paths;

  std::size_t size() const { return paths.size(); }
  friend bool operator==(const DisjointInstance&, const DisjointInstance&) = default;
};

struct GeneralInstance {
  Graph graph;
  EdgeSet blocked;
  EdgeSet predicted;
  int k = 1;
};

using Instance = std::variant<DisjointInstance, GeneralInstance>;

std::vector<std::string> validate(const DisjointInstance& inst);
std::vector<std::string> validate(const GeneralInstance& inst);
// Throws InvalidInstanceError listing every violation.
void require_valid(const DisjointInstance& inst);
void require_valid(const GeneralInstance& inst);
void require_valid(const Instance& inst);

int prediction_error(const DisjointInstance& inst);
int prediction_error(const GeneralInstance& inst);
int prediction_error(const Instance& inst);

int budget(const Instance& inst);
int blocked_count(const DisjointInstance& inst);
int predicted_count(const DisjointInstance& inst);

// Shortest unblocked path cost; finite for every valid instance.
Number optimal_cost(const DisjointInstance& inst);
Number optimal_cost(const GeneralInstance& inst);
Number optimal_cost(const Instance& inst);

/// Fan of `costs.size()` node-disjoint paths. Indices are 0-based; when
/// `prefix_costs` is omitted blocked edges sit next to t (prefix = cost).
DisjointInstance gen_gstar(int k, const std::vector<Number>& costs,
                           const std::vector<int>& blocked,
                           const std::vector<int>& predicted,
                           const std::optional<std::vector<Number>>& prefix_costs = {});

/// Explicit graph form of a fan: path i becomes s -(prefix)- x_i -(rest)- t
/// with edge ids 2i and 2i+1; the blockable edge is 2i+1.
GeneralInstance to_general(const DisjointInstance& inst);
EdgeId blockable_edge(int path_index);

// Public data of a disjoint family: what an online algorithm may read.
struct FamilySpec {
  int k = 1;
  std::vector<Number> costs;
  std::vector<bool> predicted;
  int error_budget = 2;

  std::size_t size() const { return costs.size(); }
};

/// Every blocked set (as a per-path mask) an adversary may pick for `spec`:
/// at most k blocked, at least one free, prediction error <= error_budget.
std::vector<std::vector<bool>> adversary_scenarios(const FamilySpec& spec);
DisjointInstance realize(const FamilySpec& spec, const std::vector<bool>& blocked);

struct InstanceFamily {
  std::string tag;
  FamilySpec base;
  std::vector<Instance> members;
  std::vector<Number> weights;  // sum to exactly 1
  int error_budget = 2;
  std::optional<Number> epsilon;
  // Index of the member whose prediction is exact, when the construction
  // pins one (consistency side of the tradeoff families).
  std::optional<std::size_t> reference;
};

void require_valid(const InstanceFamily& family);

enum class TheoremTag { T1, T3, T7, T8, T9, T10, T12, T13 };

TheoremTag parse_theorem_tag(const std::string& text);
std::string to_string(TheoremTag tag);

/// Lower-bound construction named by `tag`. `epsilon` is
/// required for T1/T3; `param` overrides the free cost constant of T8 (c_1,
/// default 2k+2) and T13 (c_{k+1}, default k+1).
InstanceFamily gen_theorem_family(TheoremTag tag, int k,
                                  const std::optional<Number>& epsilon = {},
                                  const std::optional<Number>& param = {});

struct EnumerationSpec {
  int k_min = 1;
  int k_max = 1;
  std::vector<Number> cost_grid;
  // Blocked-edge positions as fractions of the path cost, in (0, 1].
  std::vector<Number> prefix_positions{Number(1)};
  int min_paths = 2;
  std::optional<int> max_paths;  // default k + 1
  std::optional<int> max_error;  // skip instances with larger prediction error
};

/// Exhaustive, duplicate-free, deterministic stream of disjoint instances:
/// for each k and path count, non-decreasing cost tuples from the grid, every
/// admissible blocked set (with every prefix choice) and predicted set.
class InstanceStream {
 public:
  explicit InstanceStream(EnumerationSpec spec);
  std::optional<DisjointInstance> next();

 private:
  bool load_shape();
  bool advance_shape();
  bool step();

  EnumerationSpec spec_;
  std::vector<Number> grid_;
  int k_ = 0;
  int paths_ = 0;
  std::vector<int> tuple_;  // indices into grid_, non-decreasing
  unsigned blocked_mask_ = 0;
  std::vector<int> prefix_choice_;
  unsigned predicted_mask_ = 0;
  bool started_ = false;
  bool done_ = false;
};

std::vector<DisjointInstance> enumerate_instances(const EnumerationSpec& spec);

nlohmann::json to_json(const DisjointInstance& inst);
nlohmann::json to_json(const GeneralInstance& inst);
nlohmann::json to_json(const Instance& inst);
nlohmann::json to_json(const InstanceFamily& family);
DisjointInstance disjoint_from_json(const nlohmann::json& j);
GeneralInstance general_from_json(const nlohmann::json& j);
Instance instance_from_json(const nlohmann::json& j);
InstanceFamily family_from_json(const nlohmann::json& j);
bool is_family_json(const nlohmann::json& j);

}  // namespace ctp

#endif  // CTP_SCENARIO_HPP_

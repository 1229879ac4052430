#include "ctp/scenario.hpp"

#include <algorithm>
#include <bit>

#include "ctp/errors.hpp"

namespace ctp {

namespace {

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) {
    if (!out.empty()) out += "; ";
    out += l;
  }
  return out;
}

}  // namespace

int blocked_count(const DisjointInstance& inst) {
  return static_cast<int>(std::count_if(inst.paths.begin(), inst.paths.end(),
                                        [](const PathSpec& p) { return p.blocked; }));
}

int predicted_count(const DisjointInstance& inst) {
  return static_cast<int>(std::count_if(inst.paths.begin(), inst.paths.end(),
                                        [](const PathSpec& p) { return p.predicted; }));
}

std::vector<std::string> validate(const DisjointInstance& inst) {
  std::vector<std::string> report;
  if (inst.k < 1) report.push_back("budget k must be positive");
  if (inst.paths.empty()) report.push_back("instance has no paths");
  for (std::size_t i = 0; i < inst.paths.size(); ++i) {
    const auto& p = inst.paths[i];
    std::string tag = "path " + std::to_string(i);
    if (p.cost.sign() <= 0) report.push_back(tag + " cost must be positive");
    if (p.blocked && (p.block_prefix.sign() < 0 || p.cost < p.block_prefix)) {
      report.push_back(tag + " block prefix outside [0, cost]");
    }
  }
  int blocked = blocked_count(inst);
  if (blocked > inst.k) report.push_back("more blocked paths than k");
  if (!inst.paths.empty() && blocked == static_cast<int>(inst.paths.size())) {
    report.push_back("no free path");
  }
  if (predicted_count(inst) > inst.k) report.push_back("more predicted paths than k");
  return report;
}

std::vector<std::string> validate(const GeneralInstance& inst) {
  std::vector<std::string> report = validate(inst.graph);
  if (inst.k < 1) report.push_back("budget k must be positive");
  if (static_cast<int>(inst.blocked.size()) > inst.k) {
    report.push_back("more blocked edges than k");
  }
  if (static_cast<int>(inst.predicted.size()) > inst.k) {
    report.push_back("more predicted edges than k");
  }
  for (EdgeId id : inst.blocked) {
    if (!inst.graph.has_edge(id)) report.push_back("blocked edge " + std::to_string(id) + " unknown");
  }
  for (EdgeId id : inst.predicted) {
    if (!inst.graph.has_edge(id)) report.push_back("predicted edge " + std::to_string(id) + " unknown");
  }
  if (report.empty()) {
    auto opt = shortest_path(inst.graph, inst.blocked);
    if (!opt) {
      report.push_back("no free path");
    } else if (opt->total.sign() <= 0) {
      report.push_back("optimal path has zero cost");
    }
  }
  return report;
}

void require_valid(const DisjointInstance& inst) {
  auto report = validate(inst);
  if (!report.empty()) throw InvalidInstanceError(join_lines(report));
}

void require_valid(const GeneralInstance& inst) {
  auto report = validate(inst);
  if (!report.empty()) throw InvalidInstanceError(join_lines(report));
}

void require_valid(const Instance& inst) {
  std::visit([](const auto& i) { require_valid(i); }, inst);
}

int prediction_error(const DisjointInstance& inst) {
  int err = 0;
  for (const auto& p : inst.paths) err += p.blocked != p.predicted ? 1 : 0;
  return err;
}

int prediction_error(const GeneralInstance& inst) {
  int err = 0;
  for (EdgeId id : inst.blocked) err += inst.predicted.count(id) ? 0 : 1;
  for (EdgeId id : inst.predicted) err += inst.blocked.count(id) ? 0 : 1;
  return err;
}

int prediction_error(const Instance& inst) {
  return std::visit([](const auto& i) { return prediction_error(i); }, inst);
}

int budget(const Instance& inst) {
  return std::visit([](const auto& i) { return i.k; }, inst);
}

Number optimal_cost(const DisjointInstance& inst) {
  std::optional<Number> best;
  for (const auto& p : inst.paths) {
    if (!p.blocked && (!best || p.cost < *best)) best = p.cost;
  }
  if (!best) throw InvalidInstanceError("no free path");
  return *best;
}

Number optimal_cost(const GeneralInstance& inst) {
  auto p = shortest_path(inst.graph, inst.blocked);
  if (!p) throw InvalidInstanceError("no free path");
  return p->total;
}

Number optimal_cost(const Instance& inst) {
  return std::visit([](const auto& i) { return optimal_cost(i); }, inst);
}

DisjointInstance gen_gstar(int k, const std::vector<Number>& costs,
                           const std::vector<int>& blocked,
                           const std::vector<int>& predicted,
                           const std::optional<std::vector<Number>>& prefix_costs) {
  DisjointInstance inst;
  inst.k = k;
  const int m = static_cast<int>(costs.size());
  if (prefix_costs && static_cast<int>(prefix_costs->size()) != m) {
    throw InvalidInstanceError("prefix list length differs from path count");
  }
  for (int i = 0; i < m; ++i) {
    PathSpec p;
    p.cost = costs[i];
    p.block_prefix = prefix_costs ? (*prefix_costs)[i] : costs[i];
    inst.paths.push_back(std::move(p));
  }
  auto mark = [&](const std::vector<int>& indices, bool PathSpec::*field) {
    for (int i : indices) {
      if (i < 0 || i >= m) throw InvalidInstanceError("path index out of range");
      inst.paths[i].*field = true;
    }
  };
  mark(blocked, &PathSpec::blocked);
  mark(predicted, &PathSpec::predicted);
  require_valid(inst);
  return inst;
}

EdgeId blockable_edge(int path_index) { return 2 * path_index + 1; }

GeneralInstance to_general(const DisjointInstance& inst) {
  std::vector<std::string> nodes{"s", "t"};
  for (std::size_t i = 0; i < inst.paths.size(); ++i) nodes.push_back("x" + std::to_string(i));
  GeneralInstance out{Graph(nodes, "s", "t"), {}, {}, inst.k};
  for (std::size_t i = 0; i < inst.paths.size(); ++i) {
    const auto& p = inst.paths[i];
    const int idx = static_cast<int>(i);
    const std::string mid = "x" + std::to_string(i);
    Number head = p.blocked ? p.block_prefix : p.cost;
    out.graph.add_edge(2 * idx, "s", mid, head);
    out.graph.add_edge(blockable_edge(idx), mid, "t", p.cost - head);
    if (p.blocked) out.blocked.insert(blockable_edge(idx));
    if (p.predicted) out.predicted.insert(blockable_edge(idx));
  }
  return out;
}

std::vector<std::vector<bool>> adversary_scenarios(const FamilySpec& spec) {
  const int m = static_cast<int>(spec.size());
  if (m > 20) throw SizeError("too many paths to enumerate scenarios");
  std::vector<std::vector<bool>> out;
  for (unsigned mask = 0; mask < (1u << m); ++mask) {
    int count = std::popcount(mask);
    if (count > spec.k || count == m) continue;
    int err = 0;
    std::vector<bool> blocked(m);
    for (int i = 0; i < m; ++i) {
      blocked[i] = (mask >> i) & 1u;
      err += blocked[i] != spec.predicted[i] ? 1 : 0;
    }
    if (err <= spec.error_budget) out.push_back(std::move(blocked));
  }
  return out;
}

DisjointInstance realize(const FamilySpec& spec, const std::vector<bool>& blocked) {
  DisjointInstance inst;
  inst.k = spec.k;
  for (std::size_t i = 0; i < spec.size(); ++i) {
    inst.paths.push_back({spec.costs[i], blocked[i], spec.costs[i], spec.predicted[i]});
  }
  return inst;
}

void require_valid(const InstanceFamily& family) {
  if (family.members.empty()) throw InvalidInstanceError("family has no members");
  if (family.members.size() != family.weights.size()) {
    throw InvalidInstanceError("weights and members differ in length");
  }
  Number total(0);
  for (const auto& w : family.weights) {
    if (w.sign() < 0) throw InvalidInstanceError("negative family weight");
    total += w;
  }
  if (total != Number(1)) throw InvalidInstanceError("family weights do not sum to 1");
  for (const auto& m : family.members) require_valid(m);
}

TheoremTag parse_theorem_tag(const std::string& text) {
  static const std::vector<std::pair<std::string, TheoremTag>> kTags = {
      {"T1", TheoremTag::T1},   {"T3", TheoremTag::T3},   {"T7", TheoremTag::T7},
      {"T8", TheoremTag::T8},   {"T9", TheoremTag::T9},   {"T10", TheoremTag::T10},
      {"T12", TheoremTag::T12}, {"T13", TheoremTag::T13}};
  for (const auto& [name, tag] : kTags) {
    if (name == text) return tag;
  }
  throw RangeError("unknown family tag '" + text + "'");
}

std::string to_string(TheoremTag tag) {
  switch (tag) {
    case TheoremTag::T1: return "T1";
    case TheoremTag::T3: return "T3";
    case TheoremTag::T7: return "T7";
    case TheoremTag::T8: return "T8";
    case TheoremTag::T9: return "T9";
    case TheoremTag::T10: return "T10";
    case TheoremTag::T12: return "T12";
    case TheoremTag::T13: return "T13";
  }
  return "?";
}

namespace {

// Family over `base` whose members are the given blocked sets (0-based).
InstanceFamily build_family(TheoremTag tag, const FamilySpec& base,
                            const std::vector<std::vector<int>>& blocked_sets,
                            const std::vector<Number>& weights) {
  InstanceFamily family;
  family.tag = to_string(tag);
  family.base = base;
  family.error_budget = base.error_budget;
  family.weights = weights;
  for (const auto& set : blocked_sets) {
    std::vector<bool> mask(base.size(), false);
    for (int i : set) mask[i] = true;
    DisjointInstance inst = realize(base, mask);
    if (prediction_error(inst) == 0 && !family.reference) {
      family.reference = family.members.size();
    }
    family.members.emplace_back(std::move(inst));
  }
  require_valid(family);
  return family;
}

std::vector<int> range_except(int begin, int end, int skip) {
  std::vector<int> out;
  for (int i = begin; i < end; ++i) {
    if (i != skip) out.push_back(i);
  }
  return out;
}

FamilySpec fan(int k, std::vector<Number> costs, std::vector<bool> predicted, int budget) {
  return FamilySpec{k, std::move(costs), std::move(predicted), budget};
}

}  // namespace

InstanceFamily gen_theorem_family(TheoremTag tag, int k, const std::optional<Number>& epsilon,
                                  const std::optional<Number>& param) {
  if (k < 1) throw RangeError("k must be at least 1");
  std::vector<Number> ones(k, Number(1));
  std::vector<bool> first_k(k + 1, true);
  first_k[k] = false;

  switch (tag) {
    case TheoremTag::T1:
    case TheoremTag::T3: {
      // k unit paths predicted blocked plus one expensive free path; the
      // adversary frees a single unit path and blocks everything else.
      const bool det = tag == TheoremTag::T1;
      Number limit = det ? Number(2 * k) : Number(k);
      if (!epsilon || epsilon->sign() <= 0 || limit < *epsilon) {
        throw RangeError(std::string("epsilon must lie in (0, ") + (det ? "2k" : "k") + "]");
      }
      std::vector<Number> costs = ones;
      costs.push_back((det ? Number(2 * k) : Number(k)) / *epsilon);
      FamilySpec base = fan(k, costs, first_k, 2);
      std::vector<std::vector<int>> sets{range_except(0, k, -1)};
      std::vector<Number> weights{Number(0)};
      for (int i = 0; i < k; ++i) {
        sets.push_back(range_except(0, k + 1, i));
        weights.push_back(Number::fraction(1, k));
      }
      InstanceFamily family = build_family(tag, base, sets, weights);
      family.epsilon = epsilon;
      return family;
    }
    case TheoremTag::T7:
    case TheoremTag::T12: {
      std::vector<Number> costs(k + 1, Number(1));
      FamilySpec base = fan(k, costs, first_k, 2);
      std::vector<std::vector<int>> sets;
      std::vector<Number> weights;
      for (int i = 0; i <= k; ++i) {
        sets.push_back(range_except(0, k + 1, i));
        weights.push_back(Number::fraction(1, k + 1));
      }
      return build_family(tag, base, sets, weights);
    }
    case TheoremTag::T8: {
      Number c1 = param.value_or(Number(2 * k + 2));
      if (c1 <= Number(2 * k + 1)) throw RangeError("T8 needs c_1 > 2k+1");
      std::vector<Number> costs{c1};
      costs.insert(costs.end(), ones.begin(), ones.end());
      std::vector<bool> predicted(k + 1, true);
      predicted[0] = false;
      FamilySpec base = fan(k, costs, predicted, 1);
      std::vector<std::vector<int>> sets{range_except(1, k + 1, -1)};
      for (int j = 1; j <= k; ++j) sets.push_back(range_except(1, k + 1, j));
      std::vector<Number> weights(sets.size(), Number::fraction(1, static_cast<long>(sets.size())));
      return build_family(tag, base, sets, weights);
    }
    case TheoremTag::T9: {
      if (k != 1) throw RangeError("T9 is defined for k = 1");
      FamilySpec base = fan(1, {Number(1), Number(1)}, {false, false}, 1);
      return build_family(tag, base, {{}, {0}, {1}},
                          std::vector<Number>(3, Number::fraction(1, 3)));
    }
    case TheoremTag::T10: {
      if (k != 2) throw RangeError("T10 is defined for k = 2");
      Number alpha = Number::golden17();
      FamilySpec base = fan(2, {Number(1), alpha, alpha}, {true, false, false}, 1);
      return build_family(tag, base, {{0}, {}, {0, 1}, {0, 2}},
                          std::vector<Number>(4, Number::fraction(1, 4)));
    }
    case TheoremTag::T13: {
      Number last = param.value_or(Number(k + 1));
      if (last < Number(k + 1)) throw RangeError("T13 needs c_{k+1} >= k+1");
      std::vector<Number> costs = ones;
      costs.push_back(last);
      FamilySpec base = fan(k, costs, first_k, 1);
      std::vector<std::vector<int>> sets;
      for (int i = 0; i < k; ++i) sets.push_back(range_except(0, k, i));
      return build_family(tag, base, sets,
                          std::vector<Number>(k, Number::fraction(1, k)));
    }
  }
  throw RangeError("unknown family tag");
}

InstanceStream::InstanceStream(EnumerationSpec spec) : spec_(std::move(spec)) {
  grid_ = spec_.cost_grid;
  std::sort(grid_.begin(), grid_.end());
  grid_.erase(std::unique(grid_.begin(), grid_.end()), grid_.end());
  auto& pos = spec_.prefix_positions;
  std::sort(pos.begin(), pos.end());
  pos.erase(std::unique(pos.begin(), pos.end()), pos.end());
  for (const auto& g : grid_) {
    if (g.sign() <= 0) throw InvalidInstanceError("cost grid must be positive");
  }
  for (const auto& p : pos) {
    if (p.sign() <= 0 || Number(1) < p) throw InvalidInstanceError("prefix positions must lie in (0, 1]");
  }
  if (spec_.min_paths < 1) throw InvalidInstanceError("min_paths must be positive");
}

bool InstanceStream::load_shape() {
  while (k_ <= spec_.k_max) {
    int max_paths = std::min(spec_.max_paths.value_or(k_ + 1), 31);
    if (paths_ <= max_paths) {
      tuple_.assign(paths_, 0);
      blocked_mask_ = 0;
      prefix_choice_.clear();
      predicted_mask_ = 0;
      return true;
    }
    ++k_;
    paths_ = spec_.min_paths;
  }
  return false;
}

bool InstanceStream::advance_shape() {
  const int g = static_cast<int>(grid_.size());
  for (int i = paths_ - 1; i >= 0; --i) {
    if (tuple_[i] + 1 < g) {
      int v = tuple_[i] + 1;
      for (int j = i; j < paths_; ++j) tuple_[j] = v;
      blocked_mask_ = 0;
      prefix_choice_.clear();
      predicted_mask_ = 0;
      return true;
    }
  }
  ++paths_;
  return load_shape();
}

std::optional<DisjointInstance> InstanceStream::next() {
  while (step()) {
    if (spec_.max_error) {
      int err = std::popcount(blocked_mask_ ^ predicted_mask_);
      if (err > *spec_.max_error) continue;
    }
    DisjointInstance inst;
    inst.k = k_;
    int blocked_seen = 0;
    for (int i = 0; i < paths_; ++i) {
      PathSpec p;
      p.cost = grid_[tuple_[i]];
      p.blocked = (blocked_mask_ >> i) & 1u;
      p.predicted = (predicted_mask_ >> i) & 1u;
      p.block_prefix = p.blocked
                           ? p.cost * spec_.prefix_positions[prefix_choice_[blocked_seen++]]
                           : p.cost;
      inst.paths.push_back(std::move(p));
    }
    return inst;
  }
  return std::nullopt;
}

bool InstanceStream::step() {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    k_ = std::max(spec_.k_min, 1);
    paths_ = spec_.min_paths;
    if (grid_.empty() || spec_.prefix_positions.empty() || !load_shape()) {
      done_ = true;
      return false;
    }
  } else {
    const unsigned full = 1u << paths_;
    auto next_mask = [&](unsigned mask, bool need_free) -> std::optional<unsigned> {
      for (unsigned m = mask + 1; m < full; ++m) {
        int c = std::popcount(m);
        if (c <= k_ && (!need_free || c < paths_)) return m;
      }
      return std::nullopt;
    };
    bool advanced = false;
    if (auto m = next_mask(predicted_mask_, false)) {
      predicted_mask_ = *m;
      advanced = true;
    }
    if (!advanced) {
      predicted_mask_ = 0;
      const int choices = static_cast<int>(spec_.prefix_positions.size());
      for (int i = static_cast<int>(prefix_choice_.size()) - 1; i >= 0; --i) {
        if (prefix_choice_[i] + 1 < choices) {
          ++prefix_choice_[i];
          for (std::size_t j = i + 1; j < prefix_choice_.size(); ++j) prefix_choice_[j] = 0;
          advanced = true;
          break;
        }
      }
    }
    if (!advanced) {
      if (auto m = next_mask(blocked_mask_, true)) {
        blocked_mask_ = *m;
        prefix_choice_.assign(std::popcount(blocked_mask_), 0);
        advanced = true;
      }
    }
    if (!advanced && !advance_shape()) {
      done_ = true;
      return false;
    }
  }
  return true;
}

std::vector<DisjointInstance> enumerate_instances(const EnumerationSpec& spec) {
  std::vector<DisjointInstance> out;
  InstanceStream stream(spec);
  while (auto inst = stream.next()) out.push_back(std::move(*inst));
  return out;
}

nlohmann::json to_json(const DisjointInstance& inst) {
  nlohmann::json j;
  j["k"] = inst.k;
  j["paths"] = nlohmann::json::array();
  for (const auto& p : inst.paths) {
    j["paths"].push_back({{"cost", p.cost.to_string()},
                          {"blocked", p.blocked},
                          {"prefix", (p.blocked ? p.block_prefix : p.cost).to_string()},
                          {"predicted", p.predicted}});
  }
  return j;
}

nlohmann::json to_json(const GeneralInstance& inst) {
  return {{"k", inst.k},
          {"graph", to_json(inst.graph)},
          {"blocked", std::vector<EdgeId>(inst.blocked.begin(), inst.blocked.end())},
          {"predicted", std::vector<EdgeId>(inst.predicted.begin(), inst.predicted.end())}};
}

nlohmann::json to_json(const Instance& inst) {
  return std::visit([](const auto& i) { return to_json(i); }, inst);
}

nlohmann::json to_json(const InstanceFamily& family) {
  nlohmann::json j;
  j["family"] = family.tag;
  j["k"] = family.base.k;
  j["error_budget"] = family.error_budget;
  if (family.epsilon) j["epsilon"] = family.epsilon->to_string();
  j["costs"] = nlohmann::json::array();
  for (const auto& c : family.base.costs) j["costs"].push_back(c.to_string());
  j["predicted"] = family.base.predicted;
  j["members"] = nlohmann::json::array();
  for (const auto& m : family.members) j["members"].push_back(to_json(m));
  j["weights"] = nlohmann::json::array();
  for (const auto& w : family.weights) j["weights"].push_back(w.to_string());
  if (family.reference) j["reference"] = *family.reference;
  return j;
}

DisjointInstance disjoint_from_json(const nlohmann::json& j) {
  DisjointInstance inst;
  inst.k = j.at("k").get<int>();
  for (const auto& p : j.at("paths")) {
    PathSpec spec;
    spec.cost = number_from_json(p.at("cost"));
    spec.blocked = p.value("blocked", false);
    spec.predicted = p.value("predicted", false);
    spec.block_prefix = p.contains("prefix") ? number_from_json(p.at("prefix")) : spec.cost;
    inst.paths.push_back(std::move(spec));
  }
  return inst;
}

GeneralInstance general_from_json(const nlohmann::json& j) {
  GeneralInstance inst{graph_from_json(j.at("graph")), {}, {}, j.at("k").get<int>()};
  for (const auto& id : j.value("blocked", nlohmann::json::array())) inst.blocked.insert(id.get<EdgeId>());
  for (const auto& id : j.value("predicted", nlohmann::json::array())) inst.predicted.insert(id.get<EdgeId>());
  return inst;
}

Instance instance_from_json(const nlohmann::json& j) {
  if (j.contains("paths")) return disjoint_from_json(j);
  if (j.contains("graph")) return general_from_json(j);
  throw std::invalid_argument("instance JSON needs either 'paths' or 'graph'");
}

bool is_family_json(const nlohmann::json& j) { return j.contains("members"); }

InstanceFamily family_from_json(const nlohmann::json& j) {
  InstanceFamily family;
  family.tag = j.value("family", std::string("custom"));
  family.error_budget = j.value("error_budget", 2);
  family.base.k = j.at("k").get<int>();
  family.base.error_budget = family.error_budget;
  if (j.contains("epsilon")) family.epsilon = number_from_json(j.at("epsilon"));
  for (const auto& c : j.value("costs", nlohmann::json::array())) family.base.costs.push_back(number_from_json(c));
  for (const auto& p : j.value("predicted", nlohmann::json::array())) family.base.predicted.push_back(p.get<bool>());
  for (const auto& m : j.at("members")) family.members.push_back(instance_from_json(m));
  for (const auto& w : j.at("weights")) family.weights.push_back(number_from_json(w));
  if (j.contains("reference")) family.reference = j.at("reference").get<std::size_t>();
  if (family.base.costs.empty() && !family.members.empty() &&
      std::holds_alternative<DisjointInstance>(family.members.front())) {
    const auto& first = std::get<DisjointInstance>(family.members.front());
    for (const auto& p : first.paths) {
      family.base.costs.push_back(p.cost);
      family.base.predicted.push_back(p.predicted);
    }
  }
  return family;
}

}  // namespace ctp

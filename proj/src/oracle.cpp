#include "ctp/oracle.hpp"

#include <algorithm>
#include <functional>
#include <numeric>

#include "ctp/engine.hpp"
#include "ctp/errors.hpp"
#include "ctp/strategies.hpp"

namespace ctp {

Number offline_opt(const Instance& inst) {
  require_valid(inst);
  return optimal_cost(inst);
}

Number scenario_opt(const std::vector<Number>& costs, const BlockedMask& blocked) {
  std::optional<Number> best;
  for (std::size_t i = 0; i < costs.size(); ++i) {
    if (!blocked[i] && (!best || costs[i] < *best)) best = costs[i];
  }
  if (!best) throw InvalidInstanceError("scenario has no free path");
  return *best;
}

Number order_cost(const std::vector<Number>& costs, const std::vector<int>& order,
                  const BlockedMask& blocked) {
  Number total(0);
  for (int i : order) {
    if (!blocked[i]) return total + costs[i];
    total += Number(2) * costs[i];
  }
  throw InvalidInstanceError("exploration order never reaches a free path");
}

BlockedMask blocked_mask(const DisjointInstance& inst) {
  BlockedMask mask;
  for (const auto& p : inst.paths) mask.push_back(p.blocked);
  return mask;
}

std::vector<BlockedMask> family_scenarios(const InstanceFamily& family) {
  std::vector<BlockedMask> out;
  for (const auto& m : family.members) {
    const auto* fan = std::get_if<DisjointInstance>(&m);
    if (!fan) throw UnsupportedError("family scenarios need disjoint-path members");
    out.push_back(blocked_mask(*fan));
  }
  return out;
}

namespace {

unsigned to_bits(const BlockedMask& mask) {
  unsigned bits = 0;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) bits |= 1u << i;
  }
  return bits;
}

void check_scenarios(const FamilySpec& spec, const std::vector<BlockedMask>& scenarios) {
  if (scenarios.empty()) throw InvalidInstanceError("no adversary scenarios");
  for (const auto& s : scenarios) {
    if (s.size() != spec.size()) throw InvalidInstanceError("scenario size differs from path count");
    scenario_opt(spec.costs, s);
  }
}

}  // namespace

DetGameValue det_minimax(const FamilySpec& spec, const std::optional<ConsistencyConstraint>& filter,
                         const std::optional<std::vector<BlockedMask>>& scenarios) {
  const int m = static_cast<int>(spec.size());
  if (m > 8) throw SizeError("det_minimax enumerates at most 8 paths");
  if (spec.predicted.size() != spec.size()) throw InvalidInstanceError("prediction flags missing");
  const std::vector<BlockedMask> scen = scenarios.value_or(adversary_scenarios(spec));
  check_scenarios(spec, scen);

  std::vector<unsigned> bits;
  std::vector<Number> opts;
  for (const auto& s : scen) {
    bits.push_back(to_bits(s));
    opts.push_back(scenario_opt(spec.costs, s));
  }
  unsigned ref_free = 0;
  Number ref_limit;
  if (filter) {
    ref_free = ~to_bits(filter->reference) & ((1u << m) - 1);
    ref_limit = (Number(1) + filter->epsilon) * scenario_opt(spec.costs, filter->reference);
  }

  // value(F): F is the set explored so far, all found blocked. nullopt means
  // the filter leaves no admissible continuation.
  std::vector<std::optional<std::optional<Number>>> memo(1u << m);
  std::vector<int> best_move(1u << m, -1);
  std::function<std::optional<Number>(unsigned, const Number&)> value =
      [&](unsigned explored, const Number& spent) -> std::optional<Number> {
    if (memo[explored]) return *memo[explored];
    std::optional<Number> best;
    for (int i = 0; i < m; ++i) {
      if ((explored >> i) & 1u) continue;
      if (filter && (explored & ref_free) == 0 && ((ref_free >> i) & 1u)) {
        if (!(spent + spec.costs[i] < ref_limit)) continue;
      }
      std::optional<Number> end_opt;  // least OPT among scenarios ending here
      bool can_continue = false;
      const unsigned next = explored | (1u << i);
      for (std::size_t s = 0; s < bits.size(); ++s) {
        if ((bits[s] & explored) != explored) continue;
        if ((bits[s] >> i) & 1u) {
          can_continue = true;
        } else if (!end_opt || opts[s] < *end_opt) {
          end_opt = opts[s];
        }
      }
      std::optional<Number> outcome;
      if (end_opt) outcome = (spent + spec.costs[i]) / *end_opt;
      if (can_continue) {
        auto later = value(next, spent + Number(2) * spec.costs[i]);
        if (!later) continue;
        if (!outcome || *outcome < *later) outcome = later;
      }
      if (!outcome) continue;
      if (!best || *outcome < *best) {
        best = outcome;
        best_move[explored] = i;
      }
    }
    memo[explored] = best;
    return best;
  };

  DetGameValue out;
  auto root = value(0, Number(0));
  if (!root) {
    out.feasible = false;
    return out;
  }
  out.value = *root;
  unsigned explored = 0;
  while (explored != (1u << m) - 1) {
    int i = best_move[explored];
    if (i < 0) {
      // Unreachable under every scenario: finish the order cheapest-first.
      for (int j = 0; j < m; ++j) {
        if (!((explored >> j) & 1u)) out.order.push_back(j);
      }
      break;
    }
    out.order.push_back(i);
    explored |= 1u << i;
  }
  Number worst;
  for (const auto& s : scen) {
    Number r = order_cost(spec.costs, out.order, s) / scenario_opt(spec.costs, s);
    if (out.worst_scenario.empty() || worst < r) {
      worst = r;
      out.worst_scenario = s;
    }
  }
  return out;
}

RandGameValue rand_game_value(const FamilySpec& spec, const std::optional<ConsistencyConstraint>& constraint,
                              const std::optional<std::vector<BlockedMask>>& scenarios) {
  const int m = static_cast<int>(spec.size());
  if (m > 7) throw SizeError("rand_game_value enumerates at most 7 paths (5040 orders)");
  RandGameValue out;
  out.scenarios = scenarios.value_or(adversary_scenarios(spec));
  check_scenarios(spec, out.scenarios);

  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    out.orders.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  Matrix payoff(out.orders.size());
  std::vector<Number> opts;
  for (const auto& s : out.scenarios) opts.push_back(scenario_opt(spec.costs, s));
  for (std::size_t o = 0; o < out.orders.size(); ++o) {
    for (std::size_t s = 0; s < out.scenarios.size(); ++s) {
      payoff[o].push_back(order_cost(spec.costs, out.orders[o], out.scenarios[s]) / opts[s]);
    }
  }
  std::optional<SideConstraint> side;
  if (constraint) {
    SideConstraint c;
    Number ref_opt = scenario_opt(spec.costs, constraint->reference);
    for (const auto& order : out.orders) {
      c.weight.push_back(order_cost(spec.costs, order, constraint->reference) / ref_opt);
    }
    c.limit = Number(1) + constraint->epsilon;
    side = std::move(c);
  }
  MatrixGameSolution sol = solve_min_max(payoff, side);
  out.value = sol.value;
  out.mix = sol.row_mix;
  out.adversary = sol.column_mix;
  out.side_multiplier = sol.side_multiplier;
  out.certified = certificate_holds(payoff, sol, side);
  return out;
}

namespace {

nlohmann::json mask_json(const BlockedMask& mask) {
  std::vector<int> blocked;
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) blocked.push_back(static_cast<int>(i));
  }
  return blocked;
}

}  // namespace

nlohmann::json to_json(const DetGameValue& v) {
  nlohmann::json j{{"feasible", v.feasible}};
  if (!v.feasible) return j;
  j["value"] = v.value.to_string();
  j["value_decimal"] = v.value.to_decimal();
  j["order"] = v.order;
  j["worst_blocked"] = mask_json(v.worst_scenario);
  return j;
}

nlohmann::json to_json(const RandGameValue& v) {
  nlohmann::json j;
  j["value"] = v.value.to_string();
  j["value_decimal"] = v.value.to_decimal();
  j["certified"] = v.certified;
  j["strategy"] = nlohmann::json::array();
  for (std::size_t o = 0; o < v.orders.size(); ++o) {
    if (!v.mix[o].is_zero()) j["strategy"].push_back({{"order", v.orders[o]}, {"p", v.mix[o].to_string()}});
  }
  j["adversary"] = nlohmann::json::array();
  for (std::size_t s = 0; s < v.scenarios.size(); ++s) {
    if (!v.adversary[s].is_zero()) {
      j["adversary"].push_back({{"blocked", mask_json(v.scenarios[s])}, {"p", v.adversary[s].to_string()}});
    }
  }
  if (!v.side_multiplier.is_zero()) j["side_multiplier"] = v.side_multiplier.to_string();
  return j;
}

std::optional<ClaimedBound> claimed_upper_bound(const Strategy& strategy, const Instance& inst) {
  const int k = budget(inst);
  const int err = prediction_error(inst);
  const Number kk(k);
  const std::string name = strategy.name();
  const Number eps = strategy.epsilon.value_or(Number(1));
  if (name == "backtrack") return ClaimedBound{Number(2 * k + 1)};
  if (name == "err1") {
    if (err > 1) return std::nullopt;
    if (k == 1) return ClaimedBound{Number(3)};
    if (k == 2) return ClaimedBound{Number::golden17()};
    return ClaimedBound{Number(2 * k - 1)};
  }
  if (name == "rand-backtrack") {
    const auto* fan = std::get_if<DisjointInstance>(&inst);
    if (!fan || blocked_count(*fan) > *strategy.budget) return std::nullopt;
    return ClaimedBound{Number(*strategy.budget + 1)};
  }
  if (err == 0) {
    if (name == "e-backtrack") return ClaimedBound{Number(1) + eps, true};
    return ClaimedBound{Number(1) + eps};
  }
  if (name == "e-backtrack") return ClaimedBound{Number(2 * k - 1) + Number(4 * k) / eps};
  if (name == "e-rand-backtrack") return ClaimedBound{kk + Number(4 * k) / eps};
  if (name == "rand-one") return ClaimedBound{Number(1) + Number(1) / eps};
  if (name == "rand-uniform") return ClaimedBound{kk + kk / eps};
  return std::nullopt;
}

bool VerifyReport::pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const BoundCheck& c) { return c.pass; });
}

nlohmann::json to_json(const VerifyReport& r) {
  nlohmann::json j;
  j["tag"] = r.tag;
  j["pass"] = r.pass();
  j["checks"] = nlohmann::json::array();
  for (const auto& c : r.checks) {
    nlohmann::json row{{"label", c.label},
                       {"k", c.k},
                       {"measured", c.measured.to_string()},
                       {"measured_decimal", c.measured.to_decimal()},
                       {"relation", c.relation},
                       {"bound", c.bound.to_string()},
                       {"bound_decimal", c.bound.to_decimal()},
                       {"cases", c.cases},
                       {"pass", c.pass}};
    if (c.epsilon) row["epsilon"] = c.epsilon->to_string();
    j["checks"].push_back(std::move(row));
  }
  j["violations"] = r.violations;
  return j;
}

namespace {

bool holds(const Number& measured, const std::string& relation, const Number& bound) {
  if (relation == "<") return measured < bound;
  if (relation == "<=") return measured <= bound;
  if (relation == "==") return measured == bound;
  if (relation == ">=") return bound <= measured;
  throw std::invalid_argument("unknown relation " + relation);
}

BoundCheck single(std::string label, int k, std::optional<Number> eps, Number measured,
                  std::string relation, Number bound) {
  BoundCheck c{std::move(label), k, std::move(eps), std::move(measured), std::move(bound), std::move(relation)};
  c.pass = holds(c.measured, c.relation, c.bound);
  return c;
}

// Worst ratio of one instance class (e.g. error 0) against an upper bound.
class ClassTally {
 public:
  ClassTally(std::string label, int k, std::optional<Number> eps, std::string relation, Number bound)
      : check_{std::move(label), k, std::move(eps), Number(0), std::move(bound), std::move(relation)} {
    check_.cases = 0;
    check_.pass = true;
  }

  void add(const Number& ratio, VerifyReport& report, const std::function<nlohmann::json()>& detail) {
    if (check_.cases == 0 || check_.measured < ratio) check_.measured = ratio;
    ++check_.cases;
    if (!holds(ratio, check_.relation, check_.bound)) {
      check_.pass = false;
      nlohmann::json v = detail();
      v["check"] = check_.label;
      v["k"] = check_.k;
      if (check_.epsilon) v["epsilon"] = check_.epsilon->to_string();
      v["ratio"] = ratio.to_string();
      v["bound"] = check_.bound.to_string();
      report.violations.push_back(std::move(v));
    }
  }

  void emit(VerifyReport& report) {
    if (check_.cases > 0) report.checks.push_back(check_);
  }

 private:
  BoundCheck check_;
};

std::vector<Number> default_eps(const std::string& tag, int k) {
  std::vector<Number> out;
  if (tag == "Thm1" || tag == "Thm2") {
    out = {Number::fraction(1, 2), Number(1), Number(2), Number(2 * k)};
  } else if (tag == "Thm5") {
    out = {Number::fraction(1, 4), Number::fraction(1, 2), Number(1)};
  } else {
    out = {Number::fraction(1, 2), Number(1), Number(k)};
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<int> default_ks(const std::string& tag) {
  if (tag == "Thm1" || tag == "Thm2" || tag == "Thm7") return {1, 2, 3, 4};
  if (tag == "Thm3" || tag == "Thm4" || tag == "Thm6" || tag == "Thm12") return {1, 2, 3};
  if (tag == "Thm5" || tag == "Thm9") return {1};
  if (tag == "Thm10" || tag == "Thm11") return {2};
  if (tag == "Thm13") return {2, 3};
  return {3, 4, 5};  // Thm8, Err1
}

FamilySpec spec_of(const InstanceFamily& f) { return f.base; }

// Upper-bound sweep of one strategy over an enumeration, split by error.
void sweep_bounds(VerifyReport& report, const StrategyHandle& strategy, const EnumerationSpec& grid, int k,
                  const std::optional<Number>& eps, const std::string& consistent_rel, const Number& consistent,
                  const std::string& robust_rel, const Number& robust, bool expected) {
  ClassTally cons("consistency", k, eps, consistent_rel, consistent);
  ClassTally rob("robustness", k, eps, robust_rel, robust);
  InstanceStream stream(grid);
  while (auto inst = stream.next()) {
    Instance wrapped = *inst;
    Number ratio;
    nlohmann::json trace;
    if (expected) {
      auto e = exact_expectation(strategy, wrapped);
      ratio = e.ratio;
      trace = to_json(e);
    } else {
      auto t = run(strategy, wrapped);
      ratio = t.ratio;
      trace = to_json(t);
    }
    auto detail = [&]() { return nlohmann::json{{"instance", to_json(*inst)}, {"trace", trace}}; };
    (prediction_error(*inst) == 0 ? cons : rob).add(ratio, report, detail);
  }
  cons.emit(report);
  rob.emit(report);
}

// Single-class sweep (error-restricted ratio bounds).
void sweep_single(VerifyReport& report, const std::string& label, const StrategyHandle& strategy,
                  const EnumerationSpec& grid, int k, const std::string& rel, const Number& bound) {
  ClassTally tally(label, k, std::nullopt, rel, bound);
  InstanceStream stream(grid);
  while (auto inst = stream.next()) {
    auto t = run(strategy, Instance(*inst));
    tally.add(t.ratio, report, [&]() { return nlohmann::json{{"instance", to_json(*inst)}, {"trace", to_json(t)}}; });
  }
  tally.emit(report);
}

EnumerationSpec grid_for(int k, std::vector<Number> costs) {
  EnumerationSpec g;
  g.k_min = g.k_max = k;
  g.cost_grid = std::move(costs);
  return g;
}

}  // namespace

const std::vector<std::string>& verify_tags() {
  static const std::vector<std::string> kTags = {"Thm1", "Thm2",  "Thm3",  "Thm4",  "Thm5",
                                                 "Thm6", "Thm7",  "Thm8",  "Thm9",  "Thm10",
                                                 "Thm11", "Thm12", "Thm13", "Err1"};
  return kTags;
}

VerifyReport verify_bound(const std::string& tag, const std::vector<int>& ks_in,
                          const std::vector<Number>& eps_in) {
  const auto& tags = verify_tags();
  if (std::find(tags.begin(), tags.end(), tag) == tags.end()) {
    throw RangeError("unknown claim tag '" + tag + "'");
  }
  VerifyReport report;
  report.tag = tag;
  const std::vector<int> ks = ks_in.empty() ? default_ks(tag) : ks_in;
  for (int k : ks) {
    const std::vector<Number> grid_eps = eps_in.empty() ? default_eps(tag, k) : eps_in;
    const Number kk(k);

    if (tag == "Thm1") {
      for (const auto& eps : grid_eps) {
        auto fam = gen_theorem_family(TheoremTag::T1, k, eps);
        ConsistencyConstraint filter{eps, family_scenarios(fam)[*fam.reference]};
        auto v = det_minimax(spec_of(fam), filter);
        Number bound = Number(2 * k - 1) + Number(4 * k) / eps;
        if (!v.feasible) {
          report.checks.push_back(single("filtered minimax (no consistent order)", k, eps, bound, ">=", bound));
        } else {
          report.checks.push_back(single("filtered minimax", k, eps, v.value, ">=", bound));
        }
      }
    } else if (tag == "Thm2") {
      for (const auto& eps : grid_eps) {
        auto strat = make_e_backtrack(eps, k);
        sweep_bounds(report, strat, grid_for(k, {Number(1), Number(2), Number(2 * k) / eps}), k, eps, "<",
                     Number(1) + eps, "<=", Number(2 * k - 1) + Number(4 * k) / eps, false);
      }
    } else if (tag == "Thm3") {
      for (const auto& eps : grid_eps) {
        auto fam = gen_theorem_family(TheoremTag::T3, k, eps);
        ConsistencyConstraint c{eps, family_scenarios(fam)[*fam.reference]};
        auto v = rand_game_value(spec_of(fam), c);
        report.checks.push_back(single("constrained game value", k, eps, v.value, "==", kk + kk / eps));
        report.checks.push_back(single("duality certificate", k, eps, Number(v.certified ? 1 : 0), "==", Number(1)));
      }
    } else if (tag == "Thm4") {
      for (const auto& eps : grid_eps) {
        auto strat = make_e_rand_backtrack(eps, k);
        sweep_bounds(report, strat, grid_for(k, {Number(1), Number(2), Number(4 * k) / eps}), k, eps, "<=",
                     Number(1) + eps, "<=", kk + Number(4 * k) / eps, true);
      }
    } else if (tag == "Thm5") {
      if (k != 1) throw RangeError("Thm5 is stated for k = 1");
      for (const auto& eps : grid_eps) {
        auto strat = make_rand_backtrack_one(eps);
        auto grid = grid_for(1, {Number(1), Number(2), Number(2) / eps, Number(4) / eps});
        grid.max_paths = 3;
        sweep_bounds(report, strat, grid, 1, eps, "<=", Number(1) + eps, "<=", Number(1) + Number(1) / eps, true);
      }
    } else if (tag == "Thm6") {
      for (const auto& eps : grid_eps) {
        auto strat = make_rand_backtrack_u(eps, k);
        auto grid = grid_for(k, {Number(1)});
        grid.min_paths = k + 1;
        grid.max_paths = k + 2;
        sweep_bounds(report, strat, grid, k, eps, "<=", Number(1) + eps, "<=", kk + kk / eps, true);
      }
    } else if (tag == "Thm7") {
      auto fam = gen_theorem_family(TheoremTag::T7, k);
      auto worst = family_worst_ratio(make_backtrack(), fam, RatioMode::kDeterministic).worst;
      report.checks.push_back(single("backtrack worst ratio", k, std::nullopt, worst, "==", Number(2 * k + 1)));
      auto v = det_minimax(spec_of(fam));
      report.checks.push_back(single("deterministic game value", k, std::nullopt, v.value, "==", Number(2 * k + 1)));
    } else if (tag == "Thm8") {
      auto v = det_minimax(spec_of(gen_theorem_family(TheoremTag::T8, k)));
      report.checks.push_back(single("deterministic game value", k, std::nullopt, v.value, "==", Number(2 * k - 1)));
    } else if (tag == "Thm9") {
      auto v = det_minimax(spec_of(gen_theorem_family(TheoremTag::T9, k)));
      report.checks.push_back(single("deterministic game value", k, std::nullopt, v.value, "==", Number(3)));
    } else if (tag == "Thm10") {
      auto v = det_minimax(spec_of(gen_theorem_family(TheoremTag::T10, k)));
      report.checks.push_back(single("deterministic game value", k, std::nullopt, v.value, "==", Number::golden17()));
    } else if (tag == "Thm11") {
      if (k != 2) throw RangeError("Thm11 is stated for k = 2");
      auto grid = grid_for(2, {Number(1), Number(2), Number::golden17(), Number(4), Number(5)});
      grid.max_error = 1;
      sweep_single(report, "error <= 1", make_err1_backtrack(2), grid, 2, "<=", Number::golden17());
    } else if (tag == "Err1") {
      if (k < 3) throw RangeError("Err1 is stated for k >= 3");
      auto grid = grid_for(k, {Number(1), Number(2), Number::fraction(25, 7), Number(5), Number(6)});
      grid.max_error = 1;
      sweep_single(report, "error <= 1", make_err1_backtrack(k), grid, k, "<=", Number(2 * k - 1));
    } else if (tag == "Thm12") {
      auto fam = gen_theorem_family(TheoremTag::T12, k);
      auto v = rand_game_value(spec_of(fam));
      report.checks.push_back(single("randomized game value", k, std::nullopt, v.value, "==", kk + Number(1)));
      report.checks.push_back(single("duality certificate", k, std::nullopt, Number(v.certified ? 1 : 0), "==", Number(1)));
      auto yao = family_worst_ratio(make_rand_backtrack(k), fam, RatioMode::kExpected);
      report.checks.push_back(single("rand-backtrack on the uniform family", k, std::nullopt, *yao.weighted, "==",
                                     kk + Number(1)));
    } else if (tag == "Thm13") {
      auto v = rand_game_value(spec_of(gen_theorem_family(TheoremTag::T13, k)));
      report.checks.push_back(single("randomized game value", k, std::nullopt, v.value, ">=", kk));
    }
  }
  return report;
}

}  // namespace ctp

#include "ctp/engine.hpp"

#include <cmath>
#include <random>

#include "ctp/errors.hpp"

namespace ctp {

Number StageDistribution::total() const {
  Number sum(0);
  for (const auto& [path, p] : entries) sum += p;
  return sum;
}

bool StageDistribution::is_valid() const {
  if (entries.empty()) return false;
  for (const auto& [path, p] : entries) {
    if (p.sign() < 0) return false;
  }
  return total() == Number(1);
}

PathWitness Navigator::fan_route(int path) const {
  const auto* costs = fan_costs();
  if (costs == nullptr || path < 0 || path >= static_cast<int>(costs->size())) {
    throw MalformedPathError("no fan path " + std::to_string(path));
  }
  return PathWitness{{path}, (*costs)[path]};
}

namespace {

constexpr int kMaxExplorations = 100000;

class FanNavigator : public Navigator {
 public:
  FanNavigator(const DisjointInstance& inst, std::vector<Action>& log)
      : inst_(inst), log_(log) {
    for (std::size_t i = 0; i < inst.paths.size(); ++i) {
      costs_.push_back(inst.paths[i].cost);
      if (inst.paths[i].predicted) predicted_.insert(static_cast<EdgeId>(i));
    }
  }

  int k() const override { return inst_.k; }
  const EdgeSet& predicted() const override { return predicted_; }
  const EdgeSet& known_blocked() const override { return known_; }
  const Number& spent() const override { return spent_; }
  bool done() const override { return done_; }
  const std::vector<Number>* fan_costs() const override { return &costs_; }
  const PathWitness& final_route() const { return final_; }

  std::optional<PathWitness> cheapest_route(const EdgeSet& excluded) const override {
    int best = -1;
    for (int i = 0; i < static_cast<int>(costs_.size()); ++i) {
      if (excluded.count(i)) continue;
      if (best < 0 || costs_[i] < costs_[best]) best = i;
    }
    if (best < 0) return std::nullopt;
    return PathWitness{{best}, costs_[best]};
  }

  Exploration explore(const PathWitness& route) override {
    if (done_) throw ContractViolation("exploration requested after reaching t");
    if (++explorations_ > kMaxExplorations) throw ContractViolation("strategy does not terminate");
    if (route.edges.size() != 1 || route.edges[0] < 0 ||
        route.edges[0] >= static_cast<int>(costs_.size())) {
      throw MalformedPathError("fan routes consist of a single path index");
    }
    const int i = route.edges[0];
    if (known_.count(i)) {
      throw ContractViolation("path " + std::to_string(i) + " is already known to be blocked");
    }
    const PathSpec& p = inst_.paths[i];
    if (p.blocked) {
      Number charge = p.block_prefix * Number(2);
      spent_ += charge;
      known_.insert(i);
      log_.push_back({"explore", i, -1, charge, "blocked"});
      return {false, i};
    }
    spent_ += p.cost;
    done_ = true;
    final_ = PathWitness{{i}, p.cost};
    log_.push_back({"explore", i, -1, p.cost, "open"});
    return {true, std::nullopt};
  }

 private:
  const DisjointInstance& inst_;
  std::vector<Action>& log_;
  std::vector<Number> costs_;
  EdgeSet predicted_;
  EdgeSet known_;
  Number spent_{0};
  bool done_ = false;
  int explorations_ = 0;
  PathWitness final_;
};

class GraphNavigator : public Navigator {
 public:
  GraphNavigator(const GeneralInstance& inst, std::vector<Action>& log)
      : inst_(inst), log_(log) {
    reveal(inst.graph.source());
  }

  int k() const override { return inst_.k; }
  const EdgeSet& predicted() const override { return inst_.predicted; }
  const EdgeSet& known_blocked() const override { return known_; }
  const Number& spent() const override { return spent_; }
  bool done() const override { return done_; }
  const std::vector<Number>* fan_costs() const override { return nullptr; }
  const PathWitness& final_route() const { return final_; }

  std::optional<PathWitness> cheapest_route(const EdgeSet& excluded) const override {
    return shortest_path(inst_.graph, excluded);
  }

  Exploration explore(const PathWitness& route) override {
    if (done_) throw ContractViolation("exploration requested after reaching t");
    if (++explorations_ > kMaxExplorations) throw ContractViolation("strategy does not terminate");
    walk_nodes(inst_.graph, route);
    for (EdgeId id : route.edges) {
      if (known_.count(id)) {
        throw ContractViolation("route uses edge " + std::to_string(id) +
                                " already known to be blocked");
      }
    }
    int here = inst_.graph.source();
    Number walked(0);
    for (EdgeId id : route.edges) {
      if (known_.count(id)) {
        spent_ += walked;
        log_.push_back({"return", -1, id, walked, "blocked"});
        return {false, id};
      }
      const Edge& e = inst_.graph.edge(id);
      walked += e.cost;
      spent_ += e.cost;
      log_.push_back({"traverse", -1, id, e.cost, ""});
      here = Graph::other_end(e, here);
      reveal(here);
    }
    done_ = true;
    final_ = PathWitness{route.edges, walked};
    return {true, std::nullopt};
  }

 private:
  void reveal(int node) {
    for (int idx : inst_.graph.incident(node)) {
      EdgeId id = inst_.graph.edges()[idx].id;
      if (inst_.blocked.count(id)) known_.insert(id);
    }
  }

  const GeneralInstance& inst_;
  std::vector<Action>& log_;
  EdgeSet known_;
  Number spent_{0};
  bool done_ = false;
  int explorations_ = 0;
  PathWitness final_;
};

mpq_class draw_unit(std::mt19937_64& gen) {
  mpz_class r;
  std::uint64_t bits = gen();
  mpz_import(r.get_mpz_t(), 1, 1, sizeof(bits), 0, 0, &bits);
  mpz_class scale(1);
  scale <<= 64;
  mpq_class u(r, scale);
  u.canonicalize();
  return u;
}

class SeededChooser : public Chooser {
 public:
  explicit SeededChooser(std::uint64_t seed) : gen_(seed) {}

  std::size_t choose(const StageDistribution& d) override {
    if (!d.is_valid()) throw ContractViolation("stage distribution is not normalized");
    Number u(draw_unit(gen_));
    Number acc(0);
    std::size_t last = 0;
    for (std::size_t i = 0; i < d.entries.size(); ++i) {
      if (d.entries[i].second.sign() <= 0) continue;
      acc += d.entries[i].second;
      last = i;
      if (u < acc) break;
    }
    picked.push_back(last);
    return last;
  }

  std::vector<std::size_t> picked;

 private:
  std::mt19937_64 gen_;
};

class ScriptedChooser : public Chooser {
 public:
  explicit ScriptedChooser(const std::vector<std::size_t>& script) : script_(script) {}

  std::size_t choose(const StageDistribution& d) override {
    if (!d.is_valid()) throw ContractViolation("stage distribution is not normalized");
    std::size_t pos;
    if (picked.size() < script_.size()) {
      pos = script_[picked.size()];
    } else {
      pos = 0;
      while (pos < d.entries.size() && d.entries[pos].second.sign() == 0) ++pos;
    }
    if (pos >= d.entries.size() || d.entries[pos].second.sign() == 0) {
      throw ContractViolation("scripted choice has zero probability");
    }
    picked.push_back(pos);
    seen.push_back(d);
    return pos;
  }

  std::vector<std::size_t> picked;
  std::vector<StageDistribution> seen;

 private:
  const std::vector<std::size_t>& script_;
};

void check_compatible(const StrategyHandle& strategy, const Instance& inst) {
  if (!strategy) throw UnsupportedError("no strategy given");
  // A zero-cost optimum would otherwise surface as a generic invalid instance.
  if (const auto* g = std::get_if<GeneralInstance>(&inst); g && validate(g->graph).empty()) {
    auto opt = shortest_path(g->graph, g->blocked);
    if (opt && opt->total.is_zero()) throw UndefinedRatioError("OPT is zero; ratio undefined");
  }
  require_valid(inst);
  if (!strategy->deterministic() && !std::holds_alternative<DisjointInstance>(inst)) {
    throw UnsupportedError(strategy->name() + " runs on disjoint-path instances only");
  }
  if (strategy->k && *strategy->k != budget(inst)) {
    throw UnsupportedError(strategy->name() + " was built for k=" + std::to_string(*strategy->k) +
                           " but the instance has k=" + std::to_string(budget(inst)));
  }
}

RunTrace execute(const StrategyHandle& strategy, const Instance& inst, Chooser& chooser) {
  RunTrace trace;
  trace.strategy = strategy->name();
  auto finish = [&](Navigator& nav, const PathWitness& route) {
    if (!nav.done()) throw ContractViolation(strategy->name() + " stopped before reaching t");
    trace.final_route = route;
    trace.alg = nav.spent();
  };
  if (const auto* fan = std::get_if<DisjointInstance>(&inst)) {
    FanNavigator nav(*fan, trace.actions);
    strategy->execute(nav, chooser);
    finish(nav, nav.final_route());
  } else {
    GraphNavigator nav(std::get<GeneralInstance>(inst), trace.actions);
    strategy->execute(nav, chooser);
    finish(nav, nav.final_route());
  }
  trace.opt = optimal_cost(inst);
  if (trace.opt.is_zero()) throw UndefinedRatioError("OPT is zero; ratio undefined");
  trace.ratio = trace.alg / trace.opt;
  trace.prediction_error = prediction_error(inst);
  return trace;
}

}  // namespace

RunTrace run(const StrategyHandle& strategy, const Instance& inst,
             std::optional<std::uint64_t> seed) {
  check_compatible(strategy, inst);
  if (!strategy->deterministic() && !seed) {
    throw UnsupportedError(strategy->name() + " is randomized and needs a seed");
  }
  SeededChooser chooser(seed.value_or(0));
  RunTrace trace = execute(strategy, inst, chooser);
  trace.choices = chooser.picked;
  trace.seed = seed;
  return trace;
}

RunTrace run_scripted(const StrategyHandle& strategy, const Instance& inst,
                      const std::vector<std::size_t>& script,
                      std::vector<StageDistribution>* decisions) {
  check_compatible(strategy, inst);
  ScriptedChooser chooser(script);
  RunTrace trace = execute(strategy, inst, chooser);
  trace.choices = chooser.picked;
  if (decisions) *decisions = std::move(chooser.seen);
  return trace;
}

ExpectationResult exact_expectation(const StrategyHandle& strategy, const Instance& inst) {
  ExpectationResult result;
  result.expected_cost = Number(0);
  std::vector<std::size_t> script;
  while (true) {
    std::vector<StageDistribution> seen;
    RunTrace trace = run_scripted(strategy, inst, script, &seen);
    Number prob(1);
    for (std::size_t d = 0; d < seen.size(); ++d) prob *= seen[d].entries[trace.choices[d]].second;
    result.expected_cost += prob * trace.alg;
    result.opt = trace.opt;
    result.branches.push_back({prob, trace.alg, trace.choices});

    // Advance the deepest stage that still has an unvisited positive entry.
    script = trace.choices;
    bool advanced = false;
    while (!script.empty()) {
      const std::size_t d = script.size() - 1;
      const auto& entries = seen[d].entries;
      std::size_t next = script[d] + 1;
      while (next < entries.size() && entries[next].second.sign() == 0) ++next;
      if (next < entries.size()) {
        script[d] = next;
        advanced = true;
        break;
      }
      script.pop_back();
    }
    if (!advanced) break;
  }
  result.ratio = result.expected_cost / result.opt;
  return result;
}

std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
  std::uint64_t z = master + index + 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

MonteCarloResult monte_carlo(const StrategyHandle& strategy, const Instance& inst,
                             std::size_t n, std::uint64_t seed) {
  if (n < 1) throw RangeError("monte_carlo needs n >= 1");
  MonteCarloResult out;
  out.n = n;
  Number sum(0);
  double mean_d = 0;
  double m2 = 0;
  for (std::size_t i = 0; i < n; ++i) {
    RunTrace t = run(strategy, inst, derive_seed(seed, i));
    sum += t.alg;
    out.opt = t.opt;
    // Welford update on the double view for the spread.
    double x = t.alg.to_double();
    double delta = x - mean_d;
    mean_d += delta / static_cast<double>(i + 1);
    m2 += delta * (x - mean_d);
  }
  out.mean = sum / Number(static_cast<long>(n));
  out.std_dev = n > 1 ? std::sqrt(m2 / static_cast<double>(n - 1)) : 0.0;
  double half = 2.5758293035489004 * out.std_dev / std::sqrt(static_cast<double>(n));
  out.ci_low = out.mean.to_double() - half;
  out.ci_high = out.mean.to_double() + half;
  return out;
}

FamilyRatio family_worst_ratio(const StrategyHandle& strategy, const InstanceFamily& family,
                               RatioMode mode) {
  require_valid(family);
  if (mode == RatioMode::kDeterministic && !strategy->deterministic()) {
    throw UnsupportedError("deterministic mode needs a deterministic strategy");
  }
  FamilyRatio out;
  Number weighted_alg(0);
  Number weighted_opt(0);
  for (std::size_t i = 0; i < family.members.size(); ++i) {
    Number ratio;
    if (mode == RatioMode::kDeterministic) {
      ratio = run(strategy, family.members[i]).ratio;
    } else {
      ExpectationResult e = exact_expectation(strategy, family.members[i]);
      ratio = e.ratio;
      weighted_alg += family.weights[i] * e.expected_cost;
      weighted_opt += family.weights[i] * e.opt;
    }
    if (i == 0 || out.worst < ratio) out.worst = ratio;
    out.per_member.push_back(ratio);
  }
  if (mode == RatioMode::kExpected) out.weighted = weighted_alg / weighted_opt;
  return out;
}

nlohmann::json to_json(const Action& a) {
  nlohmann::json j{{"kind", a.kind}, {"cost", a.cost.to_string()}};
  if (a.path >= 0) j["path"] = a.path;
  if (a.edge >= 0) j["edge"] = a.edge;
  if (!a.outcome.empty()) j["outcome"] = a.outcome;
  return j;
}

nlohmann::json to_json(const RunTrace& t) {
  nlohmann::json j;
  j["strategy"] = t.strategy;
  j["actions"] = nlohmann::json::array();
  for (const auto& a : t.actions) j["actions"].push_back(to_json(a));
  j["choices"] = t.choices;
  j["route"] = t.final_route.edges;
  j["alg"] = t.alg.to_string();
  j["opt"] = t.opt.to_string();
  j["ratio"] = t.ratio.to_string();
  j["ratio_decimal"] = t.ratio.to_decimal();
  j["prediction_error"] = t.prediction_error;
  if (t.seed) j["seed"] = *t.seed;
  return j;
}

nlohmann::json to_json(const ExpectationResult& r) {
  nlohmann::json j;
  j["expected_cost"] = r.expected_cost.to_string();
  j["opt"] = r.opt.to_string();
  j["ratio"] = r.ratio.to_string();
  j["ratio_decimal"] = r.ratio.to_decimal();
  j["branch_count"] = r.branch_count();
  j["branches"] = nlohmann::json::array();
  for (const auto& b : r.branches) {
    j["branches"].push_back(
        {{"probability", b.probability.to_string()}, {"cost", b.cost.to_string()}, {"choices", b.choices}});
  }
  return j;
}

nlohmann::json to_json(const MonteCarloResult& r) {
  return {{"n", r.n},
          {"mean", r.mean.to_string()},
          {"mean_decimal", r.mean.to_decimal()},
          {"std", r.std_dev},
          {"ci99", {r.ci_low, r.ci_high}},
          {"opt", r.opt.to_string()}};
}

}  // namespace ctp

#include "ctp/strategies.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <mutex>
#include <numeric>

#include "ctp/errors.hpp"
#include "ctp/lp.hpp"

namespace ctp {

namespace {

EdgeSet unite(const EdgeSet& a, const EdgeSet& b) {
  EdgeSet out = a;
  out.insert(b.begin(), b.end());
  return out;
}

bool subset_of(const EdgeSet& a, const EdgeSet& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end());
}

// Cheapest route avoiding every known block plus `avoid`, repeated until t
// is reached. `avoid` is dropped once it leaves no route.
void backtrack(Navigator& nav, EdgeSet avoid = {}) {
  while (!nav.done()) {
    auto route = nav.cheapest_route(unite(nav.known_blocked(), avoid));
    if (!route) {
      if (avoid.empty()) throw ContractViolation("no unblocked route left");
      avoid.clear();
      continue;
    }
    nav.explore(*route);
  }
}

const std::vector<Number>& require_fan(const Navigator& nav, const std::string& who) {
  const auto* costs = nav.fan_costs();
  if (costs == nullptr) throw UnsupportedError(who + " runs on disjoint-path instances only");
  return *costs;
}

// Fan indices ordered by (cost, index), optionally skipping one.
std::vector<int> by_cost(const std::vector<Number>& costs, int skip = -1) {
  std::vector<int> out;
  for (int i = 0; i < static_cast<int>(costs.size()); ++i) {
    if (i != skip) out.push_back(i);
  }
  std::stable_sort(out.begin(), out.end(), [&](int x, int y) { return costs[x] < costs[y]; });
  return out;
}

// Cheapest fan path that is not predicted blocked, or -1.
int predicted_free_path(const Navigator& nav, const std::vector<Number>& costs) {
  for (int i : by_cost(costs)) {
    if (!nav.predicted().count(i)) return i;
  }
  return -1;
}

// Runs the mixed exploration over `pool` (fan indices) with budget `b`.
// `before` may divert the run just before a sampled path is explored and
// returns true once t is reached. Returns true iff t was reached.
bool rand_backtrack_over(Navigator& nav, Chooser& chooser, const std::vector<int>& pool, int b,
                         const std::function<bool(int)>& before = {}) {
  if (pool.empty()) return false;
  const auto& costs = *nav.fan_costs();
  std::vector<Number> pool_costs;
  for (int i : pool) pool_costs.push_back(costs[i]);
  b = std::clamp(b, 0, static_cast<int>(pool.size()) - 1);
  ExplorationMix mix = exploration_mix(pool_costs, b);
  std::vector<int> explored;
  while (explored.size() < mix.candidates.size()) {
    StageDistribution local = next_stage(mix, explored);
    StageDistribution d;
    for (const auto& [slot, p] : local.entries) d.entries.emplace_back(pool[mix.candidates[slot]], p);
    const std::size_t pick = chooser.choose(d);
    const int slot = local.entries[pick].first;
    const int path = pool[mix.candidates[slot]];
    if (before && before(path)) return true;
    if (nav.explore(nav.fan_route(path)).reached) return true;
    explored.push_back(slot);
  }
  return false;
}

class Backtrack : public Strategy {
 public:
  std::string name() const override { return "backtrack"; }
  bool deterministic() const override { return true; }
  void execute(Navigator& nav, Chooser&) const override { backtrack(nav); }
};

class EBacktrack : public Strategy {
 public:
  std::string name() const override { return "e-backtrack"; }
  bool deterministic() const override { return true; }

  void execute(Navigator& nav, Chooser&) const override {
    const auto pred = nav.cheapest_route(nav.predicted());
    bool pred_tried = !pred.has_value();
    Number explored(0);
    while (!nav.done()) {
      auto next = nav.cheapest_route(nav.known_blocked());
      if (!next) throw ContractViolation("no unblocked route left");
      if (!pred_tried && *epsilon * pred->total <= Number(2) * (explored + next->total)) {
        pred_tried = true;
        bool known_cut = std::any_of(pred->edges.begin(), pred->edges.end(),
                                     [&](EdgeId id) { return nav.known_blocked().count(id) > 0; });
        if (!known_cut && nav.explore(*pred).reached) return;
        continue;
      }
      nav.explore(*next);
      explored += next->total;
    }
  }
};

class Err1Backtrack : public Strategy {
 public:
  Err1Backtrack(Number first, Number second) : alpha_{std::move(first), std::move(second)} {}
  std::string name() const override { return "err1"; }
  bool deterministic() const override { return true; }

  void execute(Navigator& nav, Chooser&) const override {
    const EdgeSet predicted = nav.predicted();
    int level = nav.k();
    // Peel off one predicted block per round until three remain.
    while (level > 3) {
      auto route = nav.cheapest_route(nav.known_blocked());
      if (!route) throw ContractViolation("no unblocked route left");
      if (explore_and_check(nav, *route, predicted)) return;
      --level;
    }
    const auto alt = nav.cheapest_route(unite(predicted, nav.known_blocked()));
    for (const Number& alpha : alpha_) {
      auto route = nav.cheapest_route(nav.known_blocked());
      if (!route) throw ContractViolation("no unblocked route left");
      if (alt && alt->total <= alpha * route->total) {
        backtrack(nav, predicted);
        return;
      }
      if (explore_and_check(nav, *route, predicted)) return;
    }
    backtrack(nav);
  }

 private:
  // Explores `route`; true once t is reached. A block outside the prediction
  // pins the blocked set down (error <= 1), so the run finishes on the
  // cheapest route avoiding the prediction and every known block.
  static bool explore_and_check(Navigator& nav, const PathWitness& route, const EdgeSet& predicted) {
    const EdgeSet before = nav.known_blocked();
    if (nav.explore(route).reached) return true;
    EdgeSet fresh;
    std::set_difference(nav.known_blocked().begin(), nav.known_blocked().end(), before.begin(),
                        before.end(), std::inserter(fresh, fresh.end()));
    if (subset_of(fresh, predicted)) return false;
    backtrack(nav, predicted);
    return true;
  }

  Number alpha_[2];
};

class RandBacktrack : public Strategy {
 public:
  std::string name() const override { return "rand-backtrack"; }
  bool deterministic() const override { return false; }

  void execute(Navigator& nav, Chooser& chooser) const override {
    const auto& costs = require_fan(nav, name());
    if (!rand_backtrack_over(nav, chooser, by_cost(costs), *budget)) backtrack(nav);
  }
};

class ERandBacktrack : public Strategy {
 public:
  std::string name() const override { return "e-rand-backtrack"; }
  bool deterministic() const override { return false; }

  void execute(Navigator& nav, Chooser& chooser) const override {
    const auto& costs = require_fan(nav, name());
    const int pred = predicted_free_path(nav, costs);
    if (pred < 0) {
      // Every path is predicted blocked, so there is nothing to interleave.
      if (!rand_backtrack_over(nav, chooser, by_cost(costs), nav.k() - 1)) backtrack(nav);
      return;
    }
    std::vector<int> others = by_cost(costs, pred);
    if (static_cast<int>(others.size()) > nav.k()) others.resize(nav.k());
    const Number& c_pred = costs[pred];
    bool pred_tried = false;
    auto try_pred = [&]() {
      pred_tried = true;
      return nav.explore(nav.fan_route(pred)).reached;
    };
    auto interrupt = [&](int next) {
      if (pred_tried) return false;
      if (nav.spent() + Number(2) * costs[next] > *epsilon * c_pred) return try_pred();
      return false;
    };
    if (rand_backtrack_over(nav, chooser, others, static_cast<int>(others.size()) - 1, interrupt)) {
      return;
    }
    if (!pred_tried && try_pred()) return;
    backtrack(nav);
  }
};

class RandBacktrackOne : public Strategy {
 public:
  std::string name() const override { return "rand-one"; }
  bool deterministic() const override { return false; }

  void execute(Navigator& nav, Chooser& chooser) const override {
    const auto& costs = require_fan(nav, name());
    const int pred = predicted_free_path(nav, costs);
    std::vector<int> others = by_cost(costs, pred);
    if (pred < 0 || others.empty()) {
      backtrack(nav);
      return;
    }
    const int first_other = others.front();
    const Number& c1 = costs[first_other];
    const Number& cp = costs[pred];
    int first;
    if (Number(2) * c1 < *epsilon * cp) {
      first = first_other;
    } else {
      StageDistribution d;
      d.entries.emplace_back(pred, (Number(2) * c1 - *epsilon * cp) / (Number(2) * c1));
      d.entries.emplace_back(first_other, *epsilon * cp / (Number(2) * c1));
      first = d.entries[chooser.choose(d)].first;
    }
    if (nav.explore(nav.fan_route(first)).reached) return;
    const int second = first == pred ? first_other : pred;
    if (nav.explore(nav.fan_route(second)).reached) return;
    backtrack(nav);
  }
};

class RandBacktrackU : public Strategy {
 public:
  std::string name() const override { return "rand-uniform"; }
  bool deterministic() const override { return false; }

  void execute(Navigator& nav, Chooser& chooser) const override {
    const auto& costs = require_fan(nav, name());
    if (std::adjacent_find(costs.begin(), costs.end(), std::not_equal_to<>()) != costs.end()) {
      throw UnsupportedError("rand-uniform needs paths of equal cost");
    }
    const int kk = nav.k();
    if (static_cast<int>(costs.size()) < kk + 1) {
      throw UnsupportedError("rand-uniform needs at least k+1 paths");
    }
    const int pred = predicted_free_path(nav, costs);
    std::vector<int> others = by_cost(costs, pred);
    others.resize(kk);
    StageDistribution d;
    d.entries.emplace_back(pred, (Number(kk + 1) - *epsilon) / Number(kk + 1));
    for (int i : others) d.entries.emplace_back(i, *epsilon / Number(kk * (kk + 1)));
    const int first = d.entries[chooser.choose(d)].first;
    if (nav.explore(nav.fan_route(first)).reached) return;
    std::vector<int> rest{pred};
    rest.insert(rest.end(), others.begin(), others.end());
    rest.erase(std::find(rest.begin(), rest.end(), first));
    std::sort(rest.begin(), rest.end());
    if (rand_backtrack_over(nav, chooser, rest, kk - 1)) return;
    backtrack(nav);
  }
};

void check_epsilon(const Number& epsilon, const Number& limit, const std::string& who) {
  if (epsilon.sign() <= 0 || limit < epsilon) {
    throw RangeError(who + ": epsilon must lie in (0, " + limit.to_string() + "]");
  }
}

void check_k(int k, const std::string& who) {
  if (k < 1) throw RangeError(who + ": k must be at least 1");
}

template <typename T, typename... Args>
std::shared_ptr<T> build(Args&&... args) {
  return std::make_shared<T>(std::forward<Args>(args)...);
}

}  // namespace

StrategyHandle make_backtrack() { return build<Backtrack>(); }

StrategyHandle make_e_backtrack(const Number& epsilon, int k) {
  check_k(k, "e-backtrack");
  check_epsilon(epsilon, Number(2 * k), "e-backtrack");
  auto s = build<EBacktrack>();
  s->epsilon = epsilon;
  s->k = k;
  return s;
}

StrategyHandle make_err1_backtrack(int k) {
  check_k(k, "err1");
  if (k == 1) {
    auto s = build<Backtrack>();
    s->k = 1;
    s->note = "k=1: Backtrack is used (3-competitive, optimal for k=1)";
    return s;
  }
  std::shared_ptr<Err1Backtrack> s;
  if (k == 2) {
    s = build<Err1Backtrack>(Number::golden17(), Number(1));
    s->note = "k=2: thresholds (3+sqrt(17))/2 and 1";
  } else {
    s = build<Err1Backtrack>(Number(5), Number::fraction(25, 7));
  }
  s->k = k;
  return s;
}

StrategyHandle make_rand_backtrack(int budget) {
  if (budget < 0) throw RangeError("rand-backtrack: budget must be non-negative");
  auto s = build<RandBacktrack>();
  s->budget = budget;
  return s;
}

StrategyHandle make_e_rand_backtrack(const Number& epsilon, int k) {
  check_k(k, "e-rand-backtrack");
  check_epsilon(epsilon, Number(k), "e-rand-backtrack");
  auto s = build<ERandBacktrack>();
  s->epsilon = epsilon;
  s->k = k;
  return s;
}

StrategyHandle make_rand_backtrack_one(const Number& epsilon) {
  check_epsilon(epsilon, Number(1), "rand-one");
  auto s = build<RandBacktrackOne>();
  s->epsilon = epsilon;
  s->k = 1;
  return s;
}

StrategyHandle make_rand_backtrack_u(const Number& epsilon, int k) {
  check_k(k, "rand-uniform");
  check_epsilon(epsilon, Number(k), "rand-uniform");
  auto s = build<RandBacktrackU>();
  s->epsilon = epsilon;
  s->k = k;
  return s;
}

const std::vector<std::string>& strategy_names() {
  static const std::vector<std::string> kNames = {
      "backtrack", "e-backtrack", "err1", "rand-backtrack", "e-rand-backtrack", "rand-one", "rand-uniform"};
  return kNames;
}

StrategyHandle make_strategy(const std::string& name, const std::optional<Number>& epsilon,
                             const std::optional<int>& k, const std::optional<int>& budget) {
  auto need_eps = [&]() -> const Number& {
    if (!epsilon) throw RangeError(name + " needs --epsilon");
    return *epsilon;
  };
  auto need_k = [&]() {
    if (!k) throw RangeError(name + " needs --k");
    return *k;
  };
  if (name == "backtrack") return make_backtrack();
  if (name == "e-backtrack") return make_e_backtrack(need_eps(), need_k());
  if (name == "err1") return make_err1_backtrack(need_k());
  if (name == "rand-backtrack") {
    if (budget) return make_rand_backtrack(*budget);
    return make_rand_backtrack(need_k());
  }
  if (name == "e-rand-backtrack") return make_e_rand_backtrack(need_eps(), need_k());
  if (name == "rand-one") {
    if (k && *k != 1) throw RangeError("rand-one is defined for k = 1");
    return make_rand_backtrack_one(need_eps());
  }
  if (name == "rand-uniform") return make_rand_backtrack_u(need_eps(), need_k());
  throw RangeError("unknown strategy '" + name + "'");
}

namespace {

// Every permutation of positions that maps each equal-cost class to itself.
std::vector<std::vector<int>> symmetries(const std::vector<Number>& sorted_costs) {
  const int m = static_cast<int>(sorted_costs.size());
  std::vector<std::vector<int>> out{std::vector<int>(m)};
  std::iota(out[0].begin(), out[0].end(), 0);
  int start = 0;
  while (start < m) {
    int end = start;
    while (end < m && sorted_costs[end] == sorted_costs[start]) ++end;
    std::vector<int> block(end - start);
    std::iota(block.begin(), block.end(), start);
    std::vector<std::vector<int>> grown;
    do {
      for (const auto& g : out) {
        auto h = g;
        for (int i = start; i < end; ++i) h[i] = block[i - start];
        grown.push_back(std::move(h));
      }
    } while (std::next_permutation(block.begin(), block.end()));
    out = std::move(grown);
    start = end;
  }
  return out;
}

ExplorationMix solve_mix(const std::vector<Number>& costs, int budget) {
  ExplorationMix mix;
  mix.candidates = by_cost(costs);
  mix.candidates.resize(budget + 1);
  const int m = budget + 1;
  std::vector<Number> cand_costs;
  for (int i : mix.candidates) cand_costs.push_back(costs[i]);

  std::vector<int> perm(m);
  std::iota(perm.begin(), perm.end(), 0);
  do {
    mix.orders.push_back(perm);
  } while (std::next_permutation(perm.begin(), perm.end()));

  // Scenarios: any proper subset of the candidates blocked.
  Matrix payoff(mix.orders.size());
  for (unsigned mask = 0; mask + 1 < (1u << m); ++mask) {
    std::optional<Number> opt;
    for (int i = 0; i < m; ++i) {
      if (!((mask >> i) & 1u) && (!opt || cand_costs[i] < *opt)) opt = cand_costs[i];
    }
    for (std::size_t o = 0; o < mix.orders.size(); ++o) {
      Number cost(0);
      for (int pos : mix.orders[o]) {
        if ((mask >> pos) & 1u) {
          cost += Number(2) * cand_costs[pos];
        } else {
          cost += cand_costs[pos];
          break;
        }
      }
      payoff[o].push_back(cost / *opt);
    }
  }
  MatrixGameSolution sol = solve_min_max(payoff);
  mix.value = sol.value;

  std::map<std::vector<int>, std::size_t> index;
  for (std::size_t o = 0; o < mix.orders.size(); ++o) index[mix.orders[o]] = o;
  const auto group = symmetries(cand_costs);
  const Number share = Number(1) / Number(static_cast<long>(group.size()));
  mix.weights.assign(mix.orders.size(), Number(0));
  for (std::size_t o = 0; o < mix.orders.size(); ++o) {
    if (sol.row_mix[o].is_zero()) continue;
    for (const auto& g : group) {
      std::vector<int> image;
      for (int pos : mix.orders[o]) image.push_back(g[pos]);
      mix.weights[index.at(image)] += sol.row_mix[o] * share;
    }
  }
  return mix;
}

}  // namespace

ExplorationMix exploration_mix(const std::vector<Number>& costs, int budget) {
  if (costs.empty()) throw InfeasibleError("no candidate paths");
  if (budget < 0 || budget >= static_cast<int>(costs.size())) {
    throw InfeasibleError("budget must be smaller than the number of candidates");
  }
  for (const auto& c : costs) {
    if (c.sign() <= 0) throw RangeError("candidate costs must be positive");
  }
  static std::mutex guard;
  static std::map<std::pair<std::vector<std::string>, int>, ExplorationMix> cache;
  std::vector<std::string> key;
  for (const auto& c : costs) key.push_back(c.to_string());
  {
    std::lock_guard<std::mutex> lock(guard);
    auto it = cache.find({key, budget});
    if (it != cache.end()) return it->second;
  }
  ExplorationMix mix = solve_mix(costs, budget);
  std::lock_guard<std::mutex> lock(guard);
  cache.emplace(std::make_pair(key, budget), mix);
  return mix;
}

StageDistribution next_stage(const ExplorationMix& mix, const std::vector<int>& explored) {
  const std::size_t m = mix.candidates.size();
  std::vector<Number> mass(m, Number(0));
  Number total(0);
  for (std::size_t o = 0; o < mix.orders.size(); ++o) {
    if (mix.weights[o].is_zero()) continue;
    const auto& order = mix.orders[o];
    if (!std::equal(explored.begin(), explored.end(), order.begin())) continue;
    if (explored.size() >= order.size()) continue;
    mass[order[explored.size()]] += mix.weights[o];
    total += mix.weights[o];
  }
  if (total.is_zero()) throw ContractViolation("explored prefix has zero probability");
  StageDistribution d;
  for (std::size_t pos = 0; pos < m; ++pos) {
    if (std::find(explored.begin(), explored.end(), static_cast<int>(pos)) != explored.end()) continue;
    d.entries.emplace_back(static_cast<int>(pos), mass[pos] / total);
  }
  return d;
}

StageDistribution stage_distribution(const std::vector<Number>& costs, int budget) {
  ExplorationMix mix = exploration_mix(costs, budget);
  StageDistribution local = next_stage(mix, {});
  StageDistribution d;
  for (const auto& [pos, p] : local.entries) d.entries.emplace_back(mix.candidates[pos], p);
  return d;
}

}  // namespace ctp

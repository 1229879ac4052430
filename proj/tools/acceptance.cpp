// Acceptance suite: one pass/fail line per criterion, exit 0 iff all pass.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "ctp/engine.hpp"
#include "ctp/errors.hpp"
#include "ctp/oracle.hpp"
#include "ctp/scenario.hpp"
#include "ctp/strategies.hpp"

namespace {

using ctp::Number;

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "FAILED " << what << "; ";
    pass = pass && ok;
  }
};

struct Criterion {
  int id;
  std::string title;
  double budget_seconds;
  std::function<void(Outcome&)> body;
};

ctp::EnumerationSpec grid(int k_max, std::vector<Number> costs) {
  ctp::EnumerationSpec g;
  g.k_min = 1;
  g.k_max = k_max;
  g.cost_grid = std::move(costs);
  return g;
}

ctp::ConsistencyConstraint reference_constraint(const ctp::InstanceFamily& fam, const Number& eps) {
  return {eps, ctp::family_scenarios(fam)[*fam.reference]};
}

void backtrack_worst_ratio(Outcome& out) {
  for (int k = 1; k <= 4; ++k) {
    auto fam = ctp::gen_theorem_family(ctp::TheoremTag::T7, k);
    auto r = ctp::family_worst_ratio(ctp::make_backtrack(), fam, ctp::RatioMode::kDeterministic);
    out.require(r.worst == Number(2 * k + 1), "k=" + std::to_string(k) + " worst " + r.worst.to_string());
  }
  out.detail << "T7 worst ratio = 2k+1 for k=1..4";
}

void e_backtrack_tradeoff(Outcome& out) {
  std::size_t runs = 0;
  for (int k = 1; k <= 4; ++k) {
    for (const Number& eps : {Number::fraction(1, 2), Number(1), Number(2), Number(2 * k)}) {
      auto g = grid(k, {Number(1), Number(2), Number(2 * k) / eps});
      g.k_min = k;
      auto s = ctp::make_e_backtrack(eps, k);
      const Number robust = Number(2 * k - 1) + Number(4 * k) / eps;
      ctp::InstanceStream stream(g);
      while (auto inst = stream.next()) {
        Number ratio = ctp::run(s, *inst).ratio;
        ++runs;
        if (ctp::prediction_error(*inst) == 0) {
          out.require(ratio < Number(1) + eps, "consistency " + ctp::to_json(*inst).dump());
        } else {
          out.require(ratio <= robust, "robustness " + ctp::to_json(*inst).dump());
        }
      }
    }
  }
  out.detail << runs << " exhaustive runs within (1+eps, 2k-1+4k/eps]";
}

void det_tradeoff_lower_bound(Outcome& out) {
  int feasible = 0;
  int total = 0;
  for (int k = 1; k <= 4; ++k) {
    for (const Number& eps : {Number::fraction(1, 2), Number(1), Number(2), Number(2 * k)}) {
      auto fam = ctp::gen_theorem_family(ctp::TheoremTag::T1, k, eps);
      auto v = ctp::det_minimax(fam.base, reference_constraint(fam, eps));
      const Number bound = Number(2 * k - 1) + Number(4 * k) / eps;
      ++total;
      feasible += v.feasible ? 1 : 0;
      // No consistent order at all also satisfies the claim.
      out.require(!v.feasible || bound <= v.value,
                  "k=" + std::to_string(k) + " eps=" + eps.to_string() + " value " + v.value.to_string());
    }
  }
  out.detail << "consistent orders on T1 all reach 2k-1+4k/eps, k=1..4 (" << feasible << "/" << total
             << " grids admit a consistent order)";
}

void e_rand_backtrack(Outcome& out) {
  std::size_t cases = 0;
  for (int k = 1; k <= 3; ++k) {
    for (const Number& eps : {Number::fraction(1, 2), Number(1), Number(k)}) {
      auto g = grid(k, {Number(1), Number(2), Number(4 * k) / eps});
      g.k_min = k;
      auto s = ctp::make_e_rand_backtrack(eps, k);
      ctp::InstanceStream stream(g);
      while (auto inst = stream.next()) {
        auto e = ctp::exact_expectation(s, *inst);
        ++cases;
        const Number opt = e.opt;
        if (ctp::prediction_error(*inst) == 0) {
          out.require(e.expected_cost <= (Number(1) + eps) * opt, "consistency " + ctp::to_json(*inst).dump());
        } else {
          out.require(e.expected_cost <= (Number(k) + Number(4 * k) / eps) * opt,
                      "robustness " + ctp::to_json(*inst).dump());
        }
      }
    }
  }
  out.detail << cases << " exact expectations within [1+eps, k+4k/eps]";
}

void rand_tradeoff_lower_bound(Outcome& out) {
  for (int k = 1; k <= 3; ++k) {
    std::vector<Number> grid_eps{Number::fraction(1, 2), Number(1), Number(k)};
    for (const Number& eps : grid_eps) {
      auto fam = ctp::gen_theorem_family(ctp::TheoremTag::T3, k, eps);
      auto v = ctp::rand_game_value(fam.base, reference_constraint(fam, eps));
      const std::string at = "k=" + std::to_string(k) + " eps=" + eps.to_string();
      out.require(v.value == Number(k) + Number(k) / eps, at + " value " + v.value.to_string());
      out.require(v.certified, at + " certificate");
    }
  }
  out.detail << "constrained T3 game = k+k/eps exactly, zero duality gap";
}

void error_one_deterministic(Outcome& out) {
  std::size_t runs = 0;
  for (int k = 3; k <= 5; ++k) {
    auto g = grid(k, {Number(1), Number(2), Number::fraction(25, 7), Number(5), Number(6)});
    g.k_min = k;
    g.max_error = 1;
    auto s = ctp::make_err1_backtrack(k);
    ctp::InstanceStream stream(g);
    while (auto inst = stream.next()) {
      ++runs;
      out.require(ctp::run(s, *inst).ratio <= Number(2 * k - 1), "err1 " + ctp::to_json(*inst).dump());
    }
    auto t8 = ctp::det_minimax(ctp::gen_theorem_family(ctp::TheoremTag::T8, k).base);
    out.require(t8.value == Number(2 * k - 1), "T8 k=" + std::to_string(k) + " " + t8.value.to_string());
  }
  auto t9 = ctp::det_minimax(ctp::gen_theorem_family(ctp::TheoremTag::T9, 1).base);
  out.require(t9.value == Number(3), "T9 " + t9.value.to_string());
  auto t10 = ctp::det_minimax(ctp::gen_theorem_family(ctp::TheoremTag::T10, 2).base);
  out.require(std::abs(t10.value.to_double() - Number::golden17().to_double()) <= 1e-9,
              "T10 " + t10.value.to_string());
  auto g2 = grid(2, {Number(1), Number(2), Number::golden17(), Number(4), Number(5)});
  g2.k_min = 2;
  g2.max_error = 1;
  auto s2 = ctp::make_err1_backtrack(2);
  const double cap = Number::golden17().to_double() + 1e-9;
  ctp::InstanceStream stream(g2);
  while (auto inst = stream.next()) {
    ++runs;
    out.require(ctp::run(s2, *inst).ratio.to_double() <= cap, "err1 k=2 " + ctp::to_json(*inst).dump());
  }
  out.detail << runs << " error<=1 runs; T8=2k-1, T9=3, T10=" << t10.value.to_string();
}

void randomized_error_bounds(Outcome& out) {
  for (int k = 1; k <= 3; ++k) {
    auto fam = ctp::gen_theorem_family(ctp::TheoremTag::T12, k);
    auto v = ctp::rand_game_value(fam.base);
    out.require(v.value == Number(k + 1), "T12 game k=" + std::to_string(k) + " " + v.value.to_string());
    auto yao = ctp::family_worst_ratio(ctp::make_rand_backtrack(k), fam, ctp::RatioMode::kExpected);
    out.require(yao.weighted && *yao.weighted == Number(k + 1), "RandBacktrack on T12 k=" + std::to_string(k));
  }
  for (int k = 2; k <= 3; ++k) {
    auto v = ctp::rand_game_value(ctp::gen_theorem_family(ctp::TheoremTag::T13, k).base);
    out.require(Number(k) <= v.value, "T13 k=" + std::to_string(k) + " " + v.value.to_string());
  }
  out.detail << "T12 game = k+1 = RandBacktrack Yao value; T13 >= k";
}

void special_cases(Outcome& out) {
  std::size_t cases = 0;
  for (const Number& eps : {Number::fraction(1, 4), Number::fraction(1, 2), Number(1)}) {
    auto g = grid(1, {Number(1), Number(2), Number(2) / eps, Number(4) / eps});
    g.max_paths = 3;
    auto s = ctp::make_rand_backtrack_one(eps);
    ctp::InstanceStream stream(g);
    while (auto inst = stream.next()) {
      auto e = ctp::exact_expectation(s, *inst);
      ++cases;
      const Number limit = ctp::prediction_error(*inst) == 0 ? Number(1) + eps : Number(1) + Number(1) / eps;
      out.require(e.ratio <= limit, "rand-one " + ctp::to_json(*inst).dump());
    }
  }
  for (int k = 1; k <= 3; ++k) {
    for (const Number& eps : {Number::fraction(1, 2), Number(1), Number(k)}) {
      auto g = grid(k, {Number(1)});
      g.k_min = k;
      g.min_paths = k + 1;
      g.max_paths = k + 2;
      auto s = ctp::make_rand_backtrack_u(eps, k);
      ctp::InstanceStream stream(g);
      while (auto inst = stream.next()) {
        auto e = ctp::exact_expectation(s, *inst);
        ++cases;
        const Number limit = ctp::prediction_error(*inst) == 0 ? Number(1) + eps : Number(k) + Number(k) / eps;
        out.require(e.ratio <= limit, "rand-uniform " + ctp::to_json(*inst).dump());
      }
    }
  }
  out.detail << cases << " exact expectations within their special-case bounds";
}

std::vector<std::pair<ctp::StrategyHandle, ctp::Instance>> suite_pairs() {
  std::vector<std::pair<ctp::StrategyHandle, ctp::Instance>> pairs;
  auto add_family = [&](const ctp::StrategyHandle& s, const ctp::InstanceFamily& fam) {
    for (const auto& m : fam.members) pairs.emplace_back(s, m);
  };
  for (int k = 1; k <= 3; ++k) {
    add_family(ctp::make_rand_backtrack(k), ctp::gen_theorem_family(ctp::TheoremTag::T12, k));
    add_family(ctp::make_e_rand_backtrack(Number(1), k), ctp::gen_theorem_family(ctp::TheoremTag::T3, k, Number(1)));
    add_family(ctp::make_e_backtrack(Number(1), k), ctp::gen_theorem_family(ctp::TheoremTag::T1, k, Number(1)));
  }
  add_family(ctp::make_rand_backtrack_one(Number::fraction(1, 2)),
             ctp::gen_theorem_family(ctp::TheoremTag::T3, 1, Number::fraction(1, 2)));
  add_family(ctp::make_rand_backtrack_u(Number(1), 2), ctp::gen_theorem_family(ctp::TheoremTag::T12, 2));
  add_family(ctp::make_err1_backtrack(2), ctp::gen_theorem_family(ctp::TheoremTag::T10, 2));
  return pairs;
}

void engine_properties(Outcome& out) {
  auto pairs = suite_pairs();
  std::vector<std::size_t> randomized;
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    const auto& [s, inst] = pairs[i];
    auto e = ctp::exact_expectation(s, inst);
    Number mass(0);
    for (const auto& b : e.branches) mass += b.probability;
    out.require(mass == Number(1), s->name() + " branch mass " + mass.to_string());
    if (!s->deterministic() && e.branch_count() > 1) randomized.push_back(i);
  }
  const std::size_t samples = 100000;
  // Ten picks spread evenly across the randomized pairs.
  const std::size_t picks = std::min<std::size_t>(10, randomized.size());
  std::size_t compared = 0;
  for (std::size_t j = 0; j < picks; ++j) {
    const auto& [s, inst] = pairs[randomized[j * randomized.size() / picks]];
    auto e = ctp::exact_expectation(s, inst);
    auto mc = ctp::monte_carlo(s, inst, samples, ctp::derive_seed(2024, j));
    const double se = mc.std_dev / std::sqrt(static_cast<double>(samples));
    out.require(std::abs(mc.mean.to_double() - e.expected_cost.to_double()) <= 3 * se + 1e-12,
                s->name() + " monte carlo off by more than 3 sigma");
    ++compared;
  }
  out.require(compared == 10, "needs 10 randomized pairs, found " + std::to_string(compared));
  for (std::size_t j = 0; j < randomized.size(); ++j) {
    const auto& [s, inst] = pairs[randomized[j]];
    for (std::uint64_t seed : {1ULL, 77ULL, 123456789ULL}) {
      out.require(ctp::to_json(ctp::run(s, inst, seed)).dump() == ctp::to_json(ctp::run(s, inst, seed)).dump(),
                  s->name() + " trace differs under one seed");
    }
  }
  out.detail << pairs.size() << " suite pairs normalized; " << compared << " Monte Carlo pairs within 3 sigma";
}

std::vector<ctp::InstanceFamily> every_family() {
  std::vector<ctp::InstanceFamily> out;
  for (int k = 1; k <= 3; ++k) {
    out.push_back(ctp::gen_theorem_family(ctp::TheoremTag::T1, k, Number(1)));
    out.push_back(ctp::gen_theorem_family(ctp::TheoremTag::T3, k, Number(1)));
    out.push_back(ctp::gen_theorem_family(ctp::TheoremTag::T7, k));
    out.push_back(ctp::gen_theorem_family(ctp::TheoremTag::T8, k));
    out.push_back(ctp::gen_theorem_family(ctp::TheoremTag::T12, k));
    out.push_back(ctp::gen_theorem_family(ctp::TheoremTag::T13, k));
  }
  out.push_back(ctp::gen_theorem_family(ctp::TheoremTag::T9, 1));
  out.push_back(ctp::gen_theorem_family(ctp::TheoremTag::T10, 2));
  return out;
}

void oracle_properties(Outcome& out) {
  const Number factor = Number::fraction(7, 3);
  auto families = every_family();
  for (const auto& fam : families) {
    const std::string at = fam.tag + " k=" + std::to_string(fam.base.k);
    auto det = ctp::det_minimax(fam.base);
    ctp::FamilySpec grown = fam.base;
    for (auto& c : grown.costs) c *= factor;
    out.require(ctp::det_minimax(grown).value == det.value, at + " scale invariance");
    auto rnd = ctp::rand_game_value(fam.base);
    out.require(rnd.value <= det.value, at + " rand above det");
    out.require(rnd.certified, at + " certificate");
  }
  out.detail << families.size() << " families: x7/3 invariant, rand <= det, certificates exact";
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "Backtrack worst ratio 2k+1", 1, backtrack_worst_ratio},
      {2, "E-Backtrack tradeoff sweep", 60, e_backtrack_tradeoff},
      {3, "Deterministic tradeoff lower bound", 10, det_tradeoff_lower_bound},
      {4, "E-RandBacktrack exact expectations", 300, e_rand_backtrack},
      {5, "Randomized tradeoff lower bound", 30, rand_tradeoff_lower_bound},
      {6, "Error-one deterministic ratios", 120, error_one_deterministic},
      {7, "Randomized error bounds", 60, randomized_error_bounds},
      {8, "Special cases k=1 and uniform costs", 30, special_cases},
      {9, "Engine properties", 120, engine_properties},
      {10, "Oracle properties", 60, oracle_properties},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Outcome out;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.body(out);
    } catch (const std::exception& e) {
      out.require(false, std::string("exception: ") + e.what());
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > c.budget_seconds) {
      out.require(false, "time budget " + std::to_string(c.budget_seconds) + " s exceeded");
    }
    std::printf("[%s] %2d %-38s %8.2f s  %s\n", out.pass ? "PASS" : "FAIL", c.id, c.title.c_str(), seconds,
                out.detail.str().c_str());
    std::fflush(stdout);
    failed += out.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}

// ctp: batch front-end for the k-CTP laboratory.
//
// Exit codes: 0 pass, 2 bound violation, 64 usage or input error,
// 70 internal contract violation.

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "ctp/engine.hpp"
#include "ctp/errors.hpp"
#include "ctp/exit_codes.hpp"
#include "ctp/oracle.hpp"
#include "ctp/scenario.hpp"
#include "ctp/strategies.hpp"

namespace {

using ctp::kExitInternal;
using ctp::kExitPass;
using ctp::kExitUsage;
using ctp::kExitViolation;
using ctp::UsageError;

struct Globals {
  std::optional<std::uint64_t> seed;
  std::string out;
  std::string format = "json";
};

nlohmann::json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw UsageError("cannot open '" + path + "'");
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw UsageError("'" + path + "' is not valid JSON: " + e.what());
  }
}

void emit(const Globals& g, const std::string& text) {
  if (g.out.empty()) {
    std::cout << text;
    if (!text.empty() && text.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(g.out);
  if (!out) throw UsageError("cannot write '" + g.out + "'");
  out << text;
  if (!text.empty() && text.back() != '\n') out << '\n';
}

std::optional<std::uint64_t> seed_or_env(const Globals& g) {
  if (g.seed) return g.seed;
  if (const char* env = std::getenv("CTP_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      throw UsageError("CTP_SEED must be an unsigned integer");
    }
  }
  return std::nullopt;
}

// Evaluates grid tokens such as "2*k/eps", "3k" or "1/2": numbers, k and eps
// joined by * and /, applied left to right.
ctp::Number eval_token(const std::string& token, int k, const std::optional<ctp::Number>& eps) {
  ctp::Number acc(1);
  char op = '*';
  std::size_t pos = 0;
  while (true) {
    std::size_t next = token.find_first_of("*/", pos);
    std::string text = token.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    ctp::Number value;
    try {
      if (text == "k") {
        value = ctp::Number(k);
      } else if (text == "eps") {
        if (!eps) throw UsageError("token '" + token + "' needs an epsilon");
        value = *eps;
      } else if (text.size() > 1 && text.back() == 'k') {
        value = ctp::Number::parse(text.substr(0, text.size() - 1)) * ctp::Number(k);
      } else {
        value = ctp::Number::parse(text);
      }
    } catch (const std::invalid_argument&) {
      throw UsageError("bad grid token '" + token + "'");
    }
    if (op == '*') {
      acc *= value;
    } else {
      if (value.is_zero()) throw UsageError("grid token '" + token + "' divides by zero");
      acc /= value;
    }
    if (next == std::string::npos) break;
    op = token[next];
    pos = next + 1;
  }
  return acc;
}

ctp::Number parse_number(const std::string& text) {
  try {
    return ctp::Number::parse(text);
  } catch (const std::exception& e) {
    throw UsageError(std::string("bad number '") + text + "': " + e.what());
  }
}

struct StrategyArgs {
  std::string name;
  std::string epsilon;
  std::optional<int> k;
  std::optional<int> budget;

  void add_to(CLI::App* cmd) {
    cmd->add_option("--strategy", name, "backtrack | e-backtrack | err1 | rand-backtrack | "
                                        "e-rand-backtrack | rand-one | rand-uniform")
        ->required();
    cmd->add_option("--epsilon", epsilon, "tradeoff parameter, exact fraction");
    cmd->add_option("--k", k, "budget the strategy is built for (default: the instance's)");
    cmd->add_option("--budget", budget, "rand-backtrack parameter (default: k)");
  }

  ctp::StrategyHandle build(int instance_k) const {
    std::optional<ctp::Number> eps;
    if (!epsilon.empty()) eps = parse_number(epsilon);
    return ctp::make_strategy(name, eps, k.value_or(instance_k), budget);
  }
};

ctp::Instance load_instance(const std::string& path) {
  nlohmann::json j = read_json(path);
  if (ctp::is_family_json(j)) throw UsageError("'" + path + "' holds a family, not an instance");
  try {
    return ctp::instance_from_json(j);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError("'" + path + "' is not an instance: " + e.what());
  }
}

int cmd_gen(const Globals& g, const std::string& family, int k, const std::string& eps_text,
            const std::string& param, const std::vector<std::string>& costs, const std::vector<int>& blocked,
            const std::vector<int>& predicted, const std::vector<std::string>& prefixes, bool general) {
  nlohmann::json out;
  if (!family.empty()) {
    std::optional<ctp::Number> eps;
    std::optional<ctp::Number> p;
    if (!eps_text.empty()) eps = parse_number(eps_text);
    if (!param.empty()) p = parse_number(param);
    out = ctp::to_json(ctp::gen_theorem_family(ctp::parse_theorem_tag(family), k, eps, p));
  } else {
    if (costs.empty()) throw UsageError("gen needs --family or --costs");
    std::vector<ctp::Number> c;
    for (const auto& t : costs) c.push_back(parse_number(t));
    std::optional<std::vector<ctp::Number>> pre;
    if (!prefixes.empty()) {
      pre.emplace();
      for (const auto& t : prefixes) pre->push_back(parse_number(t));
    }
    auto inst = ctp::gen_gstar(k, c, blocked, predicted, pre);
    out = general ? ctp::to_json(ctp::to_general(inst)) : ctp::to_json(inst);
  }
  emit(g, out.dump(2));
  return kExitPass;
}

int cmd_run(const Globals& g, const std::string& path, const StrategyArgs& sa) {
  ctp::Instance inst = load_instance(path);
  auto strategy = sa.build(ctp::budget(inst));
  auto seed = seed_or_env(g);
  if (!strategy->deterministic() && !seed) {
    throw UsageError(strategy->name() + " is randomized: pass --seed or set CTP_SEED");
  }
  ctp::RunTrace trace = ctp::run(strategy, inst, seed);
  nlohmann::json j = ctp::to_json(trace);
  if (!strategy->note.empty()) j["note"] = strategy->note;
  emit(g, j.dump(2));
  return kExitPass;
}

int cmd_expect(const Globals& g, const std::string& path, const StrategyArgs& sa, std::size_t samples) {
  ctp::Instance inst = load_instance(path);
  auto strategy = sa.build(ctp::budget(inst));
  nlohmann::json j;
  j["strategy"] = strategy->name();
  j["exact"] = ctp::to_json(ctp::exact_expectation(strategy, inst));
  if (samples > 0) {
    auto seed = seed_or_env(g);
    if (!seed) throw UsageError("--samples needs --seed or CTP_SEED");
    j["monte_carlo"] = ctp::to_json(ctp::monte_carlo(strategy, inst, samples, *seed));
  }
  emit(g, j.dump(2));
  return kExitPass;
}

struct SweepRow {
  std::string strategy;
  std::string family;
  int k = 0;
  std::optional<ctp::Number> epsilon;
  int error = 0;
  ctp::Number ratio;
  std::optional<ctp::Number> bound;
  std::optional<ctp::Number> margin;
  bool pass = true;
  std::size_t order = 0;
};

using Claim = std::pair<ctp::Number, std::string>;

// Claimed value of a family's game, as (value, relation of measured to it).
// Empty when the game kind makes no claim about the family.
std::optional<Claim> family_claim(const std::string& kind, ctp::TheoremTag tag, int k,
                                                  const std::optional<ctp::Number>& eps) {
  using ctp::Number;
  using ctp::TheoremTag;
  if (kind == "det-minimax") {
    switch (tag) {
      case TheoremTag::T1: return Claim{Number(2 * k - 1) + Number(4 * k) / *eps, ">="};
      case TheoremTag::T7: return Claim{Number(2 * k + 1), "=="};
      case TheoremTag::T8: return Claim{Number(2 * k - 1), "=="};
      case TheoremTag::T9: return Claim{Number(3), "=="};
      case TheoremTag::T10: return Claim{Number::golden17(), "=="};
      default: break;
    }
  } else {
    switch (tag) {
      case TheoremTag::T3: return Claim{Number(k) + Number(k) / *eps, "=="};
      case TheoremTag::T12: return Claim{Number(k + 1), "=="};
      case TheoremTag::T13: return Claim{Number(k), ">="};
      default: break;
    }
  }
  return std::nullopt;
}

struct FamilyEntry {
  std::string tag;
  std::vector<int> ks;  // empty: every k of the sweep

  bool applies(int k) const { return ks.empty() || std::find(ks.begin(), ks.end(), k) != ks.end(); }
};

std::string token_text(const nlohmann::json& t) { return t.is_string() ? t.get<std::string>() : t.dump(); }

std::vector<SweepRow> sweep_rows(const nlohmann::json& spec, const Globals& g) {
  std::vector<std::string> strategies = spec.value("strategies", std::vector<std::string>{});
  if (spec.contains("strategy")) strategies.insert(strategies.begin(), spec["strategy"].get<std::string>());
  if (strategies.empty()) throw UsageError("sweep spec needs a strategy");
  std::vector<int> ks = spec.value("k", std::vector<int>{});
  if (ks.empty()) throw UsageError("sweep spec needs a non-empty k list");
  std::vector<std::string> eps_tokens;
  for (const auto& e : spec.value("epsilon", nlohmann::json::array())) eps_tokens.push_back(token_text(e));
  std::vector<FamilyEntry> families;
  for (const auto& f : spec.value("families", nlohmann::json::array())) {
    if (f.is_string()) {
      families.push_back({f.get<std::string>(), {}});
    } else {
      families.push_back({f.at("tag").get<std::string>(), f.value("k", std::vector<int>{})});
    }
  }
  const bool has_enum = spec.contains("enumerate");
  if (families.empty() && !has_enum) throw UsageError("sweep spec needs families or enumerate");
  const std::uint64_t master = spec.contains("seed") ? spec["seed"].get<std::uint64_t>() : seed_or_env(g).value_or(0);
  const std::size_t samples = spec.value("monte_carlo", 0);
  // A conjectured upper bound token replaces the claimed bounds of strategy rows.
  const std::optional<std::string> conjecture =
      spec.contains("bound") ? std::optional<std::string>(token_text(spec["bound"])) : std::nullopt;
  const std::optional<int> budget =
      spec.contains("budget") ? std::optional<int>(spec["budget"].get<int>()) : std::nullopt;

  std::vector<SweepRow> rows;
  auto push = [&](SweepRow row) {
    row.order = rows.size();
    rows.push_back(std::move(row));
  };
  auto reference_of = [](const ctp::InstanceFamily& family, const ctp::Number& eps) {
    return ctp::ConsistencyConstraint{eps, ctp::family_scenarios(family)[*family.reference]};
  };

  for (const auto& strategy : strategies) {
    const bool game = strategy == "det-minimax" || strategy == "rand-game";
    for (int k : ks) {
      std::vector<std::optional<ctp::Number>> eps_list;
      for (const auto& t : eps_tokens) {
        ctp::Number value = eval_token(t, k, std::nullopt);
        // Tokens such as "1" and "k" coincide at k = 1.
        if (std::find(eps_list.begin(), eps_list.end(), value) == eps_list.end()) eps_list.push_back(value);
      }
      if (eps_list.empty()) eps_list.push_back(std::nullopt);
      for (const auto& eps : eps_list) {
        if (game) {
          for (const auto& entry : families) {
            if (!entry.applies(k)) continue;
            auto tag = ctp::parse_theorem_tag(entry.tag);
            auto family = ctp::gen_theorem_family(tag, k, eps);
            auto claimed = family_claim(strategy, tag, k, eps);
            if (!claimed) continue;
            const auto& [claim, rel] = *claimed;
            SweepRow row{strategy, entry.tag, k, eps, family.error_budget};
            if (strategy == "det-minimax") {
              std::optional<ctp::ConsistencyConstraint> filter;
              if (tag == ctp::TheoremTag::T1) filter = reference_of(family, *eps);
              auto v = ctp::det_minimax(family.base, filter);
              // With no consistent order the lower bound holds vacuously.
              row.ratio = v.feasible ? v.value : claim;
            } else {
              std::optional<ctp::ConsistencyConstraint> c;
              if (tag == ctp::TheoremTag::T3) c = reference_of(family, *eps);
              row.ratio = ctp::rand_game_value(family.base, c).value;
            }
            row.bound = claim;
            row.margin = rel == "==" ? claim - row.ratio : row.ratio - claim;
            row.pass = rel == "==" ? row.margin->is_zero() : row.margin->sign() >= 0;
            push(std::move(row));
          }
          continue;
        }
        auto s = ctp::make_strategy(strategy, eps, k, budget);
        auto add_instance_row = [&](const std::string& fam, const ctp::Instance& inst) {
          SweepRow row{s->name(), fam, k, eps, ctp::prediction_error(inst)};
          if (s->deterministic()) {
            row.ratio = ctp::run(s, inst).ratio;
          } else if (samples > 0) {
            auto mc = ctp::monte_carlo(s, inst, samples, ctp::derive_seed(master, rows.size()));
            row.ratio = mc.mean / mc.opt;
          } else {
            row.ratio = ctp::exact_expectation(s, inst).ratio;
          }
          if (conjecture) {
            row.bound = eval_token(*conjecture, k, eps);
            row.margin = *row.bound - row.ratio;
            row.pass = row.margin->sign() >= 0;
          } else if (auto b = ctp::claimed_upper_bound(*s, inst)) {
            row.bound = b->value;
            row.margin = b->value - row.ratio;
            row.pass = b->strict ? row.margin->sign() > 0 : row.margin->sign() >= 0;
          }
          push(std::move(row));
        };
        for (const auto& entry : families) {
          if (!entry.applies(k)) continue;
          auto family = ctp::gen_theorem_family(ctp::parse_theorem_tag(entry.tag), k, eps);
          for (const auto& m : family.members) add_instance_row(entry.tag, m);
        }
        if (has_enum) {
          const auto& e = spec["enumerate"];
          ctp::EnumerationSpec grid;
          grid.k_min = grid.k_max = k;
          for (const auto& t : e.at("cost_grid")) grid.cost_grid.push_back(eval_token(token_text(t), k, eps));
          if (e.contains("prefix_positions")) {
            grid.prefix_positions.clear();
            for (const auto& t : e["prefix_positions"]) {
              grid.prefix_positions.push_back(eval_token(token_text(t), k, eps));
            }
          }
          if (e.contains("min_paths")) grid.min_paths = e["min_paths"].get<int>();
          if (e.contains("max_paths")) grid.max_paths = e["max_paths"].get<int>();
          if (e.contains("max_error")) grid.max_error = e["max_error"].get<int>();
          ctp::InstanceStream stream(grid);
          while (auto inst = stream.next()) add_instance_row("enum", *inst);
        }
      }
    }
  }
  std::stable_sort(rows.begin(), rows.end(), [](const SweepRow& a, const SweepRow& b) {
    if (a.strategy != b.strategy) return a.strategy < b.strategy;
    if (a.family != b.family) return a.family < b.family;
    if (a.k != b.k) return a.k < b.k;
    if (a.epsilon && b.epsilon && *a.epsilon != *b.epsilon) return *a.epsilon < *b.epsilon;
    return a.order < b.order;
  });
  return rows;
}

int cmd_sweep(const Globals& g, const std::string& path) {
  nlohmann::json spec = read_json(path);
  if (!spec.is_object() || spec.empty()) throw UsageError("sweep spec is empty");
  std::vector<SweepRow> rows;
  try {
    rows = sweep_rows(spec, g);
  } catch (const nlohmann::json::exception& e) {
    throw UsageError(std::string("malformed sweep spec: ") + e.what());
  }
  auto text = [](const std::optional<ctp::Number>& n) { return n ? n->to_string() : std::string("-"); };
  std::ostringstream out;
  int failures = 0;
  if (g.format == "csv") {
    out << "strategy,family,k,epsilon,error,ratio,bound,margin\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const auto& r = rows[i];
      out << r.strategy << ',' << r.family << ',' << r.k << ',' << text(r.epsilon) << ',' << r.error << ','
          << r.ratio.to_string() << ',' << text(r.bound) << ',' << text(r.margin) << '\n';
      if (!r.pass) {
        ++failures;
        std::cerr << "violation at row " << (i + 1) << ": " << r.strategy << ' ' << r.family << " k=" << r.k
                  << " ratio " << r.ratio.to_string() << " bound " << text(r.bound) << '\n';
      }
    }
  } else {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : rows) {
      nlohmann::json j{{"strategy", r.strategy}, {"family", r.family},   {"k", r.k},
                       {"epsilon", text(r.epsilon)}, {"error", r.error}, {"ratio", r.ratio.to_string()},
                       {"ratio_decimal", r.ratio.to_decimal()},        {"bound", text(r.bound)},
                       {"margin", text(r.margin)},  {"pass", r.pass}};
      if (r.bound) j["bound_decimal"] = r.bound->to_decimal();
      if (!r.pass) ++failures;
      arr.push_back(std::move(j));
    }
    out << arr.dump(2);
  }
  emit(g, out.str());
  if (failures > 0) {
    std::cerr << failures << " row(s) violate their bound\n";
    return kExitViolation;
  }
  return kExitPass;
}

std::vector<ctp::Number> parse_numbers(const std::vector<std::string>& items) {
  std::vector<ctp::Number> out;
  for (const auto& t : items) out.push_back(parse_number(t));
  return out;
}

int cmd_verify(const Globals& g, std::vector<std::string> tags, bool all, const std::vector<int>& ks,
               const std::vector<std::string>& eps) {
  if (all) tags = ctp::verify_tags();
  if (tags.empty()) throw UsageError("verify needs --tag or --all");
  const auto& known = ctp::verify_tags();
  for (const auto& t : tags) {
    if (std::find(known.begin(), known.end(), t) == known.end()) throw UsageError("unknown tag '" + t + "'");
  }
  auto eps_values = parse_numbers(eps);
  nlohmann::json reports = nlohmann::json::array();
  bool pass = true;
  for (const auto& t : tags) {
    auto r = ctp::verify_bound(t, ks, eps_values);
    pass = pass && r.pass();
    reports.push_back(ctp::to_json(r));
  }
  nlohmann::json j{{"pass", pass}, {"reports", reports}};
  emit(g, j.dump(2));
  return pass ? kExitPass : kExitViolation;
}

int cmd_minimax(const Globals& g, const std::string& family_tag, const std::string& path, int k,
                const std::string& eps_text, const std::string& param, bool randomized, bool constrained) {
  ctp::InstanceFamily family;
  std::optional<ctp::Number> eps;
  if (!eps_text.empty()) eps = parse_number(eps_text);
  if (!family_tag.empty()) {
    std::optional<ctp::Number> p;
    if (!param.empty()) p = parse_number(param);
    family = ctp::gen_theorem_family(ctp::parse_theorem_tag(family_tag), k, eps, p);
  } else if (!path.empty()) {
    nlohmann::json j = read_json(path);
    if (!ctp::is_family_json(j)) throw UsageError("'" + path + "' is not a family");
    family = ctp::family_from_json(j);
  } else {
    throw UsageError("minimax needs --family or --instance");
  }
  std::optional<ctp::ConsistencyConstraint> c;
  if (constrained) {
    if (!eps) eps = family.epsilon;
    if (!eps || !family.reference) throw UsageError("--constrained needs epsilon and a reference member");
    c = ctp::ConsistencyConstraint{*eps, ctp::family_scenarios(family)[*family.reference]};
  }
  nlohmann::json j{{"family", family.tag}, {"k", family.base.k}, {"error_budget", family.error_budget}};
  if (randomized) {
    try {
      j["randomized"] = ctp::to_json(ctp::rand_game_value(family.base, c));
    } catch (const ctp::InfeasibleError& e) {
      j["randomized"] = {{"feasible", false}, {"reason", e.what()}};
    }
  } else {
    j["deterministic"] = ctp::to_json(ctp::det_minimax(family.base, c));
  }
  emit(g, j.dump(2));
  return kExitPass;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"k-Canadian Traveller Problem with predictions: simulation and verification"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "master seed (default: CTP_SEED)");
  app.add_option("--out", g.out, "write output here instead of stdout");
  app.add_option("--format", g.format, "csv | json")->check(CLI::IsMember({"csv", "json"}));

  auto* gen = app.add_subcommand("gen", "generate a G* instance or a lower-bound family");
  std::string gen_family, gen_eps, gen_param;
  int gen_k = 1;
  std::vector<std::string> gen_costs, gen_prefixes;
  std::vector<int> gen_blocked, gen_predicted;
  bool gen_general = false;
  gen->add_option("--family", gen_family, "T1 T3 T7 T8 T9 T10 T12 T13");
  gen->add_option("--k", gen_k, "budget k");
  gen->add_option("--epsilon", gen_eps, "epsilon for T1/T3");
  gen->add_option("--param", gen_param, "free cost constant of T8/T13");
  gen->add_option("--costs", gen_costs, "path costs (G* instance)")->delimiter(',');
  gen->add_option("--blocked", gen_blocked, "0-based blocked path indices")->delimiter(',');
  gen->add_option("--predicted", gen_predicted, "0-based predicted path indices")->delimiter(',');
  gen->add_option("--prefix", gen_prefixes, "blocked-edge prefix cost per path")->delimiter(',');
  gen->add_flag("--general", gen_general, "emit the explicit two-edge graph encoding");

  auto* runc = app.add_subcommand("run", "simulate one strategy run");
  std::string run_path;
  StrategyArgs run_args;
  runc->add_option("--instance", run_path, "instance JSON")->required();
  run_args.add_to(runc);

  auto* expect = app.add_subcommand("expect", "exact expectation of a strategy");
  std::string exp_path;
  StrategyArgs exp_args;
  std::size_t exp_samples = 0;
  expect->add_option("--instance", exp_path, "instance JSON")->required();
  exp_args.add_to(expect);
  expect->add_option("--samples", exp_samples, "also run a seeded Monte Carlo estimate");

  auto* sweep = app.add_subcommand("sweep", "bound sweep from a JSON spec");
  std::string sweep_path;
  sweep->add_option("--spec", sweep_path, "sweep spec JSON")->required();

  auto* verify = app.add_subcommand("verify", "recompute and check claimed bounds");
  std::vector<std::string> ver_tags, ver_eps;
  std::vector<int> ver_k;
  bool ver_all = false;
  verify->add_option("--tag", ver_tags, "claim tag (repeatable)");
  verify->add_flag("--all", ver_all, "every claim tag");
  verify->add_option("--k", ver_k, "k values")->delimiter(',');
  verify->add_option("--epsilon", ver_eps, "epsilon values")->delimiter(',');

  auto* minimax = app.add_subcommand("minimax", "exact game value of a family");
  std::string mm_family, mm_path, mm_eps, mm_param;
  int mm_k = 1;
  bool mm_rand = false, mm_constrained = false;
  minimax->add_option("--family", mm_family, "family tag (T1 T3 T7 T8 T9 T10 T12 T13)");
  minimax->add_option("--instance", mm_path, "family JSON");
  minimax->add_option("--k", mm_k, "budget k");
  minimax->add_option("--epsilon", mm_eps, "epsilon");
  minimax->add_option("--param", mm_param, "free cost constant of T8/T13");
  minimax->add_flag("--rand", mm_rand, "randomized (LP) value instead of deterministic");
  minimax->add_flag("--constrained", mm_constrained, "require 1+epsilon on the reference member");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (gen->parsed()) {
      return cmd_gen(g, gen_family, gen_k, gen_eps, gen_param, gen_costs, gen_blocked, gen_predicted,
                     gen_prefixes, gen_general);
    }
    if (runc->parsed()) return cmd_run(g, run_path, run_args);
    if (expect->parsed()) return cmd_expect(g, exp_path, exp_args, exp_samples);
    if (sweep->parsed()) return cmd_sweep(g, sweep_path);
    if (verify->parsed()) return cmd_verify(g, ver_tags, ver_all, ver_k, ver_eps);
    if (minimax->parsed()) {
      return cmd_minimax(g, mm_family, mm_path, mm_k, mm_eps, mm_param, mm_rand, mm_constrained);
    }
  } catch (const std::exception& e) {
    const int code = ctp::exit_code_for(std::current_exception());
    if (code == kExitInternal) {
      std::cerr << "ctp: internal error: " << e.what() << '\n';
    } else {
      std::cerr << "ctp: " << e.what() << '\n';
    }
    return code;
  }
  return kExitUsage;
}

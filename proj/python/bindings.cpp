// Thin pybind11 layer: every call exchanges JSON text, and the Python package
// decodes it into plain dicts. Exact values stay as "p/q" strings.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ctp/engine.hpp"
#include "ctp/errors.hpp"
#include "ctp/oracle.hpp"
#include "ctp/scenario.hpp"
#include "ctp/strategies.hpp"

namespace py = pybind11;

namespace {

std::optional<ctp::Number> maybe_number(const std::optional<std::string>& text) {
  if (!text) return std::nullopt;
  return ctp::Number::parse(*text);
}

std::vector<ctp::Number> numbers(const std::vector<std::string>& texts) {
  std::vector<ctp::Number> out;
  for (const auto& t : texts) out.push_back(ctp::Number::parse(t));
  return out;
}

ctp::StrategyHandle strategy_for(const ctp::Instance& inst, const std::string& name,
                                 const std::optional<std::string>& epsilon, std::optional<int> k,
                                 std::optional<int> budget) {
  return ctp::make_strategy(name, maybe_number(epsilon), k.value_or(ctp::budget(inst)), budget);
}

std::string gen_gstar(int k, const std::vector<std::string>& costs, const std::vector<int>& blocked,
                      const std::vector<int>& predicted, bool general) {
  auto inst = ctp::gen_gstar(k, numbers(costs), blocked, predicted);
  return (general ? ctp::to_json(ctp::to_general(inst)) : ctp::to_json(inst)).dump();
}

std::string gen_family(const std::string& tag, int k, const std::optional<std::string>& epsilon,
                       const std::optional<std::string>& param) {
  return ctp::to_json(ctp::gen_theorem_family(ctp::parse_theorem_tag(tag), k, maybe_number(epsilon),
                                              maybe_number(param)))
      .dump();
}

std::string run(const std::string& instance, const std::string& strategy, const std::optional<std::string>& epsilon,
                std::optional<int> k, std::optional<int> budget, std::optional<std::uint64_t> seed) {
  auto inst = ctp::instance_from_json(nlohmann::json::parse(instance));
  return ctp::to_json(ctp::run(strategy_for(inst, strategy, epsilon, k, budget), inst, seed)).dump();
}

std::string expect(const std::string& instance, const std::string& strategy,
                   const std::optional<std::string>& epsilon, std::optional<int> k, std::optional<int> budget) {
  auto inst = ctp::instance_from_json(nlohmann::json::parse(instance));
  return ctp::to_json(ctp::exact_expectation(strategy_for(inst, strategy, epsilon, k, budget), inst)).dump();
}

std::string minimax(const std::string& family, bool randomized, bool constrained) {
  auto fam = ctp::family_from_json(nlohmann::json::parse(family));
  std::optional<ctp::ConsistencyConstraint> c;
  if (constrained) {
    if (!fam.epsilon || !fam.reference) throw ctp::RangeError("family has no epsilon or reference member");
    c = ctp::ConsistencyConstraint{*fam.epsilon, ctp::family_scenarios(fam)[*fam.reference]};
  }
  if (randomized) return ctp::to_json(ctp::rand_game_value(fam.base, c)).dump();
  return ctp::to_json(ctp::det_minimax(fam.base, c)).dump();
}

std::string verify(const std::string& tag, const std::vector<int>& ks, const std::vector<std::string>& epsilons) {
  return ctp::to_json(ctp::verify_bound(tag, ks, numbers(epsilons))).dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "k-Canadian Traveller Problem with predictions (JSON interface)";

  py::register_exception<ctp::Error>(m, "CtpError", PyExc_ValueError);

  m.def("gen_gstar", &gen_gstar, py::arg("k"), py::arg("costs"), py::arg("blocked"), py::arg("predicted"),
        py::arg("general") = false);
  m.def("gen_family", &gen_family, py::arg("tag"), py::arg("k"), py::arg("epsilon") = py::none(),
        py::arg("param") = py::none());
  m.def("run", &run, py::arg("instance"), py::arg("strategy"), py::arg("epsilon") = py::none(),
        py::arg("k") = py::none(), py::arg("budget") = py::none(), py::arg("seed") = py::none(),
        py::call_guard<py::gil_scoped_release>());
  m.def("expect", &expect, py::arg("instance"), py::arg("strategy"), py::arg("epsilon") = py::none(),
        py::arg("k") = py::none(), py::arg("budget") = py::none(), py::call_guard<py::gil_scoped_release>());
  m.def("minimax", &minimax, py::arg("family"), py::arg("randomized") = false, py::arg("constrained") = false,
        py::call_guard<py::gil_scoped_release>());
  m.def("verify", &verify, py::arg("tag"), py::arg("ks") = std::vector<int>{},
        py::arg("epsilons") = std::vector<std::string>{}, py::call_guard<py::gil_scoped_release>());
  m.def("verify_tags", &ctp::verify_tags);
  m.def("strategy_names", &ctp::strategy_names);
}

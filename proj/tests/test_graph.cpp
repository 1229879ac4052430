#include <gtest/gtest.h>

#include <algorithm>
#include <functional>
#include <random>

#include "ctp/errors.hpp"
#include "ctp/graph.hpp"

namespace ctp {
namespace {

Graph diamond() {
  Graph g({"s", "a", "b", "t"}, "s", "t");
  g.add_edge(0, "s", "a", Number(1));
  g.add_edge(1, "a", "t", Number(2));
  g.add_edge(2, "s", "b", Number(2));
  g.add_edge(3, "b", "t", Number(1));
  g.add_edge(4, "a", "b", Number::fraction(1, 2));
  return g;
}

// Cheapest simple s-t walk by exhaustive DFS, lexicographic on ties.
std::optional<PathWitness> brute_force(const Graph& g, const EdgeSet& excluded) {
  std::optional<PathWitness> best;
  std::vector<EdgeId> stack;
  std::vector<bool> seen(g.node_count(), false);
  std::function<void(int, Number)> dfs = [&](int node, Number cost) {
    if (node == g.sink()) {
      if (!best || cost < best->total || (cost == best->total && stack < best->edges)) {
        best = PathWitness{stack, cost};
      }
      return;
    }
    for (int idx : g.incident(node)) {
      const Edge& e = g.edges()[idx];
      if (excluded.count(e.id)) continue;
      int next = Graph::other_end(e, node);
      if (seen[next]) continue;
      seen[next] = true;
      stack.push_back(e.id);
      dfs(next, cost + e.cost);
      stack.pop_back();
      seen[next] = false;
    }
  };
  seen[g.source()] = true;
  dfs(g.source(), Number(0));
  return best;
}

TEST(Graph, ShortestPathOnDiamond) {
  Graph g = diamond();
  auto p = shortest_path(g);
  ASSERT_TRUE(p);
  EXPECT_EQ(p->total, Number::fraction(5, 2));
  EXPECT_EQ(p->edges, (std::vector<EdgeId>{0, 4, 3}));
  auto q = shortest_path(g, {4});
  ASSERT_TRUE(q);
  EXPECT_EQ(q->total, Number(3));
  EXPECT_EQ(q->edges, (std::vector<EdgeId>{0, 1}));  // lexicographically first of two
  EXPECT_FALSE(shortest_path(g, {0, 2}));
}

TEST(Graph, ShortestPathMatchesBruteForceOnRandomGraphs) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    int n = 3 + static_cast<int>(rng() % 4);
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("v" + std::to_string(i));
    Graph g(names, "v0", names.back());
    int m = n + static_cast<int>(rng() % 6);
    for (int e = 0; e < m; ++e) {
      int u = static_cast<int>(rng() % n);
      int v = static_cast<int>(rng() % n);
      if (u == v) v = (v + 1) % n;
      g.add_edge(e, names[u], names[v], Number(static_cast<long>(rng() % 4)));
    }
    EdgeSet excluded;
    for (int e = 0; e < m; ++e) {
      if (rng() % 4 == 0) excluded.insert(e);
    }
    auto fast = shortest_path(g, excluded);
    auto slow = brute_force(g, excluded);
    ASSERT_EQ(fast.has_value(), slow.has_value()) << trial;
    if (!fast) continue;
    EXPECT_EQ(fast->total, slow->total) << trial;
    EXPECT_EQ(path_cost(g, *fast), fast->total);
  }
}

TEST(Graph, PathCostRejectsBrokenWalks) {
  Graph g = diamond();
  EXPECT_EQ(path_cost(g, {{0, 1}, Number(3)}), Number(3));
  EXPECT_THROW(path_cost(g, {{0, 3}, Number(0)}), MalformedPathError);
  EXPECT_THROW(path_cost(g, {{9}, Number(0)}), MalformedPathError);
  EXPECT_THROW(path_cost(g, {{0}, Number(0)}), MalformedPathError);
  EXPECT_EQ(walk_nodes(g, {{2, 4, 1}, Number(0)}), (std::vector<int>{0, 2, 1, 3}));
}

TEST(Graph, ValidateReportsEveryProblem) {
  EXPECT_TRUE(validate(diamond()).empty());
  Graph bad({"s", "t"}, "s", "t");
  bad.add_edge(0, "s", "t", Number(-1));
  bad.add_edge(0, "s", "nowhere", Number(1));
  auto report = validate(bad);
  EXPECT_GE(report.size(), 3u);
}

TEST(Graph, JsonRoundTrip) {
  Graph g = diamond();
  Graph back = graph_from_json(to_json(g));
  EXPECT_EQ(to_json(back), to_json(g));
  EXPECT_EQ(shortest_path(back), shortest_path(g));
}

TEST(Graph, NumbersFromJsonAcceptIntegersAndFractions) {
  EXPECT_EQ(number_from_json(nlohmann::json(3)), Number(3));
  EXPECT_EQ(number_from_json(nlohmann::json("7/2")), Number::fraction(7, 2));
}

}  // namespace
}  // namespace ctp

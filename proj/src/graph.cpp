#include "ctp/graph.hpp"

#include <algorithm>
#include <functional>
#include <queue>

#include "ctp/errors.hpp"

namespace ctp {

Graph::Graph(std::vector<std::string> nodes, std::string source, std::string sink)
    : source_name_(std::move(source)), sink_name_(std::move(sink)) {
  for (const auto& n : nodes) add_node(n);
  if (auto s = find_node(source_name_)) source_ = *s;
  if (auto t = find_node(sink_name_)) sink_ = *t;
}

int Graph::add_node(const std::string& name) {
  auto it = node_index_.find(name);
  if (it != node_index_.end()) return it->second;
  int index = static_cast<int>(nodes_.size());
  nodes_.push_back(name);
  node_index_.emplace(name, index);
  incident_.emplace_back();
  if (name == source_name_) source_ = index;
  if (name == sink_name_) sink_ = index;
  return index;
}

void Graph::add_edge(EdgeId id, const std::string& u, const std::string& v,
                     Number cost) {
  Edge e;
  e.id = id;
  e.u = find_node(u).value_or(-1);
  e.v = find_node(v).value_or(-1);
  e.cost = std::move(cost);
  int index = static_cast<int>(edges_.size());
  if (!by_id_.emplace(id, index).second) duplicate_ids_ = true;
  if (e.u >= 0) incident_[e.u].push_back(index);
  if (e.v >= 0 && e.v != e.u) incident_[e.v].push_back(index);
  edges_.push_back(std::move(e));
}

std::optional<int> Graph::find_node(const std::string& name) const {
  auto it = node_index_.find(name);
  if (it == node_index_.end()) return std::nullopt;
  return it->second;
}

const Edge& Graph::edge(EdgeId id) const {
  auto it = by_id_.find(id);
  if (it == by_id_.end()) {
    throw MalformedPathError("unknown edge id " + std::to_string(id));
  }
  return edges_[it->second];
}

const std::vector<int>& Graph::incident(int node) const { return incident_.at(node); }

std::vector<std::string> validate(const Graph& g) {
  std::vector<std::string> report;
  if (g.source_ < 0) report.push_back("source '" + g.source_name_ + "' is not a node");
  if (g.sink_ < 0) report.push_back("sink '" + g.sink_name_ + "' is not a node");
  if (g.source_name_ == g.sink_name_) report.push_back("source equals sink");
  if (g.duplicate_ids_) report.push_back("duplicate edge ids");
  for (const auto& e : g.edges_) {
    std::string tag = "edge " + std::to_string(e.id);
    if (e.cost.sign() < 0) report.push_back(tag + " has negative cost " + e.cost.to_string());
    if (e.u < 0 || e.v < 0) report.push_back(tag + " has an unknown endpoint");
    if (e.u >= 0 && e.u == e.v) report.push_back(tag + " is a self-loop");
  }
  return report;
}

namespace {

// Distances to t over edges not in `excluded`; nullopt marks unreachable.
std::vector<std::optional<Number>> distances_to_sink(const Graph& g,
                                                     const EdgeSet& excluded) {
  std::vector<std::optional<Number>> dist(g.node_count());
  struct Item {
    Number d;
    int node;
    bool operator>(const Item& o) const {
      if (d != o.d) return d > o.d;
      return node > o.node;
    }
  };
  std::priority_queue<Item, std::vector<Item>, std::greater<>> queue;
  dist[g.sink()] = Number(0);
  queue.push({Number(0), g.sink()});
  std::vector<bool> done(g.node_count(), false);
  while (!queue.empty()) {
    Item top = queue.top();
    queue.pop();
    if (done[top.node]) continue;
    done[top.node] = true;
    for (int idx : g.incident(top.node)) {
      const Edge& e = g.edges()[idx];
      if (excluded.count(e.id)) continue;
      int w = Graph::other_end(e, top.node);
      if (w < 0 || done[w]) continue;
      Number cand = top.d + e.cost;
      if (!dist[w] || cand < *dist[w]) {
        dist[w] = cand;
        queue.push({cand, w});
      }
    }
  }
  return dist;
}

}  // namespace

std::optional<PathWitness> shortest_path(const Graph& g, const EdgeSet& excluded) {
  const int s = g.source();
  const int t = g.sink();
  auto dist = distances_to_sink(g, excluded);
  if (!dist[s]) return std::nullopt;

  // Candidate tight edges per node, in ascending id order.
  std::vector<std::vector<std::pair<EdgeId, int>>> tight(g.node_count());
  for (int u = 0; u < g.node_count(); ++u) {
    if (!dist[u]) continue;
    for (int idx : g.incident(u)) {
      const Edge& e = g.edges()[idx];
      if (excluded.count(e.id)) continue;
      int w = Graph::other_end(e, u);
      if (w < 0 || !dist[w]) continue;
      if (*dist[u] == e.cost + *dist[w]) tight[u].emplace_back(e.id, w);
    }
    std::sort(tight[u].begin(), tight[u].end());
  }

  // Depth-first over tight edges in id order: the first simple s-t walk found
  // is the lexicographically smallest shortest path.
  PathWitness out;
  std::vector<bool> on_path(g.node_count(), false);
  std::function<bool(int)> dfs = [&](int u) {
    if (u == t) return true;
    on_path[u] = true;
    for (const auto& [id, w] : tight[u]) {
      if (on_path[w]) continue;
      out.edges.push_back(id);
      if (dfs(w)) return true;
      out.edges.pop_back();
    }
    on_path[u] = false;
    return false;
  };
  if (!dfs(s)) return std::nullopt;
  out.total = *dist[s];
  return out;
}

std::vector<int> walk_nodes(const Graph& g, const PathWitness& p) {
  if (p.edges.empty()) {
    throw MalformedPathError("empty path cannot connect distinct s and t");
  }
  std::vector<int> nodes{g.source()};
  for (EdgeId id : p.edges) {
    const Edge& e = g.edge(id);
    int here = nodes.back();
    if (e.u == here) {
      nodes.push_back(e.v);
    } else if (e.v == here) {
      nodes.push_back(e.u);
    } else {
      throw MalformedPathError("edge " + std::to_string(id) +
                               " does not continue the walk");
    }
  }
  if (nodes.back() != g.sink()) throw MalformedPathError("path does not end at t");
  return nodes;
}

Number path_cost(const Graph& g, const PathWitness& p) {
  walk_nodes(g, p);
  Number total(0);
  for (EdgeId id : p.edges) total += g.edge(id).cost;
  return total;
}

nlohmann::json to_json(const Graph& g) {
  nlohmann::json j;
  j["nodes"] = nlohmann::json::array();
  for (int i = 0; i < g.node_count(); ++i) j["nodes"].push_back(g.node_name(i));
  j["edges"] = nlohmann::json::array();
  for (const auto& e : g.edges()) {
    j["edges"].push_back({{"id", e.id},
                          {"u", e.u >= 0 ? g.node_name(e.u) : ""},
                          {"v", e.v >= 0 ? g.node_name(e.v) : ""},
                          {"cost", e.cost.to_string()}});
  }
  j["s"] = g.source_name();
  j["t"] = g.sink_name();
  return j;
}

namespace {

std::string node_key(const nlohmann::json& j) {
  if (j.is_string()) return j.get<std::string>();
  if (j.is_number_integer()) return std::to_string(j.get<long long>());
  throw std::invalid_argument("node identifiers must be strings or integers");
}

}  // namespace

Number number_from_json(const nlohmann::json& j) {
  if (j.is_string()) return Number::parse(j.get<std::string>());
  if (j.is_number_integer()) return Number(static_cast<long>(j.get<long long>()));
  throw std::invalid_argument("numbers must be fraction strings");
}

Graph graph_from_json(const nlohmann::json& j) {
  std::vector<std::string> nodes;
  for (const auto& n : j.at("nodes")) nodes.push_back(node_key(n));
  Graph g(nodes, node_key(j.at("s")), node_key(j.at("t")));
  for (const auto& e : j.at("edges")) {
    g.add_edge(e.at("id").get<EdgeId>(), node_key(e.at("u")), node_key(e.at("v")),
               number_from_json(e.at("cost")));
  }
  return g;
}

}  // namespace ctp

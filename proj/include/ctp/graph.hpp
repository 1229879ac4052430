#ifndef CTP_GRAPH_HPP_
#define CTP_GRAPH_HPP_

#include "json.hpp"

#include <optional>
#include <set>
#include <string>
#include <unordered_map>
#include <vector>

#include "ctp/number.hpp"

namespace ctp {

using EdgeId = int;
using EdgeSet = std::set<EdgeId>;

struct Edge {
  EdgeId id = 0;
  int u = -1;  // node index, -1 when the endpoint name is unknown
  int v = -1;
  Number cost;
};

// Undirected multigraph with a distinguished source and sink. Node names are
// opaque strings; edges keep the ids they were created with.
class Graph {
 public:
  Graph() = default;
  Graph(std::vector<std::string> nodes, std::string source, std::string sink);

  int add_node(const std::string& name);
  // Endpoints that are not registered nodes are recorded as -1 and reported
  // by validate().
  void add_edge(EdgeId id, const std::string& u, const std::string& v, Number cost);

  int node_count() const { return static_cast<int>(nodes_.size()); }
  const std::string& node_name(int index) const { return nodes_.at(index); }
  std::optional<int> find_node(const std::string& name) const;

  int source() const { return source_; }
  int sink() const { return sink_; }
  const std::string& source_name() const { return source_name_; }
  const std::string& sink_name() const { return sink_name_; }

  const std::vector<Edge>& edges() const { return edges_; }
  bool has_edge(EdgeId id) const { return by_id_.count(id) != 0; }
  // Throws MalformedPathError for unknown ids.
  const Edge& edge(EdgeId id) const;
  // Indices into edges() of the edges touching `node`.
  const std::vector<int>& incident(int node) const;
  static int other_end(const Edge& e, int node) { return e.u == node ? e.v : e.u; }

 private:
  std::vector<std::string> nodes_;
  std::unordered_map<std::string, int> node_index_;
  std::vector<Edge> edges_;
  std::unordered_map<EdgeId, int> by_id_;
  std::vector<std::vector<int>> incident_;
  std::string source_name_;
  std::string sink_name_;
  int source_ = -1;
  int sink_ = -1;
  bool duplicate_ids_ = false;

  friend std::vector<std::string> validate(const Graph& g);
};

struct PathWitness {
  std::vector<EdgeId> edges;  // ordered from s to t
  Number total;

  friend bool operator==(const PathWitness&, const PathWitness&) = default;
};

/// Minimum-cost s-t path avoiding `excluded`. Among equal-cost paths the
/// lexicographically smallest edge-id sequence wins, so repeated queries
/// (and the adversaries that depend on them) are reproducible.
std::optional<PathWitness> shortest_path(const Graph& g, const EdgeSet& excluded = {});

/// Sum of edge costs along `p`; throws MalformedPathError if an id is
/// unknown or the edges do not form a walk from s to t.
Number path_cost(const Graph& g, const PathWitness& p);

/// Node sequence visited by `p` starting at s.
std::vector<int> walk_nodes(const Graph& g, const PathWitness& p);

/// Every violated graph invariant, one line each; empty iff valid.
std::vector<std::string> validate(const Graph& g);

// Accepts fraction strings ("p/q", surd forms) and integers.
Number number_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Graph& g);
Graph graph_from_json(const nlohmann::json& j);

}  // namespace ctp

#endif  // CTP_GRAPH_HPP_

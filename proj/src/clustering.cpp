#include "sunset/clustering.hpp"

#include <algorithm>
#include <map>
#include <unordered_set>

#include "json.hpp"
#include "sunset/errors.hpp"
#include "sunset/util.hpp"

namespace sunset {

using nlohmann::json;

namespace {

std::vector<std::string> shared_canonical(const SetTriplet& a, const SetTriplet& b) {
  std::unordered_set<std::string> in_a(a.canonical_stakeholders.begin(),
                                       a.canonical_stakeholders.end());
  std::vector<std::string> shared;
  for (const auto& id : b.canonical_stakeholders) {
    if (in_a.contains(id)) shared.push_back(id);
  }
  return shared;
}

}  // namespace

bool em_gate(const SetTriplet& a, const SetTriplet& b, int n) {
  if (n <= 0) return true;
  return static_cast<int>(shared_canonical(a, b).size()) >= n;
}

double pair_weight(const SetTriplet& a, const SetTriplet& b, double cosine_ab,
                   const RelLookup& rel, int n) {
  const auto shared = shared_canonical(a, b);
  if (n > 0 && static_cast<int>(shared.size()) < n) return 0.0;
  double mass = 0;
  for (const auto& id : shared) mass += rel(id);
  return mass + cosine_ab;
}

EventGraph build_event_graph(const std::vector<SetTriplet>& sets,
                             const std::vector<EventVector>& vectors,
                             const RelLookup& rel, const GraphParams& params) {
  if (sets.size() != vectors.size()) {
    throw Error("sets and vectors are misaligned");
  }
  EventGraph graph;
  graph.node_count = static_cast<int>(sets.size());
  graph.em_level = params.em_level;
  if (sets.size() < 2) return graph;

  std::map<std::pair<int, int>, double> edges;
  for (int q = 0; q < graph.node_count; ++q) {
    for (const auto& nb : top_k_neighbors(q, vectors, params.k_neighbors)) {
      const double w = pair_weight(sets[static_cast<std::size_t>(q)],
                                   sets[static_cast<std::size_t>(nb.index)], nb.cosine,
                                   rel, params.em_level);
      if (w > params.min_weight && w > 0) {
        edges.emplace(std::minmax(q, nb.index), w);
      }
    }
  }
  graph.edges.reserve(edges.size());
  for (const auto& [key, w] : edges) {
    graph.edges.push_back(WeightedEdge{key.first, key.second, w});
  }
  return graph;
}

std::vector<Cluster> extract_clusters(const EventGraph& graph, const std::string& topic_id) {
  std::vector<std::vector<int>> adjacency(static_cast<std::size_t>(graph.node_count));
  for (const auto& e : graph.edges) {
    adjacency[static_cast<std::size_t>(e.i)].push_back(e.j);
    adjacency[static_cast<std::size_t>(e.j)].push_back(e.i);
  }
  std::vector<bool> visited(static_cast<std::size_t>(graph.node_count), false);
  std::vector<Cluster> clusters;
  for (int start = 0; start < graph.node_count; ++start) {
    if (visited[static_cast<std::size_t>(start)]) continue;
    Cluster c;
    c.topic_id = topic_id;
    std::vector<int> stack{start};
    visited[static_cast<std::size_t>(start)] = true;
    while (!stack.empty()) {
      const int node = stack.back();
      stack.pop_back();
      c.member_indices.push_back(node);
      for (int next : adjacency[static_cast<std::size_t>(node)]) {
        if (!visited[static_cast<std::size_t>(next)]) {
          visited[static_cast<std::size_t>(next)] = true;
          stack.push_back(next);
        }
      }
    }
    std::sort(c.member_indices.begin(), c.member_indices.end());
    clusters.push_back(std::move(c));
  }
  return clusters;  // already ordered by smallest member: starts scan ascending
}

void save_graph(const EventGraph& graph, const std::filesystem::path& path) {
  std::vector<json> records;
  records.push_back(json{{"node_count", graph.node_count}, {"em_level", graph.em_level}});
  for (const auto& e : graph.edges) {
    records.push_back(json{{"i", e.i}, {"j", e.j}, {"weight", e.weight}});
  }
  write_jsonl(path, records);
}

EventGraph load_graph(const std::filesystem::path& path) {
  auto records = read_jsonl(path, /*require_header=*/true);
  if (records.empty() || !records.front().contains("node_count")) {
    throw ValidationError(path.string() + ": missing graph preamble record");
  }
  EventGraph graph;
  graph.node_count = records.front().at("node_count").get<int>();
  graph.em_level = records.front().value("em_level", 0);
  for (std::size_t i = 1; i < records.size(); ++i) {
    const auto& rec = records[i];
    graph.edges.push_back(WeightedEdge{rec.at("i").get<int>(), rec.at("j").get<int>(),
                                       rec.at("weight").get<double>()});
  }
  return graph;
}

void save_clusters(const std::vector<Cluster>& clusters, const std::filesystem::path& path) {
  std::vector<json> records;
  records.reserve(clusters.size());
  for (const auto& c : clusters) {
    records.push_back(json{{"topic_id", c.topic_id}, {"members", c.member_indices}});
  }
  write_jsonl(path, records);
}

std::vector<Cluster> load_clusters(const std::filesystem::path& path) {
  auto records = read_jsonl(path, /*require_header=*/true);
  std::vector<Cluster> out;
  out.reserve(records.size());
  for (const auto& rec : records) {
    Cluster c;
    c.topic_id = rec.at("topic_id").get<std::string>();
    c.member_indices = rec.at("members").get<std::vector<int>>();
    if (c.member_indices.empty()) {
      throw ValidationError(path.string() + ": empty cluster");
    }
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace sunset

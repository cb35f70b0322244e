#pragma once

#include <filesystem>
#include <functional>
#include <string>
#include <vector>

#include "sunset/corpus.hpp"
#include "sunset/embedding.hpp"

namespace sunset {

/// Canonical stakeholder id -> Rel(stakeholder, topic) within one topic.
using RelLookup = std::function<double(const std::string&)>;

struct WeightedEdge {
  int i = 0;  // i < j, no self loops
  int j = 0;
  double weight = 0;  // > 0

  bool operator==(const WeightedEdge&) const = default;
};

struct EventGraph {
  int node_count = 0;
  std::vector<WeightedEdge> edges;  // sorted by (i, j), one per unordered pair
  int em_level = 0;
};

struct Cluster {
  std::vector<int> member_indices;  // nonempty, ascending
  std::string topic_id;
};

/// True iff the two events share at least n canonical stakeholders.
bool em_gate(const SetTriplet& a, const SetTriplet& b, int n);

/// Edge-weight summand for one event pair: shared-stakeholder relevance mass
/// plus cosine similarity, zeroed when the exact-match gate fails.
double pair_weight(const SetTriplet& a, const SetTriplet& b, double cosine_ab,
                   const RelLookup& rel, int n);

struct GraphParams {
  int k_neighbors = 20;
  int em_level = 0;
  double min_weight = 0.0;
};

/// Evaluates pair weights against each node's top-k cosine neighbors; an edge
/// exists when either endpoint nominates the pair and the weight clears
/// min_weight.
EventGraph build_event_graph(const std::vector<SetTriplet>& sets,
                             const std::vector<EventVector>& vectors,
                             const RelLookup& rel, const GraphParams& params);

/// Connected components of the positive-weight graph; singletons kept;
/// ordered by smallest member index.
std::vector<Cluster> extract_clusters(const EventGraph& graph, const std::string& topic_id);

void save_graph(const EventGraph& graph, const std::filesystem::path& path);
EventGraph load_graph(const std::filesystem::path& path);

void save_clusters(const std::vector<Cluster>& clusters, const std::filesystem::path& path);
std::vector<Cluster> load_clusters(const std::filesystem::path& path);

}  // namespace sunset

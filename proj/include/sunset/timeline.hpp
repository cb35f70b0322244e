#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "sunset/clustering.hpp"
#include "sunset/corpus.hpp"

namespace sunset {

struct TextRankParams {
  double damping = 0.85;     // in (0,1)
  double tolerance = 1e-6;   // L1 change per iteration
  int max_iterations = 200;
};

struct RankedCluster {
  Cluster cluster;
  std::set<std::string> stakeholder_union;  // union over member events
  double significance = 0;
  Date representative_date;  // mode of member dates, earliest on tie
};

struct TextRankResult {
  std::map<int, double> scores;  // event index -> score, sums to ~1
  bool converged = true;
};

struct Budget {
  int date_count = 0;         // L
  int sentences_per_date = 0; // k
};

/// Union of canonical stakeholders over the cluster's member events.
std::set<std::string> cluster_stakeholders(const Cluster& cluster,
                                           const std::vector<SetTriplet>& sets);

/// [1 + ln|C|] * mean stakeholder relevance over the union; 0 when the
/// union is empty.
double significance(const Cluster& cluster, const std::vector<SetTriplet>& sets,
                    const RelLookup& rel);

/// Weighted PageRank on the subgraph the cluster induces from the event
/// graph. A single node scores 1; isolated nodes keep the (1-d)/N floor.
TextRankResult textrank_scores(const Cluster& cluster, const EventGraph& graph,
                               const TextRankParams& params = {});

Date representative_date(const Cluster& cluster, const std::vector<SetTriplet>& sets);

/// Builds the RankedCluster list (Eq-level scores plus representative dates).
/// With every significance at zero (the beta=0 ablation) ranking falls back
/// to cluster size, then earliest date.
std::vector<RankedCluster> rank_clusters(const std::vector<Cluster>& clusters,
                                         const std::vector<SetTriplet>& sets,
                                         const RelLookup& rel);

/// Greedy budgeted assembly: clusters by significance, one timeline date per
/// cluster (skipping already-used dates), top TextRank events within the
/// chosen cluster, sentences truncated to the per-date budget.
Timeline assemble_timeline(const std::vector<RankedCluster>& ranked,
                           const std::vector<SetTriplet>& sets,
                           const std::map<int, double>& textrank_by_event,
                           const Budget& budget);

/// Splits on '.', '!' or '?' followed by whitespace or end of text.
std::vector<std::string> split_sentences(const std::string& text);

}  // namespace sunset

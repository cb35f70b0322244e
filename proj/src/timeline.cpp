#include "sunset/timeline.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>

#include "sunset/errors.hpp"
#include "sunset/util.hpp"

namespace sunset {

std::set<std::string> cluster_stakeholders(const Cluster& cluster,
                                           const std::vector<SetTriplet>& sets) {
  std::set<std::string> out;
  for (int idx : cluster.member_indices) {
    const auto& t = sets.at(static_cast<std::size_t>(idx));
    out.insert(t.canonical_stakeholders.begin(), t.canonical_stakeholders.end());
  }
  return out;
}

double significance(const Cluster& cluster, const std::vector<SetTriplet>& sets,
                    const RelLookup& rel) {
  if (cluster.member_indices.empty()) throw ValidationError("significance of empty cluster");
  const auto union_ids = cluster_stakeholders(cluster, sets);
  if (union_ids.empty()) return 0.0;
  double mass = 0;
  for (const auto& id : union_ids) mass += rel(id);
  const double boost = 1.0 + std::log(static_cast<double>(cluster.member_indices.size()));
  return boost * mass / static_cast<double>(union_ids.size());
}

TextRankResult textrank_scores(const Cluster& cluster, const EventGraph& graph,
                               const TextRankParams& params) {
  TextRankResult result;
  const auto& members = cluster.member_indices;
  const std::size_t n = members.size();
  if (n == 0) throw ValidationError("textrank on empty cluster");
  if (n == 1) {
    result.scores[members[0]] = 1.0;
    return result;
  }

  std::map<int, std::size_t> local;  // event index -> dense position
  for (std::size_t i = 0; i < n; ++i) local[members[i]] = i;

  // Induced undirected subgraph.
  std::vector<std::vector<std::pair<std::size_t, double>>> adj(n);
  std::vector<double> out_sum(n, 0.0);
  for (const auto& e : graph.edges) {
    auto a = local.find(e.i);
    auto b = local.find(e.j);
    if (a == local.end() || b == local.end()) continue;
    adj[a->second].emplace_back(b->second, e.weight);
    adj[b->second].emplace_back(a->second, e.weight);
    out_sum[a->second] += e.weight;
    out_sum[b->second] += e.weight;
  }

  const double d = params.damping;
  std::vector<double> score(n, 1.0 / static_cast<double>(n));
  std::vector<double> next(n, 0.0);
  result.converged = false;
  for (int iter = 0; iter < params.max_iterations; ++iter) {
    double delta = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double acc = 0;
      for (const auto& [j, w] : adj[i]) {
        if (out_sum[j] > 0) acc += w / out_sum[j] * score[j];
      }
      next[i] = (1.0 - d) / static_cast<double>(n) + d * acc;
      delta += std::abs(next[i] - score[i]);
    }
    score.swap(next);
    if (delta < params.tolerance) {
      result.converged = true;
      break;
    }
  }
  for (std::size_t i = 0; i < n; ++i) result.scores[members[i]] = score[i];
  return result;
}

Date representative_date(const Cluster& cluster, const std::vector<SetTriplet>& sets) {
  std::map<Date, int> counts;
  for (int idx : cluster.member_indices) {
    counts[sets.at(static_cast<std::size_t>(idx)).event_date] += 1;
  }
  Date best = counts.begin()->first;
  int best_count = counts.begin()->second;
  for (const auto& [date, count] : counts) {
    if (count > best_count) {  // strict: earliest date wins ties
      best = date;
      best_count = count;
    }
  }
  return best;
}

std::vector<RankedCluster> rank_clusters(const std::vector<Cluster>& clusters,
                                         const std::vector<SetTriplet>& sets,
                                         const RelLookup& rel) {
  std::vector<RankedCluster> out;
  out.reserve(clusters.size());
  for (const auto& c : clusters) {
    RankedCluster rc;
    rc.cluster = c;
    rc.stakeholder_union = cluster_stakeholders(c, sets);
    rc.significance = significance(c, sets, rel);
    rc.representative_date = representative_date(c, sets);
    out.push_back(std::move(rc));
  }
  std::sort(out.begin(), out.end(), [](const RankedCluster& a, const RankedCluster& b) {
    if (a.significance != b.significance) return a.significance > b.significance;
    if (a.cluster.member_indices.size() != b.cluster.member_indices.size()) {
      return a.cluster.member_indices.size() > b.cluster.member_indices.size();
    }
    if (a.representative_date != b.representative_date) {
      return a.representative_date < b.representative_date;
    }
    return a.cluster.member_indices.front() < b.cluster.member_indices.front();
  });
  return out;
}

std::vector<std::string> split_sentences(const std::string& text) {
  std::vector<std::string> out;
  std::string current;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    current.push_back(c);
    const bool terminator = c == '.' || c == '!' || c == '?';
    const bool at_end = i + 1 == text.size();
    if (terminator && (at_end || std::isspace(static_cast<unsigned char>(text[i + 1])))) {
      const std::string s = trim(current);
      if (!s.empty()) out.push_back(s);
      current.clear();
    }
  }
  const std::string tail = trim(current);
  if (!tail.empty()) out.push_back(tail);
  return out;
}

Timeline assemble_timeline(const std::vector<RankedCluster>& ranked,
                           const std::vector<SetTriplet>& sets,
                           const std::map<int, double>& textrank_by_event,
                           const Budget& budget) {
  if (ranked.empty()) throw ValidationError("assemble_timeline with no clusters");
  if (budget.date_count <= 0 || budget.sentences_per_date <= 0) {
    throw ConfigError("timeline budget must be positive");
  }

  std::vector<const RankedCluster*> order;
  order.reserve(ranked.size());
  for (const auto& rc : ranked) order.push_back(&rc);
  std::sort(order.begin(), order.end(), [](const RankedCluster* a, const RankedCluster* b) {
    if (a->significance != b->significance) return a->significance > b->significance;
    if (a->cluster.member_indices.size() != b->cluster.member_indices.size()) {
      return a->cluster.member_indices.size() > b->cluster.member_indices.size();
    }
    if (a->representative_date != b->representative_date) {
      return a->representative_date < b->representative_date;
    }
    return a->cluster.member_indices.front() < b->cluster.member_indices.front();
  });

  auto event_score = [&](int idx) {
    auto it = textrank_by_event.find(idx);
    return it == textrank_by_event.end() ? 0.0 : it->second;
  };

  Timeline tl;
  tl.date_count = budget.date_count;
  tl.sentences_per_date = budget.sentences_per_date;
  std::set<Date> used_dates;
  for (const RankedCluster* rc : order) {
    if (static_cast<int>(tl.entries.size()) >= budget.date_count) break;
    if (used_dates.contains(rc->representative_date)) continue;

    std::vector<int> members = rc->cluster.member_indices;
    std::sort(members.begin(), members.end(), [&](int a, int b) {
      const double sa = event_score(a), sb = event_score(b);
      if (sa != sb) return sa > sb;
      const auto& da = sets.at(static_cast<std::size_t>(a)).event_date;
      const auto& db = sets.at(static_cast<std::size_t>(b)).event_date;
      if (da != db) return da < db;
      return a < b;
    });

    TimelineEntry entry;
    entry.date = rc->representative_date;
    const int take_events = std::min<int>(budget.sentences_per_date,
                                          static_cast<int>(members.size()));
    for (int m = 0; m < take_events; ++m) {
      for (auto& s : split_sentences(sets.at(static_cast<std::size_t>(members[m])).event_text)) {
        if (static_cast<int>(entry.sentences.size()) >= budget.sentences_per_date) break;
        entry.sentences.push_back(std::move(s));
      }
      if (static_cast<int>(entry.sentences.size()) >= budget.sentences_per_date) break;
    }
    if (entry.sentences.empty()) continue;
    used_dates.insert(entry.date);
    tl.entries.push_back(std::move(entry));
  }

  std::sort(tl.entries.begin(), tl.entries.end(),
            [](const TimelineEntry& a, const TimelineEntry& b) { return a.date < b.date; });
  tl.validate("assemble_timeline");
  return tl;
}

}  // namespace sunset

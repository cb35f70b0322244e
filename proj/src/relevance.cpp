#include "sunset/relevance.hpp"

#include <cmath>
#include <set>

#include "json.hpp"
#include "sunset/errors.hpp"
#include "sunset/util.hpp"

namespace sunset {

long StakeholderStats::count_in(const std::string& topic_id) const {
  auto it = counts_by_topic.find(topic_id);
  return it == counts_by_topic.end() ? 0 : it->second;
}

StatsMap compute_stats(const std::vector<SetTriplet>& sets,
                       const std::vector<Topic>& topics) {
  std::set<std::string> topic_ids;
  long corpus_articles = 0;
  for (const auto& t : topics) {
    topic_ids.insert(t.id);
    corpus_articles += static_cast<long>(t.articles.size());
  }

  StatsMap stats;
  std::map<std::string, std::set<std::string>> articles_seen;  // id -> topic\x1farticle
  for (const auto& triplet : sets) {
    if (!topic_ids.contains(triplet.topic_id)) {
      throw IntegrityError("triplet references unknown topic " + triplet.topic_id);
    }
    for (const auto& id : triplet.canonical_stakeholders) {
      auto& s = stats[id];
      s.canonical_id = id;
      s.counts_by_topic[triplet.topic_id] += 1;
      s.total_count += 1;
      articles_seen[id].insert(triplet.topic_id + "\x1f" + triplet.article_id);
    }
  }

  const int universe = static_cast<int>(topic_ids.size());
  for (auto& [id, s] : stats) {
    for (const auto& topic_id : topic_ids) s.counts_by_topic.try_emplace(topic_id, 0);
    s.article_df = static_cast<long>(articles_seen[id].size());
    s.topic_universe_size = universe;
    s.corpus_article_count = corpus_articles;
    s.cross_topic_mean = static_cast<double>(s.total_count) / universe;
    double ss = 0;
    for (const auto& [topic_id, count] : s.counts_by_topic) {
      const double d = static_cast<double>(count) - s.cross_topic_mean;
      ss += d * d;
    }
    s.cross_topic_std = universe > 1 ? std::sqrt(ss / (universe - 1)) : 0.0;
  }
  return stats;
}

double reward(long count_in_topic) {
  const double x = static_cast<double>(count_in_topic) / 10.0;
  return (std::exp(x) - std::exp(-x)) / (std::exp(x) + std::exp(-x));
}

double penalty_cv(const StakeholderStats& stats, const std::string& topic_id) {
  if (stats.topic_universe_size <= 1) {
    throw ConfigError("cv penalty needs more than one topic");
  }
  if (stats.total_count <= 0) {
    throw ValidationError("cv penalty undefined for stakeholder with zero mentions");
  }
  const double cv = stats.cross_topic_std / stats.cross_topic_mean;
  const double dispersion = cv / std::sqrt(static_cast<double>(stats.topic_universe_size));
  const double share =
      static_cast<double>(stats.count_in(topic_id)) / static_cast<double>(stats.total_count);
  return dispersion * share;
}

double penalty_idf_raw(const StakeholderStats& stats, IdfLogBase base) {
  if (stats.article_df > stats.corpus_article_count) {
    throw ValidationError("article_df exceeds corpus article count");
  }
  const double n = static_cast<double>(stats.article_df);
  const double big_n = static_cast<double>(stats.corpus_article_count);
  const double ratio = (big_n - n + 0.5) / (n + 0.5);
  return base == IdfLogBase::natural ? std::log(ratio) : std::log10(ratio);
}

double relevance(const StakeholderStats& stats, const std::string& topic_id,
                 const RelevanceParams& params) {
  if (params.beta < 0) throw ConfigError("beta must be nonnegative");
  if (params.variant != PenaltyVariant::cv) {
    throw ConfigError("relevance() computes the cv variant; use RelevanceTable for idf");
  }
  if (params.beta == 0) return 0.0;
  return params.beta * penalty_cv(stats, topic_id) * reward(stats.count_in(topic_id));
}

RelevanceTable RelevanceTable::build(const StatsMap& stats, const RelevanceParams& params) {
  if (params.beta < 0) throw ConfigError("beta must be nonnegative");
  RelevanceTable table;
  if (params.beta == 0 || stats.empty()) return table;

  std::map<std::string, double> idf_norm;
  if (params.variant == PenaltyVariant::idf) {
    double lo = 0, hi = 0;
    bool first = true;
    std::map<std::string, double> raw;
    for (const auto& [id, s] : stats) {
      const double v = penalty_idf_raw(s, params.idf_log_base);
      raw[id] = v;
      lo = first ? v : std::min(lo, v);
      hi = first ? v : std::max(hi, v);
      first = false;
    }
    for (const auto& [id, v] : raw) {
      idf_norm[id] = hi > lo ? (v - lo) / (hi - lo) : 1.0;
    }
  }

  for (const auto& [id, s] : stats) {
    for (const auto& [topic_id, count] : s.counts_by_topic) {
      if (count == 0) continue;
      const double p = params.variant == PenaltyVariant::cv ? penalty_cv(s, topic_id)
                                                            : idf_norm.at(id);
      table.by_topic_[topic_id][id] = params.beta * p * reward(count);
    }
  }
  return table;
}

double RelevanceTable::rel(const std::string& topic_id, const std::string& canonical_id) const {
  auto t = by_topic_.find(topic_id);
  if (t == by_topic_.end()) return 0.0;
  auto s = t->second.find(canonical_id);
  return s == t->second.end() ? 0.0 : s->second;
}

void save_stats(const StatsMap& stats, const std::filesystem::path& path) {
  std::vector<nlohmann::json> records;
  records.reserve(stats.size());
  for (const auto& [id, s] : stats) {
    records.push_back(nlohmann::json{{"canonical_id", id},
                                     {"counts_by_topic", s.counts_by_topic},
                                     {"total_count", s.total_count},
                                     {"article_df", s.article_df},
                                     {"cross_topic_mean", s.cross_topic_mean},
                                     {"cross_topic_std", s.cross_topic_std},
                                     {"topic_universe_size", s.topic_universe_size},
                                     {"corpus_article_count", s.corpus_article_count}});
  }
  write_jsonl(path, records);
}

}  // namespace sunset

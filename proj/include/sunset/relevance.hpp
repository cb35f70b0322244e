#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "sunset/corpus.hpp"

namespace sunset {

/// Per-canonical-stakeholder occurrence statistics across the topic universe.
struct StakeholderStats {
  std::string canonical_id;
  std::map<std::string, long> counts_by_topic;  // every topic id, zeros included
  long total_count = 0;                         // sum over counts_by_topic
  long article_df = 0;         // distinct articles mentioning the stakeholder
  double cross_topic_mean = 0;  // over all |D| topics
  double cross_topic_std = 0;   // sample std, n-1 denominator
  int topic_universe_size = 0;
  long corpus_article_count = 0;

  long count_in(const std::string& topic_id) const;
};

using StatsMap = std::map<std::string, StakeholderStats>;

enum class PenaltyVariant { cv, idf };
enum class IdfLogBase { natural, ten };

struct RelevanceParams {
  double beta = 1.0;  // >= 0
  PenaltyVariant variant = PenaltyVariant::cv;
  IdfLogBase idf_log_base = IdfLogBase::natural;
};

/// Triplet-level mention counts per topic plus article-level document
/// frequency for every canonical stakeholder appearing in `sets`. Topics
/// where a stakeholder never appears contribute zero counts to the
/// cross-topic mean and std.
StatsMap compute_stats(const std::vector<SetTriplet>& sets,
                       const std::vector<Topic>& topics);

/// Dampened hyperbolic tangent reward, tanh(x/10): strictly increasing,
/// bounded above by 1, saturating near a count of about 21.
double reward(long count_in_topic);

/// Cross-topic dispersion penalty: the coefficient of variation divided by
/// its proven maximum sqrt(|D|), times the within-topic share of mentions.
/// Always in [0, 1]; exactly 1 when one topic holds all mass.
double penalty_cv(const StakeholderStats& stats, const std::string& topic_id);

/// BM25-style raw inverse document frequency with 0.5 smoothing. Min-max
/// normalized across the run before use inside the relevance score.
double penalty_idf_raw(const StakeholderStats& stats, IdfLogBase base);

/// beta * P * R with the cv penalty (the primary variant).
double relevance(const StakeholderStats& stats, const std::string& topic_id,
                 const RelevanceParams& params);

/// Precomputed Rel(stakeholder, topic) for one run. Handles the per-run
/// min-max normalization the idf variant needs. Unknown ids score 0.
class RelevanceTable {
 public:
  RelevanceTable() = default;
  static RelevanceTable build(const StatsMap& stats, const RelevanceParams& params);

  double rel(const std::string& topic_id, const std::string& canonical_id) const;

 private:
  std::map<std::string, std::map<std::string, double>> by_topic_;
};

void save_stats(const StatsMap& stats, const std::filesystem::path& path);

}  // namespace sunset

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "sunset/corpus.hpp"

namespace sunset {

/// Lowercased, punctuation-stripped, whitespace-split word tokens.
std::vector<std::string> tokenize(const std::string& text);

struct NgramCounts {
  int order = 1;  // 1 or 2
  std::map<std::vector<std::string>, long> counts;
  long total = 0;  // sum over counts
};

/// N-grams taken within each sentence, summed over the list.
NgramCounts ngram_counts(const std::vector<std::string>& sentences, int order);

/// Clipped-overlap F1 between two n-gram bags; 0 when either side is empty.
double rouge_f1(const NgramCounts& hyp, const NgramCounts& ref);

/// Exact-date pairing of timeline entries: (hyp entry index, ref entry index).
std::vector<std::pair<std::size_t, std::size_t>> align_by_date(const Timeline& hyp,
                                                               const Timeline& ref);

/// Micro-averaged alignment ROUGE: overlap accumulates over date-aligned
/// entries while every entry on either side contributes its n-gram mass to
/// the respective denominator.
double alignment_rouge(const Timeline& hyp, const Timeline& ref, int order);

/// F1 over the date sets of the two timelines.
double date_f1(const Timeline& hyp, const Timeline& ref);

struct TruthScores {
  double ar1 = 0;
  double ar2 = 0;
  double date_f1 = 0;
};

struct EvalReport {
  double ar1 = 0;  // arithmetic mean across ground truths
  double ar2 = 0;
  double date_f1 = 0;
  std::vector<TruthScores> per_truth;
};

EvalReport evaluate_timeline(const Timeline& hyp, const std::vector<Timeline>& ground_truths);

void save_report(const EvalReport& report, const std::filesystem::path& path);

}  // namespace sunset

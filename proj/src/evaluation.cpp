#include "sunset/evaluation.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "json.hpp"
#include "sunset/errors.hpp"
#include "sunset/util.hpp"

namespace sunset {

using nlohmann::json;

std::vector<std::string> tokenize(const std::string& text) {
  std::vector<std::string> tokens;
  std::string current;
  for (char raw : text) {
    const auto c = static_cast<unsigned char>(raw);
    if (std::isalnum(c)) {
      current.push_back(static_cast<char>(std::tolower(c)));
    } else if (!current.empty()) {
      tokens.push_back(std::move(current));
      current.clear();
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return tokens;
}

NgramCounts ngram_counts(const std::vector<std::string>& sentences, int order) {
  if (order != 1 && order != 2) throw ConfigError("n-gram order must be 1 or 2");
  NgramCounts out;
  out.order = order;
  for (const auto& sentence : sentences) {
    const auto tokens = tokenize(sentence);
    if (static_cast<int>(tokens.size()) < order) continue;
    for (std::size_t i = 0; i + static_cast<std::size_t>(order) <= tokens.size(); ++i) {
      std::vector<std::string> gram(tokens.begin() + static_cast<std::ptrdiff_t>(i),
                                    tokens.begin() + static_cast<std::ptrdiff_t>(i) + order);
      out.counts[std::move(gram)] += 1;
      out.total += 1;
    }
  }
  return out;
}

namespace {

long clipped_overlap(const NgramCounts& hyp, const NgramCounts& ref) {
  long overlap = 0;
  for (const auto& [gram, count] : hyp.counts) {
    auto it = ref.counts.find(gram);
    if (it != ref.counts.end()) overlap += std::min(count, it->second);
  }
  return overlap;
}

double f1(double precision, double recall) {
  if (precision + recall <= 0) return 0.0;
  return 2.0 * precision * recall / (precision + recall);
}

}  // namespace

double rouge_f1(const NgramCounts& hyp, const NgramCounts& ref) {
  if (hyp.order != ref.order) throw ConfigError("mismatched n-gram orders");
  if (hyp.total == 0 || ref.total == 0) return 0.0;
  const long overlap = clipped_overlap(hyp, ref);
  const double precision = static_cast<double>(overlap) / static_cast<double>(hyp.total);
  const double recall = static_cast<double>(overlap) / static_cast<double>(ref.total);
  return f1(precision, recall);
}

std::vector<std::pair<std::size_t, std::size_t>> align_by_date(const Timeline& hyp,
                                                               const Timeline& ref) {
  std::map<Date, std::size_t> ref_by_date;
  for (std::size_t j = 0; j < ref.entries.size(); ++j) ref_by_date[ref.entries[j].date] = j;
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < hyp.entries.size(); ++i) {
    auto it = ref_by_date.find(hyp.entries[i].date);
    if (it != ref_by_date.end()) pairs.emplace_back(i, it->second);
  }
  return pairs;
}

double alignment_rouge(const Timeline& hyp, const Timeline& ref, int order) {
  long overlap = 0;
  long hyp_total = 0;
  long ref_total = 0;
  std::vector<NgramCounts> hyp_counts, ref_counts;
  hyp_counts.reserve(hyp.entries.size());
  ref_counts.reserve(ref.entries.size());
  for (const auto& e : hyp.entries) {
    hyp_counts.push_back(ngram_counts(e.sentences, order));
    hyp_total += hyp_counts.back().total;
  }
  for (const auto& e : ref.entries) {
    ref_counts.push_back(ngram_counts(e.sentences, order));
    ref_total += ref_counts.back().total;
  }
  for (const auto& [i, j] : align_by_date(hyp, ref)) {
    overlap += clipped_overlap(hyp_counts[i], ref_counts[j]);
  }
  if (hyp_total == 0 || ref_total == 0) return 0.0;
  const double precision = static_cast<double>(overlap) / static_cast<double>(hyp_total);
  const double recall = static_cast<double>(overlap) / static_cast<double>(ref_total);
  return f1(precision, recall);
}

double date_f1(const Timeline& hyp, const Timeline& ref) {
  std::set<Date> hyp_dates, ref_dates;
  for (const auto& e : hyp.entries) hyp_dates.insert(e.date);
  for (const auto& e : ref.entries) ref_dates.insert(e.date);
  if (hyp_dates.empty() || ref_dates.empty()) return 0.0;
  long common = 0;
  for (const auto& d : hyp_dates) common += ref_dates.contains(d) ? 1 : 0;
  const double precision = static_cast<double>(common) / static_cast<double>(hyp_dates.size());
  const double recall = static_cast<double>(common) / static_cast<double>(ref_dates.size());
  return f1(precision, recall);
}

EvalReport evaluate_timeline(const Timeline& hyp, const std::vector<Timeline>& ground_truths) {
  if (ground_truths.empty()) throw ValidationError("no ground-truth timelines to score");
  EvalReport report;
  for (const auto& truth : ground_truths) {
    TruthScores s;
    s.ar1 = alignment_rouge(hyp, truth, 1);
    s.ar2 = alignment_rouge(hyp, truth, 2);
    s.date_f1 = date_f1(hyp, truth);
    report.ar1 += s.ar1;
    report.ar2 += s.ar2;
    report.date_f1 += s.date_f1;
    report.per_truth.push_back(s);
  }
  const auto n = static_cast<double>(ground_truths.size());
  report.ar1 /= n;
  report.ar2 /= n;
  report.date_f1 /= n;
  return report;
}

void save_report(const EvalReport& report, const std::filesystem::path& path) {
  json per_truth = json::array();
  for (const auto& s : report.per_truth) {
    per_truth.push_back(json{{"ar1", s.ar1}, {"ar2", s.ar2}, {"date_f1", s.date_f1}});
  }
  json doc{{"ar1", report.ar1},
           {"ar2", report.ar2},
           {"date_f1", report.date_f1},
           {"per_truth", per_truth}};
  write_file(path, doc.dump(2) + "\n");
}

}  // namespace sunset

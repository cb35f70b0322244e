#pragma once

#include <atomic>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "sunset/corpus.hpp"
#include "sunset/relevance.hpp"

namespace sunset::testing {

// Unique scratch directory, removed on destruction.
class TempDir {
 public:
  TempDir() {
    static std::atomic<unsigned> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("sunset_test_" + std::to_string(::getpid()) + "_" +
             std::to_string(counter.fetch_add(1)));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }
  std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

 private:
  std::filesystem::path path_;
};

inline SetTriplet make_triplet(const std::string& topic, const std::string& article,
                               const std::string& text, const Date& date,
                               std::vector<std::string> canon) {
  SetTriplet t;
  t.topic_id = topic;
  t.article_id = article;
  t.event_text = text;
  t.event_date = date;
  t.stakeholders = canon;
  t.canonical_stakeholders = std::move(canon);
  return t;
}

inline StakeholderStats make_stats(const std::string& id,
                                   const std::map<std::string, long>& counts,
                                   long article_df = 1, long corpus_articles = 100) {
  StakeholderStats s;
  s.canonical_id = id;
  s.counts_by_topic = counts;
  s.topic_universe_size = static_cast<int>(counts.size());
  for (const auto& [_, c] : counts) s.total_count += c;
  s.cross_topic_mean =
      static_cast<double>(s.total_count) / static_cast<double>(counts.size());
  double ss = 0;
  for (const auto& [_, c] : counts) {
    const double d = static_cast<double>(c) - s.cross_topic_mean;
    ss += d * d;
  }
  s.cross_topic_std = counts.size() > 1
                          ? std::sqrt(ss / static_cast<double>(counts.size() - 1))
                          : 0.0;
  s.article_df = article_df;
  s.corpus_article_count = corpus_articles;
  return s;
}

}  // namespace sunset::testing

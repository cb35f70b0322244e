#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "sunset/date.hpp"

namespace sunset {

struct Article {
  std::string id;        // unique within its topic
  std::string topic_id;
  Date published_date;
  std::string text;      // nonempty UTF-8 body
};

struct TimelineEntry {
  Date date;
  std::vector<std::string> sentences;
};

/// Budgeted date -> sentences mapping. Entries are kept strictly increasing
/// by date; entry count and per-entry sentence count respect the budget.
struct Timeline {
  std::vector<TimelineEntry> entries;
  int date_count = 0;          // budget L
  int sentences_per_date = 0;  // budget k

  void validate(const std::string& context) const;
};

struct Topic {
  std::string id;
  std::vector<Article> articles;         // order preserved as read
  std::vector<Timeline> ground_truths;
};

/// One extracted (stakeholder set, event text, estimated date) record.
struct SetTriplet {
  std::string article_id;
  std::string topic_id;
  std::string event_text;  // one or more sentences
  Date event_date;
  std::vector<std::string> stakeholders;            // <=5 raw surface strings
  std::vector<std::string> canonical_stakeholders;  // filled by coref, deduped

  bool operator==(const SetTriplet&) const = default;
};

inline constexpr int kMaxStakeholders = 5;

void validate_triplet(const SetTriplet& t, const std::string& context);

/// Loads a topic directory (articles.jsonl plus groundtruth.<k>.jsonl files).
Topic load_topic(const std::filesystem::path& dir);

/// Loads every topic directory under `root`, sorted by topic id.
std::vector<Topic> load_corpus(const std::filesystem::path& root);

void save_sets(const std::vector<SetTriplet>& sets, const std::filesystem::path& path);
std::vector<SetTriplet> load_sets(const std::filesystem::path& path);

/// Checks that every triplet references a known topic and article.
void check_referential_integrity(const std::vector<SetTriplet>& sets,
                                 const std::vector<Topic>& topics);

Timeline load_timeline(const std::filesystem::path& path);
void save_timeline(const Timeline& tl, const std::filesystem::path& path);

}  // namespace sunset

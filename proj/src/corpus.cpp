#include "sunset/corpus.hpp"

#include <algorithm>
#include <set>
#include <unordered_set>

#include "json.hpp"
#include "sunset/errors.hpp"
#include "sunset/util.hpp"

namespace sunset {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string require_string(const json& rec, const char* field,
                           const std::string& context) {
  if (!rec.contains(field)) {
    throw ValidationError(context + ": missing field \"" + field + "\"");
  }
  if (!rec[field].is_string()) {
    throw ValidationError(context + ": field \"" + field + "\" must be a string");
  }
  return rec[field].get<std::string>();
}

TimelineEntry parse_timeline_entry(const json& rec, const std::string& context) {
  TimelineEntry e;
  e.date = Date::parse_or_throw(require_string(rec, "date", context), context);
  if (!rec.contains("sentences") || !rec["sentences"].is_array()) {
    throw ValidationError(context + ": missing \"sentences\" array");
  }
  for (const auto& s : rec["sentences"]) {
    if (!s.is_string()) {
      throw ValidationError(context + ": sentences must be strings");
    }
    e.sentences.push_back(s.get<std::string>());
  }
  return e;
}

}  // namespace

void Timeline::validate(const std::string& context) const {
  if (date_count <= 0 || sentences_per_date <= 0) {
    throw ValidationError(context + ": timeline budget must be positive");
  }
  if (static_cast<int>(entries.size()) > date_count) {
    throw ValidationError(context + ": entry count exceeds date budget");
  }
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const auto& e = entries[i];
    if (e.sentences.empty()) {
      throw ValidationError(context + ": empty sentence list at " + e.date.str());
    }
    if (static_cast<int>(e.sentences.size()) > sentences_per_date) {
      throw ValidationError(context + ": sentence budget exceeded at " + e.date.str());
    }
    if (i > 0 && !(entries[i - 1].date < e.date)) {
      throw ValidationError(context + ": dates not strictly increasing at " + e.date.str());
    }
  }
}

void validate_triplet(const SetTriplet& t, const std::string& context) {
  if (t.article_id.empty() || t.topic_id.empty()) {
    throw ValidationError(context + ": triplet missing article/topic reference");
  }
  if (t.event_text.empty()) {
    throw ValidationError(context + ": empty event_text");
  }
  if (t.stakeholders.size() > kMaxStakeholders) {
    throw ValidationError(context + ": more than 5 stakeholders");
  }
  // Coref dedupes canonical ids, so the canonical list may be shorter than
  // the surface list but never longer.
  if (t.canonical_stakeholders.size() > t.stakeholders.size()) {
    throw ValidationError(context + ": canonical list longer than surface list");
  }
}

Topic load_topic(const fs::path& dir) {
  Topic topic;
  topic.id = dir.filename().string();
  const fs::path articles_path = dir / "articles.jsonl";
  if (!fs::exists(articles_path)) {
    throw Error("no articles.jsonl in " + dir.string());
  }

  std::unordered_set<std::string> seen_ids;
  auto records = read_jsonl(articles_path, /*require_header=*/false);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const std::string context = articles_path.string() + " record " + std::to_string(i + 1);
    const auto& rec = records[i];
    Article a;
    a.id = require_string(rec, "id", context);
    a.topic_id = require_string(rec, "topic_id", context);
    a.published_date =
        Date::parse_or_throw(require_string(rec, "published_date", context), context);
    a.text = require_string(rec, "text", context);
    if (a.id.empty()) throw ValidationError(context + ": empty article id");
    if (a.text.empty()) throw ValidationError(context + ": empty article text");
    if (!seen_ids.insert(a.id).second) {
      throw ValidationError(context + ": duplicate article id \"" + a.id + "\"");
    }
    topic.articles.push_back(std::move(a));
  }

  std::vector<fs::path> gt_paths;
  for (const auto& entry : fs::directory_iterator(dir)) {
    const std::string name = entry.path().filename().string();
    if (name.starts_with("groundtruth.") && name.ends_with(".jsonl")) {
      gt_paths.push_back(entry.path());
    }
  }
  std::sort(gt_paths.begin(), gt_paths.end());
  for (const auto& p : gt_paths) {
    topic.ground_truths.push_back(load_timeline(p));
  }
  return topic;
}

std::vector<Topic> load_corpus(const fs::path& root) {
  if (!fs::exists(root)) throw Error("corpus root does not exist: " + root.string());
  std::vector<fs::path> dirs;
  for (const auto& entry : fs::directory_iterator(root)) {
    if (entry.is_directory() && fs::exists(entry.path() / "articles.jsonl")) {
      dirs.push_back(entry.path());
    }
  }
  std::sort(dirs.begin(), dirs.end());
  if (dirs.empty()) throw Error("no topic directories under " + root.string());
  std::vector<Topic> topics;
  topics.reserve(dirs.size());
  for (const auto& d : dirs) topics.push_back(load_topic(d));
  return topics;
}

void save_sets(const std::vector<SetTriplet>& sets, const fs::path& path) {
  std::vector<json> records;
  records.reserve(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    validate_triplet(sets[i], path.string() + " record " + std::to_string(i + 1));
    const auto& t = sets[i];
    records.push_back(json{{"article_id", t.article_id},
                           {"topic_id", t.topic_id},
                           {"event_text", t.event_text},
                           {"event_date", t.event_date.str()},
                           {"stakeholders", t.stakeholders},
                           {"canonical_stakeholders", t.canonical_stakeholders}});
  }
  write_jsonl(path, records);
}

std::vector<SetTriplet> load_sets(const fs::path& path) {
  auto records = read_jsonl(path, /*require_header=*/true);
  std::vector<SetTriplet> sets;
  sets.reserve(records.size());
  for (std::size_t i = 0; i < records.size(); ++i) {
    const std::string context = path.string() + " record " + std::to_string(i + 1);
    const auto& rec = records[i];
    SetTriplet t;
    t.article_id = require_string(rec, "article_id", context);
    t.topic_id = require_string(rec, "topic_id", context);
    t.event_text = require_string(rec, "event_text", context);
    t.event_date = Date::parse_or_throw(require_string(rec, "event_date", context), context);
    if (rec.contains("stakeholders")) {
      t.stakeholders = rec["stakeholders"].get<std::vector<std::string>>();
    }
    if (rec.contains("canonical_stakeholders")) {
      t.canonical_stakeholders =
          rec["canonical_stakeholders"].get<std::vector<std::string>>();
    }
    validate_triplet(t, context);
    sets.push_back(std::move(t));
  }
  return sets;
}

void check_referential_integrity(const std::vector<SetTriplet>& sets,
                                 const std::vector<Topic>& topics) {
  std::unordered_set<std::string> keys;
  for (const auto& topic : topics) {
    for (const auto& a : topic.articles) keys.insert(topic.id + "\x1f" + a.id);
  }
  for (const auto& t : sets) {
    if (!keys.contains(t.topic_id + "\x1f" + t.article_id)) {
      throw IntegrityError("triplet references unknown article " + t.article_id +
                           " in topic " + t.topic_id);
    }
  }
}

Timeline load_timeline(const fs::path& path) {
  auto records = read_jsonl(path, /*require_header=*/false);
  Timeline tl;
  for (std::size_t i = 0; i < records.size(); ++i) {
    tl.entries.push_back(parse_timeline_entry(
        records[i], path.string() + " record " + std::to_string(i + 1)));
  }
  std::sort(tl.entries.begin(), tl.entries.end(),
            [](const TimelineEntry& a, const TimelineEntry& b) { return a.date < b.date; });
  tl.date_count = static_cast<int>(tl.entries.size());
  tl.sentences_per_date = 1;
  for (const auto& e : tl.entries) {
    tl.sentences_per_date =
        std::max(tl.sentences_per_date, static_cast<int>(e.sentences.size()));
  }
  if (tl.date_count == 0) {
    throw ValidationError(path.string() + ": empty timeline");
  }
  tl.validate(path.string());
  return tl;
}

void save_timeline(const Timeline& tl, const fs::path& path) {
  // Same record schema as ground-truth files so evaluate can consume either;
  // no header line here.
  std::string buf;
  for (const auto& e : tl.entries) {
    json rec{{"date", e.date.str()}, {"sentences", e.sentences}};
    buf += rec.dump();
    buf += '\n';
  }
  write_file(path, buf);
}

}  // namespace sunset

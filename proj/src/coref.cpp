#include "sunset/coref.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <iostream>
#include <unordered_set>

#include "json.hpp"
#include "sunset/errors.hpp"
#include "sunset/util.hpp"

namespace sunset {

namespace fs = std::filesystem;
using nlohmann::json;

const char* to_string(ResolvedVia via) {
  switch (via) {
    case ResolvedVia::label: return "label";
    case ResolvedVia::alt_label: return "alt_label";
    case ResolvedVia::title_stripped: return "title_stripped";
    case ResolvedVia::whitespace_variant: return "whitespace_variant";
    case ResolvedVia::interface_search: return "interface_search";
    case ResolvedVia::position_held_by: return "position_held_by";
    case ResolvedVia::unresolved: return "unresolved";
  }
  return "unresolved";
}

std::optional<ResolvedVia> resolved_via_from_string(const std::string& s) {
  static const std::array<ResolvedVia, 7> all = {
      ResolvedVia::label,          ResolvedVia::alt_label,
      ResolvedVia::title_stripped, ResolvedVia::whitespace_variant,
      ResolvedVia::interface_search, ResolvedVia::position_held_by,
      ResolvedVia::unresolved};
  for (auto via : all) {
    if (s == to_string(via)) return via;
  }
  return std::nullopt;
}

namespace {

std::optional<json> read_fixture(const fs::path& dir, const std::string& query) {
  const fs::path path = dir / (sha256_hex(query) + ".json");
  if (!fs::exists(path)) return std::nullopt;
  return json::parse(read_file(path));
}

std::optional<SearchHit> hit_from_json(const std::optional<json>& doc) {
  if (!doc || !doc->contains("id")) return std::nullopt;
  SearchHit hit;
  hit.id = (*doc)["id"].get<std::string>();
  hit.label = doc->value("label", hit.id);
  hit.matched_alias = doc->value("match", "label") == std::string("alias");
  return hit;
}

}  // namespace

std::optional<SearchHit> FixtureWikidataClient::label_search(const std::string& term) {
  return hit_from_json(read_fixture(dir_, "label:" + term));
}

std::optional<SearchHit> FixtureWikidataClient::interface_search(const std::string& term) {
  return hit_from_json(read_fixture(dir_, "interface:" + term));
}

std::optional<std::string> FixtureWikidataClient::officeholder(const std::string& entity_id) {
  auto doc = read_fixture(dir_, "officeholder:" + entity_id);
  if (!doc || !doc->contains("id")) return std::nullopt;
  return (*doc)["id"].get<std::string>();
}

CorefCache CorefCache::load(const fs::path& path) {
  CorefCache cache;
  if (!fs::exists(path)) return cache;
  auto records = read_jsonl(path, /*require_header=*/true);
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    const std::string context = path.string() + " record " + std::to_string(i + 1);
    CanonicalEntity e;
    e.canonical_id = rec.at("canonical_id").get<std::string>();
    e.display = rec.value("display", e.canonical_id);
    auto via = resolved_via_from_string(rec.value("resolved_via", "unresolved"));
    if (!via) throw ValidationError(context + ": unknown resolved_via");
    e.via = *via;
    cache.entries_[rec.at("surface").get<std::string>()] = std::move(e);
  }
  return cache;
}

void CorefCache::save(const fs::path& path) const {
  std::vector<json> records;
  records.reserve(entries_.size());
  for (const auto& [surface, e] : entries_) {
    records.push_back(json{{"surface", surface},
                           {"canonical_id", e.canonical_id},
                           {"display", e.display},
                           {"resolved_via", to_string(e.via)}});
  }
  write_jsonl(path, records);
}

std::optional<CanonicalEntity> CorefCache::get(const std::string& surface) const {
  auto it = entries_.find(surface);
  if (it == entries_.end()) return std::nullopt;
  return it->second;
}

void CorefCache::put(const std::string& surface, const CanonicalEntity& entity) {
  entries_.emplace(surface, entity);  // append-only: first write wins
}

std::string strip_title(const std::string& surface) {
  // Longest first so "Prime Minister" wins over "Minister".
  static const std::array<const char*, 11> kTitles = {
      "Prime Minister", "President", "Secretary", "Senator", "General",
      "Minister",       "CEO",       "Mrs",       "Mr",      "Ms",
      "Dr"};
  const std::string lower = to_lower(surface);
  for (const char* title : kTitles) {
    const std::string t = to_lower(title);
    if (lower.size() <= t.size() || lower.compare(0, t.size(), t) != 0) continue;
    std::size_t rest = t.size();
    if (rest < surface.size() && surface[rest] == '.') ++rest;
    if (rest >= surface.size() || !std::isspace(static_cast<unsigned char>(surface[rest]))) {
      continue;  // title must be a whole leading token
    }
    while (rest < surface.size() && std::isspace(static_cast<unsigned char>(surface[rest]))) {
      ++rest;
    }
    if (rest == surface.size()) continue;  // nothing left after the title
    return surface.substr(rest);
  }
  return surface;
}

namespace {

std::string whitespace_variant(const std::string& surface) {
  std::string out;
  bool in_space = false;
  for (char c : surface) {
    if (std::isspace(static_cast<unsigned char>(c))) {
      in_space = true;
      continue;
    }
    if (in_space && !out.empty()) out += "&&";
    in_space = false;
    out.push_back(c);
  }
  return out;
}

template <typename Fn>
auto with_retries(Fn&& fn, int retries) {
  for (int attempt = 0;; ++attempt) {
    try {
      return fn();
    } catch (const ServiceError&) {
      if (attempt >= retries) throw;
    }
  }
}

}  // namespace

CanonicalEntity resolve_stakeholder(const std::string& surface, CorefCache& cache,
                                    WikidataClient& client, int retries) {
  if (surface.empty()) throw ValidationError("empty stakeholder surface string");
  if (auto cached = cache.get(surface)) return *cached;

  try {
    std::optional<SearchHit> hit;
    ResolvedVia via = ResolvedVia::unresolved;

    hit = with_retries([&] { return client.label_search(surface); }, retries);
    if (hit) {
      via = hit->matched_alias ? ResolvedVia::alt_label : ResolvedVia::label;
    }
    if (!hit) {
      const std::string stripped = strip_title(surface);
      if (stripped != surface) {
        hit = with_retries([&] { return client.label_search(stripped); }, retries);
        if (hit) via = ResolvedVia::title_stripped;
      }
    }
    if (!hit) {
      const std::string variant = whitespace_variant(surface);
      if (variant != surface) {
        hit = with_retries([&] { return client.label_search(variant); }, retries);
        if (hit) via = ResolvedVia::whitespace_variant;
      }
    }
    if (!hit) {
      hit = with_retries([&] { return client.interface_search(surface); }, retries);
      if (hit) via = ResolvedVia::interface_search;
    }

    CanonicalEntity entity;
    if (!hit) {
      entity = CanonicalEntity{surface, surface, ResolvedVia::unresolved};
    } else {
      auto holder = with_retries([&] { return client.officeholder(hit->id); }, retries);
      if (holder) {
        entity = CanonicalEntity{*holder, hit->label, ResolvedVia::position_held_by};
      } else {
        entity = CanonicalEntity{hit->id, hit->label, via};
      }
    }
    cache.put(surface, entity);
    return entity;
  } catch (const ServiceError& e) {
    // Not cached: a later run with a healthy service should retry this one.
    std::cerr << "[coref] transport failure for \"" << surface << "\": " << e.what() << "\n";
    return CanonicalEntity{surface, surface, ResolvedVia::unresolved};
  }
}

std::vector<SetTriplet> apply_coref(std::vector<SetTriplet> sets, CorefCache& cache,
                                    WikidataClient& client, int retries) {
  for (auto& t : sets) {
    t.canonical_stakeholders.clear();
    std::unordered_set<std::string> seen;
    for (const auto& surface : t.stakeholders) {
      const auto entity = resolve_stakeholder(surface, cache, client, retries);
      if (seen.insert(entity.canonical_id).second) {
        t.canonical_stakeholders.push_back(entity.canonical_id);
      }
    }
  }
  return sets;
}

}  // namespace sunset

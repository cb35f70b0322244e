#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sunset/corpus.hpp"

namespace sunset {

enum class ResolvedVia {
  label,
  alt_label,
  title_stripped,
  whitespace_variant,
  interface_search,
  position_held_by,
  unresolved,
};

const char* to_string(ResolvedVia via);
std::optional<ResolvedVia> resolved_via_from_string(const std::string& s);

struct CanonicalEntity {
  std::string canonical_id;  // QID, or the surface string when unresolved
  std::string display;
  ResolvedVia via = ResolvedVia::unresolved;

  bool operator==(const CanonicalEntity&) const = default;
};

struct SearchHit {
  std::string id;     // entity id (QID)
  std::string label;  // display label
  bool matched_alias = false;
};

class WikidataClient {
 public:
  virtual ~WikidataClient() = default;
  /// Label/alt-label search; nullopt when nothing matches.
  virtual std::optional<SearchHit> label_search(const std::string& term) = 0;
  /// Full-text interface search, the last lookup in the fallback chain.
  virtual std::optional<SearchHit> interface_search(const std::string& term) = 0;
  /// Id under the entity's "Position Held By"-style officeholder claim.
  virtual std::optional<std::string> officeholder(const std::string& entity_id) = 0;
};

/// Replays recorded lookups from <dir>/<sha256(query)>.json where query is
/// "label:<term>", "interface:<term>" or "officeholder:<id>". A missing file
/// is a miss, not an error (misses are simply never recorded).
class FixtureWikidataClient : public WikidataClient {
 public:
  explicit FixtureWikidataClient(std::filesystem::path dir) : dir_(std::move(dir)) {}
  std::optional<SearchHit> label_search(const std::string& term) override;
  std::optional<SearchHit> interface_search(const std::string& term) override;
  std::optional<std::string> officeholder(const std::string& entity_id) override;

 private:
  std::filesystem::path dir_;
};

/// Surface string -> CanonicalEntity map persisted as append-only JSONL,
/// keyed by the exact (case-sensitive) surface string.
class CorefCache {
 public:
  CorefCache() = default;

  static CorefCache load(const std::filesystem::path& path);
  void save(const std::filesystem::path& path) const;

  std::optional<CanonicalEntity> get(const std::string& surface) const;
  void put(const std::string& surface, const CanonicalEntity& entity);
  std::size_t size() const { return entries_.size(); }

 private:
  std::map<std::string, CanonicalEntity> entries_;
};

/// Removes one leading honorific/role token (default list) from a surface
/// string; tolerates a trailing period on the title. No-op when no match.
std::string strip_title(const std::string& surface);

/// Fallback chain: cache -> label/alt-label search on the surface -> on the
/// title-stripped variant -> on the whitespace-to-"&&" variant -> interface
/// search -> unresolved self-mapping. A found entity with an officeholder
/// claim redirects to the id under that claim. Transport failures retry;
/// after `retries` extra attempts the surface resolves as unresolved without
/// being cached, so a later run can retry it.
CanonicalEntity resolve_stakeholder(const std::string& surface, CorefCache& cache,
                                    WikidataClient& client, int retries = 2);

/// Fills canonical_stakeholders positionally, then dedupes canonical ids
/// within each triplet keeping the first occurrence.
std::vector<SetTriplet> apply_coref(std::vector<SetTriplet> sets, CorefCache& cache,
                                    WikidataClient& client, int retries = 2);

}  // namespace sunset

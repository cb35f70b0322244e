#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "sunset/corpus.hpp"

namespace sunset {

struct LlmRequest {
  std::string prompt;  // nonempty, sent as a single user message
  double temperature = 0.0;
  int max_output_tokens = 2048;
  std::string model_name;
};

class LlmClient {
 public:
  virtual ~LlmClient() = default;
  virtual std::string complete(const LlmRequest& request) = 0;
};

/// Replays recorded responses from <dir>/<sha256(prompt)>.txt.
/// A missing fixture is a hard error: replay must be exact or fail loudly.
class FixtureLlmClient : public LlmClient {
 public:
  explicit FixtureLlmClient(std::filesystem::path dir) : dir_(std::move(dir)) {}
  std::string complete(const LlmRequest& request) override;

 private:
  std::filesystem::path dir_;
};

struct ExtractionConfig {
  int max_stakeholders_per_event = kMaxStakeholders;
  int retries = 2;
  bool fixture_mode = true;
  std::string endpoint;
  std::string model_name;
  double temperature = 0.0;
  int max_output_tokens = 2048;
};

/// Event/time prompt with the article rendered into its substitution slot.
std::string build_event_prompt(const Article& article);

/// Stakeholder prompt for one extracted event of the article.
std::string build_stakeholder_prompt(const Article& article, const std::string& event_text);

/// Pulls the outermost date -> summary mapping out of arbitrary model output.
/// Keys run through normalize_date(fallback); empty summaries are dropped;
/// document order is preserved. Throws ExtractionError when no mapping can
/// be recovered after the repair passes.
std::vector<std::pair<Date, std::string>> parse_event_response(const std::string& raw,
                                                               const Date& fallback);

/// Pulls the first list of strings out of arbitrary model output, trimmed,
/// case-insensitively deduplicated (first casing wins) and truncated to 5.
std::vector<std::string> parse_stakeholder_response(const std::string& raw);

/// One event call per article, then one stakeholder call per extracted event.
/// Articles whose calls fail are skipped with a stderr diagnostic. Output is
/// sorted by (article order, event_date).
std::vector<SetTriplet> extract_sets(const Topic& topic, LlmClient& client,
                                     const ExtractionConfig& cfg);

/// Repair pipeline shared by the parsers: strips code fences, extracts the
/// first balanced {...} or [...], tolerates single quotes and trailing
/// commas. Returns a JSON string or empty when nothing recoverable exists.
std::string repair_to_json(const std::string& raw, char open, char close);

}  // namespace sunset

#include "sunset/extraction.hpp"

#include <algorithm>
#include <cctype>
#include <iostream>

#include "json.hpp"
#include "sunset/errors.hpp"
#include "sunset/util.hpp"

namespace sunset {

namespace {

constexpr const char* kEventPromptHead =
    "You are a professional journalist that is tasked to generate date-based\n"
    "event summary of a given article. A single list contains an article and\n"
    "its published time. You should generate a dictionary of the most\n"
    "relevant events of an article, where each key in the dictionary is a\n"
    "string of the expected event start date in terms of Year-Month-Day\n"
    "(e.g.2011-12-25) and the value will be a summary of the relevant events\n"
    "on that day. Summarize only the most important events found in the\n"
    "article, as succinctly as possible. If you are uncertain of the date of\n"
    "an event, feel free to use the published date. You should only output\n"
    "the dictionary in your answer. Generate a dictionary of events of the\n"
    "following article: ";

constexpr const char* kStakeholderPromptHead =
    "You are a professional journalist that is tasked to generate the most\n"
    "relevant stakeholders relevant to a given event summary of an article.\n"
    "A single list contains an article and its published time. You should\n"
    "generate a singular list containing not more than five relevant\n"
    "stakeholders related to only the stipulated event mentioned. These\n"
    "stakeholders should not be general, and must be identifiable named\n"
    "entities that can be matched to a person, organization or role when read\n"
    "on its own. Every single stakeholder generated should also ideally exist\n"
    "in exact wording as mentioned within the original article. You should\n"
    "only output the list of stakeholders in your answer, and all\n"
    "stakeholders should be enclosed in string format. Generate a list of\n"
    "related stakeholders of event: ";

// Rendering of the "[article, published time]" list the prompts refer to.
std::string render_article(const Article& article) {
  return "['" + article.text + "', '" + article.published_date.str() + "']";
}

// Scans one quoted string starting at s[i] (a quote char); returns the index
// just past the closing quote, or npos when unterminated.
std::size_t skip_quoted(const std::string& s, std::size_t i) {
  const char quote = s[i];
  for (++i; i < s.size(); ++i) {
    if (s[i] == '\\') {
      ++i;
    } else if (s[i] == quote) {
      return i + 1;
    }
  }
  return std::string::npos;
}

// Extracts the first balanced open...close region, quote-aware.
std::string first_balanced(const std::string& s, char open, char close) {
  std::size_t start = std::string::npos;
  int depth = 0;
  for (std::size_t i = 0; i < s.size();) {
    const char c = s[i];
    if (c == '"' || c == '\'') {
      if (depth == 0) {
        ++i;  // quotes before the structure opens are plain prose
        continue;
      }
      std::size_t next = skip_quoted(s, i);
      if (next == std::string::npos) return {};
      i = next;
      continue;
    }
    if (c == open) {
      if (depth == 0) start = i;
      ++depth;
    } else if (c == close && depth > 0) {
      --depth;
      if (depth == 0) return s.substr(start, i - start + 1);
    }
    ++i;
  }
  return {};
}

// Rewrites single-quoted strings to double-quoted and drops trailing commas.
std::string normalize_quotes(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  for (std::size_t i = 0; i < s.size();) {
    const char c = s[i];
    if (c == '"') {
      std::size_t next = skip_quoted(s, i);
      if (next == std::string::npos) return {};
      out.append(s, i, next - i);
      i = next;
    } else if (c == '\'') {
      std::size_t next = skip_quoted(s, i);
      if (next == std::string::npos) return {};
      out.push_back('"');
      for (std::size_t j = i + 1; j + 1 < next; ++j) {
        if (s[j] == '\\' && j + 2 < next && s[j + 1] == '\'') {
          out.push_back('\'');
          ++j;
        } else if (s[j] == '"') {
          out += "\\\"";
        } else {
          out.push_back(s[j]);
        }
      }
      out.push_back('"');
      i = next;
    } else if (c == ',') {
      std::size_t j = i + 1;
      while (j < s.size() && std::isspace(static_cast<unsigned char>(s[j]))) ++j;
      if (j < s.size() && (s[j] == '}' || s[j] == ']')) {
        i = j;  // trailing comma
      } else {
        out.push_back(c);
        ++i;
      }
    } else {
      out.push_back(c);
      ++i;
    }
  }
  return out;
}

std::string strip_code_fences(const std::string& raw) {
  std::string out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size();) {
    if (raw.compare(i, 3, "```") == 0) {
      i += 3;
      // drop an optional language tag up to end of line
      while (i < raw.size() && raw[i] != '\n' && !std::isspace(static_cast<unsigned char>(raw[i]))) ++i;
    } else {
      out.push_back(raw[i]);
      ++i;
    }
  }
  return out;
}

}  // namespace

std::string repair_to_json(const std::string& raw, char open, char close) {
  const std::string fenced = strip_code_fences(raw);
  const std::string body = first_balanced(fenced, open, close);
  if (body.empty()) return {};
  return normalize_quotes(body);
}

std::string build_event_prompt(const Article& article) {
  if (article.text.empty()) throw ValidationError("article text is empty");
  return std::string(kEventPromptHead) + render_article(article) + ".";
}

std::string build_stakeholder_prompt(const Article& article, const std::string& event_text) {
  if (article.text.empty()) throw ValidationError("article text is empty");
  if (event_text.empty()) throw ValidationError("event_text is empty");
  return std::string(kStakeholderPromptHead) + event_text + ".\nGiven article: " +
         render_article(article) + ".";
}

std::vector<std::pair<Date, std::string>> parse_event_response(const std::string& raw,
                                                               const Date& fallback) {
  const std::string candidate = repair_to_json(raw, '{', '}');
  if (candidate.empty()) {
    throw ExtractionError("no date->event mapping found in model output", raw);
  }
  nlohmann::ordered_json doc;
  try {
    doc = nlohmann::ordered_json::parse(candidate);
  } catch (const nlohmann::json::exception&) {
    throw ExtractionError("unparseable date->event mapping in model output", raw);
  }
  if (!doc.is_object()) {
    throw ExtractionError("model output is not a mapping", raw);
  }
  std::vector<std::pair<Date, std::string>> events;
  for (const auto& [key, value] : doc.items()) {
    if (!value.is_string()) continue;
    const std::string text = trim(value.get<std::string>());
    if (text.empty()) continue;
    events.emplace_back(normalize_date(key, fallback), text);
  }
  return events;
}

std::vector<std::string> parse_stakeholder_response(const std::string& raw) {
  const std::string candidate = repair_to_json(raw, '[', ']');
  if (candidate.empty()) {
    throw ExtractionError("no stakeholder list found in model output", raw);
  }
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(candidate);
  } catch (const nlohmann::json::exception&) {
    throw ExtractionError("unparseable stakeholder list in model output", raw);
  }
  if (!doc.is_array()) {
    throw ExtractionError("model output is not a list", raw);
  }
  std::vector<std::string> out;
  std::vector<std::string> seen_lower;
  for (const auto& item : doc) {
    if (!item.is_string()) continue;
    const std::string name = trim(item.get<std::string>());
    if (name.empty()) continue;
    const std::string lower = to_lower(name);
    if (std::find(seen_lower.begin(), seen_lower.end(), lower) != seen_lower.end()) {
      continue;
    }
    seen_lower.push_back(lower);
    out.push_back(name);
    if (out.size() == kMaxStakeholders) break;
  }
  return out;
}

std::string FixtureLlmClient::complete(const LlmRequest& request) {
  const auto path = dir_ / (sha256_hex(request.prompt) + ".txt");
  if (!std::filesystem::exists(path)) {
    throw FixtureMissingError("missing LLM fixture " + path.string());
  }
  return read_file(path);
}

namespace {

std::string complete_with_retries(LlmClient& client, const LlmRequest& request, int retries) {
  for (int attempt = 0;; ++attempt) {
    try {
      return client.complete(request);
    } catch (const ServiceError&) {
      if (attempt >= retries) throw;
    }
  }
}

}  // namespace

std::vector<SetTriplet> extract_sets(const Topic& topic, LlmClient& client,
                                     const ExtractionConfig& cfg) {
  std::vector<SetTriplet> result;
  for (const auto& article : topic.articles) {
    std::vector<SetTriplet> article_sets;
    try {
      LlmRequest event_req{build_event_prompt(article), cfg.temperature,
                           cfg.max_output_tokens, cfg.model_name};
      const std::string event_raw = complete_with_retries(client, event_req, cfg.retries);
      const auto events = parse_event_response(event_raw, article.published_date);
      for (const auto& [date, text] : events) {
        SetTriplet t;
        t.article_id = article.id;
        t.topic_id = topic.id;
        t.event_text = text;
        t.event_date = date;
        LlmRequest stake_req{build_stakeholder_prompt(article, text), cfg.temperature,
                             cfg.max_output_tokens, cfg.model_name};
        try {
          const std::string stake_raw = complete_with_retries(client, stake_req, cfg.retries);
          t.stakeholders = parse_stakeholder_response(stake_raw);
        } catch (const FixtureMissingError&) {
          throw;
        } catch (const ExtractionError& e) {
          std::cerr << "[extract] " << topic.id << "/" << article.id
                    << ": stakeholder parse failed, keeping event without stakeholders: "
                    << e.what() << "\n";
        }
        if (static_cast<int>(t.stakeholders.size()) > cfg.max_stakeholders_per_event) {
          t.stakeholders.resize(cfg.max_stakeholders_per_event);
        }
        article_sets.push_back(std::move(t));
      }
    } catch (const FixtureMissingError&) {
      throw;
    } catch (const Error& e) {
      std::cerr << "[extract] skipping article " << topic.id << "/" << article.id << ": "
                << e.what() << "\n";
      continue;
    }
    std::stable_sort(article_sets.begin(), article_sets.end(),
                     [](const SetTriplet& a, const SetTriplet& b) {
                       return a.event_date < b.event_date;
                     });
    for (auto& t : article_sets) result.push_back(std::move(t));
  }
  return result;
}

}  // namespace sunset

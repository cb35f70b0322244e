#pragma once

#include <string>

#include "sunset/coref.hpp"
#include "sunset/embedding.hpp"
#include "sunset/extraction.hpp"

namespace sunset {

/// OpenAI-compatible chat-completion client. Reads the API key from the
/// SUNSET_API_KEY environment variable when set.
class HttpLlmClient : public LlmClient {
 public:
  explicit HttpLlmClient(std::string endpoint) : endpoint_(std::move(endpoint)) {}
  std::string complete(const LlmRequest& request) override;

 private:
  std::string endpoint_;  // e.g. http://localhost:8000
};

/// OpenAI-compatible embeddings client (input array -> vectors).
class HttpEmbeddingClient : public EmbeddingClient {
 public:
  HttpEmbeddingClient(std::string endpoint, std::string model)
      : endpoint_(std::move(endpoint)), model_(std::move(model)) {}
  std::vector<Eigen::VectorXd> embed(const std::vector<std::string>& texts) override;

 private:
  std::string endpoint_;
  std::string model_;
};

/// Wikidata REST client: wbsearchentities-style label/alias search, list
/// search for the interface fallback, entity-data fetch for the officeholder
/// (P1308) claim.
class HttpWikidataClient : public WikidataClient {
 public:
  explicit HttpWikidataClient(std::string endpoint = "https://www.wikidata.org")
      : endpoint_(std::move(endpoint)) {}
  std::optional<SearchHit> label_search(const std::string& term) override;
  std::optional<SearchHit> interface_search(const std::string& term) override;
  std::optional<std::string> officeholder(const std::string& entity_id) override;

 private:
  std::string endpoint_;
};

}  // namespace sunset

#include "sunset/http_clients.hpp"

#include <cstdlib>

#include "httplib.h"
#include "json.hpp"
#include "sunset/errors.hpp"

namespace sunset {

using nlohmann::json;

namespace {

std::string api_key() {
  const char* key = std::getenv("SUNSET_API_KEY");
  return key ? key : "";
}

json post_json(const std::string& endpoint, const std::string& path, const json& body) {
  httplib::Client client(endpoint);
  client.set_read_timeout(120, 0);
  httplib::Headers headers;
  if (const std::string key = api_key(); !key.empty()) {
    headers.emplace("Authorization", "Bearer " + key);
  }
  auto res = client.Post(path, headers, body.dump(), "application/json");
  if (!res) {
    throw ServiceError("POST " + endpoint + path + " failed: " +
                       httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status >= 300) {
    throw ServiceError("POST " + endpoint + path + " returned status " +
                       std::to_string(res->status));
  }
  try {
    return json::parse(res->body);
  } catch (const json::exception& e) {
    throw ServiceError(std::string("bad JSON from service: ") + e.what());
  }
}

json get_json(const std::string& endpoint, const std::string& path) {
  httplib::Client client(endpoint);
  client.set_read_timeout(60, 0);
  auto res = client.Get(path);
  if (!res) {
    throw ServiceError("GET " + endpoint + path + " failed: " +
                       httplib::to_string(res.error()));
  }
  if (res->status < 200 || res->status >= 300) {
    throw ServiceError("GET " + endpoint + path + " returned status " +
                       std::to_string(res->status));
  }
  try {
    return json::parse(res->body);
  } catch (const json::exception& e) {
    throw ServiceError(std::string("bad JSON from service: ") + e.what());
  }
}

std::string url_encode(const std::string& value) {
  static const char* hex = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : value) {
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.' || c == '~') {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(hex[c >> 4]);
      out.push_back(hex[c & 0xf]);
    }
  }
  return out;
}

}  // namespace

std::string HttpLlmClient::complete(const LlmRequest& request) {
  if (request.prompt.empty()) throw ValidationError("empty LLM prompt");
  const json body{{"model", request.model_name},
                  {"temperature", request.temperature},
                  {"max_tokens", request.max_output_tokens},
                  {"messages", json::array({json{{"role", "user"}, {"content", request.prompt}}})}};
  const json res = post_json(endpoint_, "/v1/chat/completions", body);
  try {
    return res.at("choices").at(0).at("message").at("content").get<std::string>();
  } catch (const json::exception& e) {
    throw ServiceError(std::string("unexpected chat-completion shape: ") + e.what());
  }
}

std::vector<Eigen::VectorXd> HttpEmbeddingClient::embed(const std::vector<std::string>& texts) {
  const json body{{"model", model_}, {"input", texts}};
  const json res = post_json(endpoint_, "/v1/embeddings", body);
  std::vector<Eigen::VectorXd> out;
  try {
    for (const auto& item : res.at("data")) {
      const auto values = item.at("embedding").get<std::vector<double>>();
      out.push_back(Eigen::Map<const Eigen::VectorXd>(
          values.data(), static_cast<Eigen::Index>(values.size())));
    }
  } catch (const json::exception& e) {
    throw ServiceError(std::string("unexpected embeddings shape: ") + e.what());
  }
  return out;
}

std::optional<SearchHit> HttpWikidataClient::label_search(const std::string& term) {
  const json res = get_json(endpoint_,
                            "/w/api.php?action=wbsearchentities&format=json&language=en"
                            "&type=item&limit=1&search=" +
                                url_encode(term));
  const auto& hits = res.value("search", json::array());
  if (hits.empty()) return std::nullopt;
  SearchHit hit;
  hit.id = hits[0].at("id").get<std::string>();
  hit.label = hits[0].value("label", hit.id);
  hit.matched_alias = hits[0].contains("match") &&
                      hits[0]["match"].value("type", "label") == std::string("alias");
  return hit;
}

std::optional<SearchHit> HttpWikidataClient::interface_search(const std::string& term) {
  const json res = get_json(endpoint_,
                            "/w/api.php?action=query&format=json&list=search&srlimit=1"
                            "&srsearch=" +
                                url_encode(term));
  const auto hits = res.value("query", json::object()).value("search", json::array());
  if (hits.empty()) return std::nullopt;
  const std::string title = hits[0].value("title", "");
  if (title.empty()) return std::nullopt;
  return SearchHit{title, hits[0].value("title", title), false};
}

std::optional<std::string> HttpWikidataClient::officeholder(const std::string& entity_id) {
  const json res =
      get_json(endpoint_, "/wiki/Special:EntityData/" + url_encode(entity_id) + ".json");
  const auto entity = res.value("entities", json::object()).value(entity_id, json::object());
  const auto claims = entity.value("claims", json::object());
  // P1308: officeholder. One hop only.
  if (!claims.contains("P1308")) return std::nullopt;
  try {
    return claims["P1308"].at(0).at("mainsnak").at("datavalue").at("value").at("id")
        .get<std::string>();
  } catch (const json::exception&) {
    return std::nullopt;
  }
}

}  // namespace sunset

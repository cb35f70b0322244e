#include "sunset/embedding.hpp"

#include <algorithm>

#include "json.hpp"
#include "sunset/errors.hpp"
#include "sunset/util.hpp"

namespace sunset {

using nlohmann::json;

std::vector<Eigen::VectorXd> FixtureEmbeddingClient::embed(
    const std::vector<std::string>& texts) {
  std::vector<Eigen::VectorXd> out;
  out.reserve(texts.size());
  for (const auto& text : texts) {
    const auto path = dir_ / (sha256_hex(text) + ".json");
    if (!std::filesystem::exists(path)) {
      throw FixtureMissingError("missing embedding fixture " + path.string());
    }
    const auto doc = json::parse(read_file(path));
    if (!doc.is_array() || doc.empty()) {
      throw ValidationError("embedding fixture is not a nonempty array: " + path.string());
    }
    Eigen::VectorXd v(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i) v[static_cast<Eigen::Index>(i)] = doc[i].get<double>();
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<EventVector> embed_events(const std::vector<SetTriplet>& sets,
                                      EmbeddingClient& client) {
  std::vector<std::string> texts;
  texts.reserve(sets.size());
  for (const auto& t : sets) {
    if (t.event_text.empty()) throw ValidationError("cannot embed an empty event_text");
    texts.push_back(t.event_text);
  }
  auto raw = client.embed(texts);
  if (raw.size() != sets.size()) {
    throw Error("embedding batch size mismatch");
  }
  std::vector<EventVector> out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) {
    EventVector ev;
    ev.event_index = static_cast<int>(i);
    ev.vector = std::move(raw[i]);
    ev.norm = ev.vector.norm();
    if (!(ev.norm > 0)) {
      throw ValidationError("zero embedding vector at event index " + std::to_string(i));
    }
    if (i > 0 && ev.vector.size() != out.front().vector.size()) {
      throw ValidationError("embedding dimension mismatch at event index " + std::to_string(i));
    }
    out.push_back(std::move(ev));
  }
  return out;
}

double cosine(const EventVector& a, const EventVector& b) {
  if (a.vector.size() != b.vector.size()) {
    throw Error("cosine on mismatched dimensions");
  }
  return a.vector.dot(b.vector) / (a.norm * b.norm);
}

std::vector<Neighbor> top_k_neighbors(int query_index,
                                      const std::vector<EventVector>& vectors,
                                      int k) {
  if (vectors.empty()) throw Error("top_k_neighbors on empty vector set");
  std::vector<Neighbor> all;
  all.reserve(vectors.size() - 1);
  const auto& q = vectors[static_cast<std::size_t>(query_index)];
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (static_cast<int>(i) == query_index) continue;
    all.push_back(Neighbor{static_cast<int>(i), cosine(q, vectors[i])});
  }
  const std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k), all.size());
  auto better = [](const Neighbor& a, const Neighbor& b) {
    if (a.cosine != b.cosine) return a.cosine > b.cosine;
    return a.index < b.index;
  };
  std::partial_sort(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(take), all.end(),
                    better);
  all.resize(take);
  return all;
}

void save_vectors(const std::vector<EventVector>& vectors,
                  const std::filesystem::path& path) {
  std::vector<json> records;
  records.reserve(vectors.size());
  for (const auto& ev : vectors) {
    std::vector<double> values(ev.vector.data(), ev.vector.data() + ev.vector.size());
    records.push_back(json{{"event_index", ev.event_index}, {"vector", values}});
  }
  write_jsonl(path, records);
}

std::vector<EventVector> load_vectors(const std::filesystem::path& path) {
  auto records = read_jsonl(path, /*require_header=*/true);
  std::vector<EventVector> out;
  out.reserve(records.size());
  for (const auto& rec : records) {
    EventVector ev;
    ev.event_index = rec.at("event_index").get<int>();
    const auto values = rec.at("vector").get<std::vector<double>>();
    ev.vector = Eigen::Map<const Eigen::VectorXd>(values.data(),
                                                  static_cast<Eigen::Index>(values.size()));
    ev.norm = ev.vector.norm();
    if (!(ev.norm > 0)) throw ValidationError(path.string() + ": zero vector in cache");
    out.push_back(std::move(ev));
  }
  return out;
}

}  // namespace sunset

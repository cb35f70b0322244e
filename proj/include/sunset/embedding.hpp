#pragma once

#include <Eigen/Core>
#include <filesystem>
#include <string>
#include <vector>

#include "sunset/corpus.hpp"

namespace sunset {

struct EventVector {
  int event_index = 0;     // position in the topic's SET list
  Eigen::VectorXd vector;  // same dimension across a topic
  double norm = 0;         // Euclidean norm, > 0
};

class EmbeddingClient {
 public:
  virtual ~EmbeddingClient() = default;
  virtual std::vector<Eigen::VectorXd> embed(const std::vector<std::string>& texts) = 0;
};

/// Replays recorded vectors from <dir>/<sha256(text)>.json (a JSON array of
/// numbers). A missing fixture is a hard error.
class FixtureEmbeddingClient : public EmbeddingClient {
 public:
  explicit FixtureEmbeddingClient(std::filesystem::path dir) : dir_(std::move(dir)) {}
  std::vector<Eigen::VectorXd> embed(const std::vector<std::string>& texts) override;

 private:
  std::filesystem::path dir_;
};

/// One vector per triplet, order-aligned. Rejects zero vectors and any
/// dimension mismatch across the batch.
std::vector<EventVector> embed_events(const std::vector<SetTriplet>& sets,
                                      EmbeddingClient& client);

double cosine(const EventVector& a, const EventVector& b);

struct Neighbor {
  int index;
  double cosine;
};

/// Exact top-k by cosine, excluding the query itself; descending by cosine,
/// ties broken by ascending index.
std::vector<Neighbor> top_k_neighbors(int query_index,
                                      const std::vector<EventVector>& vectors,
                                      int k = 20);

void save_vectors(const std::vector<EventVector>& vectors, const std::filesystem::path& path);
std::vector<EventVector> load_vectors(const std::filesystem::path& path);

}  // namespace sunset

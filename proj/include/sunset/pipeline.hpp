#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sunset/clustering.hpp"
#include "sunset/coref.hpp"
#include "sunset/embedding.hpp"
#include "sunset/evaluation.hpp"
#include "sunset/extraction.hpp"
#include "sunset/relevance.hpp"
#include "sunset/timeline.hpp"

namespace sunset {

struct RunConfig {
  std::filesystem::path corpus_root;
  std::filesystem::path out_dir;

  double beta = 1.0;
  int em_level = 0;  // 0, 1 or 2
  PenaltyVariant penalty_variant = PenaltyVariant::cv;
  IdfLogBase idf_log_base = IdfLogBase::natural;
  bool use_rel_in_timeline = true;  // false = TextRank-only ranking
  int k_neighbors = 20;
  double min_weight = 0.0;
  int budget_dates = 0;      // 0 = derive from ground truths
  int budget_sentences = 0;  // 0 = derive

  bool llm_fixture_mode = true;
  std::filesystem::path llm_fixtures;
  std::string llm_endpoint;
  std::string llm_model = "qwen2.5-72b-instruct";

  bool embedding_fixture_mode = true;
  std::filesystem::path embedding_fixtures;
  std::string embedding_endpoint;
  std::string embedding_model = "gte-modernbert-base";

  bool wikidata_fixture_mode = true;
  std::filesystem::path wikidata_fixtures;
  std::string wikidata_endpoint = "https://www.wikidata.org";

  int retries = 2;
  int threads = 1;

  void validate() const;
};

/// Reads a JSON config file; any field may then be overridden by a
/// SUNSET_<UPPERCASE_FIELD> environment variable.
RunConfig load_run_config(const std::filesystem::path& path);
void apply_env_overrides(RunConfig& cfg);

/// Per-topic artifact locations under out_dir.
struct TopicPaths {
  std::filesystem::path dir;
  std::filesystem::path sets;           // sets.jsonl
  std::filesystem::path sets_resolved;  // sets_resolved.jsonl
  std::filesystem::path vectors;        // vectors.jsonl
  std::filesystem::path graph;          // graph.jsonl
  std::filesystem::path clusters;       // clusters.jsonl
  std::filesystem::path timeline;       // timeline.jsonl
  std::filesystem::path eval;           // eval.json
};
TopicPaths topic_paths(const std::filesystem::path& out_dir, const std::string& topic_id);

/// Expected date / sentence budget from a topic's ground truths (rounded
/// means), or the config override when set.
Budget derive_budget(const Topic& topic, const RunConfig& cfg);

void run_extract(const RunConfig& cfg);
void run_resolve(const RunConfig& cfg);
void run_cluster(const RunConfig& cfg);
void run_generate(const RunConfig& cfg);
EvalReport run_evaluate(const RunConfig& cfg);
EvalReport run_all(const RunConfig& cfg);

struct SweepSpec {
  std::vector<double> betas = {0, 0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  std::vector<int> em_levels = {0, 1, 2};
  std::vector<PenaltyVariant> variants = {PenaltyVariant::cv};
};

struct SweepRow {
  double beta = 0;
  int em_level = 0;
  PenaltyVariant variant = PenaltyVariant::cv;
  bool use_rel_in_timeline = true;
  double ar1 = 0;
  double ar2 = 0;
  double date_f1 = 0;
};

/// Recomputes clustering + generation + evaluation for every grid cell from
/// the already-materialized SETs and embeddings (never contacts a service).
/// Writes <out_dir>/sweep.csv and returns the rows in grid order.
std::vector<SweepRow> run_sweep(const RunConfig& cfg, const SweepSpec& spec);

std::string sweep_csv(const std::vector<SweepRow>& rows);

// Shared in-memory inputs for sweep cells and the generate stage.
struct CorpusBundle {
  std::vector<Topic> topics;
  std::vector<std::vector<SetTriplet>> sets;      // aligned with topics
  std::vector<std::vector<EventVector>> vectors;  // aligned with topics
  StatsMap stats;
};

struct CellParams {
  double beta = 1.0;
  int em_level = 0;
  PenaltyVariant variant = PenaltyVariant::cv;
  IdfLogBase idf_log_base = IdfLogBase::natural;
  bool use_rel_in_timeline = true;
  int k_neighbors = 20;
  double min_weight = 0.0;
};

/// One full clustering-to-evaluation pass over the bundle. When `artifacts`
/// is set, per-topic graph/clusters/timeline/eval files are written there.
EvalReport run_cell(const CorpusBundle& bundle, const CellParams& params,
                    const RunConfig& cfg,
                    const std::optional<std::filesystem::path>& artifacts);

}  // namespace sunset

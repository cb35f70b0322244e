#include "sunset/pipeline.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <iostream>
#include <memory>
#include <sstream>

#include "json.hpp"
#include "sunset/errors.hpp"
#include "sunset/http_clients.hpp"
#include "sunset/util.hpp"

namespace sunset {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

PenaltyVariant parse_variant(const std::string& s) {
  if (s == "cv") return PenaltyVariant::cv;
  if (s == "idf") return PenaltyVariant::idf;
  throw ConfigError("unknown penalty variant \"" + s + "\" (expected cv or idf)");
}

IdfLogBase parse_log_base(const std::string& s) {
  if (s == "natural") return IdfLogBase::natural;
  if (s == "ten") return IdfLogBase::ten;
  throw ConfigError("unknown idf log base \"" + s + "\" (expected natural or ten)");
}

const char* variant_name(PenaltyVariant v) {
  return v == PenaltyVariant::cv ? "cv" : "idf";
}

std::unique_ptr<LlmClient> make_llm_client(const RunConfig& cfg) {
  if (cfg.llm_fixture_mode) {
    if (cfg.llm_fixtures.empty()) throw ConfigError("llm_fixtures not set");
    return std::make_unique<FixtureLlmClient>(cfg.llm_fixtures);
  }
  if (cfg.llm_endpoint.empty()) throw ConfigError("llm_endpoint not set");
  return std::make_unique<HttpLlmClient>(cfg.llm_endpoint);
}

std::unique_ptr<EmbeddingClient> make_embedding_client(const RunConfig& cfg) {
  if (cfg.embedding_fixture_mode) {
    if (cfg.embedding_fixtures.empty()) throw ConfigError("embedding_fixtures not set");
    return std::make_unique<FixtureEmbeddingClient>(cfg.embedding_fixtures);
  }
  if (cfg.embedding_endpoint.empty()) throw ConfigError("embedding_endpoint not set");
  return std::make_unique<HttpEmbeddingClient>(cfg.embedding_endpoint, cfg.embedding_model);
}

std::unique_ptr<WikidataClient> make_wikidata_client(const RunConfig& cfg) {
  if (cfg.wikidata_fixture_mode) {
    if (cfg.wikidata_fixtures.empty()) throw ConfigError("wikidata_fixtures not set");
    return std::make_unique<FixtureWikidataClient>(cfg.wikidata_fixtures);
  }
  return std::make_unique<HttpWikidataClient>(cfg.wikidata_endpoint);
}

void require_artifact(const fs::path& path, const std::string& stage_to_run) {
  if (!fs::exists(path)) {
    throw MissingArtifactError("missing " + path.string() + "; run \"" + stage_to_run +
                               "\" first");
  }
}

RelLookup topic_rel(const RelevanceTable& table, const std::string& topic_id) {
  return [&table, topic_id](const std::string& id) { return table.rel(topic_id, id); };
}

RelLookup zero_rel() {
  return [](const std::string&) { return 0.0; };
}

EvalReport mean_report(const std::vector<EvalReport>& per_topic) {
  EvalReport agg;
  if (per_topic.empty()) return agg;
  for (const auto& r : per_topic) {
    agg.ar1 += r.ar1;
    agg.ar2 += r.ar2;
    agg.date_f1 += r.date_f1;
    agg.per_truth.push_back(TruthScores{r.ar1, r.ar2, r.date_f1});  // one slot per topic
  }
  const auto n = static_cast<double>(per_topic.size());
  agg.ar1 /= n;
  agg.ar2 /= n;
  agg.date_f1 /= n;
  return agg;
}

}  // namespace

void RunConfig::validate() const {
  if (corpus_root.empty()) throw ConfigError("corpus_root not set");
  if (out_dir.empty()) throw ConfigError("out_dir not set");
  if (beta < 0) throw ConfigError("beta must be nonnegative");
  if (em_level < 0 || em_level > 2) throw ConfigError("em_level must be 0, 1 or 2");
  if (k_neighbors <= 0) throw ConfigError("k_neighbors must be positive");
  if (threads <= 0) throw ConfigError("threads must be positive");
  if (budget_dates < 0 || budget_sentences < 0) throw ConfigError("budget must be nonnegative");
}

RunConfig load_run_config(const fs::path& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
  RunConfig cfg;
  auto str = [&](const char* key, const std::string& fallback) {
    return doc.value(key, fallback);
  };
  cfg.corpus_root = str("corpus_root", "");
  cfg.out_dir = str("out_dir", "");
  cfg.beta = doc.value("beta", cfg.beta);
  cfg.em_level = doc.value("em_level", cfg.em_level);
  if (doc.contains("penalty_variant")) {
    cfg.penalty_variant = parse_variant(doc["penalty_variant"].get<std::string>());
  }
  if (doc.contains("idf_log_base")) {
    cfg.idf_log_base = parse_log_base(doc["idf_log_base"].get<std::string>());
  }
  cfg.use_rel_in_timeline = doc.value("use_rel_in_timeline", cfg.use_rel_in_timeline);
  cfg.k_neighbors = doc.value("k_neighbors", cfg.k_neighbors);
  cfg.min_weight = doc.value("min_weight", cfg.min_weight);
  cfg.budget_dates = doc.value("budget_dates", cfg.budget_dates);
  cfg.budget_sentences = doc.value("budget_sentences", cfg.budget_sentences);
  cfg.llm_fixture_mode = doc.value("llm_fixture_mode", cfg.llm_fixture_mode);
  cfg.llm_fixtures = str("llm_fixtures", "");
  cfg.llm_endpoint = str("llm_endpoint", "");
  cfg.llm_model = str("llm_model", cfg.llm_model);
  cfg.embedding_fixture_mode = doc.value("embedding_fixture_mode", cfg.embedding_fixture_mode);
  cfg.embedding_fixtures = str("embedding_fixtures", "");
  cfg.embedding_endpoint = str("embedding_endpoint", "");
  cfg.embedding_model = str("embedding_model", cfg.embedding_model);
  cfg.wikidata_fixture_mode = doc.value("wikidata_fixture_mode", cfg.wikidata_fixture_mode);
  cfg.wikidata_fixtures = str("wikidata_fixtures", "");
  cfg.wikidata_endpoint = str("wikidata_endpoint", cfg.wikidata_endpoint);
  cfg.retries = doc.value("retries", cfg.retries);
  cfg.threads = doc.value("threads", cfg.threads);
  apply_env_overrides(cfg);
  return cfg;
}

void apply_env_overrides(RunConfig& cfg) {
  auto env = [](const char* name) -> std::optional<std::string> {
    const char* v = std::getenv(name);
    if (!v) return std::nullopt;
    return std::string(v);
  };
  if (auto v = env("SUNSET_CORPUS_ROOT")) cfg.corpus_root = *v;
  if (auto v = env("SUNSET_OUT_DIR")) cfg.out_dir = *v;
  if (auto v = env("SUNSET_BETA")) cfg.beta = std::stod(*v);
  if (auto v = env("SUNSET_EM_LEVEL")) cfg.em_level = std::stoi(*v);
  if (auto v = env("SUNSET_PENALTY_VARIANT")) cfg.penalty_variant = parse_variant(*v);
  if (auto v = env("SUNSET_IDF_LOG_BASE")) cfg.idf_log_base = parse_log_base(*v);
  if (auto v = env("SUNSET_USE_REL_IN_TIMELINE")) cfg.use_rel_in_timeline = (*v == "1" || *v == "true");
  if (auto v = env("SUNSET_K_NEIGHBORS")) cfg.k_neighbors = std::stoi(*v);
  if (auto v = env("SUNSET_MIN_WEIGHT")) cfg.min_weight = std::stod(*v);
  if (auto v = env("SUNSET_BUDGET_DATES")) cfg.budget_dates = std::stoi(*v);
  if (auto v = env("SUNSET_BUDGET_SENTENCES")) cfg.budget_sentences = std::stoi(*v);
  if (auto v = env("SUNSET_LLM_ENDPOINT")) cfg.llm_endpoint = *v;
  if (auto v = env("SUNSET_LLM_MODEL")) cfg.llm_model = *v;
  if (auto v = env("SUNSET_LLM_FIXTURES")) cfg.llm_fixtures = *v;
  if (auto v = env("SUNSET_EMBEDDING_ENDPOINT")) cfg.embedding_endpoint = *v;
  if (auto v = env("SUNSET_EMBEDDING_FIXTURES")) cfg.embedding_fixtures = *v;
  if (auto v = env("SUNSET_WIKIDATA_ENDPOINT")) cfg.wikidata_endpoint = *v;
  if (auto v = env("SUNSET_WIKIDATA_FIXTURES")) cfg.wikidata_fixtures = *v;
  if (auto v = env("SUNSET_THREADS")) cfg.threads = std::stoi(*v);
}

TopicPaths topic_paths(const fs::path& out_dir, const std::string& topic_id) {
  TopicPaths p;
  p.dir = out_dir / topic_id;
  p.sets = p.dir / "sets.jsonl";
  p.sets_resolved = p.dir / "sets_resolved.jsonl";
  p.vectors = p.dir / "vectors.jsonl";
  p.graph = p.dir / "graph.jsonl";
  p.clusters = p.dir / "clusters.jsonl";
  p.timeline = p.dir / "timeline.jsonl";
  p.eval = p.dir / "eval.json";
  return p;
}

Budget derive_budget(const Topic& topic, const RunConfig& cfg) {
  Budget b{cfg.budget_dates, cfg.budget_sentences};
  if (b.date_count > 0 && b.sentences_per_date > 0) return b;
  if (topic.ground_truths.empty()) {
    throw ConfigError("topic " + topic.id +
                      " has no ground truths; set budget_dates and budget_sentences");
  }
  double dates = 0, sentences = 0;
  for (const auto& gt : topic.ground_truths) {
    dates += static_cast<double>(gt.entries.size());
    long total_sentences = 0;
    for (const auto& e : gt.entries) total_sentences += static_cast<long>(e.sentences.size());
    sentences += static_cast<double>(total_sentences) / static_cast<double>(gt.entries.size());
  }
  const auto n = static_cast<double>(topic.ground_truths.size());
  if (b.date_count <= 0) b.date_count = std::max(1, static_cast<int>(std::lround(dates / n)));
  if (b.sentences_per_date <= 0) {
    b.sentences_per_date = std::max(1, static_cast<int>(std::lround(sentences / n)));
  }
  return b;
}

void run_extract(const RunConfig& cfg) {
  cfg.validate();
  const auto topics = load_corpus(cfg.corpus_root);
  auto client = make_llm_client(cfg);
  ExtractionConfig xcfg;
  xcfg.retries = cfg.retries;
  xcfg.fixture_mode = cfg.llm_fixture_mode;
  xcfg.model_name = cfg.llm_model;
  for (const auto& topic : topics) {
    const auto sets = extract_sets(topic, *client, xcfg);
    save_sets(sets, topic_paths(cfg.out_dir, topic.id).sets);
  }
}

void run_resolve(const RunConfig& cfg) {
  cfg.validate();
  const auto topics = load_corpus(cfg.corpus_root);
  auto client = make_wikidata_client(cfg);
  const fs::path cache_path = cfg.out_dir / "coref_cache.jsonl";
  CorefCache cache = CorefCache::load(cache_path);
  for (const auto& topic : topics) {
    const auto paths = topic_paths(cfg.out_dir, topic.id);
    require_artifact(paths.sets, "extract");
    auto sets = apply_coref(load_sets(paths.sets), cache, *client, cfg.retries);
    save_sets(sets, paths.sets_resolved);
  }
  cache.save(cache_path);
}

namespace {

CorpusBundle load_bundle(const RunConfig& cfg, bool need_vectors) {
  CorpusBundle bundle;
  bundle.topics = load_corpus(cfg.corpus_root);
  std::vector<SetTriplet> all_sets;
  for (const auto& topic : bundle.topics) {
    const auto paths = topic_paths(cfg.out_dir, topic.id);
    require_artifact(paths.sets_resolved, "resolve");
    bundle.sets.push_back(load_sets(paths.sets_resolved));
    for (const auto& t : bundle.sets.back()) all_sets.push_back(t);
    if (need_vectors) {
      require_artifact(paths.vectors, "cluster");
      auto vectors = load_vectors(paths.vectors);
      if (vectors.size() != bundle.sets.back().size()) {
        throw ValidationError(paths.vectors.string() + " is out of date; rerun cluster");
      }
      bundle.vectors.push_back(std::move(vectors));
    }
  }
  check_referential_integrity(all_sets, bundle.topics);
  bundle.stats = compute_stats(all_sets, bundle.topics);
  return bundle;
}

}  // namespace

void run_cluster(const RunConfig& cfg) {
  cfg.validate();
  CorpusBundle bundle = load_bundle(cfg, /*need_vectors=*/false);
  save_stats(bundle.stats, cfg.out_dir / "stats.jsonl");

  RelevanceParams params{cfg.beta, cfg.penalty_variant, cfg.idf_log_base};
  const RelevanceTable table = RelevanceTable::build(bundle.stats, params);

  auto client = make_embedding_client(cfg);
  bundle.vectors.resize(bundle.topics.size());
  // Embedding calls stay sequential (one service); graph work is pure.
  for (std::size_t i = 0; i < bundle.topics.size(); ++i) {
    const auto paths = topic_paths(cfg.out_dir, bundle.topics[i].id);
    bool have_cache = false;
    if (fs::exists(paths.vectors)) {
      auto cached = load_vectors(paths.vectors);
      if (cached.size() == bundle.sets[i].size()) {
        bundle.vectors[i] = std::move(cached);
        have_cache = true;
      }
    }
    if (!have_cache) {
      bundle.vectors[i] = embed_events(bundle.sets[i], *client);
      save_vectors(bundle.vectors[i], paths.vectors);
    }
  }

  parallel_for(bundle.topics.size(), cfg.threads, [&](std::size_t i) {
    const auto paths = topic_paths(cfg.out_dir, bundle.topics[i].id);
    const GraphParams gp{cfg.k_neighbors, cfg.em_level, cfg.min_weight};
    const EventGraph graph = build_event_graph(bundle.sets[i], bundle.vectors[i],
                                               topic_rel(table, bundle.topics[i].id), gp);
    save_graph(graph, paths.graph);
    save_clusters(extract_clusters(graph, bundle.topics[i].id), paths.clusters);
  });
}

void run_generate(const RunConfig& cfg) {
  cfg.validate();
  CorpusBundle bundle = load_bundle(cfg, /*need_vectors=*/false);
  RelevanceParams params{cfg.beta, cfg.penalty_variant, cfg.idf_log_base};
  const RelevanceTable table = RelevanceTable::build(bundle.stats, params);

  parallel_for(bundle.topics.size(), cfg.threads, [&](std::size_t i) {
    const auto& topic = bundle.topics[i];
    const auto paths = topic_paths(cfg.out_dir, topic.id);
    require_artifact(paths.graph, "cluster");
    require_artifact(paths.clusters, "cluster");
    const EventGraph graph = load_graph(paths.graph);
    const auto clusters = load_clusters(paths.clusters);
    if (clusters.empty()) {
      throw ValidationError("no clusters for topic " + topic.id);
    }

    const RelLookup rel =
        cfg.use_rel_in_timeline ? topic_rel(table, topic.id) : zero_rel();
    const auto ranked = rank_clusters(clusters, bundle.sets[i], rel);
    std::map<int, double> scores;
    for (const auto& c : clusters) {
      for (const auto& [idx, score] : textrank_scores(c, graph).scores) {
        scores[idx] = score;
      }
    }
    const Timeline tl =
        assemble_timeline(ranked, bundle.sets[i], scores, derive_budget(topic, cfg));
    save_timeline(tl, paths.timeline);
  });
}

EvalReport run_evaluate(const RunConfig& cfg) {
  cfg.validate();
  const auto topics = load_corpus(cfg.corpus_root);
  std::vector<EvalReport> per_topic;
  for (const auto& topic : topics) {
    const auto paths = topic_paths(cfg.out_dir, topic.id);
    require_artifact(paths.timeline, "generate");
    if (topic.ground_truths.empty()) {
      std::cerr << "[evaluate] topic " << topic.id << " has no ground truths, skipping\n";
      continue;
    }
    const Timeline hyp = load_timeline(paths.timeline);
    const EvalReport report = evaluate_timeline(hyp, topic.ground_truths);
    save_report(report, paths.eval);
    per_topic.push_back(report);
  }
  const EvalReport aggregate = mean_report(per_topic);
  save_report(aggregate, cfg.out_dir / "eval.json");
  return aggregate;
}

EvalReport run_all(const RunConfig& cfg) {
  run_extract(cfg);
  run_resolve(cfg);
  run_cluster(cfg);
  run_generate(cfg);
  return run_evaluate(cfg);
}

EvalReport run_cell(const CorpusBundle& bundle, const CellParams& params,
                    const RunConfig& cfg, const std::optional<fs::path>& artifacts) {
  RelevanceParams rp{params.beta, params.variant, params.idf_log_base};
  const RelevanceTable table = RelevanceTable::build(bundle.stats, rp);
  std::vector<EvalReport> per_topic;
  for (std::size_t i = 0; i < bundle.topics.size(); ++i) {
    const auto& topic = bundle.topics[i];
    const GraphParams gp{params.k_neighbors, params.em_level, params.min_weight};
    const EventGraph graph = build_event_graph(bundle.sets[i], bundle.vectors[i],
                                               topic_rel(table, topic.id), gp);
    const auto clusters = extract_clusters(graph, topic.id);
    const RelLookup rel =
        params.use_rel_in_timeline ? topic_rel(table, topic.id) : zero_rel();
    const auto ranked = rank_clusters(clusters, bundle.sets[i], rel);
    std::map<int, double> scores;
    for (const auto& c : clusters) {
      for (const auto& [idx, score] : textrank_scores(c, graph).scores) {
        scores[idx] = score;
      }
    }
    const Timeline tl =
        assemble_timeline(ranked, bundle.sets[i], scores, derive_budget(topic, cfg));
    if (artifacts) {
      const auto paths = topic_paths(*artifacts, topic.id);
      save_graph(graph, paths.graph);
      save_clusters(clusters, paths.clusters);
      save_timeline(tl, paths.timeline);
    }
    if (!topic.ground_truths.empty()) {
      const EvalReport report = evaluate_timeline(tl, topic.ground_truths);
      if (artifacts) save_report(report, topic_paths(*artifacts, topic.id).eval);
      per_topic.push_back(report);
    }
  }
  return mean_report(per_topic);
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::ostringstream out;
  out << "beta,em,penalty,timeline,ar1,ar2,date_f1\n";
  out.precision(6);
  out << std::fixed;
  for (const auto& r : rows) {
    out << r.beta << "," << r.em_level << "," << variant_name(r.variant) << ","
        << (r.use_rel_in_timeline ? "textrank+rel" : "textrank") << "," << r.ar1 << ","
        << r.ar2 << "," << r.date_f1 << "\n";
  }
  return out.str();
}

std::vector<SweepRow> run_sweep(const RunConfig& cfg, const SweepSpec& spec) {
  cfg.validate();
  const CorpusBundle bundle = load_bundle(cfg, /*need_vectors=*/true);

  std::vector<CellParams> cells;
  for (PenaltyVariant variant : spec.variants) {
    for (int em : spec.em_levels) {
      for (double beta : spec.betas) {
        for (bool rel_in_tl : {true, false}) {
          CellParams p;
          p.beta = beta;
          p.em_level = em;
          p.variant = variant;
          p.idf_log_base = cfg.idf_log_base;
          p.use_rel_in_timeline = rel_in_tl;
          p.k_neighbors = cfg.k_neighbors;
          p.min_weight = cfg.min_weight;
          cells.push_back(p);
        }
      }
    }
  }

  std::vector<SweepRow> rows(cells.size());
  parallel_for(cells.size(), cfg.threads, [&](std::size_t i) {
    const auto& p = cells[i];
    std::ostringstream name;
    name << variant_name(p.variant) << "_beta" << p.beta << "_em" << p.em_level << "_"
         << (p.use_rel_in_timeline ? "trrel" : "tr");
    const fs::path cell_dir = cfg.out_dir / "sweep" / name.str();
    const EvalReport report = run_cell(bundle, p, cfg, cell_dir);
    rows[i] = SweepRow{p.beta,       p.em_level, p.variant, p.use_rel_in_timeline,
                       report.ar1,   report.ar2, report.date_f1};
  });

  write_file(cfg.out_dir / "sweep.csv", sweep_csv(rows));
  return rows;
}

}  // namespace sunset

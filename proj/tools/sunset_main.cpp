#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sunset/demo_corpus.hpp"
#include "sunset/errors.hpp"
#include "sunset/pipeline.hpp"

namespace {

using sunset::RunConfig;

struct CliOptions {
  std::string config_file;
  std::string corpus_root;
  std::string out_dir;
  std::optional<double> beta;
  std::optional<int> em_level;
  std::optional<std::string> penalty;
  std::optional<std::string> idf_log_base;
  std::optional<bool> use_rel;
  std::optional<int> k_neighbors;
  std::optional<double> min_weight;
  std::optional<int> budget_dates;
  std::optional<int> budget_sentences;
  std::optional<std::string> llm_fixtures;
  std::optional<std::string> llm_endpoint;
  std::optional<std::string> llm_model;
  std::optional<std::string> embedding_fixtures;
  std::optional<std::string> embedding_endpoint;
  std::optional<std::string> embedding_model;
  std::optional<std::string> wikidata_fixtures;
  std::optional<std::string> wikidata_endpoint;
  std::optional<int> threads;
  std::optional<int> retries;
};

void add_common_options(CLI::App& cmd, CliOptions& opt) {
  cmd.add_option("--config", opt.config_file, "JSON run configuration file");
  cmd.add_option("--corpus", opt.corpus_root, "corpus root directory (one topic per subdir)");
  cmd.add_option("--out", opt.out_dir, "artifact output directory");
  cmd.add_option("--beta", opt.beta, "stakeholder weight in the relevance score");
  cmd.add_option("--em", opt.em_level, "entity-match gate level (0, 1 or 2)")
      ->check(CLI::Range(0, 2));
  cmd.add_option("--penalty", opt.penalty, "penalty variant: cv or idf")
      ->check(CLI::IsMember({"cv", "idf"}));
  cmd.add_option("--idf-log-base", opt.idf_log_base, "idf logarithm base: natural or ten")
      ->check(CLI::IsMember({"natural", "ten"}));
  cmd.add_flag("--rel,!--no-rel", opt.use_rel,
               "blend relevance into timeline ranking (default on)");
  cmd.add_option("--k-neighbors", opt.k_neighbors, "nearest neighbors per event");
  cmd.add_option("--min-weight", opt.min_weight, "minimum edge weight kept in the graph");
  cmd.add_option("--budget-dates", opt.budget_dates,
                 "timeline date budget (default: derived from ground truths)");
  cmd.add_option("--budget-sentences", opt.budget_sentences,
                 "sentences per timeline date (default: derived)");
  cmd.add_option("--llm-fixtures", opt.llm_fixtures, "LLM fixture directory (replay mode)");
  cmd.add_option("--llm-endpoint", opt.llm_endpoint,
                 "OpenAI-compatible chat endpoint (disables LLM replay)");
  cmd.add_option("--llm-model", opt.llm_model, "chat model name");
  cmd.add_option("--embedding-fixtures", opt.embedding_fixtures,
                 "embedding fixture directory (replay mode)");
  cmd.add_option("--embedding-endpoint", opt.embedding_endpoint,
                 "OpenAI-compatible embeddings endpoint (disables replay)");
  cmd.add_option("--embedding-model", opt.embedding_model, "embedding model name");
  cmd.add_option("--wikidata-fixtures", opt.wikidata_fixtures,
                 "Wikidata fixture directory (replay mode)");
  cmd.add_option("--wikidata-endpoint", opt.wikidata_endpoint,
                 "Wikidata base URL (disables replay)");
  cmd.add_option("--threads", opt.threads, "worker threads");
  cmd.add_option("--retries", opt.retries, "retries per remote call");
}

RunConfig build_config(const CliOptions& opt) {
  RunConfig cfg;
  if (!opt.config_file.empty()) cfg = sunset::load_run_config(opt.config_file);
  if (!opt.corpus_root.empty()) cfg.corpus_root = opt.corpus_root;
  if (!opt.out_dir.empty()) cfg.out_dir = opt.out_dir;
  if (opt.beta) cfg.beta = *opt.beta;
  if (opt.em_level) cfg.em_level = *opt.em_level;
  if (opt.penalty) {
    cfg.penalty_variant = *opt.penalty == "cv" ? sunset::PenaltyVariant::cv
                                               : sunset::PenaltyVariant::idf;
  }
  if (opt.idf_log_base) {
    cfg.idf_log_base = *opt.idf_log_base == "ten" ? sunset::IdfLogBase::ten
                                                  : sunset::IdfLogBase::natural;
  }
  if (opt.use_rel) cfg.use_rel_in_timeline = *opt.use_rel;
  if (opt.k_neighbors) cfg.k_neighbors = *opt.k_neighbors;
  if (opt.min_weight) cfg.min_weight = *opt.min_weight;
  if (opt.budget_dates) cfg.budget_dates = *opt.budget_dates;
  if (opt.budget_sentences) cfg.budget_sentences = *opt.budget_sentences;
  if (opt.llm_fixtures) {
    cfg.llm_fixture_mode = true;
    cfg.llm_fixtures = *opt.llm_fixtures;
  }
  if (opt.llm_endpoint) {
    cfg.llm_fixture_mode = false;
    cfg.llm_endpoint = *opt.llm_endpoint;
  }
  if (opt.llm_model) cfg.llm_model = *opt.llm_model;
  if (opt.embedding_fixtures) {
    cfg.embedding_fixture_mode = true;
    cfg.embedding_fixtures = *opt.embedding_fixtures;
  }
  if (opt.embedding_endpoint) {
    cfg.embedding_fixture_mode = false;
    cfg.embedding_endpoint = *opt.embedding_endpoint;
  }
  if (opt.embedding_model) cfg.embedding_model = *opt.embedding_model;
  if (opt.wikidata_fixtures) {
    cfg.wikidata_fixture_mode = true;
    cfg.wikidata_fixtures = *opt.wikidata_fixtures;
  }
  if (opt.wikidata_endpoint) {
    cfg.wikidata_fixture_mode = false;
    cfg.wikidata_endpoint = *opt.wikidata_endpoint;
  }
  if (opt.threads) cfg.threads = *opt.threads;
  if (opt.retries) cfg.retries = *opt.retries;
  sunset::apply_env_overrides(cfg);
  cfg.validate();
  return cfg;
}

void print_report(const sunset::EvalReport& report) {
  std::printf("AR-1: %.6f  AR-2: %.6f  Date-F1: %.6f\n", report.ar1, report.ar2,
              report.date_f1);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"SUnSET: stakeholder-based timeline summarization"};
  app.require_subcommand(1);

  CliOptions opt;
  std::string demo_root;

  auto* extract = app.add_subcommand("extract", "extract SET triplets from the corpus");
  auto* resolve = app.add_subcommand("resolve", "resolve stakeholders to canonical entities");
  auto* cluster = app.add_subcommand("cluster", "embed events, build graphs and clusters");
  auto* generate = app.add_subcommand("generate", "rank clusters and assemble timelines");
  auto* evaluate = app.add_subcommand("evaluate", "score timelines against ground truths");
  auto* sweep = app.add_subcommand("sweep", "ablation grid over beta, gate level and penalty");
  auto* all = app.add_subcommand("all", "run every stage in order");
  for (CLI::App* cmd : {extract, resolve, cluster, generate, evaluate, sweep, all}) {
    add_common_options(*cmd, opt);
  }

  auto* fixtures =
      app.add_subcommand("fixtures", "materialize the bundled demo corpus and fixtures");
  fixtures->add_option("--root", demo_root, "directory to populate")->required();
  fixtures->add_option("--out", opt.out_dir, "out_dir recorded in the printed config");

  CLI11_PARSE(app, argc, argv);

  try {
    if (fixtures->parsed()) {
      const auto layout = sunset::write_demo_corpus(demo_root);
      std::cout << "corpus: " << layout.corpus_root.string() << '\n'
                << "llm fixtures: " << layout.llm_fixtures.string() << '\n'
                << "embedding fixtures: " << layout.embedding_fixtures.string() << '\n'
                << "wikidata fixtures: " << layout.wikidata_fixtures.string() << '\n';
      return 0;
    }
    const RunConfig cfg = build_config(opt);
    if (extract->parsed()) {
      sunset::run_extract(cfg);
    } else if (resolve->parsed()) {
      sunset::run_resolve(cfg);
    } else if (cluster->parsed()) {
      sunset::run_cluster(cfg);
    } else if (generate->parsed()) {
      sunset::run_generate(cfg);
    } else if (evaluate->parsed()) {
      print_report(sunset::run_evaluate(cfg));
    } else if (sweep->parsed()) {
      const auto rows = sunset::run_sweep(cfg, sunset::SweepSpec{});
      std::cout << sunset::sweep_csv(rows);
    } else if (all->parsed()) {
      print_report(sunset::run_all(cfg));
    }
    return 0;
  } catch (const sunset::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return 2;
  } catch (const sunset::MissingArtifactError& e) {
    std::cerr << "missing artifact: " << e.what() << '\n';
    return 3;
  } catch (const sunset::ServiceError& e) {
    std::cerr << "service failure: " << e.what() << '\n';
    return 4;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}

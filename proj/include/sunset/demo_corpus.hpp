#pragma once

#include <filesystem>

#include "sunset/pipeline.hpp"

namespace sunset {

struct DemoLayout {
  std::filesystem::path corpus_root;
  std::filesystem::path llm_fixtures;
  std::filesystem::path embedding_fixtures;
  std::filesystem::path wikidata_fixtures;
};

/// Materializes the bundled synthetic corpus (3 topics, ~10 articles each)
/// together with matching LLM, embedding and Wikidata fixtures under `root`.
/// Output is a pure function of the built-in tables: same root, same bytes.
DemoLayout write_demo_corpus(const std::filesystem::path& root);

/// Fixture-mode run configuration pointing at a materialized demo corpus.
RunConfig demo_run_config(const std::filesystem::path& root,
                          const std::filesystem::path& out_dir);

}  // namespace sunset

#include "doctest.h"
#include "json.hpp"
#include "sunset/evaluation.hpp"
#include "sunset/util.hpp"
#include "test_util.hpp"

using namespace sunset;
using sunset::testing::TempDir;

namespace {

Timeline timeline_of(std::vector<std::pair<Date, std::vector<std::string>>> entries) {
  Timeline tl;
  for (auto& [date, sentences] : entries) tl.entries.push_back({date, sentences});
  tl.date_count = static_cast<int>(tl.entries.size());
  tl.sentences_per_date = 3;
  return tl;
}

const Date d1{2020, 1, 1};
const Date d2{2020, 1, 2};
const Date d3{2020, 1, 3};

}  // namespace

TEST_CASE("tokenize lowercases and splits on non-alphanumerics") {
  CHECK(tokenize("The cat sat.") == std::vector<std::string>{"the", "cat", "sat"});
  CHECK(tokenize("Hello, World! 42") == std::vector<std::string>{"hello", "world", "42"});
  CHECK(tokenize("") == std::vector<std::string>{});
  CHECK(tokenize("  spaced   out  ") == std::vector<std::string>{"spaced", "out"});
}

TEST_CASE("ngram_counts stay within sentence boundaries") {
  const auto uni = ngram_counts({"the cat sat", "the dog"}, 1);
  CHECK(uni.total == 5);
  CHECK(uni.counts.at({"the"}) == 2);
  const auto bi = ngram_counts({"the cat sat", "the dog"}, 2);
  CHECK(bi.total == 3);  // 2 bigrams + 1 bigram; none across the boundary
  CHECK(bi.counts.at({"the", "cat"}) == 1);
  CHECK_FALSE(bi.counts.contains({"sat", "the"}));
}

TEST_CASE("rouge_f1 uses clipped overlap") {
  const auto hyp = ngram_counts({"the cat sat"}, 1);
  const auto ref = ngram_counts({"the cat ran"}, 1);
  CHECK(rouge_f1(hyp, ref) == doctest::Approx(2.0 / 3.0).epsilon(1e-4));
  CHECK(rouge_f1(hyp, hyp) == doctest::Approx(1.0));
  const auto disjoint = ngram_counts({"dogs bark loudly"}, 1);
  CHECK(rouge_f1(hyp, disjoint) == doctest::Approx(0.0));
  CHECK(rouge_f1(ngram_counts({}, 1), ref) == 0.0);
  // Clipping: repeated hypothesis tokens only count up to the reference count.
  const auto repeat = ngram_counts({"the the the"}, 1);
  const double p = 1.0 / 3.0, r = 1.0 / 3.0;
  CHECK(rouge_f1(repeat, ref) == doctest::Approx(2 * p * r / (p + r)).epsilon(1e-9));
}

TEST_CASE("align_by_date pairs exact dates only") {
  const auto hyp = timeline_of({{d1, {"a"}}, {d2, {"b"}}});
  const auto ref = timeline_of({{d2, {"c"}}, {d3, {"d"}}});
  const auto pairs = align_by_date(hyp, ref);
  REQUIRE(pairs.size() == 1);
  CHECK(pairs[0] == std::pair<std::size_t, std::size_t>{1, 0});

  CHECK(align_by_date(hyp, hyp).size() == 2);
  const auto disjoint = timeline_of({{d3, {"x"}}});
  CHECK(align_by_date(hyp, disjoint).empty());
}

TEST_CASE("alignment_rouge micro-averages with unmatched mass in denominators") {
  SUBCASE("identical timelines score 1") {
    const auto tl = timeline_of({{d1, {"the cat sat"}}, {d2, {"dogs bark"}}});
    CHECK(alignment_rouge(tl, tl, 1) == doctest::Approx(1.0));
    CHECK(alignment_rouge(tl, tl, 2) == doctest::Approx(1.0));
  }
  SUBCASE("disjoint dates score 0") {
    const auto hyp = timeline_of({{d1, {"the cat sat"}}});
    const auto ref = timeline_of({{d2, {"the cat sat"}}});
    CHECK(alignment_rouge(hyp, ref, 1) == doctest::Approx(0.0));
  }
  SUBCASE("hand-scored 2-date case") {
    const auto hyp = timeline_of({{d1, {"the cat sat"}}, {d2, {"birds fly south"}}});
    const auto ref = timeline_of({{d1, {"the cat ran"}}, {d3, {"fish swim"}}});
    // Aligned pair at d1 overlaps 2 unigrams; hyp total 6, ref total 5.
    const double p = 2.0 / 6.0, r = 2.0 / 5.0;
    CHECK(alignment_rouge(hyp, ref, 1) == doctest::Approx(2 * p * r / (p + r)).epsilon(1e-9));
  }
}

TEST_CASE("date_f1 is the F1 over date sets") {
  const auto hyp = timeline_of({{d1, {"a"}}, {d2, {"b"}}});
  const auto ref = timeline_of({{d2, {"c"}}, {d3, {"d"}}});
  CHECK(date_f1(hyp, ref) == doctest::Approx(0.5));
  CHECK(date_f1(hyp, hyp) == doctest::Approx(1.0));
  CHECK(date_f1(timeline_of({}), ref) == 0.0);
  CHECK(date_f1(timeline_of({{d1, {"x"}}}), timeline_of({{d2, {"y"}}})) == 0.0);
}

TEST_CASE("evaluate_timeline averages over ground truths") {
  const auto hyp = timeline_of({{d1, {"the cat sat"}}, {d2, {"dogs bark loudly"}}});

  SUBCASE("identity against a single truth") {
    const auto report = evaluate_timeline(hyp, {hyp});
    CHECK(report.ar1 == doctest::Approx(1.0));
    CHECK(report.ar2 == doctest::Approx(1.0));
    CHECK(report.date_f1 == doctest::Approx(1.0));
    REQUIRE(report.per_truth.size() == 1);
  }
  SUBCASE("identity against one of two truths shows in the breakdown") {
    const auto other = timeline_of({{d3, {"completely different words"}}});
    const auto report = evaluate_timeline(hyp, {other, hyp});
    REQUIRE(report.per_truth.size() == 2);
    CHECK(report.per_truth[1].ar1 == doctest::Approx(1.0));
    CHECK(report.per_truth[1].date_f1 == doctest::Approx(1.0));
    CHECK(report.per_truth[0].ar1 == doctest::Approx(0.0));
    CHECK(report.ar1 == doctest::Approx(0.5));
    CHECK(report.date_f1 == doctest::Approx(0.5));
  }
  SUBCASE("hand-scored toy 2-date case") {
    const auto ref = timeline_of({{d1, {"the cat ran"}}, {d3, {"fish swim"}}});
    const auto report = evaluate_timeline(hyp, {ref});
    const double p1 = 2.0 / 6.0, r1 = 2.0 / 5.0;
    CHECK(report.ar1 == doctest::Approx(2 * p1 * r1 / (p1 + r1)).epsilon(1e-9));
    // Bigrams: aligned pair shares "the cat"; hyp 4 bigrams, ref 3.
    const double p2 = 1.0 / 4.0, r2 = 1.0 / 3.0;
    CHECK(report.ar2 == doctest::Approx(2 * p2 * r2 / (p2 + r2)).epsilon(1e-9));
    CHECK(report.date_f1 == doctest::Approx(0.5));
  }
}

TEST_CASE("save_report writes the per-truth breakdown") {
  TempDir tmp;
  EvalReport report;
  report.ar1 = 0.25;
  report.ar2 = 0.125;
  report.date_f1 = 0.5;
  report.per_truth = {{0.25, 0.125, 0.5}};
  const auto path = tmp / "eval.json";
  save_report(report, path);
  const auto doc = nlohmann::json::parse(read_file(path));
  CHECK(doc["ar1"].get<double>() == doctest::Approx(0.25));
  CHECK(doc["per_truth"].size() == 1);
  CHECK(doc["per_truth"][0]["date_f1"].get<double>() == doctest::Approx(0.5));
}

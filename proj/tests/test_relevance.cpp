#include <cmath>
#include <random>

#include "doctest.h"
#include "sunset/errors.hpp"
#include "sunset/relevance.hpp"
#include "test_util.hpp"

using namespace sunset;
using sunset::testing::make_stats;
using sunset::testing::make_triplet;

namespace {

Topic topic_with_articles(const std::string& id, int n) {
  Topic t;
  t.id = id;
  for (int i = 0; i < n; ++i) {
    t.articles.push_back({id + std::to_string(i), id, Date{2020, 1, 1}, "Body."});
  }
  return t;
}

}  // namespace

TEST_CASE("compute_stats counts triplet mentions per topic") {
  const std::vector<Topic> topics = {topic_with_articles("A", 2), topic_with_articles("B", 2),
                                     topic_with_articles("C", 2)};
  std::vector<SetTriplet> sets;
  for (int i = 0; i < 3; ++i) {
    sets.push_back(make_triplet("A", "A" + std::to_string(i % 2), "E.", Date{2020, 1, 1},
                                {"Q1"}));
  }
  sets.push_back(make_triplet("A", "A0", "E.", Date{2020, 1, 1}, {"Q2"}));
  sets.push_back(make_triplet("B", "B0", "E.", Date{2020, 1, 1}, {"Q2"}));
  sets.push_back(make_triplet("C", "C0", "E.", Date{2020, 1, 1}, {"Q2"}));

  const auto stats = compute_stats(sets, topics);

  // Q1: 3 mentions in A only -> counts {A:3,B:0,C:0}, mean 1, std sqrt(3).
  const auto& q1 = stats.at("Q1");
  CHECK(q1.counts_by_topic == std::map<std::string, long>{{"A", 3}, {"B", 0}, {"C", 0}});
  CHECK(q1.total_count == 3);
  CHECK(q1.cross_topic_mean == doctest::Approx(1.0));
  CHECK(q1.cross_topic_std == doctest::Approx(std::sqrt(3.0)).epsilon(1e-9));
  CHECK(q1.article_df == 2);  // A0 and A1
  CHECK(q1.topic_universe_size == 3);
  CHECK(q1.corpus_article_count == 6);

  // Q2: 1 each -> mean 1, std 0.
  const auto& q2 = stats.at("Q2");
  CHECK(q2.cross_topic_mean == doctest::Approx(1.0));
  CHECK(q2.cross_topic_std == doctest::Approx(0.0));
  CHECK(q2.article_df == 3);

  CHECK_FALSE(stats.contains("Q3"));  // never mentioned -> absent

  // Unknown topic reference is an integrity error.
  auto bad = sets;
  bad.push_back(make_triplet("Z", "Z0", "E.", Date{2020, 1, 1}, {"Q1"}));
  CHECK_THROWS_AS(compute_stats(bad, topics), IntegrityError);
}

TEST_CASE("reward is the dampened tanh") {
  CHECK(reward(0) == doctest::Approx(0.0));
  CHECK(reward(10) == doctest::Approx(0.761594).epsilon(1e-6));
  CHECK(reward(21) == doctest::Approx(0.970452).epsilon(1e-6));
  CHECK(reward(40) - reward(21) < 0.03);  // saturation
  // Non-decreasing and never above 1 on 0..1000; strictly below 1 and
  // strictly increasing while the gap to 1 is still representable in double.
  for (long x = 1; x <= 1000; ++x) {
    CHECK(reward(x) >= reward(x - 1));
    CHECK(reward(x) <= 1.0);
  }
  for (long x = 1; x <= 170; ++x) {
    CHECK(reward(x) > reward(x - 1));
    CHECK(reward(x) < 1.0);
  }
}

TEST_CASE("penalty_cv matches hand-computed values") {
  CHECK(penalty_cv(make_stats("q", {{"A", 3}, {"B", 0}, {"C", 0}}), "A") ==
        doctest::Approx(1.0).epsilon(1e-12));
  CHECK(penalty_cv(make_stats("q", {{"A", 5}, {"B", 5}, {"C", 5}}), "B") ==
        doctest::Approx(0.0));
  // mean 24.3333, sample std 26.2742, share 54/73.
  CHECK(penalty_cv(make_stats("q", {{"A", 15}, {"B", 4}, {"C", 54}}), "C") ==
        doctest::Approx(0.461146).epsilon(1e-5));
  // Querying a topic with zero mentions scores zero (share factor).
  CHECK(penalty_cv(make_stats("q", {{"A", 3}, {"B", 0}, {"C", 0}}), "B") ==
        doctest::Approx(0.0));
}

TEST_CASE("penalty_cv rejects undefined inputs") {
  CHECK_THROWS_AS(penalty_cv(make_stats("q", {{"A", 1}}), "A"), ConfigError);
  CHECK_THROWS_AS(penalty_cv(make_stats("q", {{"A", 0}, {"B", 0}}), "A"), ValidationError);
}

TEST_CASE("penalty_cv stays within its proven [0,1] bound") {
  std::mt19937 rng(20240817);
  std::uniform_int_distribution<int> universe(2, 50);
  std::uniform_int_distribution<long> count(0, 500);
  for (int trial = 0; trial < 10000; ++trial) {
    const int d = universe(rng);
    std::map<std::string, long> counts;
    long total = 0;
    for (int i = 0; i < d; ++i) {
      const long c = count(rng);
      counts["t" + std::to_string(i)] = c;
      total += c;
    }
    if (total == 0) counts["t0"] = 1;
    const auto stats = make_stats("q", counts);
    for (const auto& [topic, _] : counts) {
      const double p = penalty_cv(stats, topic);
      REQUIRE(p >= 0.0);
      REQUIRE(p <= 1.0 + 1e-12);
    }
  }
  // Single-topic mass attains the bound exactly.
  CHECK(penalty_cv(make_stats("q", {{"A", 7}, {"B", 0}, {"C", 0}, {"D", 0}}), "A") ==
        doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("penalty_idf_raw follows the smoothed BM25 formula") {
  CHECK(penalty_idf_raw(make_stats("q", {{"A", 1}}, 5, 100), IdfLogBase::natural) ==
        doctest::Approx(std::log(95.5 / 5.5)).epsilon(1e-9));  // 2.8544
  CHECK(penalty_idf_raw(make_stats("q", {{"A", 1}}, 100, 100), IdfLogBase::natural) < 0.0);
  CHECK(penalty_idf_raw(make_stats("q", {{"A", 1}}, 50, 100), IdfLogBase::natural) ==
        doctest::Approx(std::log(50.5 / 50.5)).epsilon(1e-12));
  CHECK(penalty_idf_raw(make_stats("q", {{"A", 1}}, 5, 100), IdfLogBase::ten) ==
        doctest::Approx(std::log10(95.5 / 5.5)).epsilon(1e-9));
  CHECK_THROWS_AS(penalty_idf_raw(make_stats("q", {{"A", 1}}, 101, 100), IdfLogBase::natural),
                  ValidationError);
}

TEST_CASE("relevance composes beta, penalty and reward") {
  const auto stats = make_stats("q", {{"A", 3}, {"B", 0}, {"C", 0}});
  RelevanceParams params;
  CHECK(relevance(stats, "A", params) == doctest::Approx(0.291313).epsilon(1e-5));
  params.beta = 0.5;
  CHECK(relevance(stats, "A", params) == doctest::Approx(0.5 * 0.291313).epsilon(1e-5));
  params.beta = 0;
  CHECK(relevance(stats, "A", params) == 0.0);
  params.beta = 1;
  params.variant = PenaltyVariant::idf;
  CHECK_THROWS_AS(relevance(stats, "A", params), ConfigError);
}

TEST_CASE("relevance is linear in beta") {
  std::mt19937 rng(7);
  std::uniform_int_distribution<long> count(0, 40);
  for (int trial = 0; trial < 200; ++trial) {
    std::map<std::string, long> counts{{"A", count(rng)}, {"B", count(rng)},
                                       {"C", count(rng)}};
    if (counts["A"] + counts["B"] + counts["C"] == 0) counts["A"] = 1;
    const auto stats = make_stats("q", counts);
    const double base = relevance(stats, "A", {1.0, PenaltyVariant::cv});
    for (double beta : {0.25, 0.5, 2.0}) {
      CHECK(relevance(stats, "A", {beta, PenaltyVariant::cv}) ==
            doctest::Approx(beta * base).epsilon(1e-12));
    }
  }
}

TEST_CASE("scenario table ordering holds") {
  // Twelve distribution scenarios over three topics: single peaks dominate,
  // double peaks land in the middle, spread-out cases stay low.
  const std::vector<std::map<std::string, long>> scenarios = {
      {{"A", 2}, {"B", 3}, {"C", 5}},     // 0: close, low counts
      {{"A", 90}, {"B", 85}, {"C", 65}},  // 1: close, high counts
      {{"A", 5}, {"B", 5}, {"C", 5}},     // 2: uniform, low
      {{"A", 16}, {"B", 16}, {"C", 16}},  // 3: uniform, high
      {{"A", 15}, {"B", 4}, {"C", 54}},   // 4: single peak, high count
      {{"A", 1}, {"B", 8}, {"C", 2}},     // 5: single peak, low count
      {{"A", 6}, {"B", 7}, {"C", 1}},     // 6: double peaks, low counts
      {{"A", 21}, {"B", 19}, {"C", 3}},   // 7: double peaks, high counts
      {{"A", 3}, {"B", 0}, {"C", 0}},     // 8: all mass, low count
      {{"A", 19}, {"B", 0}, {"C", 0}},    // 9: all mass, high count
      {{"A", 6}, {"B", 3}, {"C", 3}},     // 10: peak with rest at half
      {{"A", 26}, {"B", 13}, {"C", 13}},  // 11: peak with rest at half
  };
  auto peak_topic = [](const std::map<std::string, long>& counts) {
    std::string best;
    long best_count = -1;
    for (const auto& [t, c] : counts) {
      if (c > best_count) {
        best = t;
        best_count = c;
      }
    }
    return best;
  };
  std::vector<double> peak(scenarios.size());
  for (std::size_t i = 0; i < scenarios.size(); ++i) {
    peak[i] = penalty_cv(make_stats("q", scenarios[i]), peak_topic(scenarios[i]));
  }
  // Selected hand values.
  CHECK(peak[4] == doctest::Approx(0.461146).epsilon(1e-5));
  CHECK(peak[5] == doctest::Approx(0.433541).epsilon(1e-5));
  CHECK(peak[8] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(peak[9] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(peak[6] == doctest::Approx(0.198847).epsilon(1e-5));
  CHECK(peak[0] == doctest::Approx(0.132288).epsilon(1e-5));

  for (std::size_t hi : {4, 5, 8, 9}) {
    for (std::size_t lo : {0, 1, 2, 3, 10, 11}) {
      for (const auto& [t, _] : scenarios[lo]) {
        CHECK(peak[hi] > penalty_cv(make_stats("q", scenarios[lo]), t));
      }
    }
  }
  for (std::size_t mid : {6, 7}) {
    for (std::size_t hi : {4, 5, 8, 9}) CHECK(peak[mid] < peak[hi]);
    for (std::size_t lo : {0, 1, 2, 3, 10, 11}) {
      for (const auto& [t, _] : scenarios[lo]) {
        CHECK(peak[mid] > penalty_cv(make_stats("q", scenarios[lo]), t));
      }
    }
  }
  // Full relevance separates the two single-topic cases through the reward.
  const RelevanceParams unit;
  CHECK(relevance(make_stats("q", scenarios[9]), "A", unit) >
        relevance(make_stats("q", scenarios[8]), "A", unit));
}

TEST_CASE("RelevanceTable handles both variants and the beta=0 shortcut") {
  const std::vector<Topic> topics = {topic_with_articles("A", 3), topic_with_articles("B", 3),
                                     topic_with_articles("C", 3)};
  const std::vector<SetTriplet> sets = {
      make_triplet("A", "A0", "E.", Date{2020, 1, 1}, {"Q1", "Q2"}),
      make_triplet("A", "A1", "E.", Date{2020, 1, 2}, {"Q1"}),
      make_triplet("B", "B0", "E.", Date{2020, 1, 3}, {"Q2"}),
  };
  const auto stats = compute_stats(sets, topics);

  SUBCASE("cv variant matches the scalar function") {
    const auto table = RelevanceTable::build(stats, {1.0, PenaltyVariant::cv});
    CHECK(table.rel("A", "Q1") ==
          doctest::Approx(relevance(stats.at("Q1"), "A", {1.0, PenaltyVariant::cv})));
    CHECK(table.rel("A", "unknown") == 0.0);
    CHECK(table.rel("C", "Q1") == 0.0);  // zero-count topic
  }
  SUBCASE("beta=0 zeroes everything") {
    const auto table = RelevanceTable::build(stats, {0.0, PenaltyVariant::cv});
    CHECK(table.rel("A", "Q1") == 0.0);
  }
  SUBCASE("idf variant min-max normalizes the raw idf per run") {
    const auto table = RelevanceTable::build(stats, {1.0, PenaltyVariant::idf});
    // Q1 (df 2) is rarer than Q2 (df 2)? Both df 2 -> identical raw idf ->
    // normalization collapses to 1.0 for all ids.
    CHECK(stats.at("Q1").article_df == stats.at("Q2").article_df);
    CHECK(table.rel("A", "Q1") == doctest::Approx(1.0 * reward(2)).epsilon(1e-12));
    CHECK(table.rel("B", "Q2") == doctest::Approx(1.0 * reward(1)).epsilon(1e-12));
  }
  SUBCASE("idf normalization maps min to 0 and max to 1") {
    auto lo = make_stats("rare", {{"A", 1}, {"B", 0}}, 1, 100);
    auto hi = make_stats("common", {{"A", 50}, {"B", 0}}, 90, 100);
    auto mid = make_stats("middling", {{"A", 10}, {"B", 0}}, 30, 100);
    StatsMap handmade{{"rare", lo}, {"common", hi}, {"middling", mid}};
    const auto table = RelevanceTable::build(handmade, {1.0, PenaltyVariant::idf});
    CHECK(table.rel("A", "rare") == doctest::Approx(reward(1)).epsilon(1e-12));
    CHECK(table.rel("A", "common") == doctest::Approx(0.0));
    const double raw_lo = penalty_idf_raw(hi, IdfLogBase::natural);
    const double raw_hi = penalty_idf_raw(lo, IdfLogBase::natural);
    const double raw_mid = penalty_idf_raw(mid, IdfLogBase::natural);
    const double expected = (raw_mid - raw_lo) / (raw_hi - raw_lo) * reward(10);
    CHECK(table.rel("A", "middling") == doctest::Approx(expected).epsilon(1e-12));
  }
}

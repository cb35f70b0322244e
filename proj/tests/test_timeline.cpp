#include <map>
#include <random>

#include "doctest.h"
#include "sunset/timeline.hpp"
#include "test_util.hpp"

using namespace sunset;
using sunset::testing::make_triplet;

namespace {

RelLookup table_rel(std::map<std::string, double> table) {
  return [table = std::move(table)](const std::string& id) {
    auto it = table.find(id);
    return it == table.end() ? 0.0 : it->second;
  };
}

EventGraph graph_of(int n, std::vector<WeightedEdge> edges) {
  EventGraph g;
  g.node_count = n;
  g.edges = std::move(edges);
  return g;
}

// Long-horizon power iteration used as the TextRank oracle.
std::map<int, double> power_iteration_oracle(const Cluster& cluster,
                                             const EventGraph& graph, double damping) {
  const auto& members = cluster.member_indices;
  const int n = static_cast<int>(members.size());
  std::map<int, int> pos;
  for (int i = 0; i < n; ++i) pos[members[i]] = i;

  std::vector<std::vector<std::pair<int, double>>> adj(n);
  std::vector<double> outsum(n, 0.0);
  for (const auto& e : graph.edges) {
    auto a = pos.find(e.i), b = pos.find(e.j);
    if (a == pos.end() || b == pos.end()) continue;
    adj[a->second].push_back({b->second, e.weight});
    adj[b->second].push_back({a->second, e.weight});
    outsum[a->second] += e.weight;
    outsum[b->second] += e.weight;
  }
  std::vector<double> s(n, 1.0 / n), next(n);
  for (int iter = 0; iter < 10000; ++iter) {
    for (int i = 0; i < n; ++i) {
      double mass = 0;
      for (const auto& [j, w] : adj[i]) mass += s[j] * w / outsum[j];
      next[i] = (1.0 - damping) / n + damping * mass;
    }
    s.swap(next);
  }
  std::map<int, double> out;
  for (int i = 0; i < n; ++i) out[members[i]] = s[i];
  return out;
}

}  // namespace

TEST_CASE("cluster_stakeholders is the union over members") {
  const std::vector<SetTriplet> sets = {
      make_triplet("t", "x", "A.", Date{2020, 1, 1}, {"a", "b"}),
      make_triplet("t", "x", "B.", Date{2020, 1, 2}, {"b", "c"}),
      make_triplet("t", "x", "C.", Date{2020, 1, 3}, {})};
  CHECK(cluster_stakeholders({{0, 1}, "t"}, sets) == std::set<std::string>{"a", "b", "c"});
  CHECK(cluster_stakeholders({{2}, "t"}, sets).empty());

  // Random members match an independent fold-union oracle.
  std::mt19937 rng(5);
  std::uniform_int_distribution<int> stakeholder(0, 9);
  std::vector<SetTriplet> many;
  for (int i = 0; i < 10; ++i) {
    std::vector<std::string> ids;
    for (int s = 0; s <= i % 4; ++s) {
      const std::string id = "Q" + std::to_string(stakeholder(rng));
      if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
    }
    many.push_back(make_triplet("t", "x", "E.", Date{2020, 1, 1 + i}, ids));
  }
  Cluster all{{0, 1, 2, 3, 4, 5, 6, 7, 8, 9}, "t"};
  std::set<std::string> oracle;
  for (int idx : all.member_indices) {
    for (const auto& id : many[idx].canonical_stakeholders) oracle.insert(id);
  }
  CHECK(cluster_stakeholders(all, many) == oracle);
}

TEST_CASE("significance follows the log-size boost times the mean relevance") {
  const std::vector<SetTriplet> sets = {
      make_triplet("t", "x", "A.", Date{2020, 1, 1}, {"a"}),
      make_triplet("t", "x", "B.", Date{2020, 1, 2}, {"a", "b"}),
      make_triplet("t", "x", "C.", Date{2020, 1, 3}, {"b"})};
  CHECK(significance({{0}, "t"}, sets, table_rel({{"a", 0.5}})) ==
        doctest::Approx(0.5).epsilon(1e-12));
  // (1 + ln 3) * (0.4 + 0.2) / 2 = 0.629584.
  CHECK(significance({{0, 1, 2}, "t"}, sets, table_rel({{"a", 0.4}, {"b", 0.2}})) ==
        doctest::Approx(0.629584).epsilon(1e-5));
  // Stakeholder-free cluster scores zero.
  const std::vector<SetTriplet> bare = {make_triplet("t", "x", "A.", Date{2020, 1, 1}, {})};
  CHECK(significance({{0}, "t"}, bare, table_rel({})) == 0.0);
}

TEST_CASE("significance ranking is invariant under positive Rel scaling") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> rel_value(0.01, 1.0);
  std::uniform_int_distribution<int> stakeholder(0, 9);

  std::vector<SetTriplet> sets;
  for (int i = 0; i < 30; ++i) {
    std::vector<std::string> ids;
    for (int s = 0; s <= i % 3; ++s) {
      const std::string id = "Q" + std::to_string(stakeholder(rng));
      if (std::find(ids.begin(), ids.end(), id) == ids.end()) ids.push_back(id);
    }
    sets.push_back(make_triplet("t", "x", "E.", Date{2020, 1, 1 + i % 28}, ids));
  }
  std::map<std::string, double> base;
  for (int i = 0; i < 10; ++i) base["Q" + std::to_string(i)] = rel_value(rng);

  std::vector<Cluster> clusters;
  for (int i = 0; i < 30; i += 3) clusters.push_back({{i, i + 1, i + 2}, "t"});

  for (double c : {0.5, 2.0, 17.0}) {
    std::map<std::string, double> scaled;
    for (const auto& [k, v] : base) scaled[k] = c * v;
    const auto r1 = rank_clusters(clusters, sets, table_rel(base));
    const auto r2 = rank_clusters(clusters, sets, table_rel(scaled));
    REQUIRE(r1.size() == r2.size());
    for (std::size_t i = 0; i < r1.size(); ++i) {
      CHECK(r1[i].cluster.member_indices == r2[i].cluster.member_indices);
    }
  }
}

TEST_CASE("textrank scores behave on canonical small graphs") {
  SUBCASE("single node scores 1") {
    const auto r = textrank_scores({{0}, "t"}, graph_of(1, {}));
    CHECK(r.scores.at(0) == doctest::Approx(1.0));
  }
  SUBCASE("two nodes with one edge split evenly") {
    const auto r = textrank_scores({{0, 1}, "t"}, graph_of(2, {{0, 1, 0.8}}));
    CHECK(r.scores.at(0) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(r.scores.at(1) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK(r.converged);
  }
  SUBCASE("center of a 3-node path ranks strictly highest") {
    const auto r = textrank_scores({{0, 1, 2}, "t"},
                                   graph_of(3, {{0, 1, 1.0}, {1, 2, 1.0}}),
                                   {0.85, 1e-12, 100000});
    CHECK(r.scores.at(1) > r.scores.at(0));
    CHECK(r.scores.at(1) > r.scores.at(2));
    CHECK(r.scores.at(0) == doctest::Approx(r.scores.at(2)).epsilon(1e-9));
    const auto oracle = power_iteration_oracle({{0, 1, 2}, "t"},
                                               graph_of(3, {{0, 1, 1.0}, {1, 2, 1.0}}), 0.85);
    for (const auto& [node, score] : oracle) {
      CHECK(r.scores.at(node) == doctest::Approx(score).epsilon(1e-6));
    }
  }
  SUBCASE("scores sum to one and match the oracle on random graphs") {
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> size(2, 20);
    std::uniform_real_distribution<double> weight(0.05, 2.0);
    std::bernoulli_distribution keep(0.3);
    for (int trial = 0; trial < 30; ++trial) {
      const int n = size(rng);
      std::vector<WeightedEdge> edges;
      std::vector<bool> touched(n, false);
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          if (keep(rng)) {
            edges.push_back({i, j, weight(rng)});
            touched[i] = touched[j] = true;
          }
        }
      }
      // Mass conservation needs every node to have at least one edge.
      for (int i = 0; i + 1 < n; ++i) {
        if (!touched[i]) {
          edges.push_back({i, i + 1, 0.5});
          touched[i] = touched[i + 1] = true;
        }
      }
      if (n > 1 && !touched[n - 1]) edges.push_back({n - 2, n - 1, 0.5});
      std::sort(edges.begin(), edges.end(),
                [](const WeightedEdge& a, const WeightedEdge& b) {
                  return std::pair(a.i, a.j) < std::pair(b.i, b.j);
                });
      const auto graph = graph_of(n, edges);
      std::vector<int> members(n);
      std::iota(members.begin(), members.end(), 0);
      const Cluster cluster{members, "t"};
      const auto r = textrank_scores(cluster, graph, {0.85, 1e-10, 100000});
      double sum = 0;
      for (const auto& [_, s] : r.scores) sum += s;
      CHECK(sum == doctest::Approx(1.0).epsilon(1e-4));
      const auto oracle = power_iteration_oracle(cluster, graph, 0.85);
      for (const auto& [node, score] : oracle) {
        CHECK(r.scores.at(node) == doctest::Approx(score).epsilon(1e-6));
      }
    }
  }
}

TEST_CASE("representative_date is the mode with earliest tie-break") {
  const std::vector<SetTriplet> sets = {
      make_triplet("t", "x", "A.", Date{2020, 1, 5}, {}),
      make_triplet("t", "x", "B.", Date{2020, 1, 5}, {}),
      make_triplet("t", "x", "C.", Date{2020, 1, 2}, {}),
      make_triplet("t", "x", "D.", Date{2020, 1, 9}, {}),
      make_triplet("t", "x", "E.", Date{2020, 1, 2}, {})};
  CHECK(representative_date({{0, 1, 2}, "t"}, sets) == Date{2020, 1, 5});
  // Tie between 2020-01-05 (x2) and 2020-01-02 (x2): earliest wins.
  CHECK(representative_date({{0, 1, 2, 3, 4}, "t"}, sets) == Date{2020, 1, 2});
}

TEST_CASE("rank_clusters falls back to size order when every score is zero") {
  const std::vector<SetTriplet> sets = {
      make_triplet("t", "x", "A.", Date{2020, 1, 3}, {}),
      make_triplet("t", "x", "B.", Date{2020, 1, 2}, {}),
      make_triplet("t", "x", "C.", Date{2020, 1, 1}, {}),
      make_triplet("t", "x", "D.", Date{2020, 1, 4}, {})};
  const std::vector<Cluster> clusters = {{{0}, "t"}, {{1, 2}, "t"}, {{3}, "t"}};
  const auto ranked = rank_clusters(clusters, sets, table_rel({}));
  REQUIRE(ranked.size() == 3);
  CHECK(ranked[0].cluster.member_indices == std::vector<int>{1, 2});  // biggest first
  // Equal-size singletons: earliest representative date first.
  CHECK(ranked[1].cluster.member_indices == std::vector<int>{0});
  CHECK(ranked[2].cluster.member_indices == std::vector<int>{3});
}

TEST_CASE("split_sentences keeps terminators and trailing fragments") {
  CHECK(split_sentences("One. Two! Three?") ==
        std::vector<std::string>{"One.", "Two!", "Three?"});
  CHECK(split_sentences("Only one sentence.") ==
        std::vector<std::string>{"Only one sentence."});
  CHECK(split_sentences("No terminator at all") ==
        std::vector<std::string>{"No terminator at all"});
  CHECK(split_sentences("Version 2.5 shipped. Later.") ==
        std::vector<std::string>{"Version 2.5 shipped.", "Later."});
}

TEST_CASE("assemble_timeline applies the greedy budget") {
  const std::vector<SetTriplet> sets = {
      make_triplet("t", "x", "First event. Extra detail. Third sentence.",
                   Date{2020, 1, 1}, {"a"}),
      make_triplet("t", "x", "Second event.", Date{2020, 1, 1}, {"a"}),
      make_triplet("t", "x", "Other day event.", Date{2020, 1, 2}, {"b"})};

  SUBCASE("one cluster, L=1, k=1 takes the top event's first sentence") {
    const auto ranked = rank_clusters({{{0, 1}, "t"}}, sets, table_rel({{"a", 0.5}}));
    const auto graph = graph_of(3, {{0, 1, 1.0}});
    std::map<int, double> scores;
    for (const auto& rc : ranked) {
      for (const auto& [k, v] : textrank_scores(rc.cluster, graph).scores) scores[k] = v;
    }
    const auto tl = assemble_timeline(ranked, sets, scores, {1, 1});
    REQUIRE(tl.entries.size() == 1);
    CHECK(tl.entries[0].date == Date{2020, 1, 1});
    REQUIRE(tl.entries[0].sentences.size() == 1);
    CHECK(tl.entries[0].sentences[0] == "First event.");
  }
  SUBCASE("same-representative-date clusters are skipped, next date used") {
    // Two singleton clusters on 2020-01-01 and one on 2020-01-02.
    const std::vector<Cluster> clusters = {{{0}, "t"}, {{1}, "t"}, {{2}, "t"}};
    const auto ranked =
        rank_clusters(clusters, sets, table_rel({{"a", 0.9}, {"b", 0.1}}));
    std::map<int, double> scores{{0, 1.0}, {1, 1.0}, {2, 1.0}};
    const auto tl = assemble_timeline(ranked, sets, scores, {2, 1});
    REQUIRE(tl.entries.size() == 2);
    CHECK(tl.entries[0].date == Date{2020, 1, 1});
    CHECK(tl.entries[1].date == Date{2020, 1, 2});
  }
  SUBCASE("L larger than the distinct dates emits all without fabricating") {
    const std::vector<Cluster> clusters = {{{0, 1}, "t"}, {{2}, "t"}};
    const auto ranked =
        rank_clusters(clusters, sets, table_rel({{"a", 0.9}, {"b", 0.1}}));
    std::map<int, double> scores{{0, 0.5}, {1, 0.5}, {2, 1.0}};
    const auto tl = assemble_timeline(ranked, sets, scores, {10, 2});
    CHECK(tl.entries.size() == 2);
  }
}

#include <doctest.h>

#include <algorithm>
#include <set>

#include "seqshare/optimizer.hpp"
#include "seqshare/resolution.hpp"
#include "test_util.hpp"

using namespace seqshare;
using testutil::make_candidate;

namespace {

int find_vertex(const ConflictGraph& g, const std::string& pattern) {
  for (int v = 0; v < static_cast<int>(g.size()); ++v)
    if (g.vertices[v].pattern.str() == pattern) return v;
  REQUIRE(false);
  return -1;
}

bool has_option(const OptionSet& set, const std::vector<std::string>& queries) {
  for (const auto& o : set.options)
    if (o.queries == queries) return true;
  return false;
}

std::uint64_t binom(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  std::uint64_t r = 1;
  for (std::uint64_t i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
  return r;
}

}  // namespace

TEST_CASE("expanding the most-shared traffic candidate") {
  ConflictGraph g = build_graph(testutil::traffic_candidates());
  int p1 = find_vertex(g, "OakSt,MainSt");
  OptionSet set = expand_candidate(g, p1);
  CHECK(set.pattern.str() == "OakSt,MainSt");
  CHECK(set.options.front().queries ==
        std::vector<std::string>{"q1", "q2", "q3", "q4"});
  CHECK(has_option(set, {"q1", "q2"}));  // drops q3,q4, resolving p2 and p3
  CHECK(has_option(set, {"q1", "q3"}));

  // the (q1,q3) option no longer conflicts with p4 or p5
  SharingCandidate opt = make_candidate("OakSt,MainSt", {"q1", "q3"}, 25);
  CHECK_FALSE(conflicts(opt, g.vertices[find_vertex(g, "MainSt,WestSt")]));
  CHECK_FALSE(
      conflicts(opt, g.vertices[find_vertex(g, "OakSt,MainSt,WestSt")]));
}

TEST_CASE("a conflict-free candidate expands to itself only") {
  ConflictGraph g = build_graph(testutil::traffic_candidates());
  OptionSet set = expand_candidate(g, find_vertex(g, "StateSt,HighSt"));
  REQUIRE(set.options.size() == 1);
  CHECK(set.options[0].queries == std::vector<std::string>{"q6", "q7"});
}

TEST_CASE("two-query candidates cannot shed queries") {
  ConflictGraph g = build_graph(testutil::traffic_candidates());
  for (const char* p :
       {"ParkAve,OakSt", "ParkAve,OakSt,MainSt", "MainSt,WestSt",
        "OakSt,MainSt,WestSt", "MainSt,StateSt"}) {
    OptionSet set = expand_candidate(g, find_vertex(g, p));
    CHECK(set.options.size() == 1);
  }
}

TEST_CASE("graph expansion keeps originals and only adds p1 options") {
  ConflictGraph g = build_graph(testutil::traffic_candidates());
  ConflictGraph x = expand_graph(g);
  // 6 unexpandable candidates + every >=2-query subset of p1's four queries
  CHECK(x.size() == 6 + 11);
  for (const auto& v : g.vertices) {
    bool present = false;
    for (const auto& u : x.vertices)
      if (u.same_identity(v)) present = true;
    CHECK(present);
  }
  // options of one pattern sharing a query conflict with each other
  int a = -1, b = -1;
  for (int v = 0; v < static_cast<int>(x.size()); ++v) {
    if (x.vertices[v].pattern.str() != "OakSt,MainSt") continue;
    if (x.vertices[v].queries == std::vector<std::string>{"q1", "q2"}) a = v;
    if (x.vertices[v].queries == std::vector<std::string>{"q1", "q3"}) b = v;
  }
  REQUIRE(a >= 0);
  REQUIRE(b >= 0);
  CHECK(x.has_edge(a, b));
}

TEST_CASE("the expanded traffic graph admits a better plan") {
  ConflictGraph g = build_graph(testutil::traffic_candidates());
  double before = exhaustive_optimal(g).score;
  double after = exhaustive_optimal(expand_graph(g)).score;
  CHECK(before == 50);
  CHECK(after >= before);
  // {(p1,{q1,q3}), p4, p7} alone is worth 58 under inherited weights
  CHECK(after >= 58);
}

TEST_CASE("edgeless graphs are unchanged by expansion") {
  ConflictGraph g = build_graph({make_candidate("A,B", {"q1", "q2"}, 3),
                                 make_candidate("C,D", {"q3", "q4"}, 4)});
  ConflictGraph x = expand_graph(g);
  CHECK(x.size() == 2);
  CHECK(x.edge_count() == 0);
}

TEST_CASE("single-query conflicts let both sides shed one query") {
  // two candidates conflicting via exactly one query, each with 3 queries
  auto v1 = make_candidate("A,B", {"q1", "q2", "q3"}, 5);
  auto v2 = make_candidate("B,C", {"q3", "q4", "q5"}, 6);
  ConflictGraph g = build_graph({v1, v2});
  REQUIRE(g.edge_count() == 1);
  ConflictGraph x = expand_graph(g);
  bool v1_opt = false, v2_opt = false, cross_edge = false;
  int i1 = -1, i2 = -1;
  for (int v = 0; v < static_cast<int>(x.size()); ++v) {
    if (x.vertices[v].queries == std::vector<std::string>{"q1", "q2"}) {
      v1_opt = true;
      i1 = v;
    }
    if (x.vertices[v].queries == std::vector<std::string>{"q4", "q5"}) {
      v2_opt = true;
      i2 = v;
    }
  }
  CHECK(v1_opt);
  CHECK(v2_opt);
  if (i1 >= 0 && i2 >= 0) cross_edge = x.has_edge(i1, i2);
  CHECK_FALSE(cross_edge);
}

TEST_CASE("resolve_pair splits the causing queries disjointly") {
  auto v1 = make_candidate("A,B", {"qa", "qb", "qc"}, 5);
  auto v2 = make_candidate("B,C", {"qb", "qc", "qd"}, 6);
  auto pairs = resolve_pair(v1, v2);
  bool found = false;
  for (const auto& [a, b] : pairs) {
    std::vector<std::string> inter;
    std::set_intersection(a.queries.begin(), a.queries.end(),
                          b.queries.begin(), b.queries.end(),
                          std::back_inserter(inter));
    CHECK(inter.empty());  // no causing query survives on both sides
    CHECK(a.queries.size() >= 2);
    CHECK(b.queries.size() >= 2);
    if (a.queries == std::vector<std::string>{"qa", "qc"} &&
        b.queries == std::vector<std::string>{"qb", "qd"})
      found = true;
  }
  CHECK(found);
}

TEST_CASE("resolve_pair yields nothing when both queries cause the conflict") {
  auto v1 = make_candidate("A,B", {"q1", "q2"}, 5);
  auto v2 = make_candidate("B,C", {"q1", "q2"}, 6);
  CHECK(resolve_pair(v1, v2).empty());
}

TEST_CASE("resolve_pair rejects non-conflicting candidates") {
  auto v1 = make_candidate("A,B", {"q1", "q2"}, 5);
  auto v2 = make_candidate("C,D", {"q3", "q4"}, 6);
  CHECK_THROWS_AS(resolve_pair(v1, v2), std::invalid_argument);
}

TEST_CASE("option sets respect the combinatorial size bound") {
  // |O_p| <= sum_{i=0..d} C(d,i) * sum_{j=0..k-1} C(k,j) with d the degree
  // of the candidate and k the maximal number of conflict-causing queries.
  // Query sets are kept at <= 4 ids, where subset generation stays within
  // the per-conflict combination count the bound assumes.
  std::mt19937_64 rng(43);
  std::vector<std::string> pool{"q1", "q2", "q3", "q4"};
  for (int it = 0; it < 60; ++it) {
    std::vector<SharingCandidate> cands;
    std::uniform_int_distribution<int> nc(2, 5);
    std::uniform_int_distribution<int> nq(2, 4);
    int n = nc(rng);
    for (int i = 0; i < n; ++i) {
      std::vector<std::string> qs = pool;
      std::shuffle(qs.begin(), qs.end(), rng);
      qs.resize(static_cast<std::size_t>(nq(rng)));
      // overlapping chain patterns so pattern overlap is common
      std::string pat = "X" + std::to_string(i) + ",Y,X" + std::to_string(i + 1);
      cands.push_back(make_candidate(pat, qs, 1.0 + i));
    }
    ConflictGraph g = build_graph(cands);
    for (int v = 0; v < static_cast<int>(g.size()); ++v) {
      std::size_t d = g.degree(v);
      if (d == 0) continue;
      std::size_t k = 0;
      for (int u : g.adjacency[v])
        k = std::max(k, conflict_causes(g.vertices[v], g.vertices[u]).size());
      std::uint64_t inner = 0;
      for (std::uint64_t j = 0; j + 1 <= k; ++j) inner += binom(k, j);
      std::uint64_t bound = 0;
      for (std::uint64_t i = 0; i <= d; ++i) bound += binom(d, i) * inner;
      OptionSet set = expand_candidate(g, v, {}, /*cap=*/100000);
      REQUIRE(set.options.size() <= bound);
    }
  }
}

TEST_CASE("expansion caps runaway option sets keeping the original") {
  ConflictGraph g = build_graph(testutil::traffic_candidates());
  int p1 = find_vertex(g, "OakSt,MainSt");
  OptionSet capped = expand_candidate(g, p1, {}, 3);
  CHECK(capped.options.size() <= 3);
  CHECK(capped.options.front().queries ==
        std::vector<std::string>{"q1", "q2", "q3", "q4"});
}

#include <doctest.h>

#include <fstream>
#include <map>
#include <sstream>

#include "seqshare/conflict_graph.hpp"
#include "test_util.hpp"

using namespace seqshare;
using testutil::make_candidate;

namespace {

// Index of the vertex with the given injected bvalue (fixture weights are
// distinct, so this identifies the original candidate after canonical
// sorting).
int by_weight(const ConflictGraph& g, double w) {
  for (int v = 0; v < static_cast<int>(g.size()); ++v)
    if (g.vertices[v].bvalue == w) return v;
  REQUIRE(false);
  return -1;
}

ConflictGraph load_fixture_graph() {
  std::ifstream in(testutil::fixture_path("traffic.graph"));
  REQUIRE(in.good());
  return parse_graph(in);
}

}  // namespace

TEST_CASE("conflict detection on the traffic candidates") {
  auto p1 = make_candidate("OakSt,MainSt", {"q1", "q2", "q3", "q4"}, 25);
  auto p2 = make_candidate("ParkAve,OakSt", {"q3", "q4"}, 9);
  auto p4 = make_candidate("MainSt,WestSt", {"q2", "q4"}, 15);
  auto p6 = make_candidate("MainSt,StateSt", {"q1", "q5"}, 8);
  CHECK(conflicts(p1, p2));                  // overlap at OakSt, share q3,q4
  CHECK_FALSE(conflicts(p2, p4));            // share q4 but no overlap
  CHECK_FALSE(conflicts(p4, p6));            // overlap but no shared query
  CHECK(conflict_causes(p1, p2) == std::vector<std::string>{"q3", "q4"});
  CHECK(conflict_causes(p2, p4).empty());
}

TEST_CASE("conflicts is symmetric; the graph carries no self-loops") {
  auto cands = testutil::traffic_candidates();
  for (const auto& a : cands)
    for (const auto& b : cands) CHECK(conflicts(a, b) == conflicts(b, a));
  ConflictGraph g = build_graph(cands);
  for (int v = 0; v < static_cast<int>(g.size()); ++v)
    CHECK_FALSE(g.has_edge(v, v));
}

TEST_CASE("pattern overlap covers suffix-prefix and containment") {
  auto P = [](const char* s) { return SequencePattern::parse(s); };
  CHECK(patterns_overlap(P("OakSt,MainSt"), P("ParkAve,OakSt")));
  CHECK(patterns_overlap(P("MainSt,WestSt"), P("OakSt,MainSt,WestSt")));
  CHECK(patterns_overlap(P("A,B,C,D"), P("B,C")));  // interior containment
  CHECK_FALSE(patterns_overlap(P("ParkAve,OakSt"), P("MainSt,WestSt")));
  // a single-type suffix/prefix agreement already counts as overlap
  CHECK(patterns_overlap(P("A,B"), P("B,A")));
  CHECK_FALSE(patterns_overlap(P("A,B"), P("C,D")));
}

TEST_CASE("building the graph from the traffic candidates derives 10 edges") {
  ConflictGraph g = build_graph(testutil::traffic_candidates());
  REQUIRE(g.size() == 7);
  CHECK(g.edge_count() == 10);

  std::map<double, std::size_t> degree_of_weight;
  for (int v = 0; v < static_cast<int>(g.size()); ++v)
    degree_of_weight[g.vertices[v].bvalue] = g.degree(v);
  CHECK(degree_of_weight ==
        std::map<double, std::size_t>{
            {25, 5}, {9, 3}, {12, 4}, {15, 3}, {20, 4}, {8, 1}, {18, 0}});

  // spot-check the edge set through the weight -> index map
  auto e = [&](double a, double b) {
    return g.has_edge(by_weight(g, a), by_weight(g, b));
  };
  CHECK(e(25, 9));
  CHECK(e(25, 12));
  CHECK(e(25, 15));
  CHECK(e(25, 20));
  CHECK(e(25, 8));
  CHECK(e(9, 12));
  CHECK(e(9, 20));
  CHECK(e(12, 15));
  CHECK(e(12, 20));
  CHECK(e(15, 20));
  CHECK_FALSE(e(9, 15));
  CHECK_FALSE(e(18, 25));
}

TEST_CASE("build_graph filters non-beneficial and single-query candidates") {
  std::vector<SharingCandidate> cands{
      make_candidate("A,B", {"q1", "q2"}, -5),
      make_candidate("C,D", {"q1", "q2"}, 0),
      make_candidate("E,F", {"q1"}, 10),
  };
  CHECK(build_graph(cands).size() == 0);
}

TEST_CASE("disjoint query sets yield an edgeless graph") {
  ConflictGraph g = build_graph({make_candidate("A,B", {"q1", "q2"}, 3),
                                 make_candidate("B,C", {"q3", "q4"}, 4)});
  REQUIRE(g.size() == 2);
  CHECK(g.edge_count() == 0);
}

TEST_CASE("score_max on the fixture graph") {
  ConflictGraph g = load_fixture_graph();
  CHECK(score_max(g, 2) == 38);   // p3: 12 + 8 + 18
  CHECK(score_max(g, 6) == 107);  // p7 conflicts with nothing
  ConflictGraph single =
      build_graph({make_candidate("A,B", {"q1", "q2"}, 7)});
  CHECK(score_max(single, 0) == 7);
  CHECK_THROWS_AS(score_max(single, 3), std::invalid_argument);
}

TEST_CASE("the injected fixture dump matches the derived graph") {
  ConflictGraph injected = load_fixture_graph();
  REQUIRE(injected.size() == 7);
  CHECK(injected.edge_count() == 10);
  std::vector<std::size_t> degrees;
  for (int v = 0; v < 7; ++v) degrees.push_back(injected.degree(v));
  CHECK(degrees == std::vector<std::size_t>{5, 3, 4, 3, 4, 1, 0});

  // re-deriving edges from the dumped patterns/queries agrees
  ConflictGraph derived = build_graph(injected.vertices);
  CHECK(derived.edge_count() == 10);
  std::map<double, std::size_t> inj, der;
  for (int v = 0; v < 7; ++v) {
    inj[injected.vertices[v].bvalue] = injected.degree(v);
    der[derived.vertices[v].bvalue] = derived.degree(v);
  }
  CHECK(inj == der);
}

TEST_CASE("graph dump round trip") {
  ConflictGraph g = build_graph(testutil::traffic_candidates());
  ConflictGraph back = parse_graph(dump_graph(g));
  REQUIRE(back.size() == g.size());
  CHECK(back.adjacency == g.adjacency);
  for (std::size_t v = 0; v < g.size(); ++v) {
    CHECK(back.vertices[v].pattern == g.vertices[v].pattern);
    CHECK(back.vertices[v].queries == g.vertices[v].queries);
    CHECK(back.vertices[v].bvalue == g.vertices[v].bvalue);
  }
}

TEST_CASE("parse_graph rejects malformed records") {
  CHECK_THROWS_AS(parse_graph("vertex A,B|q1,q2\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("blob 1 2\n"), ParseError);
  CHECK_THROWS_AS(parse_graph("vertex A,B|q1,q2|3\nedge 0 5\n"), ParseError);
}

TEST_CASE("every valid plan containing v scores at most score_max(v)") {
  std::mt19937_64 rng(41);
  for (int it = 0; it < 60; ++it) {
    ConflictGraph g = testutil::random_graph(rng, 10, 0.4);
    const int n = static_cast<int>(g.size());
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
      bool valid = true;
      double score = 0;
      for (int a = 0; a < n && valid; ++a) {
        if (!(mask & (1u << a))) continue;
        score += g.vertices[a].bvalue;
        for (int b = a + 1; b < n; ++b)
          if ((mask & (1u << b)) && g.has_edge(a, b)) valid = false;
      }
      if (!valid) continue;
      for (int v = 0; v < n; ++v)
        if (mask & (1u << v)) REQUIRE(score <= score_max(g, v) + 1e-9);
    }
  }
}

#ifndef SEQSHARE_CONFLICT_GRAPH_HPP
#define SEQSHARE_CONFLICT_GRAPH_HPP

#include <iosfwd>
#include <string>
#include <vector>

#include "seqshare/cost.hpp"
#include "seqshare/model.hpp"

namespace seqshare {

/// Weighted conflict graph over sharing candidates. Vertices are kept in
/// canonical order (pattern, then query set); every vertex has bvalue > 0.
struct ConflictGraph {
  std::vector<SharingCandidate> vertices;
  std::vector<std::vector<int>> adjacency;  // sorted neighbor indices

  std::size_t size() const { return vertices.size(); }
  std::size_t edge_count() const;
  std::size_t degree(int v) const { return adjacency[v].size(); }
  bool has_edge(int a, int b) const;
};

/// Two patterns overlap when some relative alignment makes them agree on a
/// non-empty common range (suffix-prefix match or containment).
bool patterns_overlap(const SequencePattern& a, const SequencePattern& b);

/// True iff the candidates share a query and their patterns overlap. With
/// unique types per query pattern, a pattern-level overlap forces the two
/// occurrences to overlap positionally in every shared query.
bool conflicts(const SharingCandidate& a, const SharingCandidate& b);

/// Queries that cause the conflict (the sorted intersection of the query
/// sets); empty when the candidates do not conflict.
std::vector<std::string> conflict_causes(const SharingCandidate& a,
                                         const SharingCandidate& b);

/// Keeps candidates with bvalue > 0 and more than one query, sorts them
/// canonically, and inserts an edge per conflicting pair.
ConflictGraph build_graph(std::vector<SharingCandidate> candidates);

/// Sum of bvalues of all vertices not adjacent to v, v included, plus the
/// supplied conflict-free credit.
double score_max(const ConflictGraph& graph, int v, double credit = 0.0);

/// Text dump: `vertex <pattern>|<q,...>|<bvalue>` lines then `edge <i> <j>`.
std::string dump_graph(const ConflictGraph& graph);
ConflictGraph parse_graph(std::istream& in);
ConflictGraph parse_graph(const std::string& text);

}  // namespace seqshare

#endif

#ifndef SEQSHARE_RESOLUTION_HPP
#define SEQSHARE_RESOLUTION_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "seqshare/conflict_graph.hpp"
#include "seqshare/cost.hpp"

namespace seqshare {

/// Query-subset options for one candidate's pattern. The original
/// candidate is always a member; every option keeps more than one query.
struct OptionSet {
  SequencePattern pattern;
  std::vector<SharingCandidate> options;
};

/// Cost model used to re-score options; both pointers may be null for
/// injected graphs, in which case an option inherits its parent's bvalue.
struct OptionScoring {
  const Workload* workload = nullptr;
  const RateTable* rates = nullptr;
};

/// Breadth-first expansion: for each conflict of v and each non-empty
/// subset of the conflict-causing queries still present in an option,
/// emit the option with that subset dropped. Truncates to the cap
/// (keeping highest-bvalue options) when the combinatorics blow up.
OptionSet expand_candidate(const ConflictGraph& graph, int v,
                           const OptionScoring& scoring = {},
                           std::size_t cap = 64);

/// Replaces every vertex by its option set and recomputes all edges.
/// Options of the same pattern that share a query are mutually
/// conflicting (one count structure per shared pattern).
ConflictGraph expand_graph(const ConflictGraph& graph,
                           const OptionScoring& scoring = {},
                           std::size_t cap = 64);

/// All pairs of options of two conflicting candidates obtained by
/// splitting the conflict-causing queries disjointly between the two
/// sides, each side keeping more than one query.
/// Throws std::invalid_argument when the candidates do not conflict.
std::vector<std::pair<SharingCandidate, SharingCandidate>> resolve_pair(
    const SharingCandidate& v1, const SharingCandidate& v2,
    const OptionScoring& scoring = {});

}  // namespace seqshare

#endif

#ifndef SEQSHARE_OPTIMIZER_HPP
#define SEQSHARE_OPTIMIZER_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "seqshare/conflict_graph.hpp"
#include "seqshare/resolution.hpp"

namespace seqshare {

/// A conflict-free set of candidates; score is the sum of bvalues.
struct SharingPlan {
  std::vector<SharingCandidate> candidates;
  double score = 0.0;
  bool fallback = false;  // produced by the greedy fallback under a deadline

  bool contains(const SequencePattern& p) const;
};

struct ReductionResult {
  ConflictGraph reduced;
  std::vector<SharingCandidate> conflict_free;  // F
  std::vector<SharingCandidate> pruned;

  double conflict_free_weight() const;
};

/// Sum over vertices of weight/(degree+1); the weight GWMIN is guaranteed
/// to reach on this graph.
double guaranteed_weight(const ConflictGraph& graph);

/// Greedy max weight/(degree+1) selection with closed-neighborhood
/// deletion. Ratio ties break toward higher weight, then canonical order.
SharingPlan gwmin(const ConflictGraph& graph);

/// Iterates to a fixpoint: isolated vertices move to F; a vertex whose
/// score_max plus the weight of F falls below min is pruned. min is the
/// guaranteed weight of the input graph and stays fixed throughout.
ReductionResult reduce_graph(const ConflictGraph& graph, double min);

/// Plans are sorted vertex-index lists. Given all valid plans of size s,
/// returns all valid plans of size s+1 by prefix-joining parent pairs and
/// checking the single new edge. Base case: parents of size 1 yield all
/// non-adjacent pairs.
std::vector<std::vector<int>> next_level(
    const ConflictGraph& graph, const std::vector<std::vector<int>>& parents);

struct FinderStats {
  std::uint64_t plans_visited = 0;  // valid plans considered, all levels
};

struct DeadlineExceeded : std::runtime_error {
  DeadlineExceeded() : std::runtime_error("plan search deadline exceeded") {}
};

/// Breadth-first traversal of the valid-plan lattice over the reduced
/// graph, one level in memory at a time. Returns the best plan joined
/// with F; the score includes the weight of F. Throws DeadlineExceeded
/// when the cooperative deadline (seconds of wall time) runs out.
SharingPlan find_optimal_plan(const ConflictGraph& reduced,
                              const std::vector<SharingCandidate>& F,
                              FinderStats* stats = nullptr,
                              std::optional<double> deadline_s = std::nullopt);

/// Full-enumeration baseline; guard |V| <= 25.
SharingPlan exhaustive_optimal(const ConflictGraph& graph);

enum class Strategy { None, Greedy, Optimal, Exhaustive };

struct OptimizeOptions {
  Strategy strategy = Strategy::Optimal;
  bool resolve_conflicts = false;
  std::optional<double> time_limit_s;  // Optimal only; fallback to greedy
  OptionScoring scoring;               // used when resolve_conflicts is set
};

struct OptimizeReport {
  SharingPlan plan;
  double guaranteed = 0.0;
  std::size_t candidates_in = 0;  // vertices after optional expansion
  std::size_t pruned = 0;
  std::size_t conflict_free = 0;
  std::uint64_t plans_visited = 0;
  double lattice_eliminated_pct = 0.0;  // 2^|V| vs 2^|reduced|
};

OptimizeReport optimize(const ConflictGraph& graph,
                        const OptimizeOptions& options);

std::string plan_to_json(const SharingPlan& plan);
SharingPlan plan_from_json(const std::string& text);

}  // namespace seqshare

#endif

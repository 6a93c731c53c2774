#ifndef SEQSHARE_EXECUTOR_HPP
#define SEQSHARE_EXECUTOR_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "seqshare/model.hpp"
#include "seqshare/optimizer.hpp"
#include "seqshare/stream.hpp"

namespace seqshare {

/// Finalized counts per (query, group, window index). Zero counts are not
/// stored; lookups of absent keys return 0.
struct WindowResults {
  std::map<std::tuple<std::string, std::string, Time>, std::uint64_t> counts;

  void add(const std::string& query, const std::string& group, Time window,
           std::uint64_t delta);
  std::uint64_t at(const std::string& query, const std::string& group,
                   Time window) const;
  bool operator==(const WindowResults&) const = default;

  /// CSV `query,group,window_start,count`, sorted, non-zero rows only.
  void write_csv(std::ostream& out, const WindowSpec& window) const;
};

/// Deterministic operation counters for benchmark comparisons.
struct ExecStats {
  std::uint64_t count_updates = 0;     // prefix-count increments
  std::uint64_t combinations = 0;      // combined-left multiplications
  std::uint64_t live_entries_peak = 0; // live per-start entries, max

  /// Internal prefix-count increments done by each shared pattern,
  /// keyed by the pattern string. Counted once regardless of how many
  /// queries subscribe.
  std::map<std::string, std::uint64_t> shared_pattern_updates;

  /// Non-shared path: per query, prefix-count increments by pattern
  /// position (position 0 is entry creation and stays 0).
  std::map<std::string, std::vector<std::uint64_t>> query_position_updates;
};

/// One piece of a query pattern under a plan. shared_index points into
/// the plan's candidate list, -1 for a private segment.
struct Segment {
  SequencePattern pattern;
  int shared_index = -1;
};

/// Splits the query pattern into non-overlapping covering segments around
/// the plan candidates that contain this query.
std::vector<Segment> build_chain(const Query& query, const SharingPlan& plan);

/// Per-query online counting with window expiration; no sharing.
WindowResults run_non_shared(const Workload& workload, const Stream& stream,
                             ExecStats* stats = nullptr);

/// Plan-guided execution: each shared pattern's per-start counts are
/// computed once for all subscribing queries, and each query assembles
/// its result left-to-right over its segment chain.
/// Throws std::invalid_argument for an invalid plan or one referencing an
/// unknown query.
WindowResults run_shared(const Workload& workload, const SharingPlan& plan,
                         const Stream& stream, ExecStats* stats = nullptr);

/// Sum of left_i * completion_i.
std::uint64_t combine_counts(
    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs);

/// Direct per-window subsequence counting; guard: <= 1000 events.
WindowResults brute_force_oracle(const Workload& workload,
                                 const Stream& stream);

}  // namespace seqshare

#endif

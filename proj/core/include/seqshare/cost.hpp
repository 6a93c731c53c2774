#ifndef SEQSHARE_COST_HPP
#define SEQSHARE_COST_HPP

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "seqshare/model.hpp"
#include "seqshare/stream.hpp"

namespace seqshare {

/// Expected events per window for each type.
struct RateTable {
  std::map<EventType, double> rates;
  WindowSpec window;

  double at(const EventType& type) const;  // throws on unknown type
};

/// A sharable pattern plus the (sorted) queries that would share it.
/// bvalue is filled by the cost model or injected from a graph dump.
struct SharingCandidate {
  SequencePattern pattern;
  std::vector<std::string> queries;
  double bvalue = 0.0;

  bool same_identity(const SharingCandidate& o) const {
    return pattern == o.pattern && queries == o.queries;
  }
};

/// Sum of per-type rates; 0 for the empty pattern.
double pattern_rate(const SequencePattern& p, const RateTable& rates);

/// Cost of evaluating the candidate's queries independently:
/// sum over q of Rate(first type of q) * Rate(q's full pattern).
double non_shared_cost(const SharingCandidate& candidate,
                       const Workload& workload, const RateTable& rates);

/// Cost of computing the shared pattern once plus, per query, the prefix
/// and suffix counting and the count-combination step. An empty prefix or
/// suffix contributes nothing to the counting term and its boundary-rate
/// factor is dropped from the combination term; with both empty the
/// combination term is 0.
double shared_cost(const SharingCandidate& candidate, const Workload& workload,
                   const RateTable& rates);

/// non_shared_cost - shared_cost; the candidate is beneficial iff > 0.
double bvalue(const SharingCandidate& candidate, const Workload& workload,
              const RateTable& rates);

/// rate(E) = (count of E events / stream duration) * window.within.
RateTable estimate_rates(const Stream& stream, const WindowSpec& window);

/// CSV lines `type,events_per_window`, overriding estimation.
RateTable read_rates(std::istream& in, const WindowSpec& window);
RateTable read_rates_file(const std::string& path, const WindowSpec& window);

}  // namespace seqshare

#endif

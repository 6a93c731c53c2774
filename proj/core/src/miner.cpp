#include "seqshare/miner.hpp"

namespace seqshare {

SharableSet mine_sharable(const Workload& workload) {
  // Pattern-growth over contiguous substrings; with unique types per
  // pattern the occurrence bookkeeping of CCSpan collapses to a table
  // from substring to containing queries.
  std::map<SequencePattern, std::set<std::string>> all;
  for (const auto& q : workload.queries) {
    const auto& t = q.pattern.types();
    for (std::size_t len = 2; len <= t.size(); ++len) {
      for (std::size_t start = 0; start + len <= t.size(); ++start) {
        SequencePattern p(std::vector<EventType>(t.begin() + start,
                                                 t.begin() + start + len));
        all[std::move(p)].insert(q.id);
      }
    }
  }
  SharableSet result;
  for (auto& [p, qs] : all) {
    if (qs.size() > 1) result.entries.emplace(p, std::move(qs));
  }
  return result;
}

}  // namespace seqshare

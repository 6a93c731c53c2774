#ifndef SEQSHARE_MINER_HPP
#define SEQSHARE_MINER_HPP

#include <map>
#include <set>
#include <string>

#include "seqshare/model.hpp"

namespace seqshare {

/// Every pattern has length > 1 and occurs in at least two queries.
struct SharableSet {
  std::map<SequencePattern, std::set<std::string>> entries;
};

/// Enumerates all contiguous sub-patterns of length > 1 of every query
/// pattern and keeps those occurring in two or more queries.
SharableSet mine_sharable(const Workload& workload);

}  // namespace seqshare

#endif

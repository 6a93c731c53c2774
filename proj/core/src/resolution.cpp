#include "seqshare/resolution.hpp"

#include <algorithm>
#include <deque>
#include <set>

namespace seqshare {

namespace {

double option_bvalue(const SequencePattern& pattern,
                     const std::vector<std::string>& queries,
                     double parent_bvalue, const OptionScoring& scoring) {
  if (scoring.workload && scoring.rates) {
    SharingCandidate opt;
    opt.pattern = pattern;
    opt.queries = queries;
    return bvalue(opt, *scoring.workload, *scoring.rates);
  }
  return parent_bvalue;
}

// All non-empty subsets of `from`, smallest first for deterministic BFS.
std::vector<std::vector<std::string>> nonempty_subsets(
    const std::vector<std::string>& from) {
  std::vector<std::vector<std::string>> out;
  std::size_t n = from.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::string> sub;
    for (std::size_t i = 0; i < n; ++i)
      if (mask & (std::size_t{1} << i)) sub.push_back(from[i]);
    out.push_back(std::move(sub));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.size() != b.size()) return a.size() < b.size();
    return a < b;
  });
  return out;
}

std::vector<std::string> minus(const std::vector<std::string>& a,
                               const std::vector<std::string>& b) {
  std::vector<std::string> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return out;
}

}  // namespace

OptionSet expand_candidate(const ConflictGraph& graph, int v,
                           const OptionScoring& scoring, std::size_t cap) {
  if (v < 0 || v >= static_cast<int>(graph.size()))
    throw std::invalid_argument("expand_candidate: vertex out of range");
  const SharingCandidate& root = graph.vertices[v];

  // Causing queries per conflict of the original candidate.
  std::vector<std::vector<std::string>> causes;
  for (int u : graph.adjacency[v])
    causes.push_back(conflict_causes(root, graph.vertices[u]));

  OptionSet set;
  set.pattern = root.pattern;
  set.options.push_back(root);
  std::set<std::vector<std::string>> seen{root.queries};

  std::deque<std::vector<std::string>> frontier{root.queries};
  while (!frontier.empty() && set.options.size() < cap) {
    auto current = frontier.front();
    frontier.pop_front();
    for (const auto& qc : causes) {
      std::vector<std::string> live;
      std::set_intersection(qc.begin(), qc.end(), current.begin(),
                            current.end(), std::back_inserter(live));
      if (live.empty()) continue;  // this conflict is already resolved
      for (const auto& drop : nonempty_subsets(live)) {
        auto remaining = minus(current, drop);
        if (remaining.size() < 2) continue;
        if (!seen.insert(remaining).second) continue;
        SharingCandidate opt;
        opt.pattern = root.pattern;
        opt.queries = remaining;
        opt.bvalue = option_bvalue(root.pattern, remaining, root.bvalue, scoring);
        set.options.push_back(std::move(opt));
        frontier.push_back(std::move(remaining));
        if (set.options.size() >= cap) break;
      }
      if (set.options.size() >= cap) break;
    }
  }
  if (set.options.size() > cap) {
    std::stable_sort(set.options.begin() + 1, set.options.end(),
                     [](const auto& a, const auto& b) { return a.bvalue > b.bvalue; });
    set.options.resize(cap);
  }
  return set;
}

ConflictGraph expand_graph(const ConflictGraph& graph,
                           const OptionScoring& scoring, std::size_t cap) {
  std::vector<SharingCandidate> all;
  for (int v = 0; v < static_cast<int>(graph.size()); ++v) {
    OptionSet set = expand_candidate(graph, v, scoring, cap);
    for (auto& opt : set.options) {
      bool dup = false;
      for (const auto& existing : all)
        if (existing.same_identity(opt)) dup = true;
      if (!dup) all.push_back(std::move(opt));
    }
  }
  // build_graph drops options whose recomputed bvalue fell to <= 0 and
  // recomputes every edge; same-pattern options sharing a query conflict
  // because their patterns trivially overlap.
  return build_graph(std::move(all));
}

std::vector<std::pair<SharingCandidate, SharingCandidate>> resolve_pair(
    const SharingCandidate& v1, const SharingCandidate& v2,
    const OptionScoring& scoring) {
  auto causing = conflict_causes(v1, v2);
  if (causing.empty())
    throw std::invalid_argument("resolve_pair: candidates are not in conflict");

  std::vector<std::pair<SharingCandidate, SharingCandidate>> out;
  std::size_t n = causing.size();
  // Disjoint split: bit set -> dropped from v1, clear -> dropped from v2.
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::string> drop1, drop2;
    for (std::size_t i = 0; i < n; ++i) {
      if (mask & (std::size_t{1} << i)) drop1.push_back(causing[i]);
      else drop2.push_back(causing[i]);
    }
    auto q1 = minus(v1.queries, drop1);
    auto q2 = minus(v2.queries, drop2);
    if (q1.size() < 2 || q2.size() < 2) continue;
    SharingCandidate a = v1, b = v2;
    a.queries = q1;
    a.bvalue = option_bvalue(a.pattern, q1, v1.bvalue, scoring);
    b.queries = q2;
    b.bvalue = option_bvalue(b.pattern, q2, v2.bvalue, scoring);
    out.emplace_back(std::move(a), std::move(b));
  }
  return out;
}

}  // namespace seqshare

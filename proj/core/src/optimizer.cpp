#include "seqshare/optimizer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <set>

#include <json.hpp>

namespace seqshare {

namespace {

bool canonical_less(const SharingCandidate& a, const SharingCandidate& b) {
  if (a.pattern != b.pattern) return a.pattern < b.pattern;
  return a.queries < b.queries;
}

double weight_of(const std::vector<SharingCandidate>& cs) {
  double w = 0;
  for (const auto& c : cs) w += c.bvalue;
  return w;
}

SharingPlan make_plan(std::vector<SharingCandidate> cs, bool fallback = false) {
  SharingPlan p;
  p.candidates = std::move(cs);
  std::sort(p.candidates.begin(), p.candidates.end(), canonical_less);
  p.score = weight_of(p.candidates);
  p.fallback = fallback;
  return p;
}

ConflictGraph remove_vertices(const ConflictGraph& g,
                              const std::vector<bool>& removed) {
  ConflictGraph out;
  std::vector<int> remap(g.size(), -1);
  for (int v = 0; v < static_cast<int>(g.size()); ++v) {
    if (removed[v]) continue;
    remap[v] = static_cast<int>(out.vertices.size());
    out.vertices.push_back(g.vertices[v]);
  }
  out.adjacency.assign(out.vertices.size(), {});
  for (int v = 0; v < static_cast<int>(g.size()); ++v) {
    if (removed[v]) continue;
    for (int u : g.adjacency[v])
      if (!removed[u]) out.adjacency[remap[v]].push_back(remap[u]);
  }
  return out;
}

}  // namespace

bool SharingPlan::contains(const SequencePattern& p) const {
  for (const auto& c : candidates)
    if (c.pattern == p) return true;
  return false;
}

double ReductionResult::conflict_free_weight() const {
  return weight_of(conflict_free);
}

double guaranteed_weight(const ConflictGraph& graph) {
  double sum = 0;
  for (int v = 0; v < static_cast<int>(graph.size()); ++v)
    sum += graph.vertices[v].bvalue /
           (static_cast<double>(graph.degree(v)) + 1.0);
  return sum;
}

SharingPlan gwmin(const ConflictGraph& graph) {
  std::vector<bool> removed(graph.size(), false);
  std::vector<int> degree(graph.size());
  for (int v = 0; v < static_cast<int>(graph.size()); ++v)
    degree[v] = static_cast<int>(graph.degree(v));

  std::vector<SharingCandidate> chosen;
  std::size_t remaining = graph.size();
  while (remaining > 0) {
    int best = -1;
    double best_ratio = -1;
    for (int v = 0; v < static_cast<int>(graph.size()); ++v) {
      if (removed[v]) continue;
      double ratio = graph.vertices[v].bvalue / (degree[v] + 1.0);
      bool better = ratio > best_ratio;
      if (!better && ratio == best_ratio && best >= 0)
        better = graph.vertices[v].bvalue > graph.vertices[best].bvalue;
      if (better) {
        best = v;
        best_ratio = ratio;
      }
    }
    chosen.push_back(graph.vertices[best]);
    // delete the closed neighborhood, fixing up surviving degrees
    std::vector<int> gone{best};
    for (int u : graph.adjacency[best])
      if (!removed[u]) gone.push_back(u);
    for (int g : gone) {
      removed[g] = true;
      --remaining;
    }
    for (int g : gone)
      for (int u : graph.adjacency[g])
        if (!removed[u]) --degree[u];
  }
  return make_plan(std::move(chosen));
}

ReductionResult reduce_graph(const ConflictGraph& graph, double min) {
  ConflictGraph g = graph;
  ReductionResult result;
  // Each removal changes degrees and score_max of the survivors, so the
  // sweep restarts on the shrunk graph until a full pass removes nothing.
  bool changed = true;
  while (changed) {
    changed = false;
    double credit = weight_of(result.conflict_free);
    for (int v = 0; v < static_cast<int>(g.size()); ++v) {
      bool free = g.degree(v) == 0;
      if (!free && score_max(g, v, credit) >= min) continue;
      if (free) result.conflict_free.push_back(g.vertices[v]);
      else result.pruned.push_back(g.vertices[v]);
      std::vector<bool> removed(g.size(), false);
      removed[v] = true;
      g = remove_vertices(g, removed);
      changed = true;
      break;
    }
  }
  result.reduced = std::move(g);
  return result;
}

std::vector<std::vector<int>> next_level(
    const ConflictGraph& graph, const std::vector<std::vector<int>>& parents) {
  std::vector<std::vector<int>> children;
  if (parents.empty()) return children;
  const std::size_t s = parents.front().size();
  for (std::size_t i = 0; i < parents.size(); ++i) {
    for (std::size_t j = i + 1; j < parents.size(); ++j) {
      const auto& a = parents[i];
      const auto& b = parents[j];
      if (!std::equal(a.begin(), a.end() - 1, b.begin())) continue;
      int va = a.back(), vb = b.back();
      if (graph.has_edge(va, vb)) continue;
      std::vector<int> child = a;
      child.push_back(vb);
      if (child[s - 1] > child[s]) std::swap(child[s - 1], child[s]);
      children.push_back(std::move(child));
    }
  }
  return children;
}

SharingPlan find_optimal_plan(const ConflictGraph& reduced,
                              const std::vector<SharingCandidate>& F,
                              FinderStats* stats,
                              std::optional<double> deadline_s) {
  using Clock = std::chrono::steady_clock;
  const auto start = Clock::now();
  auto over_deadline = [&] {
    if (!deadline_s) return false;
    return std::chrono::duration<double>(Clock::now() - start).count() >
           *deadline_s;
  };
  if (deadline_s && *deadline_s <= 0) throw DeadlineExceeded{};

  std::vector<int> best;
  double best_score = 0;
  bool have_best = false;
  std::uint64_t visited = 0;

  std::vector<std::vector<int>> level;
  for (int v = 0; v < static_cast<int>(reduced.size()); ++v)
    level.push_back({v});

  auto level_score = [&](const std::vector<int>& plan) {
    double s = 0;
    for (int v : plan) s += reduced.vertices[v].bvalue;
    return s;
  };

  while (!level.empty()) {
    for (const auto& plan : level) {
      ++visited;
      double s = level_score(plan);
      bool better = !have_best || s > best_score;
      if (!better && s == best_score)
        better = plan.size() < best.size() ||
                 (plan.size() == best.size() && plan < best);
      if (better) {
        best = plan;
        best_score = s;
        have_best = true;
      }
    }
    if (over_deadline()) throw DeadlineExceeded{};
    level = next_level(reduced, level);
  }
  if (stats) stats->plans_visited = visited;

  std::vector<SharingCandidate> cs;
  for (int v : best) cs.push_back(reduced.vertices[v]);
  for (const auto& f : F) cs.push_back(f);
  return make_plan(std::move(cs));
}

SharingPlan exhaustive_optimal(const ConflictGraph& graph) {
  if (graph.size() > 25)
    throw std::invalid_argument("exhaustive_optimal: graph too large (>25)");
  const int n = static_cast<int>(graph.size());
  std::uint32_t best_mask = 0;
  double best_score = 0;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask) {
    double score = 0;
    bool valid = true;
    for (int v = 0; v < n && valid; ++v) {
      if (!(mask & (std::uint32_t{1} << v))) continue;
      score += graph.vertices[v].bvalue;
      for (int u : graph.adjacency[v])
        if (u > v && (mask & (std::uint32_t{1} << u))) {
          valid = false;
          break;
        }
    }
    if (valid && score > best_score) {
      best_score = score;
      best_mask = mask;
    }
  }
  std::vector<SharingCandidate> cs;
  for (int v = 0; v < n; ++v)
    if (best_mask & (std::uint32_t{1} << v)) cs.push_back(graph.vertices[v]);
  return make_plan(std::move(cs));
}

OptimizeReport optimize(const ConflictGraph& graph,
                        const OptimizeOptions& options) {
  OptimizeReport report;
  if (options.strategy == Strategy::None) {
    report.candidates_in = graph.size();
    return report;  // empty plan, non-shared execution
  }

  ConflictGraph g = graph;
  if (options.resolve_conflicts) g = expand_graph(g, options.scoring);
  report.candidates_in = g.size();

  report.guaranteed = guaranteed_weight(g);

  if (options.strategy == Strategy::Exhaustive) {
    report.plan = exhaustive_optimal(g);
    return report;
  }

  ReductionResult reduction = reduce_graph(g, report.guaranteed);
  report.pruned = reduction.pruned.size();
  report.conflict_free = reduction.conflict_free.size();
  if (g.size() > 0) {
    double full = std::pow(2.0, static_cast<double>(g.size()));
    double kept = std::pow(2.0, static_cast<double>(reduction.reduced.size()));
    report.lattice_eliminated_pct = 100.0 * (1.0 - kept / full);
  }

  if (options.strategy == Strategy::Greedy) {
    SharingPlan p = gwmin(reduction.reduced);
    for (const auto& f : reduction.conflict_free) p.candidates.push_back(f);
    report.plan = make_plan(std::move(p.candidates));
    return report;
  }

  // Strategy::Optimal with greedy fallback under a deadline
  try {
    FinderStats stats;
    report.plan = find_optimal_plan(reduction.reduced, reduction.conflict_free,
                                    &stats, options.time_limit_s);
    report.plans_visited = stats.plans_visited;
  } catch (const DeadlineExceeded&) {
    SharingPlan p = gwmin(reduction.reduced);
    for (const auto& f : reduction.conflict_free) p.candidates.push_back(f);
    report.plan = make_plan(std::move(p.candidates), /*fallback=*/true);
  }
  return report;
}

std::string plan_to_json(const SharingPlan& plan) {
  nlohmann::json j;
  j["score"] = plan.score;
  j["fallback"] = plan.fallback;
  j["candidates"] = nlohmann::json::array();
  for (const auto& c : plan.candidates) {
    nlohmann::json jc;
    jc["pattern"] = c.pattern.types();
    jc["queries"] = c.queries;
    jc["bvalue"] = c.bvalue;
    j["candidates"].push_back(std::move(jc));
  }
  return j.dump(2) + "\n";
}

SharingPlan plan_from_json(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text);
  SharingPlan plan;
  plan.score = j.at("score").get<double>();
  plan.fallback = j.value("fallback", false);
  for (const auto& jc : j.at("candidates")) {
    SharingCandidate c;
    c.pattern =
        SequencePattern(jc.at("pattern").get<std::vector<std::string>>());
    c.queries = jc.at("queries").get<std::vector<std::string>>();
    std::sort(c.queries.begin(), c.queries.end());
    c.bvalue = jc.at("bvalue").get<double>();
    plan.candidates.push_back(std::move(c));
  }
  return plan;
}

}  // namespace seqshare

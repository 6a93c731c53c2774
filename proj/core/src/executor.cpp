#include "seqshare/executor.hpp"

#include <algorithm>
#include <ostream>
#include <set>

namespace seqshare {

namespace {

// Window indices containing both the match start t0 and end te.
template <typename Fn>
void for_each_window(Time t0, Time te, const WindowSpec& w, Fn&& fn) {
  Time k_max = t0 / w.slide;
  Time k_min = (te < w.within) ? 0 : (te - w.within) / w.slide + 1;
  for (Time k = k_min; k <= k_max; ++k) fn(k);
}

const std::string& group_key(const Workload& wl, const Event& e) {
  static const std::string none;
  return wl.group_by().empty() ? none : e.group;
}

void check_stream_order(const Stream& stream) {
  for (std::size_t i = 1; i < stream.events.size(); ++i)
    if (stream.events[i].time < stream.events[i - 1].time)
      throw std::invalid_argument("stream is not time-ordered");
}

}  // namespace

void WindowResults::add(const std::string& query, const std::string& group,
                        Time window, std::uint64_t delta) {
  if (delta == 0) return;
  counts[{query, group, window}] += delta;
}

std::uint64_t WindowResults::at(const std::string& query,
                                const std::string& group, Time window) const {
  auto it = counts.find({query, group, window});
  return it == counts.end() ? 0 : it->second;
}

void WindowResults::write_csv(std::ostream& out,
                              const WindowSpec& window) const {
  out << "query,group,window_start,count\n";
  for (const auto& [key, count] : counts) {
    const auto& [query, group, k] = key;
    out << query << ',' << group << ',' << k * window.slide << ',' << count
        << '\n';
  }
}

std::uint64_t combine_counts(
    const std::vector<std::pair<std::uint64_t, std::uint64_t>>& pairs) {
  std::uint64_t total = 0;
  for (const auto& [left, completion] : pairs) total += left * completion;
  return total;
}

// ---------------------------------------------------------------------------
// Non-shared method: one counting structure per query, aggregates keyed by
// START event so expiration is a prefix drop.

WindowResults run_non_shared(const Workload& workload, const Stream& stream,
                             ExecStats* stats) {
  check_stream_order(stream);
  WindowResults results;
  const WindowSpec w = workload.window();

  struct QueryState {
    const Query* q;
    std::map<EventType, std::size_t> pos;
    // group -> start time -> counts; counts[j] = matches of prefix j+1
    // starting at that time (counts[0] = number of START events there)
    std::map<std::string, std::map<Time, std::vector<std::uint64_t>>> entries;
  };
  std::vector<QueryState> states;
  for (const auto& q : workload.queries) {
    QueryState s;
    s.q = &q;
    for (std::size_t j = 0; j < q.pattern.length(); ++j)
      s.pos[q.pattern.types()[j]] = j;
    states.push_back(std::move(s));
    if (stats)
      (*stats).query_position_updates[q.id].assign(q.pattern.length(), 0);
  }

  std::uint64_t live = 0;
  std::size_t i = 0;
  while (i < stream.events.size()) {
    std::size_t batch_end = i;
    const Time t = stream.events[i].time;
    while (batch_end < stream.events.size() &&
           stream.events[batch_end].time == t)
      ++batch_end;

    for (auto& s : states) {
      // expire starts that cannot share any window with t
      for (auto& [g, entries] : s.entries) {
        while (!entries.empty() && entries.begin()->first <= t - w.within) {
          live -= entries.begin()->second[0];
          entries.erase(entries.begin());
        }
      }
      const std::size_t l = s.q->pattern.length();
      // Within one timestamp batch, updates at higher pattern positions are
      // applied first so same-time events never chain into one sequence.
      for (std::size_t j = l; j-- > 0;) {
        for (std::size_t e = i; e < batch_end; ++e) {
          const Event& ev = stream.events[e];
          auto p = s.pos.find(ev.type);
          if (p == s.pos.end() || p->second != j) continue;
          auto& entries = s.entries[group_key(workload, ev)];
          if (j == 0) {
            auto& counts = entries[t];
            if (counts.empty()) counts.assign(l, 0);
            counts[0] += 1;
            ++live;
            if (l == 1)
              for_each_window(t, t, w, [&](Time k) {
                results.add(s.q->id, group_key(workload, ev), k, 1);
              });
          } else {
            for (auto& [start, counts] : entries) {
              if (start >= t) break;
              if (stats) {
                ++stats->count_updates;
                ++stats->query_position_updates[s.q->id][j];
              }
              std::uint64_t delta = counts[j - 1];
              if (delta == 0) continue;
              if (j == l - 1) {
                for_each_window(start, t, w, [&](Time k) {
                  results.add(s.q->id, group_key(workload, ev), k, delta);
                });
              } else {
                counts[j] += delta;
              }
            }
          }
        }
      }
    }
    if (stats) stats->live_entries_peak = std::max(stats->live_entries_peak, live);
    i = batch_end;
  }
  return results;
}

// ---------------------------------------------------------------------------
// Shared method

std::vector<Segment> build_chain(const Query& query, const SharingPlan& plan) {
  struct Occ {
    std::size_t start, len;
    int cand;
  };
  std::vector<Occ> occs;
  for (int c = 0; c < static_cast<int>(plan.candidates.size()); ++c) {
    const auto& cand = plan.candidates[c];
    if (!std::binary_search(cand.queries.begin(), cand.queries.end(), query.id))
      continue;
    auto pos = find_occurrence(query.pattern, cand.pattern);
    if (!pos)
      throw std::invalid_argument("plan candidate (" + cand.pattern.str() +
                                  ") does not occur in query '" + query.id +
                                  "'");
    occs.push_back({*pos, cand.pattern.length(), c});
  }
  std::sort(occs.begin(), occs.end(),
            [](const Occ& a, const Occ& b) { return a.start < b.start; });
  for (std::size_t i = 1; i < occs.size(); ++i)
    if (occs[i].start < occs[i - 1].start + occs[i - 1].len)
      throw std::invalid_argument(
          "invalid plan: overlapping shared patterns in query '" + query.id +
          "'");

  std::vector<Segment> chain;
  const auto& types = query.pattern.types();
  std::size_t cursor = 0;
  auto emit_private = [&](std::size_t from, std::size_t to) {
    if (from >= to) return;
    Segment s;
    s.pattern = SequencePattern(
        std::vector<EventType>(types.begin() + from, types.begin() + to));
    chain.push_back(std::move(s));
  };
  for (const auto& o : occs) {
    emit_private(cursor, o.start);
    Segment s;
    s.pattern = plan.candidates[o.cand].pattern;
    s.shared_index = o.cand;
    chain.push_back(std::move(s));
    cursor = o.start + o.len;
  }
  emit_private(cursor, types.size());
  return chain;
}

namespace {

using CountMap = std::map<Time, std::uint64_t>;  // t0 -> count

// Per-start counting state of one segment pattern. Shared processors are
// owned by the plan candidate and updated once per event; private ones
// belong to a single query.
struct PatternProc {
  SequencePattern pattern;
  std::map<EventType, std::size_t> pos;
  int cand = -1;                       // >= 0 for shared processors
  std::string query_id;                // owner, private processors
  std::size_t query_offset = 0;        // segment offset in the owner pattern
  std::map<std::string, std::map<Time, std::vector<std::uint64_t>>> entries;
  std::vector<std::pair<std::size_t, std::size_t>> consumers;  // (query, seg)
};

struct QueryRt {
  const Query* q = nullptr;
  std::vector<Segment> chain;
  std::vector<int> proc;  // processor id per segment
  // pending[v]: group -> segment start time -> left-combined snapshot
  std::vector<std::map<std::string, std::map<Time, CountMap>>> pending;
  // combined[v]: group -> t0 -> count of completed segments 0..v
  std::vector<std::map<std::string, CountMap>> combined;
};

struct Completion {
  std::size_t proc;
  std::string group;
  Time start;
  std::uint64_t delta;
};

}  // namespace

WindowResults run_shared(const Workload& workload, const SharingPlan& plan,
                         const Stream& stream, ExecStats* stats) {
  check_stream_order(stream);
  for (std::size_t a = 0; a < plan.candidates.size(); ++a) {
    for (const auto& qid : plan.candidates[a].queries) workload.at(qid);
    for (std::size_t b = a + 1; b < plan.candidates.size(); ++b)
      if (conflicts(plan.candidates[a], plan.candidates[b]))
        throw std::invalid_argument("invalid plan: candidates (" +
                                    plan.candidates[a].pattern.str() +
                                    ") and (" +
                                    plan.candidates[b].pattern.str() +
                                    ") are in conflict");
  }

  const WindowSpec w = workload.window();
  WindowResults results;

  std::vector<PatternProc> procs;
  std::map<int, std::size_t> shared_proc;  // candidate index -> proc id
  std::vector<QueryRt> queries;

  for (const auto& q : workload.queries) {
    QueryRt rt;
    rt.q = &q;
    rt.chain = build_chain(q, plan);
    std::size_t offset = 0;
    for (std::size_t v = 0; v < rt.chain.size(); ++v) {
      const Segment& seg = rt.chain[v];
      std::size_t pid;
      if (seg.shared_index >= 0 && shared_proc.count(seg.shared_index)) {
        pid = shared_proc[seg.shared_index];
      } else {
        PatternProc p;
        p.pattern = seg.pattern;
        for (std::size_t j = 0; j < seg.pattern.length(); ++j)
          p.pos[seg.pattern.types()[j]] = j;
        if (seg.shared_index >= 0) {
          p.cand = seg.shared_index;
          shared_proc[seg.shared_index] = procs.size();
        } else {
          p.query_id = q.id;
          p.query_offset = offset;
        }
        pid = procs.size();
        procs.push_back(std::move(p));
      }
      procs[pid].consumers.emplace_back(queries.size(), v);
      rt.proc.push_back(static_cast<int>(pid));
      offset += seg.pattern.length();
    }
    rt.pending.resize(rt.chain.size());
    rt.combined.resize(rt.chain.size());
    queries.push_back(std::move(rt));
    if (stats)
      (*stats).query_position_updates[q.id].assign(q.pattern.length(), 0);
  }

  std::uint64_t live = 0;
  std::size_t i = 0;
  while (i < stream.events.size()) {
    std::size_t batch_end = i;
    const Time t = stream.events[i].time;
    while (batch_end < stream.events.size() &&
           stream.events[batch_end].time == t)
      ++batch_end;
    const Time horizon = t - w.within;

    // Expire everything that can no longer share a window with t.
    for (auto& p : procs) {
      for (auto& [g, entries] : p.entries)
        while (!entries.empty() && entries.begin()->first <= horizon) {
          live -= entries.begin()->second[0];
          entries.erase(entries.begin());
        }
    }
    for (auto& rt : queries) {
      for (auto& per_group : rt.pending)
        for (auto& [g, starts] : per_group)
          while (!starts.empty() && starts.begin()->first <= horizon) {
            --live;
            starts.erase(starts.begin());
          }
      for (auto& per_group : rt.combined)
        for (auto& [g, cm] : per_group)
          while (!cm.empty() && cm.begin()->first <= horizon)
            cm.erase(cm.begin());
    }

    // Phase 1: read pre-batch state only.
    struct EntryInc {
      std::size_t proc;
      std::string group;
      Time start;
      std::size_t j;
      std::uint64_t delta;  // j == 0: new start multiplicity
    };
    struct LeftSnap {
      std::size_t query, seg;
      std::string group;
      Time start;
      CountMap left;
    };
    struct CombInc {
      std::size_t query, seg;
      std::string group;
      Time t0;
      std::uint64_t delta;
    };
    std::vector<EntryInc> entry_incs;
    std::vector<LeftSnap> left_snaps;
    std::vector<CombInc> comb_incs;
    std::vector<Completion> completions;

    for (std::size_t e = i; e < batch_end; ++e) {
      const Event& ev = stream.events[e];
      const std::string& g = group_key(workload, ev);
      for (std::size_t pid = 0; pid < procs.size(); ++pid) {
        PatternProc& p = procs[pid];
        auto it = p.pos.find(ev.type);
        if (it == p.pos.end()) continue;
        const std::size_t j = it->second;
        const std::size_t len = p.pattern.length();

        if (len == 1) {
          completions.push_back({pid, g, t, 1});
          continue;
        }
        if (j == 0) {
          entry_incs.push_back({pid, g, t, 0, 1});
          continue;
        }
        auto ge = p.entries.find(g);
        if (ge != p.entries.end()) {
          for (auto& [start, counts] : ge->second) {
            if (start >= t) break;
            if (stats) {
              ++stats->count_updates;
              if (p.cand >= 0)
                ++stats->shared_pattern_updates[p.pattern.str()];
              else
                ++stats->query_position_updates[p.query_id][p.query_offset + j];
            }
            std::uint64_t delta = counts[j - 1];
            if (delta == 0) continue;
            if (j == len - 1)
              completions.push_back({pid, g, start, delta});
            else
              entry_incs.push_back({pid, g, start, j, delta});
          }
        }
      }

      // Segment START arrivals snapshot the combined count to their left.
      for (std::size_t qi = 0; qi < queries.size(); ++qi) {
        QueryRt& rt = queries[qi];
        for (std::size_t v = 1; v < rt.chain.size(); ++v) {
          if (rt.chain[v].pattern.front() != ev.type) continue;
          auto gc = rt.combined[v - 1].find(g);
          CountMap snap;
          if (gc != rt.combined[v - 1].end()) snap = gc->second;
          left_snaps.push_back({qi, v, g, t, std::move(snap)});
        }
      }
    }

    // Completions fan out to every consuming query.
    for (const auto& c : completions) {
      const PatternProc& p = procs[c.proc];
      for (auto [qi, v] : p.consumers) {
        QueryRt& rt = queries[qi];
        const bool last = v + 1 == rt.chain.size();
        if (v == 0) {
          if (last) {
            for_each_window(c.start, t, w, [&](Time k) {
              results.add(rt.q->id, c.group, k, c.delta);
            });
          } else {
            comb_incs.push_back({qi, v, c.group, c.start, c.delta});
          }
          continue;
        }
        const CountMap* left = nullptr;
        CountMap fresh;
        if (p.pattern.length() == 1) {
          // single-type segment: START and END coincide, take the
          // snapshot right here (still pre-batch state)
          auto gc = rt.combined[v - 1].find(c.group);
          if (gc != rt.combined[v - 1].end()) fresh = gc->second;
          left = &fresh;
        } else {
          auto gp = rt.pending[v].find(c.group);
          if (gp == rt.pending[v].end()) continue;
          auto ls = gp->second.find(c.start);
          if (ls == gp->second.end()) continue;
          left = &ls->second;
        }
        for (const auto& [t0, count] : *left) {
          if (t0 <= horizon || count == 0) continue;
          if (stats) ++stats->combinations;
          std::uint64_t val = count * c.delta;
          if (last) {
            for_each_window(t0, t, w, [&](Time k) {
              results.add(rt.q->id, c.group, k, val);
            });
          } else {
            comb_incs.push_back({qi, v, c.group, t0, val});
          }
        }
      }
    }

    // Phase 2: apply all writes.
    for (const auto& inc : entry_incs) {
      auto& counts = procs[inc.proc].entries[inc.group][inc.start];
      if (counts.empty()) counts.assign(procs[inc.proc].pattern.length(), 0);
      counts[inc.j] += inc.delta;
      if (inc.j == 0) live += inc.delta;
    }
    for (auto& snap : left_snaps) {
      // only useful for multi-type segments; single-type ones complete
      // immediately and never consult pending state
      if (procs[queries[snap.query].proc[snap.seg]].pattern.length() == 1)
        continue;
      auto& slot = queries[snap.query].pending[snap.seg][snap.group][snap.start];
      if (slot.empty()) {
        slot = std::move(snap.left);
        ++live;
      }
    }
    for (const auto& inc : comb_incs)
      queries[inc.query].combined[inc.seg][inc.group][inc.t0] += inc.delta;

    if (stats) stats->live_entries_peak = std::max(stats->live_entries_peak, live);
    i = batch_end;
  }
  return results;
}

// ---------------------------------------------------------------------------
// Oracle: materialize each window and count matching subsequences by DP,
// snapshotting between distinct timestamps to keep times strictly
// increasing.

WindowResults brute_force_oracle(const Workload& workload,
                                 const Stream& stream) {
  if (stream.events.size() > 1000)
    throw std::invalid_argument("brute_force_oracle: stream too large (>1000)");
  check_stream_order(stream);
  WindowResults results;
  const WindowSpec w = workload.window();
  if (stream.events.empty()) return results;
  const Time max_time = stream.events.back().time;

  // partition by group
  std::map<std::string, std::vector<const Event*>> by_group;
  for (const auto& e : stream.events)
    by_group[group_key(workload, e)].push_back(&e);

  for (const auto& q : workload.queries) {
    const auto& types = q.pattern.types();
    const std::size_t l = types.size();
    for (const auto& [g, events] : by_group) {
      for (Time k = 0; k * w.slide <= max_time; ++k) {
        const Time lo = k * w.slide;
        const Time hi = lo + w.within;
        std::vector<std::uint64_t> dp(l, 0), committed(l, 0);
        Time current = -1;
        for (const Event* e : events) {
          if (e->time < lo || e->time >= hi) continue;
          if (e->time != current) {
            committed = dp;
            current = e->time;
          }
          for (std::size_t j = 0; j < l; ++j) {
            if (e->type != types[j]) continue;
            dp[j] += (j == 0) ? 1 : committed[j - 1];
          }
        }
        results.add(q.id, g, k, dp[l - 1]);
      }
    }
  }
  return results;
}

}  // namespace seqshare

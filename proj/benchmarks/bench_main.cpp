// Microbenchmarks for the executor paths and the optimizer pipeline.

#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "seqshare/conflict_graph.hpp"
#include "seqshare/cost.hpp"
#include "seqshare/executor.hpp"
#include "seqshare/miner.hpp"
#include "seqshare/optimizer.hpp"
#include "seqshare/stream.hpp"

using namespace seqshare;

namespace {

// k queries (A_i, M1, M2, Z_i) all sharing the middle pattern.
Workload middle_workload(int k) {
  Workload wl;
  for (int i = 1; i <= k; ++i) {
    Query q;
    q.id = "q" + std::to_string(i);
    q.pattern = SequencePattern({"A" + std::to_string(i), "M1", "M2",
                                 "Z" + std::to_string(i)});
    q.window = {20, 10};
    wl.queries.push_back(std::move(q));
  }
  for (const auto& q : wl.queries)
    for (const auto& t : q.pattern.types()) wl.type_alphabet.push_back(t);
  std::sort(wl.type_alphabet.begin(), wl.type_alphabet.end());
  wl.type_alphabet.erase(
      std::unique(wl.type_alphabet.begin(), wl.type_alphabet.end()),
      wl.type_alphabet.end());
  return wl;
}

Stream middle_stream(const Workload& wl, Time duration) {
  GeneratorConfig c;
  c.types = wl.type_alphabet;
  c.rate = 40;
  c.duration = duration;
  c.seed = 19;
  return generate_stream(c);
}

SharingPlan plan_for(const Workload& wl, const Stream& s) {
  RateTable rates = estimate_rates(s, wl.window());
  SharableSet mined = mine_sharable(wl);
  std::vector<SharingCandidate> cands;
  for (const auto& [p, qs] : mined.entries) {
    SharingCandidate c;
    c.pattern = p;
    c.queries.assign(qs.begin(), qs.end());
    c.bvalue = bvalue(c, wl, rates);
    cands.push_back(std::move(c));
  }
  OptimizeOptions opts;
  return optimize(build_graph(cands), opts).plan;
}

void BM_NonShared(benchmark::State& state) {
  Workload wl = middle_workload(static_cast<int>(state.range(0)));
  Stream s = middle_stream(wl, 60);
  for (auto _ : state) {
    WindowResults r = run_non_shared(wl, s);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(s.events.size()) *
                          state.iterations());
}

void BM_Shared(benchmark::State& state) {
  Workload wl = middle_workload(static_cast<int>(state.range(0)));
  Stream s = middle_stream(wl, 60);
  SharingPlan plan = plan_for(wl, s);
  for (auto _ : state) {
    WindowResults r = run_shared(wl, plan, s);
    benchmark::DoNotOptimize(r);
  }
  state.SetItemsProcessed(static_cast<std::int64_t>(s.events.size()) *
                          state.iterations());
}

void BM_Optimize(benchmark::State& state) {
  Workload wl = middle_workload(static_cast<int>(state.range(0)));
  Stream s = middle_stream(wl, 60);
  RateTable rates = estimate_rates(s, wl.window());
  SharableSet mined = mine_sharable(wl);
  std::vector<SharingCandidate> cands;
  for (const auto& [p, qs] : mined.entries) {
    SharingCandidate c;
    c.pattern = p;
    c.queries.assign(qs.begin(), qs.end());
    c.bvalue = bvalue(c, wl, rates);
    cands.push_back(std::move(c));
  }
  for (auto _ : state) {
    OptimizeOptions opts;
    OptimizeReport r = optimize(build_graph(cands), opts);
    benchmark::DoNotOptimize(r);
  }
}

}  // namespace

BENCHMARK(BM_NonShared)->Arg(2)->Arg(8)->Arg(32);
BENCHMARK(BM_Shared)->Arg(2)->Arg(8)->Arg(32);
BENCHMARK(BM_Optimize)->Arg(8)->Arg(32);

BENCHMARK_MAIN();

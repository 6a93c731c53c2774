// seqshare command-line front end: mine / optimize / run / bench / generate.
//
// Exit codes: 0 ok, 1 internal error, 2 usage or input error.

#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seqshare/conflict_graph.hpp"
#include "seqshare/cost.hpp"
#include "seqshare/executor.hpp"
#include "seqshare/miner.hpp"
#include "seqshare/model.hpp"
#include "seqshare/optimizer.hpp"
#include "seqshare/stream.hpp"

namespace {

using namespace seqshare;

std::string slurp(const std::string& path, const char* what) {
  std::ifstream in(path);
  if (!in) throw ParseError(std::string("cannot open ") + what + " file '" +
                            path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

Workload load_workload(const std::string& path) {
  return parse_workload(slurp(path, "workload"));
}

std::ostream& open_output(std::ofstream& file, const std::string& path) {
  if (path.empty()) return std::cout;
  file.open(path);
  if (!file) throw ParseError("cannot open output file '" + path + "'");
  return file;
}

// ---------------------------------------------------------------------- mine

int cmd_mine(const std::string& workload_path) {
  Workload wl = load_workload(workload_path);
  SharableSet set = mine_sharable(wl);
  std::cout << "pattern\tqueries\n";
  for (const auto& [pattern, queries] : set.entries) {
    std::cout << pattern.str() << '\t';
    bool first = true;
    for (const auto& q : queries) {
      if (!first) std::cout << ',';
      std::cout << q;
      first = false;
    }
    std::cout << '\n';
  }
  std::cerr << set.entries.size() << " sharable pattern(s)\n";
  return 0;
}

// ------------------------------------------------------------------ optimize

struct OptimizeArgs {
  std::string workload_path, stream_path, rates_path, graph_path, out_path;
  std::string strategy = "optimal";
  bool resolve_conflicts = false;
  double time_limit = -1;
};

Strategy parse_strategy(const std::string& s) {
  if (s == "none") return Strategy::None;
  if (s == "greedy") return Strategy::Greedy;
  if (s == "optimal") return Strategy::Optimal;
  if (s == "exhaustive") return Strategy::Exhaustive;
  throw ParseError("unknown strategy '" + s + "'");
}

int cmd_optimize(const OptimizeArgs& args) {
  ConflictGraph graph;
  OptimizeOptions options;
  options.strategy = parse_strategy(args.strategy);
  options.resolve_conflicts = args.resolve_conflicts;
  if (args.time_limit >= 0) options.time_limit_s = args.time_limit;

  Workload wl;
  RateTable rates;
  bool have_cost_model = false;

  if (!args.graph_path.empty()) {
    graph = parse_graph(slurp(args.graph_path, "graph"));
  } else {
    if (args.workload_path.empty())
      throw ParseError("optimize needs --workload (with --stream or --rates) "
                       "or --graph");
    wl = load_workload(args.workload_path);
    if (!args.rates_path.empty())
      rates = read_rates_file(args.rates_path, wl.window());
    else if (!args.stream_path.empty())
      rates = estimate_rates(read_stream_file(args.stream_path), wl.window());
    else
      throw ParseError("optimize needs --stream or --rates with --workload");
    have_cost_model = true;

    SharableSet mined = mine_sharable(wl);
    std::vector<SharingCandidate> candidates;
    for (const auto& [pattern, queries] : mined.entries) {
      SharingCandidate c;
      c.pattern = pattern;
      c.queries.assign(queries.begin(), queries.end());
      c.bvalue = bvalue(c, wl, rates);
      candidates.push_back(std::move(c));
    }
    graph = build_graph(std::move(candidates));
    options.scoring = {&wl, &rates};
  }

  OptimizeReport report = optimize(graph, options);
  std::ofstream file;
  open_output(file, args.out_path) << plan_to_json(report.plan);

  std::cerr << "candidates: " << report.candidates_in
            << "  conflict-free: " << report.conflict_free
            << "  pruned: " << report.pruned << '\n'
            << "lattice eliminated: " << report.lattice_eliminated_pct
            << "%  plans visited: " << report.plans_visited << '\n'
            << "guaranteed: " << report.guaranteed
            << "  plan score: " << report.plan.score
            << (report.plan.fallback ? "  (greedy fallback)" : "") << '\n';
  (void)have_cost_model;
  return 0;
}

// ----------------------------------------------------------------------- run

int cmd_run(const std::string& workload_path, const std::string& plan_path,
            bool no_share, const std::string& stream_path,
            const std::string& out_path, bool show_stats) {
  if (no_share == !plan_path.empty())
    throw ParseError("run needs exactly one of --plan or --no-share");
  Workload wl = load_workload(workload_path);
  Stream stream = read_stream_file(stream_path);

  ExecStats stats;
  WindowResults results;
  if (no_share) {
    results = run_non_shared(wl, stream, &stats);
  } else {
    SharingPlan plan = plan_from_json(slurp(plan_path, "plan"));
    results = run_shared(wl, plan, stream, &stats);
  }

  std::ofstream file;
  results.write_csv(open_output(file, out_path), wl.window());
  if (show_stats)
    std::cerr << "count_updates=" << stats.count_updates
              << " combinations=" << stats.combinations
              << " live_entries_peak=" << stats.live_entries_peak << '\n';
  return 0;
}

// ---------------------------------------------------------------------- bench

struct BenchConfig {
  std::vector<int> queries{5, 10, 20};
  int pattern_len = 4;
  double rate = 50;
  Time within = 20;
  Time slide = 10;
  Time duration = 120;
  int groups = 0;
  std::uint64_t seed = 7;
  int trials = 3;
};

BenchConfig parse_bench_config(const std::string& text) {
  BenchConfig c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    auto strip = [](std::string s) {
      auto b = s.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      auto e = s.find_last_not_of(" \t\r");
      return s.substr(b, e - b + 1);
    };
    line = strip(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError("bench config line " + std::to_string(lineno) +
                       ": expected key=value");
    std::string key = strip(line.substr(0, eq));
    std::string value = strip(line.substr(eq + 1));
    try {
      if (key == "queries") {
        c.queries.clear();
        std::istringstream vs(value);
        std::string tok;
        while (std::getline(vs, tok, ',')) c.queries.push_back(std::stoi(tok));
      } else if (key == "pattern_len") c.pattern_len = std::stoi(value);
      else if (key == "rate") c.rate = std::stod(value);
      else if (key == "within") c.within = std::stoll(value);
      else if (key == "slide") c.slide = std::stoll(value);
      else if (key == "duration") c.duration = std::stoll(value);
      else if (key == "groups") c.groups = std::stoi(value);
      else if (key == "seed") c.seed = std::stoull(value);
      else if (key == "trials") c.trials = std::stoi(value);
      else
        throw ParseError("bench config line " + std::to_string(lineno) +
                         ": unknown key '" + key + "'");
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception&) {
      throw ParseError("bench config line " + std::to_string(lineno) +
                       ": bad value for '" + key + "'");
    }
  }
  if (c.queries.empty() || c.pattern_len < 3 || c.rate <= 0 || c.within <= 0 ||
      c.slide <= 0 || c.duration <= 0 || c.trials <= 0)
    throw ParseError("bench config validation failed: need queries, "
                     "pattern_len >= 3, positive rate/within/slide/duration/"
                     "trials");
  return c;
}

// k queries (A_i, M1..M_{len-2}, Z_i) sharing the middle pattern.
Workload bench_workload(int k, int pattern_len, Time within, Time slide) {
  Workload wl;
  std::vector<EventType> middle;
  for (int j = 0; j < pattern_len - 2; ++j)
    middle.push_back("M" + std::to_string(j + 1));
  for (int i = 0; i < k; ++i) {
    Query q;
    q.id = "q" + std::to_string(i + 1);
    std::vector<EventType> types{"A" + std::to_string(i + 1)};
    types.insert(types.end(), middle.begin(), middle.end());
    types.push_back("Z" + std::to_string(i + 1));
    q.pattern = SequencePattern(std::move(types));
    q.window = {within, slide};
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

int cmd_bench(const std::string& config_path, const std::string& out_path) {
  BenchConfig c = parse_bench_config(slurp(config_path, "bench config"));
  std::ofstream file;
  std::ostream& out = open_output(file, out_path);
  out << "approach,queries,pattern_len,events_per_window,trial,"
         "wall_latency_ms,throughput_eps,count_updates,live_entries_peak,"
         "plan_score\n";

  for (int k : c.queries) {
    Workload wl = bench_workload(k, c.pattern_len, c.within, c.slide);
    for (int trial = 0; trial < c.trials; ++trial) {
      GeneratorConfig gc;
      gc.types = wl.type_alphabet;
      gc.rate = c.rate;
      gc.duration = c.duration;
      gc.groups = c.groups;
      gc.seed = c.seed + static_cast<std::uint64_t>(trial);
      Stream stream = generate_stream(gc);
      double events_per_window =
          static_cast<double>(stream.events.size()) / c.duration * c.within;

      RateTable rates = estimate_rates(stream, wl.window());
      SharableSet mined = mine_sharable(wl);
      std::vector<SharingCandidate> candidates;
      for (const auto& [pattern, queries] : mined.entries) {
        SharingCandidate cand;
        cand.pattern = pattern;
        cand.queries.assign(queries.begin(), queries.end());
        cand.bvalue = bvalue(cand, wl, rates);
        candidates.push_back(std::move(cand));
      }
      OptimizeOptions opts;
      opts.scoring = {&wl, &rates};
      OptimizeReport report = optimize(build_graph(std::move(candidates)), opts);

      struct Row {
        const char* approach;
        ExecStats stats;
        double ms;
        double score;
      };
      std::vector<Row> rows;
      using Clock = std::chrono::steady_clock;
      {
        Row r{"non_shared", {}, 0, 0};
        auto t0 = Clock::now();
        WindowResults res = run_non_shared(wl, stream, &r.stats);
        r.ms = std::chrono::duration<double, std::milli>(Clock::now() - t0)
                   .count();
        (void)res;
        rows.push_back(std::move(r));
      }
      {
        Row r{"shared", {}, 0, report.plan.score};
        auto t0 = Clock::now();
        WindowResults res = run_shared(wl, report.plan, stream, &r.stats);
        r.ms = std::chrono::duration<double, std::milli>(Clock::now() - t0)
                   .count();
        (void)res;
        rows.push_back(std::move(r));
      }
      for (const auto& r : rows) {
        double eps = r.ms > 0 ? stream.events.size() / (r.ms / 1000.0) : 0;
        out << r.approach << ',' << k << ',' << c.pattern_len << ','
            << events_per_window << ',' << trial << ',' << r.ms << ',' << eps
            << ',' << r.stats.count_updates << ','
            << r.stats.live_entries_peak << ',' << r.score << '\n';
      }
    }
  }
  return 0;
}

// ------------------------------------------------------------------ generate

int cmd_generate(const GeneratorConfig& config, const std::string& out_path) {
  Stream s = generate_stream(config);
  std::ofstream file;
  write_stream(s, open_output(file, out_path));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"shared online aggregation of event sequences"};
  app.require_subcommand(1);

  std::string workload_path, stream_path, rates_path, graph_path, plan_path;
  std::string out_path, config_path;
  bool no_share = false, show_stats = false;

  auto* mine = app.add_subcommand("mine", "list sharable patterns");
  mine->add_option("workload", workload_path, "workload file")->required();

  OptimizeArgs oargs;
  auto* optimize = app.add_subcommand("optimize", "compute a sharing plan");
  optimize->add_option("--workload", oargs.workload_path, "workload file");
  optimize->add_option("--stream", oargs.stream_path,
                       "stream file for rate estimation");
  optimize->add_option("--rates", oargs.rates_path, "rates CSV");
  optimize->add_option("--graph", oargs.graph_path,
                       "pre-built conflict graph dump");
  optimize->add_option("--strategy", oargs.strategy,
                       "none|greedy|optimal|exhaustive");
  optimize->add_flag("--resolve-conflicts", oargs.resolve_conflicts,
                     "expand candidates into query-subset options");
  optimize->add_option("--time-limit", oargs.time_limit,
                       "seconds before greedy fallback");
  optimize->add_option("-o,--output", oargs.out_path, "plan JSON output");

  auto* run = app.add_subcommand("run", "execute a workload over a stream");
  run->add_option("--workload", workload_path, "workload file")->required();
  run->add_option("--plan", plan_path, "plan JSON");
  run->add_flag("--no-share", no_share, "per-query execution, no plan");
  run->add_option("--stream", stream_path, "stream file")->required();
  run->add_option("-o,--output", out_path, "results CSV output");
  run->add_flag("--stats", show_stats, "print instrumentation to stderr");

  auto* bench = app.add_subcommand("bench", "run a benchmark sweep");
  bench->add_option("config", config_path, "bench config file")->required();
  bench->add_option("-o,--output", out_path, "report CSV output");

  GeneratorConfig gen;
  std::string types_csv;
  auto* generate = app.add_subcommand("generate", "synthesize a stream");
  generate->add_option("--types", types_csv, "comma-separated event types")
      ->required();
  generate->add_option("--rate", gen.rate, "events per second");
  generate->add_option("--duration", gen.duration, "seconds");
  generate->add_option("--groups", gen.groups, "number of group keys");
  generate->add_option("--seed", gen.seed, "RNG seed");
  generate->add_option("--weights", gen.type_weights,
                       "per-type weights (space-separated)");
  generate->add_flag("--poisson", gen.poisson,
                     "exponential inter-arrival gaps");
  generate->add_option("-o,--output", out_path, "stream CSV output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (mine->parsed()) return cmd_mine(workload_path);
    if (optimize->parsed()) return cmd_optimize(oargs);
    if (run->parsed())
      return cmd_run(workload_path, plan_path, no_share, stream_path, out_path,
                     show_stats);
    if (bench->parsed()) return cmd_bench(config_path, out_path);
    if (generate->parsed()) {
      std::istringstream ts(types_csv);
      std::string tok;
      while (std::getline(ts, tok, ',')) gen.types.push_back(tok);
      return cmd_generate(gen, out_path);
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return 1;
  }
  return 1;
}

#include "seqshare/cost.hpp"

#include <fstream>
#include <sstream>

namespace seqshare {

double RateTable::at(const EventType& type) const {
  auto it = rates.find(type);
  if (it == rates.end())
    throw std::invalid_argument("no rate for event type '" + type + "'");
  return it->second;
}

double pattern_rate(const SequencePattern& p, const RateTable& rates) {
  double sum = 0;
  for (const auto& t : p.types()) sum += rates.at(t);
  return sum;
}

double non_shared_cost(const SharingCandidate& candidate,
                       const Workload& workload, const RateTable& rates) {
  double total = 0;
  for (const auto& qid : candidate.queries) {
    const Query& q = workload.at(qid);
    if (!find_occurrence(q.pattern, candidate.pattern))
      throw std::invalid_argument("query '" + qid +
                                  "' does not contain the candidate pattern");
    total += rates.at(q.pattern.front()) * pattern_rate(q.pattern, rates);
  }
  return total;
}

double shared_cost(const SharingCandidate& candidate, const Workload& workload,
                   const RateTable& rates) {
  const SequencePattern& p = candidate.pattern;
  double total = rates.at(p.front()) * pattern_rate(p, rates);
  for (const auto& qid : candidate.queries) {
    const Query& q = workload.at(qid);
    PatternSplit split = decompose(q, p);

    double comp = 0;
    if (!split.prefix.empty())
      comp += rates.at(split.prefix.front()) * pattern_rate(split.prefix, rates);
    if (!split.suffix.empty())
      comp += rates.at(split.suffix.front()) * pattern_rate(split.suffix, rates);

    // Combination multiplies one count per boundary that exists.
    double comb = 0;
    if (!split.prefix.empty() || !split.suffix.empty()) {
      comb = rates.at(p.front());
      if (!split.prefix.empty()) comb *= rates.at(q.pattern.front());
      if (!split.suffix.empty()) comb *= rates.at(split.suffix.front());
    }
    total += comp + comb;
  }
  return total;
}

double bvalue(const SharingCandidate& candidate, const Workload& workload,
              const RateTable& rates) {
  return non_shared_cost(candidate, workload, rates) -
         shared_cost(candidate, workload, rates);
}

RateTable estimate_rates(const Stream& stream, const WindowSpec& window) {
  if (stream.events.empty() || stream.duration <= 0)
    throw std::invalid_argument("cannot estimate rates from an empty stream");
  RateTable table;
  table.window = window;
  for (const auto& e : stream.events) table.rates[e.type] += 1.0;
  for (auto& [type, r] : table.rates)
    r = r / static_cast<double>(stream.duration) *
        static_cast<double>(window.within);
  return table;
}

RateTable read_rates(std::istream& in, const WindowSpec& window) {
  RateTable table;
  table.window = window;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    auto comma = line.find(',');
    if (comma == std::string::npos)
      throw ParseError("rates line " + std::to_string(lineno) +
                       ": expected type,events_per_window");
    std::string type = line.substr(0, comma);
    double r = 0;
    try {
      r = std::stod(line.substr(comma + 1));
    } catch (const std::exception&) {
      throw ParseError("rates line " + std::to_string(lineno) + ": bad rate");
    }
    if (r < 0)
      throw ParseError("rates line " + std::to_string(lineno) +
                       ": negative rate");
    table.rates[type] = r;
  }
  return table;
}

RateTable read_rates_file(const std::string& path, const WindowSpec& window) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open rates file '" + path + "'");
  return read_rates(in, window);
}

}  // namespace seqshare

#include "seqshare/stream.hpp"

#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <random>
#include <sstream>

namespace seqshare {

namespace {

std::vector<std::string> split_csv(const std::string& line) {
  std::vector<std::string> out;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) out.push_back(field);
  return out;
}

}  // namespace

Stream read_stream(std::istream& in) {
  Stream s;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    auto fields = split_csv(line);
    if (lineno == 1 && fields.size() >= 2 && fields[0] == "time") continue;
    if (fields.size() < 2 || fields.size() > 3)
      throw ParseError("line " + std::to_string(lineno) +
                       ": expected time,type[,group]");
    Event e;
    try {
      std::size_t used = 0;
      long long t = std::stoll(fields[0], &used);
      if (used != fields[0].size() || t < 0) throw std::invalid_argument("");
      e.time = t;
    } catch (const std::exception&) {
      throw ParseError("line " + std::to_string(lineno) +
                       ": bad timestamp '" + fields[0] + "'");
    }
    e.type = fields[1];
    if (e.type.empty())
      throw ParseError("line " + std::to_string(lineno) + ": empty type");
    if (fields.size() == 3) e.group = fields[2];
    if (!s.events.empty() && e.time < s.events.back().time)
      throw ParseError("line " + std::to_string(lineno) +
                       ": out-of-order timestamp " + std::to_string(e.time));
    s.events.push_back(std::move(e));
  }
  if (!s.events.empty()) s.duration = s.events.back().time + 1;
  return s;
}

Stream read_stream_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open stream file '" + path + "'");
  return read_stream(in);
}

void write_stream(const Stream& s, std::ostream& out) {
  for (const auto& e : s.events) {
    out << e.time << ',' << e.type;
    if (!e.group.empty()) out << ',' << e.group;
    out << '\n';
  }
}

Stream generate_stream(const GeneratorConfig& config) {
  if (config.types.empty())
    throw std::invalid_argument("generator needs at least one event type");
  if (config.rate <= 0) throw std::invalid_argument("rate must be positive");
  if (config.duration <= 0)
    throw std::invalid_argument("duration must be positive");
  if (!config.type_weights.empty() &&
      config.type_weights.size() != config.types.size())
    throw std::invalid_argument("type_weights size mismatch");

  std::mt19937_64 rng(config.seed);
  std::vector<double> weights = config.type_weights;
  if (weights.empty()) weights.assign(config.types.size(), 1.0);
  std::discrete_distribution<std::size_t> type_dist(weights.begin(),
                                                    weights.end());
  std::uniform_int_distribution<int> group_dist(
      0, config.groups > 0 ? config.groups - 1 : 0);

  Stream s;
  s.duration = config.duration;
  auto emit = [&](double t) {
    Event e;
    e.time = static_cast<Time>(t);
    e.type = config.types[type_dist(rng)];
    if (config.groups > 0) e.group = "g" + std::to_string(group_dist(rng));
    s.events.push_back(std::move(e));
  };

  if (config.poisson) {
    std::exponential_distribution<double> gap(config.rate);
    for (double t = gap(rng); t < static_cast<double>(config.duration);
         t += gap(rng))
      emit(t);
  } else {
    auto n = static_cast<std::size_t>(
        std::llround(config.rate * static_cast<double>(config.duration)));
    for (std::size_t i = 0; i < n; ++i)
      emit(static_cast<double>(i) * static_cast<double>(config.duration) /
           static_cast<double>(n));
  }
  return s;
}

}  // namespace seqshare

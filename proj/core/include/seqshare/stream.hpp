#ifndef SEQSHARE_STREAM_HPP
#define SEQSHARE_STREAM_HPP

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "seqshare/model.hpp"

namespace seqshare {

struct Stream {
  std::vector<Event> events;  // non-decreasing timestamps
  Time duration = 0;          // seconds covered by the stream
};

struct GeneratorConfig {
  std::vector<EventType> types;
  double rate = 1.0;          // events per second
  Time duration = 1;          // seconds
  int groups = 0;             // 0 = ungrouped stream
  std::uint64_t seed = 0;
  std::vector<double> type_weights;  // empty = uniform
  bool poisson = false;       // default is uniform inter-arrival spacing
};

/// CSV `time,type[,group]`, integer time, optional header line.
/// Throws ParseError with a line number; rejects out-of-order timestamps.
Stream read_stream(std::istream& in);
Stream read_stream_file(const std::string& path);

void write_stream(const Stream& s, std::ostream& out);

/// Deterministic for a fixed seed. The uniform scheme emits exactly
/// round(rate*duration) events; the Poisson scheme draws exponential
/// inter-arrival gaps.
Stream generate_stream(const GeneratorConfig& config);

}  // namespace seqshare

#endif

#ifndef SEQSHARE_MODEL_HPP
#define SEQSHARE_MODEL_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace seqshare {

/// Integer time point in seconds.
using Time = std::int64_t;

/// Event type identifiers are plain tokens, e.g. "MainSt".
using EventType = std::string;

struct Event {
  Time time = 0;
  EventType type;
  std::string group;  // empty when the stream carries no group key
};

/// Ordered list of event types. A type appears at most once, so any
/// occurrence of a sub-pattern inside another pattern is unique.
class SequencePattern {
 public:
  SequencePattern() = default;
  explicit SequencePattern(std::vector<EventType> types);

  std::size_t length() const { return types_.size(); }
  bool empty() const { return types_.empty(); }
  const std::vector<EventType>& types() const { return types_; }
  const EventType& front() const { return types_.front(); }
  const EventType& back() const { return types_.back(); }

  bool contains(const EventType& t) const;
  /// Position of t, or nullopt.
  std::optional<std::size_t> position_of(const EventType& t) const;

  /// "A,B,C"
  std::string str() const;
  static SequencePattern parse(const std::string& text);

  auto operator<=>(const SequencePattern&) const = default;

 private:
  std::vector<EventType> types_;
};

struct WindowSpec {
  Time within = 1;  // window length, seconds
  Time slide = 1;   // slide step, seconds

  void validate() const;
  bool operator==(const WindowSpec&) const = default;
};

struct Query {
  std::string id;
  SequencePattern pattern;
  WindowSpec window;
  std::string group_by;  // empty = no grouping
};

struct Workload {
  std::vector<Query> queries;
  std::vector<EventType> type_alphabet;  // sorted, unique

  WindowSpec window() const;
  const std::string& group_by() const;
  const Query* find(const std::string& id) const;
  const Query& at(const std::string& id) const;
};

/// prefix . shared . suffix == the host query's pattern.
struct PatternSplit {
  SequencePattern prefix;
  SequencePattern shared;
  SequencePattern suffix;
};

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Parses the workload DSL, one query per line:
///   <id>: PATTERN SEQ(<Type>{,<Type>}*) [GROUPBY <attr>] WITHIN <int> SLIDE <int>
/// Blank lines and '#' comments are ignored. Rejects repeated types in one
/// pattern and queries whose window or group-by differ from the rest.
Workload parse_workload(const std::string& text);

/// Start index of the unique occurrence of sub inside host, or nullopt.
std::optional<std::size_t> find_occurrence(const SequencePattern& host,
                                           const SequencePattern& sub);

/// Splits query.pattern around the unique occurrence of shared.
/// Throws std::invalid_argument when shared does not occur in the query.
PatternSplit decompose(const Query& query, const SequencePattern& shared);

/// All window indices k with k*slide <= time < k*slide + within.
std::vector<Time> windows_of(Time time, const WindowSpec& w);

/// True iff events align with the pattern positionally, times strictly
/// increase, and (when require_same_group) all events carry one group value.
bool matches(const SequencePattern& pattern, std::span<const Event> events,
             bool require_same_group = false);

}  // namespace seqshare

#endif

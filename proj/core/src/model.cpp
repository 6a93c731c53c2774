#include "seqshare/model.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <sstream>

namespace seqshare {

SequencePattern::SequencePattern(std::vector<EventType> types)
    : types_(std::move(types)) {
  std::set<EventType> seen;
  for (const auto& t : types_) {
    if (t.empty())
      throw std::invalid_argument("empty event type name in pattern");
    if (!seen.insert(t).second)
      throw std::invalid_argument("event type '" + t +
                                  "' appears twice in pattern");
  }
}

bool SequencePattern::contains(const EventType& t) const {
  return position_of(t).has_value();
}

std::optional<std::size_t> SequencePattern::position_of(
    const EventType& t) const {
  auto it = std::find(types_.begin(), types_.end(), t);
  if (it == types_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - types_.begin());
}

std::string SequencePattern::str() const {
  std::string out;
  for (std::size_t i = 0; i < types_.size(); ++i) {
    if (i) out += ',';
    out += types_[i];
  }
  return out;
}

SequencePattern SequencePattern::parse(const std::string& text) {
  std::vector<EventType> types;
  std::string tok;
  std::istringstream in(text);
  while (std::getline(in, tok, ',')) {
    // trim
    auto b = tok.find_first_not_of(" \t");
    auto e = tok.find_last_not_of(" \t");
    if (b == std::string::npos)
      throw std::invalid_argument("empty type token in pattern '" + text + "'");
    types.push_back(tok.substr(b, e - b + 1));
  }
  if (types.empty())
    throw std::invalid_argument("empty pattern string");
  return SequencePattern(std::move(types));
}

void WindowSpec::validate() const {
  if (slide < 1) throw std::invalid_argument("SLIDE must be >= 1");
  if (within < slide)
    throw std::invalid_argument("WITHIN must be >= SLIDE");
}

WindowSpec Workload::window() const {
  if (queries.empty()) return WindowSpec{};
  return queries.front().window;
}

const std::string& Workload::group_by() const {
  static const std::string none;
  return queries.empty() ? none : queries.front().group_by;
}

const Query* Workload::find(const std::string& id) const {
  for (const auto& q : queries)
    if (q.id == id) return &q;
  return nullptr;
}

const Query& Workload::at(const std::string& id) const {
  const Query* q = find(id);
  if (!q) throw std::invalid_argument("unknown query id '" + id + "'");
  return *q;
}

namespace {

struct Cursor {
  const std::string& line;
  std::size_t pos = 0;
  int lineno;

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("line " + std::to_string(lineno) + ", col " +
                     std::to_string(pos + 1) + ": " + msg);
  }
  void skip_ws() {
    while (pos < line.size() && std::isspace(static_cast<unsigned char>(line[pos])))
      ++pos;
  }
  bool eat(char c) {
    skip_ws();
    if (pos < line.size() && line[pos] == c) {
      ++pos;
      return true;
    }
    return false;
  }
  std::string word() {
    skip_ws();
    std::size_t b = pos;
    while (pos < line.size()) {
      char c = line[pos];
      if (std::isalnum(static_cast<unsigned char>(c)) || c == '_') ++pos;
      else break;
    }
    if (pos == b) fail("expected identifier");
    return line.substr(b, pos - b);
  }
  void expect_keyword(const std::string& kw) {
    std::string w = word();
    if (w != kw) fail("expected '" + kw + "', got '" + w + "'");
  }
  Time integer() {
    std::string w = word();
    try {
      std::size_t used = 0;
      long long v = std::stoll(w, &used);
      if (used != w.size() || v < 0) throw std::invalid_argument(w);
      return static_cast<Time>(v);
    } catch (const std::exception&) {
      fail("expected non-negative integer, got '" + w + "'");
    }
  }
  bool at_end() {
    skip_ws();
    return pos >= line.size();
  }
  bool peek_keyword(const std::string& kw) {
    skip_ws();
    return line.compare(pos, kw.size(), kw) == 0;
  }
};

}  // namespace

Workload parse_workload(const std::string& text) {
  Workload wl;
  std::set<std::string> ids;
  std::set<EventType> alphabet;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    if (!line.empty() && line.back() == '\r') line.pop_back();

    Cursor c{line, 0, lineno};
    Query q;
    q.id = c.word();
    if (!ids.insert(q.id).second) c.fail("duplicate query id '" + q.id + "'");
    if (!c.eat(':')) c.fail("expected ':' after query id");
    c.expect_keyword("PATTERN");
    c.expect_keyword("SEQ");
    if (!c.eat('(')) c.fail("expected '(' after SEQ");
    std::vector<EventType> types;
    do {
      types.push_back(c.word());
    } while (c.eat(','));
    if (!c.eat(')')) c.fail("expected ')' closing SEQ");
    try {
      q.pattern = SequencePattern(std::move(types));
    } catch (const std::invalid_argument& e) {
      c.fail(e.what());
    }
    if (c.peek_keyword("GROUPBY")) {
      c.expect_keyword("GROUPBY");
      q.group_by = c.word();
    }
    c.expect_keyword("WITHIN");
    q.window.within = c.integer();
    c.expect_keyword("SLIDE");
    q.window.slide = c.integer();
    if (!c.at_end()) c.fail("trailing input after SLIDE value");
    try {
      q.window.validate();
    } catch (const std::invalid_argument& e) {
      c.fail(e.what());
    }

    if (!wl.queries.empty()) {
      if (!(q.window == wl.queries.front().window))
        c.fail("query '" + q.id + "' window differs from the rest of the workload");
      if (q.group_by != wl.queries.front().group_by)
        c.fail("query '" + q.id + "' group-by differs from the rest of the workload");
    }
    for (const auto& t : q.pattern.types()) alphabet.insert(t);
    wl.queries.push_back(std::move(q));
  }
  wl.type_alphabet.assign(alphabet.begin(), alphabet.end());
  return wl;
}

std::optional<std::size_t> find_occurrence(const SequencePattern& host,
                                           const SequencePattern& sub) {
  if (sub.empty() || sub.length() > host.length()) return std::nullopt;
  const auto& h = host.types();
  const auto& s = sub.types();
  for (std::size_t i = 0; i + s.size() <= h.size(); ++i) {
    if (std::equal(s.begin(), s.end(), h.begin() + i)) return i;
  }
  return std::nullopt;
}

PatternSplit decompose(const Query& query, const SequencePattern& shared) {
  auto pos = find_occurrence(query.pattern, shared);
  if (!pos)
    throw std::invalid_argument("pattern (" + shared.str() +
                                ") is not a sub-pattern of query '" + query.id +
                                "'");
  const auto& t = query.pattern.types();
  PatternSplit split;
  split.prefix = SequencePattern(
      std::vector<EventType>(t.begin(), t.begin() + *pos));
  split.shared = shared;
  split.suffix = SequencePattern(
      std::vector<EventType>(t.begin() + *pos + shared.length(), t.end()));
  return split;
}

std::vector<Time> windows_of(Time time, const WindowSpec& w) {
  std::vector<Time> out;
  Time k_max = time / w.slide;
  Time k_min = (time - w.within) / w.slide + 1;
  if (time < w.within) k_min = 0;
  for (Time k = k_min; k <= k_max; ++k) out.push_back(k);
  return out;
}

bool matches(const SequencePattern& pattern, std::span<const Event> events,
             bool require_same_group) {
  if (events.size() != pattern.length()) return false;
  for (std::size_t i = 0; i < events.size(); ++i) {
    if (events[i].type != pattern.types()[i]) return false;
    if (i > 0 && !(events[i - 1].time < events[i].time)) return false;
    if (require_same_group && i > 0 && events[i].group != events[0].group)
      return false;
  }
  return true;
}

}  // namespace seqshare

#include "seqshare/conflict_graph.hpp"

#include <algorithm>
#include <set>
#include <sstream>

namespace seqshare {

std::size_t ConflictGraph::edge_count() const {
  std::size_t twice = 0;
  for (const auto& n : adjacency) twice += n.size();
  return twice / 2;
}

bool ConflictGraph::has_edge(int a, int b) const {
  const auto& n = adjacency[a];
  return std::binary_search(n.begin(), n.end(), b);
}

bool patterns_overlap(const SequencePattern& a, const SequencePattern& b) {
  const auto& x = a.types();
  const auto& y = b.types();
  if (x.empty() || y.empty()) return false;
  // offset of y's start relative to x's start
  for (long off = -static_cast<long>(y.size()) + 1;
       off < static_cast<long>(x.size()); ++off) {
    bool ok = true;
    bool any = false;
    for (std::size_t j = 0; j < y.size(); ++j) {
      long i = off + static_cast<long>(j);
      if (i < 0 || i >= static_cast<long>(x.size())) continue;
      any = true;
      if (x[static_cast<std::size_t>(i)] != y[j]) {
        ok = false;
        break;
      }
    }
    if (ok && any) return true;
  }
  return false;
}

std::vector<std::string> conflict_causes(const SharingCandidate& a,
                                         const SharingCandidate& b) {
  std::vector<std::string> shared;
  std::set_intersection(a.queries.begin(), a.queries.end(), b.queries.begin(),
                        b.queries.end(), std::back_inserter(shared));
  if (shared.empty()) return {};
  if (!patterns_overlap(a.pattern, b.pattern)) return {};
  return shared;
}

bool conflicts(const SharingCandidate& a, const SharingCandidate& b) {
  return !conflict_causes(a, b).empty();
}

namespace {

bool canonical_less(const SharingCandidate& a, const SharingCandidate& b) {
  if (a.pattern != b.pattern) return a.pattern < b.pattern;
  return a.queries < b.queries;
}

}  // namespace

ConflictGraph build_graph(std::vector<SharingCandidate> candidates) {
  ConflictGraph g;
  for (auto& c : candidates) {
    if (c.bvalue <= 0 || c.queries.size() < 2) continue;
    std::sort(c.queries.begin(), c.queries.end());
    bool dup = false;
    for (const auto& v : g.vertices)
      if (v.same_identity(c)) dup = true;
    if (!dup) g.vertices.push_back(std::move(c));
  }
  std::sort(g.vertices.begin(), g.vertices.end(), canonical_less);
  g.adjacency.assign(g.vertices.size(), {});
  for (int i = 0; i < static_cast<int>(g.vertices.size()); ++i) {
    for (int j = i + 1; j < static_cast<int>(g.vertices.size()); ++j) {
      if (conflicts(g.vertices[i], g.vertices[j])) {
        g.adjacency[i].push_back(j);
        g.adjacency[j].push_back(i);
      }
    }
  }
  for (auto& n : g.adjacency) std::sort(n.begin(), n.end());
  return g;
}

double score_max(const ConflictGraph& graph, int v, double credit) {
  if (v < 0 || v >= static_cast<int>(graph.size()))
    throw std::invalid_argument("score_max: vertex out of range");
  double sum = credit;
  const auto& n = graph.adjacency[v];
  for (int u = 0; u < static_cast<int>(graph.size()); ++u) {
    if (u != v && std::binary_search(n.begin(), n.end(), u)) continue;
    sum += graph.vertices[u].bvalue;
  }
  return sum;
}

std::string dump_graph(const ConflictGraph& graph) {
  std::ostringstream out;
  for (const auto& v : graph.vertices) {
    out << "vertex " << v.pattern.str() << '|';
    for (std::size_t i = 0; i < v.queries.size(); ++i) {
      if (i) out << ',';
      out << v.queries[i];
    }
    out << '|' << v.bvalue << '\n';
  }
  for (int i = 0; i < static_cast<int>(graph.size()); ++i)
    for (int j : graph.adjacency[i])
      if (i < j) out << "edge " << i << ' ' << j << '\n';
  return out.str();
}

ConflictGraph parse_graph(std::istream& in) {
  ConflictGraph g;
  std::set<std::pair<int, int>> edges;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    if (line[0] == '#') continue;
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    if (kind == "vertex") {
      std::string rest;
      std::getline(ls, rest);
      auto b = rest.find_first_not_of(" \t");
      rest = b == std::string::npos ? "" : rest.substr(b);
      auto p1 = rest.find('|');
      auto p2 = rest.rfind('|');
      if (p1 == std::string::npos || p2 == p1)
        throw ParseError("graph line " + std::to_string(lineno) +
                         ": expected vertex <pattern>|<q,...>|<bvalue>");
      SharingCandidate c;
      c.pattern = SequencePattern::parse(rest.substr(0, p1));
      std::istringstream qs(rest.substr(p1 + 1, p2 - p1 - 1));
      std::string qid;
      while (std::getline(qs, qid, ',')) c.queries.push_back(qid);
      std::sort(c.queries.begin(), c.queries.end());
      c.bvalue = std::stod(rest.substr(p2 + 1));
      g.vertices.push_back(std::move(c));
    } else if (kind == "edge") {
      int i = -1, j = -1;
      if (!(ls >> i >> j) || i == j)
        throw ParseError("graph line " + std::to_string(lineno) + ": bad edge");
      edges.emplace(std::min(i, j), std::max(i, j));
    } else {
      throw ParseError("graph line " + std::to_string(lineno) +
                       ": unknown record '" + kind + "'");
    }
  }
  g.adjacency.assign(g.vertices.size(), {});
  for (auto [i, j] : edges) {
    if (i < 0 || j >= static_cast<int>(g.size()))
      throw ParseError("edge index out of range");
    g.adjacency[i].push_back(j);
    g.adjacency[j].push_back(i);
  }
  for (auto& n : g.adjacency) std::sort(n.begin(), n.end());
  return g;
}

ConflictGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

}  // namespace seqshare

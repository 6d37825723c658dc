#include "tonic/stream_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

namespace tonic {

namespace {

[[noreturn]] void parse_fail(const std::string& path, std::size_t line_no, const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + what);
}

bool parse_node(std::string_view tok, NodeId& out) {
  const char* first = tok.data();
  const char* last = tok.data() + tok.size();
  auto [ptr, ec] = std::from_chars(first, last, out);
  return ec == std::errc() && ptr == last;
}

// Splits a line into whitespace-separated tokens.
std::vector<std::string_view> tokenize(std::string_view line) {
  std::vector<std::string_view> toks;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i > start) toks.push_back(line.substr(start, i - start));
  }
  return toks;
}

bool skippable(std::string_view line) {
  for (char ch : line) {
    if (ch == '#') return true;
    if (!std::isspace(static_cast<unsigned char>(ch))) return false;
  }
  return true;  // blank
}

std::ifstream open_or_throw(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  return in;
}

}  // namespace

std::vector<StreamEvent> ingest_edge_list(const std::string& path, const IngestOptions& options,
                                          IngestStats* stats) {
  std::ifstream in = open_or_throw(path);
  std::vector<StreamEvent> events;
  std::unordered_set<Edge, EdgeHash> seen;
  std::unordered_set<NodeId> nodes;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    auto toks = tokenize(line);
    if (toks.size() < 2) parse_fail(path, line_no, "expected 'u v'");
    NodeId a, b;
    if (!parse_node(toks[0], a) || !parse_node(toks[1], b))
      parse_fail(path, line_no, "invalid node id");
    if (a == b) {
      if (options.drop_self_loops) continue;
      parse_fail(path, line_no, "self-loop");
    }
    Edge e = make_edge(a, b);
    if (options.dedupe && !seen.insert(e).second) continue;
    nodes.insert(e.u);
    nodes.insert(e.v);
    events.push_back({e, Sign::insert, events.size() + 1});
  }
  if (stats) {
    stats->nodes = nodes.size();
    stats->edges = events.size();
  }
  return events;
}

std::vector<StreamEvent> ingest_fd_stream(const std::string& path) {
  std::ifstream in = open_or_throw(path);
  std::vector<StreamEvent> events;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (skippable(line)) continue;
    auto toks = tokenize(line);
    if (toks.size() < 3) parse_fail(path, line_no, "expected 'u v sign'");
    NodeId a, b;
    if (!parse_node(toks[0], a) || !parse_node(toks[1], b))
      parse_fail(path, line_no, "invalid node id");
    if (a == b) parse_fail(path, line_no, "self-loop");
    Sign sign;
    if (toks[2] == "+" || toks[2] == "1")
      sign = Sign::insert;
    else if (toks[2] == "-" || toks[2] == "-1")
      sign = Sign::remove;
    else
      parse_fail(path, line_no, "unknown sign token '" + std::string(toks[2]) + "'");
    events.push_back({make_edge(a, b), sign, events.size() + 1});
  }
  return events;
}

void write_fd_stream(const std::string& path, std::span<const StreamEvent> events) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const StreamEvent& ev : events)
    out << ev.edge.u << ' ' << ev.edge.v << ' ' << (ev.sign == Sign::insert ? '+' : '-') << '\n';
}

std::vector<Edge> load_edge_set(const std::string& path) {
  auto events = ingest_edge_list(path, {.dedupe = true, .drop_self_loops = false});
  return edges_of(events);
}

std::vector<Edge> edges_of(std::span<const StreamEvent> events) {
  std::vector<Edge> edges;
  std::unordered_set<Edge, EdgeHash> seen;
  for (const StreamEvent& ev : events)
    if (seen.insert(ev.edge).second) edges.push_back(ev.edge);
  return edges;
}

}  // namespace tonic

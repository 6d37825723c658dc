#include "tonic/predictor.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <unordered_set>

#include "tonic/stream_io.hpp"

namespace tonic {

namespace {

[[noreturn]] void parse_fail(const std::string& path, std::size_t line_no, const std::string& what) {
  throw std::runtime_error(path + ":" + std::to_string(line_no) + ": " + what);
}

// Shortest round-trippable decimal; integral scores print without a point.
std::string format_score(double s) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", s);
  double back = std::strtod(buf, nullptr);
  if (back != s) std::snprintf(buf, sizeof(buf), "%.20g", s);
  return buf;
}

// Top `count` edges by (score desc, canonical edge asc).
EdgePredictor top_edges(std::vector<std::pair<Edge, double>> scored, std::size_t count) {
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  EdgePredictor p(count);
  for (std::size_t i = 0; i < count && i < scored.size(); ++i)
    p.insert(scored[i].first, scored[i].second);
  return p;
}

std::unordered_map<NodeId, std::uint64_t> degrees_of(std::span<const Edge> edges) {
  std::unordered_map<NodeId, std::uint64_t> deg;
  for (const Edge& e : edges) {
    ++deg[e.u];
    ++deg[e.v];
  }
  return deg;
}

// Edges with min-degree scores, ranked (score desc, canonical asc).
std::vector<std::pair<Edge, double>> ranked_min_degree_edges(std::span<const Edge> edges) {
  auto deg = degrees_of(edges);
  std::vector<std::pair<Edge, double>> scored;
  scored.reserve(edges.size());
  for (const Edge& e : edges)
    scored.emplace_back(e, static_cast<double>(std::min(deg.at(e.u), deg.at(e.v))));
  std::sort(scored.begin(), scored.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return scored;
}

void check_retain_fraction(double f) {
  if (!(f > 0.0 && f <= 1.0)) throw std::invalid_argument("retain_fraction must be in (0, 1]");
}

}  // namespace

void EdgePredictor::insert(const Edge& e, double score) {
  if (entries_.size() >= capacity_ && !entries_.contains(e))
    throw std::logic_error("edge predictor over capacity");
  entries_[e] = score;
}

std::vector<std::pair<Edge, double>> EdgePredictor::sorted_entries() const {
  std::vector<std::pair<Edge, double>> out(entries_.begin(), entries_.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return out;
}

void NodePredictor::insert(NodeId u, std::uint64_t degree) {
  if (entries_.size() >= capacity_ && !entries_.contains(u))
    throw std::logic_error("node predictor over capacity");
  entries_[u] = degree;
}

std::vector<std::pair<NodeId, std::uint64_t>> NodePredictor::sorted_entries() const {
  std::vector<std::pair<NodeId, std::uint64_t>> out(entries_.begin(), entries_.end());
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  return out;
}

std::size_t retain_count(std::size_t m, double retain_fraction) {
  check_retain_fraction(retain_fraction);
  if (m == 0) return 0;
  auto count = static_cast<std::size_t>(
      std::ceil(retain_fraction * static_cast<double>(m) - 1e-9));
  return std::min(std::max<std::size_t>(count, 1), m);
}

EdgePredictor build_exact_predictor(const ExactCounts& counts, double retain_fraction) {
  if (!counts.per_edge_materialized && counts.global > 0)
    throw std::invalid_argument("per-edge counts required");
  std::vector<std::pair<Edge, double>> scored;
  scored.reserve(counts.per_edge.size());
  for (const auto& [e, d] : counts.per_edge) scored.emplace_back(e, static_cast<double>(d));
  return top_edges(std::move(scored), retain_count(counts.per_edge.size(), retain_fraction));
}

EdgePredictor build_nowr_predictor(const ExactCounts& counts,
                                   const std::unordered_map<Edge, std::uint64_t, EdgeHash>& covered,
                                   double retain_fraction) {
  std::vector<std::pair<Edge, double>> scored;
  scored.reserve(counts.per_edge.size());
  for (const auto& [e, c] : covered) {
    auto it = counts.per_edge.find(e);
    if (it == counts.per_edge.end())
      throw std::invalid_argument("covered edge missing from exact counts");
    if (c > it->second) throw std::invalid_argument("covered count exceeds triangle count");
  }
  for (const auto& [e, d] : counts.per_edge) {
    auto it = covered.find(e);
    std::uint64_t c = it == covered.end() ? 0 : it->second;
    scored.emplace_back(e, static_cast<double>(d - c));
  }
  return top_edges(std::move(scored), retain_count(counts.per_edge.size(), retain_fraction));
}

std::vector<NodeId> min_degree_top_edge_nodes(std::span<const Edge> edges, double retain_fraction) {
  auto ranked = ranked_min_degree_edges(edges);
  std::size_t count = retain_count(edges.size(), retain_fraction);
  std::unordered_set<NodeId> nodes;
  for (std::size_t i = 0; i < count && i < ranked.size(); ++i) {
    nodes.insert(ranked[i].first.u);
    nodes.insert(ranked[i].first.v);
  }
  std::vector<NodeId> out(nodes.begin(), nodes.end());
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// The `count` nodes ranked by (degree, node id); `ascending` picks the
// lowest-degree end for adversarial builds.
std::vector<std::pair<NodeId, std::uint64_t>> ranked_nodes(
    const std::unordered_map<NodeId, std::uint64_t>& deg, std::size_t count, bool ascending) {
  std::vector<std::pair<NodeId, std::uint64_t>> nodes(deg.begin(), deg.end());
  std::sort(nodes.begin(), nodes.end(), [&](const auto& a, const auto& b) {
    if (a.second != b.second) return ascending ? a.second < b.second : a.second > b.second;
    return a.first < b.first;
  });
  nodes.resize(std::min(count, nodes.size()));
  return nodes;
}

}  // namespace

NodePredictor build_min_degree_predictor(std::span<const Edge> edges, double retain_fraction) {
  std::size_t n_bar = min_degree_top_edge_nodes(edges, retain_fraction).size();
  auto deg = degrees_of(edges);
  NodePredictor p(n_bar);
  for (const auto& [u, d] : ranked_nodes(deg, n_bar, /*ascending=*/false)) p.insert(u, d);
  return p;
}

EdgePredictor build_min_degree_edge_predictor(std::span<const Edge> edges, double retain_fraction) {
  return top_edges(ranked_min_degree_edges(edges), retain_count(edges.size(), retain_fraction));
}

EdgePredictor adversarial_exact_predictor(const ExactCounts& counts, double retain_fraction) {
  std::uint64_t max_delta = 0;
  for (const auto& [e, d] : counts.per_edge) max_delta = std::max(max_delta, d);
  // Affine inversion keeps ties and flips the order; lightest scores highest.
  std::vector<std::pair<Edge, double>> scored;
  scored.reserve(counts.per_edge.size());
  for (const auto& [e, d] : counts.per_edge)
    scored.emplace_back(e, static_cast<double>(max_delta + 1 - d));
  return top_edges(std::move(scored), retain_count(counts.per_edge.size(), retain_fraction));
}

NodePredictor adversarial_min_degree_predictor(std::span<const Edge> edges,
                                               double retain_fraction) {
  std::size_t n_bar = min_degree_top_edge_nodes(edges, retain_fraction).size();
  auto deg = degrees_of(edges);
  std::uint64_t max_deg = 0;
  for (const auto& [u, d] : deg) max_deg = std::max(max_deg, d);
  NodePredictor p(n_bar);
  for (const auto& [u, d] : ranked_nodes(deg, n_bar, /*ascending=*/true))
    p.insert(u, max_deg + 1 - d);
  return p;
}

double jaccard_similarity(std::span<const NodeId> a, std::span<const NodeId> b) {
  std::unordered_set<NodeId> sa(a.begin(), a.end());
  std::unordered_set<NodeId> sb(b.begin(), b.end());
  std::size_t inter = 0;
  for (NodeId u : sa)
    if (sb.contains(u)) ++inter;
  std::size_t uni = sa.size() + sb.size() - inter;
  return uni == 0 ? 1.0 : static_cast<double>(inter) / static_cast<double>(uni);
}

void save_predictor(const EdgePredictor& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const auto& [e, s] : p.sorted_entries())
    out << e.u << ' ' << e.v << ' ' << format_score(s) << '\n';
}

void save_predictor(const NodePredictor& p, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const auto& [u, d] : p.sorted_entries()) out << u << ' ' << d << '\n';
}

EdgePredictor load_edge_predictor(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::pair<Edge, double>> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    NodeId a, b;
    double score;
    char extra;
    std::istringstream iss(line);
    if (!(iss >> a >> b >> score) || (iss >> extra))
      parse_fail(path, line_no, "expected 'u v score'");
    if (a == b) parse_fail(path, line_no, "self-loop");
    entries.emplace_back(make_edge(a, b), score);
  }
  EdgePredictor p(entries.size());
  for (const auto& [e, s] : entries) p.insert(e, s);
  return p;
}

NodePredictor load_node_predictor(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::vector<std::pair<NodeId, std::uint64_t>> entries;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    NodeId u;
    std::uint64_t degree;
    char extra;
    std::istringstream iss(line);
    if (!(iss >> u >> degree) || (iss >> extra))
      parse_fail(path, line_no, "expected 'u degree'");
    entries.emplace_back(u, degree);
  }
  NodePredictor p(entries.size());
  for (const auto& [u, d] : entries) p.insert(u, d);
  return p;
}

std::unique_ptr<Predictor> build_predictor(const PredictorSpec& spec,
                                           std::span<const StreamEvent> training_stream) {
  auto edges = edges_of(training_stream);
  switch (spec.kind) {
    case PredictorKind::none:
      return std::make_unique<ZeroPredictor>();
    case PredictorKind::random:
      return std::make_unique<RandomPredictor>(spec.salt);
    case PredictorKind::exact:
      return std::make_unique<EdgePredictor>(
          build_exact_predictor(count_exact(edges, true), spec.retain_fraction));
    case PredictorKind::nowr: {
      auto counts = count_exact(edges, true);
      auto covered = count_wr_covered(training_stream, spec.wr_size);
      return std::make_unique<EdgePredictor>(
          build_nowr_predictor(counts, covered, spec.retain_fraction));
    }
    case PredictorKind::min_degree_edge:
      return std::make_unique<EdgePredictor>(
          build_min_degree_edge_predictor(edges, spec.retain_fraction));
    case PredictorKind::min_degree_node:
      return std::make_unique<NodePredictor>(
          build_min_degree_predictor(edges, spec.retain_fraction));
    case PredictorKind::adversarial_exact:
      return std::make_unique<EdgePredictor>(
          adversarial_exact_predictor(count_exact(edges, true), spec.retain_fraction));
    case PredictorKind::adversarial_min_degree:
      return std::make_unique<NodePredictor>(
          adversarial_min_degree_predictor(edges, spec.retain_fraction));
  }
  throw std::logic_error("unknown predictor kind");
}

}  // namespace tonic

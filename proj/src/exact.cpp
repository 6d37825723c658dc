#include "tonic/exact.hpp"

#include <algorithm>
#include <deque>
#include <fstream>
#include <stdexcept>

namespace tonic {

ExactCounts count_exact(std::span<const Edge> edges, bool with_per_edge) {
  ExactCounts counts;
  counts.per_edge_materialized = with_per_edge;

  std::unordered_map<NodeId, std::vector<NodeId>> adj;
  for (const Edge& e : edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto& [node, neigh] : adj) std::sort(neigh.begin(), neigh.end());

  std::uint64_t discoveries = 0;  // (edge, common neighbor) pairs; 3 per triangle
  for (const Edge& e : edges) {
    const auto& nu = adj.at(e.u);
    const auto& nv = adj.at(e.v);
    const auto& small = nu.size() <= nv.size() ? nu : nv;
    const auto& large = nu.size() <= nv.size() ? nv : nu;
    std::uint64_t delta = 0;
    for (NodeId w : small) {
      if (std::binary_search(large.begin(), large.end(), w)) {
        ++delta;
        ++counts.local[w];  // each triangle credits each node exactly once
      }
    }
    discoveries += delta;
    if (with_per_edge) counts.per_edge[e] = delta;
  }
  counts.global = discoveries / 3;
  return counts;
}

std::unordered_map<Edge, std::uint64_t, EdgeHash> count_wr_covered(
    std::span<const StreamEvent> events, std::uint64_t wr_size) {
  std::unordered_map<Edge, std::uint64_t, EdgeHash> covered;
  std::unordered_map<NodeId, std::unordered_set<NodeId>> adj;
  std::deque<Edge> window;
  std::unordered_set<Edge, EdgeHash> in_window;

  for (const StreamEvent& ev : events) {
    if (ev.sign != Sign::insert) throw std::invalid_argument("insertion-only stream required");
    const Edge& e = ev.edge;
    covered.try_emplace(e, 0);

    // The arriving edge joins the window before membership is checked.
    window.push_back(e);
    in_window.insert(e);
    if (window.size() > wr_size) {
      in_window.erase(window.front());
      window.pop_front();
    }

    auto iu = adj.find(e.u);
    auto iv = adj.find(e.v);
    if (iu != adj.end() && iv != adj.end()) {
      const auto& small = iu->second.size() <= iv->second.size() ? iu->second : iv->second;
      const auto& large = iu->second.size() <= iv->second.size() ? iv->second : iu->second;
      for (NodeId w : small) {
        if (!large.contains(w)) continue;
        for (const Edge& side : {make_edge(e.u, w), make_edge(e.v, w), e})
          if (in_window.contains(side)) ++covered[side];
      }
    }
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  return covered;
}

void dump_exact_counts(const ExactCounts& counts, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << "global " << counts.global << '\n';

  std::vector<std::pair<NodeId, std::uint64_t>> nodes(counts.local.begin(), counts.local.end());
  std::sort(nodes.begin(), nodes.end());
  for (const auto& [u, t] : nodes) out << "node " << u << ' ' << t << '\n';

  if (counts.per_edge_materialized) {
    std::vector<std::pair<Edge, std::uint64_t>> edges(counts.per_edge.begin(),
                                                      counts.per_edge.end());
    std::sort(edges.begin(), edges.end());
    for (const auto& [e, d] : edges) out << "edge " << e.u << ' ' << e.v << ' ' << d << '\n';
  }
}

std::uint64_t IncrementalTriangleCounter::common_neighbors(const Edge& e) const {
  auto iu = adj_.find(e.u);
  auto iv = adj_.find(e.v);
  if (iu == adj_.end() || iv == adj_.end()) return 0;
  const auto& small = iu->second.size() <= iv->second.size() ? iu->second : iv->second;
  const auto& large = iu->second.size() <= iv->second.size() ? iv->second : iu->second;
  std::uint64_t c = 0;
  for (NodeId w : small)
    if (large.contains(w)) ++c;
  return c;
}

void IncrementalTriangleCounter::insert(const Edge& e) {
  triangles_ += common_neighbors(e);
  adj_[e.u].insert(e.v);
  adj_[e.v].insert(e.u);
  ++edge_count_;
}

void IncrementalTriangleCounter::erase(const Edge& e) {
  adj_[e.u].erase(e.v);
  adj_[e.v].erase(e.u);
  triangles_ -= common_neighbors(e);
  --edge_count_;
}

bool IncrementalTriangleCounter::contains(const Edge& e) const {
  auto it = adj_.find(e.u);
  return it != adj_.end() && it->second.contains(e.v);
}

std::uint64_t max_concurrent_edges(std::span<const StreamEvent> events) {
  std::uint64_t cur = 0, best = 0;
  for (const StreamEvent& ev : events) {
    cur += ev.sign == Sign::insert ? 1 : -1;
    best = std::max(best, cur);
  }
  return best;
}

std::vector<Edge> replay_final_edges(std::span<const StreamEvent> events) {
  std::unordered_set<Edge, EdgeHash> live;
  for (const StreamEvent& ev : events) {
    if (ev.sign == Sign::insert)
      live.insert(ev.edge);
    else
      live.erase(ev.edge);
  }
  std::vector<Edge> out(live.begin(), live.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace tonic

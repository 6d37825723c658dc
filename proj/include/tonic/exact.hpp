#pragma once

#include <span>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tonic/edge.hpp"

namespace tonic {

// Ground-truth triangle counts of an in-memory graph.
// Invariants: sum of local == 3 * global; sum of per_edge == 3 * global.
struct ExactCounts {
  std::uint64_t global = 0;
  std::unordered_map<NodeId, std::uint64_t> local;             // nodes with >= 1 triangle
  std::unordered_map<Edge, std::uint64_t, EdgeHash> per_edge;  // every input edge, when materialized
  bool per_edge_materialized = false;
};

// Exact counting by adjacency-set intersection, iterating the smaller
// neighbor list per edge. Pre: edges deduplicated and canonical.
ExactCounts count_exact(std::span<const Edge> edges, bool with_per_edge = false);

// For each edge, the number of triangles whose discovery finds that edge
// inside the recency window of the wr_size most recent edges (the arriving
// edge enters the window before the check). With wr_size >= stream length
// this equals the edge's triangle count; with wr_size == 0 it is zero.
// Pre: insertion-only stream of distinct edges.
std::unordered_map<Edge, std::uint64_t, EdgeHash> count_wr_covered(
    std::span<const StreamEvent> events, std::uint64_t wr_size);

// Text dump: "global T", then "node u T_u" lines, then "edge u v D" lines
// (edge section present when per_edge is materialized). Deterministic order.
void dump_exact_counts(const ExactCounts& counts, const std::string& path);

// Anytime exact counter for replay pre-passes and trace baselines.
class IncrementalTriangleCounter {
 public:
  void insert(const Edge& e);
  void erase(const Edge& e);
  bool contains(const Edge& e) const;
  std::uint64_t triangles() const { return triangles_; }
  std::uint64_t edge_count() const { return edge_count_; }

 private:
  std::uint64_t common_neighbors(const Edge& e) const;

  std::unordered_map<NodeId, std::unordered_set<NodeId>> adj_;
  std::uint64_t triangles_ = 0;
  std::uint64_t edge_count_ = 0;
};

// Maximum number of simultaneously present edges over an FD stream.
std::uint64_t max_concurrent_edges(std::span<const StreamEvent> events);

// Edge set present after replaying the whole stream.
std::vector<Edge> replay_final_edges(std::span<const StreamEvent> events);

}  // namespace tonic

#pragma once

#include <memory>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "tonic/edge.hpp"
#include "tonic/exact.hpp"

namespace tonic {

// Edge-heaviness scorer. Only the ordering of scores matters; an edge the
// predictor knows nothing about scores 0.
class Predictor {
 public:
  virtual ~Predictor() = default;
  virtual double score(const Edge& e) const = 0;
};

class ZeroPredictor final : public Predictor {
 public:
  double score(const Edge&) const override { return 0.0; }
};

// Fixed-capacity lookup table Edge -> score.
class EdgePredictor final : public Predictor {
 public:
  EdgePredictor() = default;
  explicit EdgePredictor(std::size_t capacity) : capacity_(capacity) {}

  double score(const Edge& e) const override {
    auto it = entries_.find(e);
    return it == entries_.end() ? 0.0 : it->second;
  }
  void insert(const Edge& e, double score);
  std::size_t size() const { return entries_.size(); }
  std::size_t capacity() const { return capacity_; }
  const std::unordered_map<Edge, double, EdgeHash>& entries() const { return entries_; }
  // Entries sorted by descending score, ties by canonical edge order.
  std::vector<std::pair<Edge, double>> sorted_entries() const;

 private:
  std::unordered_map<Edge, double, EdgeHash> entries_;
  std::size_t capacity_ = 0;
};

// Fixed-capacity lookup table NodeId -> degree. An edge scores
// min(deg(u), deg(v)) when both endpoints are stored, 0 otherwise.
class NodePredictor final : public Predictor {
 public:
  NodePredictor() = default;
  explicit NodePredictor(std::size_t capacity) : capacity_(capacity) {}

  double score(const Edge& e) const override {
    auto iu = entries_.find(e.u);
    if (iu == entries_.end()) return 0.0;
    auto iv = entries_.find(e.v);
    if (iv == entries_.end()) return 0.0;
    return static_cast<double>(std::min(iu->second, iv->second));
  }
  void insert(NodeId u, std::uint64_t degree);
  std::size_t size() const { return entries_.size(); }
  std::size_t capacity() const { return capacity_; }
  const std::unordered_map<NodeId, std::uint64_t>& entries() const { return entries_; }
  // Entries sorted by descending degree, ties by ascending node id.
  std::vector<std::pair<NodeId, std::uint64_t>> sorted_entries() const;

 private:
  std::unordered_map<NodeId, std::uint64_t> entries_;
  std::size_t capacity_ = 0;
};

// Stateless uniform pseudo-random heaviness in [0, 1).
class RandomPredictor final : public Predictor {
 public:
  explicit RandomPredictor(std::uint64_t salt) : salt_(salt) {}
  double score(const Edge& e) const override {
    std::uint64_t h = mix64(mix64(e.u ^ salt_ * 0x9e3779b97f4a7c15ULL) ^ e.v);
    return static_cast<double>(h >> 11) * 0x1.0p-53;
  }

 private:
  std::uint64_t salt_;
};

// Number of entries a predictor retains for a graph of m edges.
std::size_t retain_count(std::size_t m, double retain_fraction);

// Top edges by exact heaviness. Pre: counts built with per-edge counts.
EdgePredictor build_exact_predictor(const ExactCounts& counts, double retain_fraction);

// Heaviness discounted by recency-window coverage: score = count - covered.
EdgePredictor build_nowr_predictor(const ExactCounts& counts,
                                   const std::unordered_map<Edge, std::uint64_t, EdgeHash>& covered,
                                   double retain_fraction);

// Distinct nodes of the top retain_fraction edges ranked by min-degree,
// sorted ascending. Determines the node predictor's capacity.
std::vector<NodeId> min_degree_top_edge_nodes(std::span<const Edge> edges, double retain_fraction);

// Node-based min-degree predictor: the highest-degree nodes (as many as the
// edge-based top set has distinct nodes), each with its true degree.
NodePredictor build_min_degree_predictor(std::span<const Edge> edges, double retain_fraction);

// Edge-based min-degree representation (top edges, score = min-degree).
EdgePredictor build_min_degree_edge_predictor(std::span<const Edge> edges, double retain_fraction);

// Adversarial inversions: same entry count as the honest predictor, filled
// from the bottom of the honest ranking with scores in inverted order.
EdgePredictor adversarial_exact_predictor(const ExactCounts& counts, double retain_fraction);
NodePredictor adversarial_min_degree_predictor(std::span<const Edge> edges, double retain_fraction);

double jaccard_similarity(std::span<const NodeId> a, std::span<const NodeId> b);

// Text persistence. Edge files: "u v score" lines, descending score;
// node files: "u degree" lines, descending degree. Deterministic bytes.
void save_predictor(const EdgePredictor& p, const std::string& path);
void save_predictor(const NodePredictor& p, const std::string& path);
EdgePredictor load_edge_predictor(const std::string& path);
NodePredictor load_node_predictor(const std::string& path);

enum class PredictorKind {
  none,
  exact,
  nowr,
  min_degree_edge,
  min_degree_node,
  adversarial_exact,
  adversarial_min_degree,
  random,
};

struct PredictorSpec {
  PredictorKind kind = PredictorKind::none;
  double retain_fraction = 0.10;
  std::uint64_t wr_size = 0;  // nowr only
  std::uint64_t salt = 0;     // random only
};

// Builds a predictor of the given kind from a training stream.
std::unique_ptr<Predictor> build_predictor(const PredictorSpec& spec,
                                           std::span<const StreamEvent> training_stream);

}  // namespace tonic

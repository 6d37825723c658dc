#pragma once

#include <memory>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tonic/edge.hpp"
#include "tonic/predictor.hpp"
#include "tonic/rng.hpp"
#include "tonic/sampler.hpp"

namespace tonic {

enum class EngineMode : std::uint8_t { insertion_only, fully_dynamic };

// One discovered (or un-discovered) triangle and its correction factor.
struct TriangleHit {
  NodeId a = 0, b = 0, c = 0;
  double probability = 1.0;  // in (0, 1]
  double delta = 0.0;        // +-1/probability, sign follows the event
};

struct EstimateState {
  double global = 0.0;
  std::unordered_map<NodeId, double> local;  // counters exist only once touched
};

struct EstimateReport {
  double global = 0.0;
  std::unordered_map<NodeId, double> locals;  // strictly positive entries only
};

// Probability that a triangle with stored-edge locations a and b was present
// in the sample at discovery time. Light memberships divide by the number of
// light edges observed (plus uncompensated deletions in FD mode); values at
// or below the reservoir capacity clamp to 1.
double triangle_probability(StoreKind a, StoreKind b, const PairingCounters& counters,
                            const SamplerConfig& cfg, EngineMode mode);

// One-pass estimator over an edge stream: counts the triangles each event
// closes against the stored subgraph, then maintains the waiting room, heavy
// set and light reservoir. Single-threaded; one instance per stream.
class TriangleEstimator {
 public:
  TriangleEstimator(const SamplerConfig& cfg, EngineMode mode, const Predictor& predictor,
                    std::uint64_t seed, bool strict_fd = false);

  void process(const StreamEvent& event);
  void process(const Edge& e, Sign sign);

  // Counting step only: applies the probability-corrected increments for
  // every triangle the edge closes and reports them. process() runs this
  // before any store maintenance.
  std::vector<TriangleHit> count_triangles(const Edge& e, Sign sign);

  EngineMode mode() const { return mode_; }
  double global_raw() const { return state_.global; }
  const std::unordered_map<NodeId, double>& locals_raw() const { return state_.local; }

  // Anytime estimates; fully dynamic mode clamps at zero. Raw state is
  // left untouched.
  double global() const;
  EstimateReport report() const;

  const SampleStores& stores() const { return stores_; }
  const PairingCounters& counters() const { return stores_.counters(); }
  std::uint64_t events_processed() const { return events_; }

 private:
  void process_insert(const Edge& e);
  void process_remove(const Edge& e);

  SamplerConfig cfg_;
  EngineMode mode_;
  const Predictor& predictor_;
  bool strict_fd_;
  Rng rng_;
  SampleStores stores_;
  EstimateState state_;
  std::uint64_t events_ = 0;
  std::unordered_set<Edge, EdgeHash> live_;  // strict mode only
};

}  // namespace tonic

#pragma once

#include <deque>
#include <optional>
#include <span>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "tonic/edge.hpp"
#include "tonic/rng.hpp"

namespace tonic {

// Memory split of the edge budget k: wr_cap = floor(k*alpha), heavy_cap =
// floor(k*(1-alpha)*beta), light_cap = the remainder. wr_cap and light_cap
// must come out >= 1; beta = 0 (no heavy set) is the degenerate baseline.
struct SamplerConfig {
  std::uint64_t budget = 0;
  double alpha = 0.05;
  double beta = 0.2;
  std::uint64_t wr_cap = 0;
  std::uint64_t heavy_cap = 0;
  std::uint64_t light_cap = 0;

  static SamplerConfig create(std::uint64_t k, double alpha, double beta);
};

struct PairingCounters {
  std::int64_t light_seen = 0;      // edges that took the light path
  std::int64_t good_deletions = 0;  // uncompensated deletions outside the reservoir
  std::int64_t bad_deletions = 0;   // uncompensated deletions inside the reservoir
  std::int64_t uncompensated() const { return good_deletions + bad_deletions; }
};

enum class StoreKind : std::uint8_t { waiting_room, heavy, light };

// FIFO of the most recent edges; supports arbitrary removal (FD deletions)
// while evicting the oldest edge still present.
class WaitingRoom {
 public:
  std::size_t size() const { return live_.size(); }
  bool contains(const Edge& e) const { return live_.contains(e); }
  void insert(const Edge& e);
  Edge evict_oldest();
  bool remove(const Edge& e);

 private:
  void skip_dead();

  std::deque<std::pair<std::uint64_t, Edge>> order_;  // lazy; entries may be stale
  std::unordered_map<Edge, std::uint64_t, EdgeHash> live_;
  std::uint64_t next_seq_ = 0;
};

// Indexed binary min-heap of (edge, score). The root is the next edge to
// demote: lowest score, ties resolved against the latest arrival so earlier
// arrivals survive. Position index gives O(log n) arbitrary removal.
class HeavySet {
 public:
  std::size_t size() const { return heap_.size(); }
  bool contains(const Edge& e) const { return pos_.contains(e); }
  void insert(const Edge& e, double score);
  const Edge& min_edge() const { return heap_.front().edge; }
  double min_score() const { return heap_.front().score; }
  Edge replace_min(const Edge& e, double score);
  bool remove(const Edge& e);
  double score_of(const Edge& e) const { return heap_[pos_.at(e)].score; }
  std::vector<Edge> edges() const;

 private:
  struct Entry {
    Edge edge;
    double score;
    std::uint64_t seq;
  };
  static bool before(const Entry& a, const Entry& b) {
    if (a.score != b.score) return a.score < b.score;
    return a.seq > b.seq;
  }
  void sift_up(std::size_t i);
  void sift_down(std::size_t i);
  void place(std::size_t i, Entry entry);

  std::vector<Entry> heap_;
  std::unordered_map<Edge, std::size_t, EdgeHash> pos_;
  std::uint64_t next_seq_ = 0;
};

// Fixed-capacity uniform sample with O(1) membership and removal.
class LightReservoir {
 public:
  std::size_t size() const { return slots_.size(); }
  bool contains(const Edge& e) const { return pos_.contains(e); }
  void add(const Edge& e);
  Edge replace_random(const Edge& e, Rng& rng);  // returns the evicted edge
  bool remove(const Edge& e);
  const std::vector<Edge>& edges() const { return slots_; }

 private:
  std::vector<Edge> slots_;
  std::unordered_map<Edge, std::size_t, EdgeHash> pos_;
};

enum class ReservoirOutcome : std::uint8_t { stored, discarded, replaced };

struct ReservoirResult {
  ReservoirOutcome outcome;
  Edge evicted{};  // valid when outcome == replaced
};

enum class RemovalOutcome : std::uint8_t { from_waiting_room, from_heavy, light_bad, light_good };

// The sampled subgraph: waiting room, heavy set and light reservoir, kept
// pairwise disjoint, plus the pairing counters and an adjacency index over
// the union for common-neighbor enumeration.
class SampleStores {
 public:
  explicit SampleStores(const SamplerConfig& cfg) : cfg_(cfg) {}

  const SamplerConfig& config() const { return cfg_; }
  PairingCounters& counters() { return counters_; }
  const PairingCounters& counters() const { return counters_; }

  bool wr_full() const { return wr_.size() >= cfg_.wr_cap; }
  bool heavy_full() const { return heavy_.size() >= cfg_.heavy_cap; }
  std::size_t wr_size() const { return wr_.size(); }
  std::size_t heavy_size() const { return heavy_.size(); }
  std::size_t light_size() const { return light_.size(); }
  std::size_t stored_edges() const { return location_.size(); }

  void wr_admit(const Edge& e);
  Edge wr_pop_oldest();  // evicted edge leaves the stored subgraph
  void heavy_admit(const Edge& e, double score);
  double heavy_min_score() const { return heavy_.min_score(); }
  // Swaps the heap minimum for e; the former minimum leaves the subgraph
  // and is returned for the light path.
  Edge heavy_swap_min(const Edge& e, double score);

  // Reservoir step for an edge demoted to the light path. Pre: light_seen
  // already incremented for this arrival. With no uncompensated deletions
  // this is plain reservoir sampling (fill, else accept with probability
  // light_cap / light_seen evicting a uniform victim); with uncompensated
  // deletions it is the random-pairing branch: store with probability
  // d_b / (d_b + d_g) and decrement the matching counter.
  // Draws from rng, in order: acceptance coin, then victim index if accepted;
  // the pairing branch draws a single coin.
  ReservoirResult reservoir_insert(const Edge& e, Rng& rng);

  // FD deletion routing. W/H removals leave counters untouched; light
  // removals decrement light_seen and bump the matching pairing counter.
  RemovalOutcome remove_edge_fd(const Edge& e);

  std::optional<StoreKind> location(const Edge& e) const;
  bool contains(const Edge& e) const { return location_.contains(e); }

  // Yields each common neighbor w of u and v in the stored subgraph with the
  // locations of {u,w} and {v,w}; iterates the smaller adjacency list.
  template <typename Fn>
  void for_each_common_neighbor(NodeId u, NodeId v, Fn&& fn) const {
    auto iu = adj_.find(u);
    auto iv = adj_.find(v);
    if (iu == adj_.end() || iv == adj_.end()) return;
    bool u_smaller = iu->second.size() <= iv->second.size();
    const auto& small = u_smaller ? iu->second : iv->second;
    const auto& large = u_smaller ? iv->second : iu->second;
    for (NodeId w : small) {
      if (!large.contains(w)) continue;
      fn(w, location_.at(make_edge(u, w)), location_.at(make_edge(v, w)));
    }
  }

  std::vector<Edge> edges_in(StoreKind kind) const;
  void validate() const;  // invariant check for tests and fuzzing

 private:
  void index_add(const Edge& e, StoreKind kind);
  void index_remove(const Edge& e);

  SamplerConfig cfg_;
  PairingCounters counters_;
  WaitingRoom wr_;
  HeavySet heavy_;
  LightReservoir light_;
  std::unordered_map<Edge, StoreKind, EdgeHash> location_;
  std::unordered_map<NodeId, std::unordered_set<NodeId>> adj_;
};

}  // namespace tonic

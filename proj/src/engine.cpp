#include "tonic/engine.hpp"

#include <cassert>
#include <stdexcept>

namespace tonic {

double triangle_probability(StoreKind a, StoreKind b, const PairingCounters& counters,
                            const SamplerConfig& cfg, EngineMode mode) {
  int light = (a == StoreKind::light ? 1 : 0) + (b == StoreKind::light ? 1 : 0);
  if (light == 0) return 1.0;
  double cap = static_cast<double>(cfg.light_cap);
  double seen = static_cast<double>(counters.light_seen);
  if (mode == EngineMode::fully_dynamic)
    seen += static_cast<double>(counters.good_deletions + counters.bad_deletions);
  if (seen <= cap) return 1.0;  // reservoir still in its fill phase
  double p = cap / seen;
  if (light == 2) p *= (cap - 1.0) / (seen - 1.0);
  return p < 1.0 ? p : 1.0;
}

TriangleEstimator::TriangleEstimator(const SamplerConfig& cfg, EngineMode mode,
                                     const Predictor& predictor, std::uint64_t seed,
                                     bool strict_fd)
    : cfg_(cfg),
      mode_(mode),
      predictor_(predictor),
      strict_fd_(strict_fd),
      rng_(seed),
      stores_(cfg) {}

std::vector<TriangleHit> TriangleEstimator::count_triangles(const Edge& e, Sign sign) {
  std::vector<TriangleHit> hits;
  double direction = sign == Sign::insert ? 1.0 : -1.0;
  stores_.for_each_common_neighbor(e.u, e.v, [&](NodeId w, StoreKind la, StoreKind lb) {
    double p = triangle_probability(la, lb, stores_.counters(), cfg_, mode_);
    assert(p > 0.0 && p <= 1.0);
    double delta = direction / p;
    state_.global += delta;
    state_.local[e.u] += delta;
    state_.local[e.v] += delta;
    state_.local[w] += delta;
    hits.push_back({e.u, e.v, w, p, delta});
  });
  return hits;
}

void TriangleEstimator::process(const StreamEvent& event) { process(event.edge, event.sign); }

void TriangleEstimator::process(const Edge& e, Sign sign) {
  if (sign == Sign::remove && mode_ != EngineMode::fully_dynamic)
    throw std::logic_error("deletion in insertion-only mode");
  if (strict_fd_) {
    if (sign == Sign::insert && !live_.insert(e).second)
      throw std::runtime_error("strict mode: duplicate insertion");
    if (sign == Sign::remove && live_.erase(e) == 0)
      throw std::runtime_error("strict mode: deletion of an edge never inserted");
  }
  ++events_;
  if (sign == Sign::insert)
    process_insert(e);
  else
    process_remove(e);
}

void TriangleEstimator::process_insert(const Edge& e) {
  count_triangles(e, Sign::insert);

  if (!stores_.wr_full()) {
    stores_.wr_admit(e);
    return;
  }
  Edge evicted = stores_.wr_pop_oldest();
  stores_.wr_admit(e);

  if (!stores_.heavy_full()) {
    stores_.heavy_admit(evicted, predictor_.score(evicted));
    return;
  }
  ++stores_.counters().light_seen;
  Edge demoted = evicted;
  if (cfg_.heavy_cap > 0) {
    double score = predictor_.score(evicted);
    if (score > stores_.heavy_min_score()) demoted = stores_.heavy_swap_min(evicted, score);
  }
  stores_.reservoir_insert(demoted, rng_);
}

void TriangleEstimator::process_remove(const Edge& e) {
  count_triangles(e, Sign::remove);
  stores_.remove_edge_fd(e);
}

double TriangleEstimator::global() const {
  if (mode_ == EngineMode::fully_dynamic && state_.global < 0.0) return 0.0;
  return state_.global;
}

EstimateReport TriangleEstimator::report() const {
  EstimateReport out;
  out.global = global();
  for (const auto& [u, raw] : state_.local) {
    double value = mode_ == EngineMode::fully_dynamic && raw < 0.0 ? 0.0 : raw;
    if (value > 0.0) out.locals.emplace(u, value);
  }
  return out;
}

}  // namespace tonic

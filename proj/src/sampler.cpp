#include "tonic/sampler.hpp"

#include <cmath>
#include <stdexcept>

namespace tonic {

SamplerConfig SamplerConfig::create(std::uint64_t k, double alpha, double beta) {
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("alpha must be in (0, 1)");
  if (!(beta >= 0.0 && beta < 1.0)) throw std::invalid_argument("beta must be in [0, 1)");
  SamplerConfig cfg;
  cfg.budget = k;
  cfg.alpha = alpha;
  cfg.beta = beta;
  // +1e-9 guards against floor(6.999999...) from binary fractions.
  cfg.wr_cap = static_cast<std::uint64_t>(std::floor(static_cast<double>(k) * alpha + 1e-9));
  cfg.heavy_cap =
      static_cast<std::uint64_t>(std::floor(static_cast<double>(k) * (1.0 - alpha) * beta + 1e-9));
  if (cfg.wr_cap < 1) throw std::invalid_argument("budget too small: empty waiting room");
  if (cfg.wr_cap + cfg.heavy_cap >= k)
    throw std::invalid_argument("budget too small: empty light reservoir");
  cfg.light_cap = k - cfg.wr_cap - cfg.heavy_cap;
  return cfg;
}

void WaitingRoom::insert(const Edge& e) {
  live_[e] = next_seq_;
  order_.emplace_back(next_seq_, e);
  ++next_seq_;
}

void WaitingRoom::skip_dead() {
  while (!order_.empty()) {
    auto it = live_.find(order_.front().second);
    if (it != live_.end() && it->second == order_.front().first) break;
    order_.pop_front();
  }
}

Edge WaitingRoom::evict_oldest() {
  skip_dead();
  Edge e = order_.front().second;
  order_.pop_front();
  live_.erase(e);
  return e;
}

bool WaitingRoom::remove(const Edge& e) {
  if (live_.erase(e) == 0) return false;
  // Stale entries accumulate under FD removals; compact before they dominate.
  if (order_.size() > 2 * live_.size() + 16) {
    std::erase_if(order_, [&](const auto& entry) {
      auto it = live_.find(entry.second);
      return it == live_.end() || it->second != entry.first;
    });
  }
  return true;
}

void HeavySet::place(std::size_t i, Entry entry) {
  pos_[entry.edge] = i;
  heap_[i] = std::move(entry);
}

void HeavySet::sift_up(std::size_t i) {
  while (i > 0) {
    std::size_t parent = (i - 1) / 2;
    if (!before(heap_[i], heap_[parent])) break;
    Entry tmp = heap_[i];
    place(i, heap_[parent]);
    place(parent, tmp);
    i = parent;
  }
}

void HeavySet::sift_down(std::size_t i) {
  for (;;) {
    std::size_t left = 2 * i + 1, right = left + 1, smallest = i;
    if (left < heap_.size() && before(heap_[left], heap_[smallest])) smallest = left;
    if (right < heap_.size() && before(heap_[right], heap_[smallest])) smallest = right;
    if (smallest == i) return;
    Entry tmp = heap_[i];
    place(i, heap_[smallest]);
    place(smallest, tmp);
    i = smallest;
  }
}

void HeavySet::insert(const Edge& e, double score) {
  heap_.push_back({e, score, next_seq_++});
  pos_[e] = heap_.size() - 1;
  sift_up(heap_.size() - 1);
}

Edge HeavySet::replace_min(const Edge& e, double score) {
  Edge old = heap_.front().edge;
  pos_.erase(old);
  place(0, {e, score, next_seq_++});
  sift_down(0);
  return old;
}

bool HeavySet::remove(const Edge& e) {
  auto it = pos_.find(e);
  if (it == pos_.end()) return false;
  std::size_t i = it->second;
  pos_.erase(it);
  if (i + 1 != heap_.size()) {
    place(i, heap_.back());
    heap_.pop_back();
    sift_down(i);
    sift_up(i);
  } else {
    heap_.pop_back();
  }
  return true;
}

std::vector<Edge> HeavySet::edges() const {
  std::vector<Edge> out;
  out.reserve(heap_.size());
  for (const Entry& entry : heap_) out.push_back(entry.edge);
  return out;
}

void LightReservoir::add(const Edge& e) {
  pos_[e] = slots_.size();
  slots_.push_back(e);
}

Edge LightReservoir::replace_random(const Edge& e, Rng& rng) {
  std::size_t i = uniform_index(rng, slots_.size());
  Edge victim = slots_[i];
  pos_.erase(victim);
  slots_[i] = e;
  pos_[e] = i;
  return victim;
}

bool LightReservoir::remove(const Edge& e) {
  auto it = pos_.find(e);
  if (it == pos_.end()) return false;
  std::size_t i = it->second;
  pos_.erase(it);
  if (i + 1 != slots_.size()) {
    slots_[i] = slots_.back();
    pos_[slots_[i]] = i;
  }
  slots_.pop_back();
  return true;
}

void SampleStores::index_add(const Edge& e, StoreKind kind) {
  location_.emplace(e, kind);
  adj_[e.u].insert(e.v);
  adj_[e.v].insert(e.u);
}

void SampleStores::index_remove(const Edge& e) {
  location_.erase(e);
  auto drop = [&](NodeId a, NodeId b) {
    auto it = adj_.find(a);
    it->second.erase(b);
    if (it->second.empty()) adj_.erase(it);
  };
  drop(e.u, e.v);
  drop(e.v, e.u);
}

void SampleStores::wr_admit(const Edge& e) {
  wr_.insert(e);
  index_add(e, StoreKind::waiting_room);
}

Edge SampleStores::wr_pop_oldest() {
  Edge e = wr_.evict_oldest();
  index_remove(e);
  return e;
}

void SampleStores::heavy_admit(const Edge& e, double score) {
  heavy_.insert(e, score);
  index_add(e, StoreKind::heavy);
}

Edge SampleStores::heavy_swap_min(const Edge& e, double score) {
  Edge old = heavy_.replace_min(e, score);
  index_remove(old);
  index_add(e, StoreKind::heavy);
  return old;
}

ReservoirResult SampleStores::reservoir_insert(const Edge& e, Rng& rng) {
  if (counters_.uncompensated() == 0) {
    if (light_.size() < cfg_.light_cap) {
      light_.add(e);
      index_add(e, StoreKind::light);
      return {ReservoirOutcome::stored, {}};
    }
    double p = static_cast<double>(cfg_.light_cap) / static_cast<double>(counters_.light_seen);
    if (flip_coin(rng, p)) {
      Edge victim = light_.replace_random(e, rng);
      index_remove(victim);
      index_add(e, StoreKind::light);
      return {ReservoirOutcome::replaced, victim};
    }
    return {ReservoirOutcome::discarded, {}};
  }
  double p = static_cast<double>(counters_.bad_deletions) /
             static_cast<double>(counters_.uncompensated());
  if (flip_coin(rng, p)) {
    light_.add(e);
    index_add(e, StoreKind::light);
    --counters_.bad_deletions;
    return {ReservoirOutcome::stored, {}};
  }
  --counters_.good_deletions;
  return {ReservoirOutcome::discarded, {}};
}

RemovalOutcome SampleStores::remove_edge_fd(const Edge& e) {
  auto it = location_.find(e);
  if (it != location_.end()) {
    switch (it->second) {
      case StoreKind::waiting_room:
        wr_.remove(e);
        index_remove(e);
        return RemovalOutcome::from_waiting_room;
      case StoreKind::heavy:
        heavy_.remove(e);
        index_remove(e);
        return RemovalOutcome::from_heavy;
      case StoreKind::light:
        --counters_.light_seen;
        light_.remove(e);
        index_remove(e);
        ++counters_.bad_deletions;
        return RemovalOutcome::light_bad;
    }
  }
  --counters_.light_seen;
  ++counters_.good_deletions;
  return RemovalOutcome::light_good;
}

std::optional<StoreKind> SampleStores::location(const Edge& e) const {
  auto it = location_.find(e);
  if (it == location_.end()) return std::nullopt;
  return it->second;
}

std::vector<Edge> SampleStores::edges_in(StoreKind kind) const {
  std::vector<Edge> out;
  for (const auto& [e, loc] : location_)
    if (loc == kind) out.push_back(e);
  return out;
}

void SampleStores::validate() const {
  auto fail = [](const char* what) { throw std::logic_error(what); };
  if (wr_.size() > cfg_.wr_cap) fail("waiting room over capacity");
  if (heavy_.size() > cfg_.heavy_cap) fail("heavy set over capacity");
  if (light_.size() > cfg_.light_cap) fail("light reservoir over capacity");
  if (counters_.light_seen < 0 || counters_.good_deletions < 0 || counters_.bad_deletions < 0)
    fail("negative counter");
  if (location_.size() != wr_.size() + heavy_.size() + light_.size())
    fail("stores overlap or index out of sync");
  std::size_t adj_edges = 0;
  for (const auto& [node, neigh] : adj_) {
    adj_edges += neigh.size();
    for (NodeId w : neigh)
      if (!location_.contains(make_edge(node, w))) fail("adjacency lists a missing edge");
  }
  if (adj_edges != 2 * location_.size()) fail("adjacency out of sync");
  for (const auto& [e, loc] : location_) {
    bool in_wr = wr_.contains(e), in_h = heavy_.contains(e), in_l = light_.contains(e);
    if ((in_wr ? 1 : 0) + (in_h ? 1 : 0) + (in_l ? 1 : 0) != 1) fail("edge not in exactly one store");
    StoreKind actual = in_wr   ? StoreKind::waiting_room
                       : in_h  ? StoreKind::heavy
                               : StoreKind::light;
    if (actual != loc) fail("location index mismatch");
  }
}

}  // namespace tonic

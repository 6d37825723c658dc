#include <deque>
#include <fstream>

#include "doctest.h"
#include "support/testgen.hpp"
#include "tonic/exact.hpp"
#include "tonic/stream_io.hpp"

using namespace tonic;

TEST_CASE("triangle gives unit counts everywhere") {
  std::vector<Edge> k3 = {{1, 2}, {1, 3}, {2, 3}};
  auto counts = count_exact(k3, true);
  CHECK(counts.global == 1);
  for (NodeId u : {1, 2, 3}) CHECK(counts.local.at(u) == 1);
  for (const Edge& e : k3) CHECK(counts.per_edge.at(e) == 1);
}

TEST_CASE("complete graph on four nodes") {
  auto k4 = testgen::clique_edges(0, 4);
  auto counts = count_exact(k4, true);
  CHECK(counts.global == 4);
  for (NodeId u = 0; u < 4; ++u) CHECK(counts.local.at(u) == 3);
  for (const Edge& e : k4) CHECK(counts.per_edge.at(e) == 2);
}

TEST_CASE("empty graph counts zero") {
  auto counts = count_exact(std::vector<Edge>{}, true);
  CHECK(counts.global == 0);
  CHECK(counts.local.empty());
  CHECK(counts.per_edge.empty());
}

TEST_CASE("agrees with triple enumeration on a random graph") {
  auto edges = testgen::gnp_edges(60, 0.15, 4242);
  auto counts = count_exact(edges, true);
  auto brute = testgen::brute_force_counts(edges);
  CHECK(counts.global == brute.global);
  CHECK(counts.local.size() == brute.local.size());
  for (const auto& [u, t] : brute.local) CHECK(counts.local.at(u) == t);
  for (const auto& [uv, d] : brute.per_edge) CHECK(counts.per_edge.at({uv.first, uv.second}) == d);
}

TEST_CASE("count sums: locals and per-edge each triple the global count") {
  for (std::uint64_t seed : {1, 2, 3}) {
    auto edges = testgen::planted_cluster_edges(50, 0.1, seed, 2, 6);
    auto counts = count_exact(edges, true);
    std::uint64_t local_sum = 0, edge_sum = 0;
    for (const auto& [u, t] : counts.local) local_sum += t;
    for (const auto& [e, d] : counts.per_edge) edge_sum += d;
    CHECK(local_sum == 3 * counts.global);
    CHECK(edge_sum == 3 * counts.global);
    std::unordered_map<NodeId, std::uint64_t> deg;
    for (const auto& [e, d] : counts.per_edge) {
      ++deg[e.u];
      ++deg[e.v];
    }
    for (const auto& [e, d] : counts.per_edge)
      CHECK(d <= std::min(deg.at(e.u), deg.at(e.v)) - 1);
  }
}

TEST_CASE("window covering equals full heaviness when the window spans the stream") {
  auto edges = testgen::planted_cluster_edges(30, 0.12, 9, 1, 6);
  auto events = testgen::to_events(edges);
  auto covered = count_wr_covered(events, events.size());
  auto counts = count_exact(edges, true);
  REQUIRE(covered.size() == edges.size());
  for (const Edge& e : edges) CHECK(covered.at(e) == counts.per_edge.at(e));
}

TEST_CASE("zero-size window covers nothing") {
  auto events = testgen::to_events(testgen::clique_edges(0, 5));
  auto covered = count_wr_covered(events, 0);
  for (const auto& [e, c] : covered) CHECK(c == 0);
}

namespace {

// Independent replay: window membership by stream-position arithmetic
// instead of a materialized window. After edge i arrives the window holds
// positions (i - wr, i].
std::unordered_map<Edge, std::uint64_t, EdgeHash> covered_by_position(
    const std::vector<StreamEvent>& events, std::uint64_t wr) {
  std::unordered_map<Edge, std::uint64_t, EdgeHash> covered;
  std::map<Edge, std::size_t> arrival;
  std::map<NodeId, std::set<NodeId>> adj;
  for (std::size_t i = 0; i < events.size(); ++i) {
    const Edge& e = events[i].edge;
    covered.try_emplace(e, 0);
    arrival[e] = i;
    auto in_window = [&](const Edge& x) { return wr > 0 && arrival.at(x) + wr > i; };
    for (NodeId w : adj[e.u]) {
      if (!adj[e.v].contains(w)) continue;
      for (const Edge& side : {make_edge(e.u, w), make_edge(e.v, w), e})
        if (in_window(side)) ++covered[side];
    }
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  return covered;
}

}  // namespace

TEST_CASE("window covering matches an independent positional replay") {
  auto edges = testgen::shuffled(testgen::planted_cluster_edges(40, 0.1, 17, 2, 7), 3);
  auto events = testgen::to_events(edges);
  REQUIRE(events.size() >= 100);
  for (std::uint64_t wr : {5, 20, 60}) {
    auto fast = count_wr_covered(events, wr);
    auto slow = covered_by_position(events, wr);
    REQUIRE(fast.size() == slow.size());
    for (const auto& [e, c] : slow) CHECK(fast.at(e) == c);
  }
}

TEST_CASE("covering never exceeds heaviness") {
  auto edges = testgen::planted_cluster_edges(40, 0.1, 23, 2, 7);
  auto events = testgen::to_events(edges);
  auto counts = count_exact(edges, true);
  for (std::uint64_t wr : {1, 7, 33}) {
    auto covered = count_wr_covered(events, wr);
    for (const auto& [e, c] : covered) CHECK(c <= counts.per_edge.at(e));
  }
}

TEST_CASE("incremental counter tracks inserts and deletes") {
  IncrementalTriangleCounter counter;
  counter.insert({1, 2});
  counter.insert({1, 3});
  CHECK(counter.triangles() == 0);
  counter.insert({2, 3});
  CHECK(counter.triangles() == 1);
  counter.insert({2, 4});
  counter.insert({3, 4});
  CHECK(counter.triangles() == 2);
  counter.erase({2, 3});
  CHECK(counter.triangles() == 0);
  CHECK(counter.edge_count() == 4);
}

TEST_CASE("incremental counter agrees with batch counting under churn") {
  auto edges = testgen::gnp_edges(25, 0.3, 5);
  IncrementalTriangleCounter counter;
  std::vector<Edge> live;
  std::mt19937_64 rng(11);
  for (const Edge& e : edges) {
    counter.insert(e);
    live.push_back(e);
    if (rng() % 4 == 0 && live.size() > 2) {
      std::size_t i = rng() % live.size();
      counter.erase(live[i]);
      live.erase(live.begin() + static_cast<std::ptrdiff_t>(i));
    }
    CHECK(counter.triangles() == count_exact(live).global);
  }
}

TEST_CASE("peak concurrent edges over an FD stream") {
  std::vector<StreamEvent> events = {
      {{1, 2}, Sign::insert, 1}, {{2, 3}, Sign::insert, 2}, {{1, 2}, Sign::remove, 3},
      {{3, 4}, Sign::insert, 4}, {{4, 5}, Sign::insert, 5}, {{3, 4}, Sign::remove, 6},
  };
  CHECK(max_concurrent_edges(events) == 3);
  CHECK(replay_final_edges(events) == std::vector<Edge>{{2, 3}, {4, 5}});
}

TEST_CASE("dump writes a deterministic text summary") {
  auto counts = count_exact(testgen::clique_edges(1, 3), true);
  testgen::TempFile file("dump");
  dump_exact_counts(counts, file.path());
  CHECK(file.read_all() ==
        "global 1\n"
        "node 1 1\nnode 2 1\nnode 3 1\n"
        "edge 1 2 1\nedge 1 3 1\nedge 2 3 1\n");
}

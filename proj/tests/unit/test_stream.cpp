#include <algorithm>
#include <random>
#include <set>
#include <sstream>

#include "doctest.h"
#include "support/testgen.hpp"
#include "tonic/snapshots.hpp"
#include "tonic/stream_io.hpp"

using namespace tonic;
using testgen::TempFile;

TEST_CASE("edge list ingestion canonicalizes, dedupes and drops self-loops") {
  TempFile file("edges");
  file.write_lines({"1 2", "2 1", "3 3", "2 3"});
  IngestStats stats;
  auto events = ingest_edge_list(file.path(), {true, true}, &stats);
  REQUIRE(events.size() == 2);
  CHECK(events[0].edge == Edge{1, 2});
  CHECK(events[1].edge == Edge{2, 3});
  CHECK(events[0].t == 1);
  CHECK(events[1].t == 2);
  CHECK(stats.nodes == 3);
  CHECK(stats.edges == 2);
}

TEST_CASE("single edge passes through untouched") {
  TempFile file("edges");
  file.write_lines({"5 7"});
  IngestStats stats;
  auto events = ingest_edge_list(file.path(), {true, true}, &stats);
  REQUIRE(events.size() == 1);
  CHECK(events[0].edge == Edge{5, 7});
  CHECK(stats.nodes == 2);
  CHECK(stats.edges == 1);
}

TEST_CASE("comments, blanks and trailing fields are tolerated") {
  TempFile file("edges");
  file.write_lines({"# a comment", "", "4 5 1716307200 0.5", "  ", "6 7"});
  auto events = ingest_edge_list(file.path(), {true, true});
  REQUIRE(events.size() == 2);
  CHECK(events[0].edge == Edge{4, 5});
}

TEST_CASE("malformed lines report their line number") {
  TempFile file("edges");
  file.write_lines({"1 2", "zap 3"});
  CHECK_THROWS_WITH_AS(ingest_edge_list(file.path(), {true, true}), doctest::Contains(":2:"),
                       std::runtime_error);

  TempFile lonely("edges");
  lonely.write_lines({"42"});
  CHECK_THROWS_AS(ingest_edge_list(lonely.path(), {true, true}), std::runtime_error);

  TempFile loop("edges");
  loop.write_lines({"3 3"});
  CHECK_THROWS_AS(ingest_edge_list(loop.path(), {true, false}), std::runtime_error);
}

TEST_CASE("empty file gives an empty stream and zero stats") {
  TempFile file("edges");
  file.write_lines({});
  IngestStats stats;
  auto events = ingest_edge_list(file.path(), {true, true}, &stats);
  CHECK(events.empty());
  CHECK(stats.nodes == 0);
  CHECK(stats.edges == 0);
}

TEST_CASE("ingest matches an independent set-based dedupe pass") {
  auto edges = testgen::gnp_edges(50, 0.2, 99);
  // Write with noise: duplicates, reversals, self-loops.
  std::vector<std::string> lines;
  std::mt19937_64 rng(7);
  for (const Edge& e : edges) {
    lines.push_back(std::to_string(e.u) + " " + std::to_string(e.v));
    if (rng() % 3 == 0) lines.push_back(std::to_string(e.v) + " " + std::to_string(e.u));
    if (rng() % 5 == 0) lines.push_back(std::to_string(e.u) + " " + std::to_string(e.u));
  }
  TempFile file("edges");
  file.write_lines(lines);

  // Independent oracle: canonical pair set over the same lines.
  std::set<std::pair<NodeId, NodeId>> oracle;
  for (const auto& line : lines) {
    std::istringstream iss(line);
    NodeId a, b;
    iss >> a >> b;
    if (a != b) oracle.emplace(std::min(a, b), std::max(a, b));
  }

  IngestStats stats;
  auto events = ingest_edge_list(file.path(), {true, true}, &stats);
  CHECK(stats.edges == oracle.size());
  std::set<std::pair<NodeId, NodeId>> got;
  for (const auto& ev : events) got.emplace(ev.edge.u, ev.edge.v);
  CHECK(got == oracle);
}

TEST_CASE("ingest without dedupe keeps duplicates") {
  TempFile file("edges");
  file.write_lines({"1 2", "2 1", "1 2"});
  auto events = ingest_edge_list(file.path(), {false, true});
  CHECK(events.size() == 3);
}

TEST_CASE("fd stream parsing handles both sign alphabets") {
  TempFile file("fd");
  file.write_lines({"1 2 +", "1 2 -"});
  auto events = ingest_fd_stream(file.path());
  REQUIRE(events.size() == 2);
  CHECK(events[0].sign == Sign::insert);
  CHECK(events[1].sign == Sign::remove);
  CHECK(events[1].edge == Edge{1, 2});

  TempFile numeric("fd");
  numeric.write_lines({"4 9 1", "2 4 -1"});
  auto nevents = ingest_fd_stream(numeric.path());
  REQUIRE(nevents.size() == 2);
  CHECK(nevents[0].edge == Edge{4, 9});
  CHECK(nevents[0].sign == Sign::insert);
  CHECK(nevents[1].edge == Edge{2, 4});
  CHECK(nevents[1].sign == Sign::remove);

  TempFile bad("fd");
  bad.write_lines({"1 2 ?"});
  CHECK_THROWS_WITH_AS(ingest_fd_stream(bad.path()), doctest::Contains("sign"),
                       std::runtime_error);
}

TEST_CASE("fd stream write/read round-trip of 1000 random events is identity") {
  std::mt19937_64 rng(1234);
  std::vector<StreamEvent> events;
  for (std::size_t i = 0; i < 1000; ++i) {
    NodeId u = rng() % 500, v = rng() % 500;
    if (u == v) v = u + 1;
    events.push_back({make_edge(u, v), rng() % 2 ? Sign::insert : Sign::remove, i + 1});
  }
  TempFile file("fd");
  write_fd_stream(file.path(), events);
  auto back = ingest_fd_stream(file.path());
  REQUIRE(back.size() == events.size());
  for (std::size_t i = 0; i < events.size(); ++i) {
    CHECK(back[i].edge == events[i].edge);
    CHECK(back[i].sign == events[i].sign);
    CHECK(back[i].t == i + 1);
  }
}

namespace {

std::set<Edge> replay_prefix(const std::vector<StreamEvent>& events, std::size_t end) {
  std::set<Edge> live;
  for (std::size_t i = 0; i < end; ++i) {
    if (events[i].sign == Sign::insert)
      live.insert(events[i].edge);
    else
      live.erase(events[i].edge);
  }
  return live;
}

}  // namespace

TEST_CASE("synthesized stream: identical snapshots collapse to plain inserts") {
  SnapshotSequence seq;
  seq.snapshots = {{{1, 2}}, {{1, 2}}};
  seq.labels = {"a", "b"};
  std::vector<std::size_t> bounds;
  auto events = synthesize_fd_stream(seq, 5, &bounds);
  REQUIRE(events.size() == 1);
  CHECK(events[0].edge == Edge{1, 2});
  CHECK(events[0].sign == Sign::insert);
  CHECK(bounds == std::vector<std::size_t>{1, 1});
}

TEST_CASE("synthesized stream: diff window mixes insert and delete, replay is exact") {
  SnapshotSequence seq;
  seq.snapshots = {{{1, 2}, {2, 3}}, {{2, 3}, {3, 4}}};
  seq.labels = {"a", "b"};
  std::vector<std::size_t> bounds;
  auto events = synthesize_fd_stream(seq, 42, &bounds);
  REQUIRE(bounds.size() == 2);
  CHECK(replay_prefix(events, bounds[0]) == std::set<Edge>{{1, 2}, {2, 3}});
  CHECK(replay_prefix(events, bounds[1]) == std::set<Edge>{{2, 3}, {3, 4}});
  // Window holds exactly the insertion of {3,4} and the deletion of {1,2}.
  CHECK(bounds[1] - bounds[0] == 2);
}

TEST_CASE("synthesized stream replay matches every snapshot boundary") {
  std::vector<std::vector<Edge>> snaps;
  for (std::uint64_t s = 0; s < 3; ++s) snaps.push_back(testgen::gnp_edges(30, 0.15, 100 + s));
  SnapshotSequence seq;
  seq.snapshots = snaps;
  seq.labels = {"s0", "s1", "s2"};
  std::vector<std::size_t> bounds;
  auto events = synthesize_fd_stream(seq, 77, &bounds);
  REQUIRE(bounds.size() == 3);
  for (std::size_t i = 0; i < snaps.size(); ++i) {
    std::set<Edge> expect(snaps[i].begin(), snaps[i].end());
    CHECK(replay_prefix(events, bounds[i]) == expect);
  }
  // Every delete is preceded by a matching uncompensated insert.
  std::set<Edge> live;
  for (const auto& ev : events) {
    if (ev.sign == Sign::insert) {
      CHECK(!live.contains(ev.edge));
      live.insert(ev.edge);
    } else {
      CHECK(live.contains(ev.edge));
      live.erase(ev.edge);
    }
  }
}

TEST_CASE("synthesized stream is deterministic per seed") {
  SnapshotSequence seq;
  seq.snapshots = {testgen::gnp_edges(20, 0.3, 1), testgen::gnp_edges(20, 0.3, 2),
                   testgen::gnp_edges(20, 0.3, 3)};
  seq.labels = {"a", "b", "c"};
  auto a = synthesize_fd_stream(seq, 9);
  auto b = synthesize_fd_stream(seq, 9);
  REQUIRE(a.size() == b.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].edge == b[i].edge);
    CHECK(a[i].sign == b[i].sign);
  }
  auto c = synthesize_fd_stream(seq, 10);
  bool same = a.size() == c.size();
  if (same)
    for (std::size_t i = 0; i < a.size(); ++i)
      same = same && a[i].edge == c[i].edge && a[i].sign == c[i].sign;
  CHECK_FALSE(same);  // different seed should reshuffle deletions
}

TEST_CASE("synthesize rejects degenerate sequences") {
  SnapshotSequence seq;
  seq.snapshots = {{{1, 2}}};
  seq.labels = {"only"};
  CHECK_THROWS_AS(synthesize_fd_stream(seq, 1), std::invalid_argument);
}

TEST_CASE("snapshot manifest resolves relative paths") {
  TempFile g1("snap1"), g2("snap2"), manifest("manifest");
  g1.write_lines({"1 2", "2 3"});
  g2.write_lines({"2 3", "3 4"});
  manifest.write_lines({"# two snapshots", g1.path(), g2.path()});
  auto seq = load_snapshot_manifest(manifest.path());
  REQUIRE(seq.size() == 2);
  CHECK(seq.snapshots[0].size() == 2);
  CHECK(seq.snapshots[1] == std::vector<Edge>{{2, 3}, {3, 4}});
}

#include "tonic/snapshots.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <unordered_set>

#include "tonic/rng.hpp"
#include "tonic/stream_io.hpp"

namespace tonic {

SnapshotSequence load_snapshot_sequence(std::span<const std::string> paths) {
  SnapshotSequence seq;
  for (const std::string& p : paths) {
    seq.snapshots.push_back(load_edge_set(p));
    seq.labels.push_back(std::filesystem::path(p).filename().string());
  }
  return seq;
}

SnapshotSequence load_snapshot_manifest(const std::string& manifest_path) {
  std::ifstream in(manifest_path);
  if (!in) throw std::runtime_error("cannot open " + manifest_path);
  auto base = std::filesystem::path(manifest_path).parent_path();
  std::vector<std::string> paths;
  std::string line;
  while (std::getline(in, line)) {
    std::size_t start = line.find_first_not_of(" \t\r");
    if (start == std::string::npos || line[start] == '#') continue;
    std::size_t end = line.find_last_not_of(" \t\r");
    std::filesystem::path p(line.substr(start, end - start + 1));
    if (p.is_relative()) p = base / p;
    paths.push_back(p.string());
  }
  return load_snapshot_sequence(paths);
}

std::vector<StreamEvent> synthesize_fd_stream(const SnapshotSequence& seq, std::uint64_t rng_seed,
                                              std::vector<std::size_t>* boundaries) {
  if (seq.size() < 2) throw std::invalid_argument("need at least 2 snapshots");
  for (const auto& snap : seq.snapshots)
    for (const Edge& e : snap)
      if (e.u == e.v) throw std::invalid_argument("snapshot contains a self-loop");

  Rng rng(rng_seed);
  if (boundaries) boundaries->clear();
  std::vector<StreamEvent> events;

  auto sorted = [](const std::vector<Edge>& edges) {
    std::vector<Edge> out(edges.begin(), edges.end());
    std::sort(out.begin(), out.end());
    return out;
  };

  std::vector<Edge> first = sorted(seq.snapshots.front());
  for (const Edge& e : first) events.push_back({e, Sign::insert, 0});
  if (boundaries) boundaries->push_back(events.size());

  for (std::size_t i = 0; i + 1 < seq.size(); ++i) {
    std::unordered_set<Edge, EdgeHash> cur(seq.snapshots[i].begin(), seq.snapshots[i].end());
    std::unordered_set<Edge, EdgeHash> next(seq.snapshots[i + 1].begin(), seq.snapshots[i + 1].end());

    std::vector<StreamEvent> window;
    for (const Edge& e : sorted(seq.snapshots[i + 1]))
      if (!cur.contains(e)) window.push_back({e, Sign::insert, 0});
    // Deletions land at uniform random positions among the window's events.
    for (const Edge& e : sorted(seq.snapshots[i]))
      if (!next.contains(e)) {
        std::size_t pos = std::uniform_int_distribution<std::size_t>(0, window.size())(rng);
        window.insert(window.begin() + static_cast<std::ptrdiff_t>(pos), {e, Sign::remove, 0});
      }
    events.insert(events.end(), window.begin(), window.end());
    if (boundaries) boundaries->push_back(events.size());
  }

  for (std::size_t i = 0; i < events.size(); ++i) events[i].t = i + 1;
  return events;
}

}  // namespace tonic

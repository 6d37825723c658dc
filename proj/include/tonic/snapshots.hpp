#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "tonic/edge.hpp"

namespace tonic {

// Ordered sequence of graph versions; each snapshot is a deduplicated edge set.
struct SnapshotSequence {
  std::vector<std::vector<Edge>> snapshots;
  std::vector<std::string> labels;

  std::size_t size() const { return snapshots.size(); }
};

SnapshotSequence load_snapshot_sequence(std::span<const std::string> paths);

// Manifest: one edge-list path per line, '#' comments and blanks skipped.
// Relative paths are resolved against the manifest's directory.
SnapshotSequence load_snapshot_manifest(const std::string& manifest_path);

// Turns consecutive snapshot diffs into a fully dynamic stream. Insertions of
// each window keep deterministic (canonical) order; the window's deletions are
// placed at seeded uniform random positions within the window. Replaying the
// stream up to a window boundary reproduces that snapshot's edge set exactly.
// boundaries (optional) receives the event count at the end of each window.
std::vector<StreamEvent> synthesize_fd_stream(const SnapshotSequence& seq, std::uint64_t rng_seed,
                                              std::vector<std::size_t>* boundaries = nullptr);

}  // namespace tonic

#pragma once

#include <span>
#include <string>
#include <vector>

#include "tonic/edge.hpp"

namespace tonic {

struct IngestOptions {
  bool dedupe = true;
  bool drop_self_loops = true;
};

struct IngestStats {
  std::uint64_t nodes = 0;  // distinct endpoints among emitted edges
  std::uint64_t edges = 0;  // emitted edge count
};

// Reads a whitespace-separated edge list ("u v", trailing fields ignored,
// '#' comment lines and blank lines skipped) into an insertion-only stream.
// Self-loops with drop_self_loops unset are an error, as are malformed lines;
// errors carry the 1-based line number.
std::vector<StreamEvent> ingest_edge_list(const std::string& path, const IngestOptions& options,
                                          IngestStats* stats = nullptr);

// Reads a fully dynamic stream: lines "u v s" with s in {+, -, 1, -1}.
std::vector<StreamEvent> ingest_fd_stream(const std::string& path);

void write_fd_stream(const std::string& path, std::span<const StreamEvent> events);

// Deduplicated canonical edge set of an edge-list file (self-loops rejected).
std::vector<Edge> load_edge_set(const std::string& path);

// Distinct canonical edges of an insertion-only stream, in first-seen order.
std::vector<Edge> edges_of(std::span<const StreamEvent> events);

}  // namespace tonic

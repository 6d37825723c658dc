#pragma once

#include <cassert>
#include <compare>
#include <cstdint>
#include <functional>

namespace tonic {

using NodeId = std::uint64_t;

// Unordered node pair in canonical form: u < v, no self-loops.
struct Edge {
  NodeId u = 0;
  NodeId v = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

inline Edge make_edge(NodeId a, NodeId b) {
  assert(a != b && "self-loop");
  return a < b ? Edge{a, b} : Edge{b, a};
}

inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

struct EdgeHash {
  std::size_t operator()(const Edge& e) const noexcept {
    return static_cast<std::size_t>(mix64(e.u * 0x9e3779b97f4a7c15ULL ^ mix64(e.v)));
  }
};

enum class Sign : std::uint8_t { insert, remove };

struct StreamEvent {
  Edge edge;
  Sign sign = Sign::insert;
  std::uint64_t t = 0;  // 1-based position in the stream
};

}  // namespace tonic

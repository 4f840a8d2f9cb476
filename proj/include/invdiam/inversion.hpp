#pragma once

// Inversions of orientations and an exact breadth-first search over the
// inversion graph I(G). States are edge-flip words relative to the
// canonical orientation; since inverting X XORs a fixed edge mask into the
// state, I(G) is a Cayley graph of (F2^|E|, xor) and every distance is a
// distance from the all-zero state.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"

namespace invdiam {

inline constexpr std::size_t kBfsDistanceMaxEdges = 20;
inline constexpr std::size_t kBfsDiameterMaxEdges = 12;
inline constexpr std::size_t kBfsMaxActiveVertices = 24;

inline Orientation invert(const Graph& g, const Orientation& o, const std::vector<Vertex>& x) {
  if (o.size() != g.edge_count()) throw std::invalid_argument("invert: orientation size differs from edge count");
  std::vector<char> in_x(g.vertex_count(), 0);
  for (Vertex v : x) {
    if (v >= g.vertex_count()) throw std::invalid_argument("invert: vertex out of range");
    in_x[v] = 1;
  }
  Orientation out = o;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (in_x[g.edge(e).u] && in_x[g.edge(e).v]) out.flips.flip(e);
  }
  return out;
}

inline Label diff_label(const Orientation& a, const Orientation& b) {
  if (a.size() != b.size()) throw std::invalid_argument("diff_label: orientations of different graphs");
  return Label(a.flips ^ b.flips);
}

// The distinct nonzero edge masks E(X) over vertex subsets X, i.e. the
// generators of I(G). Requires |E| <= 32.
inline std::vector<std::uint32_t> inversion_masks(const Graph& g) {
  if (g.edge_count() > 32) throw BudgetExceeded("inversion masks need at most 32 edges");
  std::vector<Vertex> active;
  for (Vertex v = 0; v < g.vertex_count(); ++v) {
    if (g.degree(v) > 0) active.push_back(v);
  }
  if (active.size() > kBfsMaxActiveVertices) {
    throw BudgetExceeded("BFS oracle limited to " + std::to_string(kBfsMaxActiveVertices) + " non-isolated vertices");
  }
  // Per active vertex: for each other active vertex, the connecting edge bit.
  const std::size_t k = active.size();
  std::vector<std::vector<std::uint32_t>> link(k, std::vector<std::uint32_t>(k, 0));
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t j = 0; j < k; ++j) {
      if (auto e = g.edge_index(active[i], active[j]); e && i != j) link[i][j] = std::uint32_t{1} << *e;
    }
  }
  // Walk subsets in Gray-code order, maintaining the induced edge mask.
  std::vector<std::uint32_t> masks;
  std::uint64_t members = 0;
  std::uint32_t mask = 0;
  const std::uint64_t total = std::uint64_t{1} << k;
  for (std::uint64_t step = 1; step < total; ++step) {
    const int bit = std::countr_zero(step);
    const std::uint64_t flag = std::uint64_t{1} << bit;
    std::uint32_t touching = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if (members & (std::uint64_t{1} << j)) touching |= link[static_cast<std::size_t>(bit)][j];
    }
    members ^= flag;
    if (members & flag) {
      mask |= touching;
    } else {
      mask &= ~touching;
    }
    if (mask != 0) masks.push_back(mask);
  }
  std::sort(masks.begin(), masks.end());
  masks.erase(std::unique(masks.begin(), masks.end()), masks.end());
  return masks;
}

// Distances from the canonical orientation to every state; 0xff marks
// states not reached (impossible for a connected Cayley graph, kept for
// safety of the table type).
inline std::vector<std::uint8_t> bfs_distances_from_canonical(const Graph& g, std::size_t max_edges,
                                                              std::int64_t stop_at = -1) {
  if (g.edge_count() > max_edges) {
    throw BudgetExceeded("BFS oracle limited to " + std::to_string(max_edges) + " edges, graph has " +
                         std::to_string(g.edge_count()));
  }
  const auto masks = inversion_masks(g);
  const std::size_t states = std::size_t{1} << g.edge_count();
  std::vector<std::uint8_t> dist(states, 0xff);
  std::vector<std::uint32_t> frontier{0}, next;
  dist[0] = 0;
  if (stop_at == 0) return dist;
  std::uint8_t level = 0;
  while (!frontier.empty()) {
    ++level;
    next.clear();
    for (std::uint32_t s : frontier) {
      for (std::uint32_t m : masks) {
        const std::uint32_t t = s ^ m;
        if (dist[t] == 0xff) {
          dist[t] = level;
          next.push_back(t);
          if (static_cast<std::int64_t>(t) == stop_at) return dist;
        }
      }
    }
    frontier.swap(next);
  }
  return dist;
}

inline int bfs_distance(const Graph& g, const Orientation& o1, const Orientation& o2) {
  if (o1.size() != g.edge_count() || o2.size() != g.edge_count()) {
    throw std::invalid_argument("bfs_distance: orientation size differs from edge count");
  }
  if (g.edge_count() > kBfsDistanceMaxEdges) {
    throw BudgetExceeded("BFS distance limited to " + std::to_string(kBfsDistanceMaxEdges) + " edges");
  }
  const auto target = static_cast<std::int64_t>(diff_label(o1, o2).bits.to_word());
  const auto dist = bfs_distances_from_canonical(g, kBfsDistanceMaxEdges, target);
  if (dist[static_cast<std::size_t>(target)] == 0xff) throw InvariantViolation("BFS did not reach target state");
  return dist[static_cast<std::size_t>(target)];
}

struct BfsDiameter {
  int diameter = 0;
  Label farthest;  // lexicographically least label at maximum distance
};

inline BfsDiameter bfs_diameter(const Graph& g) {
  const auto dist = bfs_distances_from_canonical(g, kBfsDiameterMaxEdges);
  BfsDiameter out{0, Label::zeros(g.edge_count())};
  for (std::size_t s = 0; s < dist.size(); ++s) {
    if (dist[s] == 0xff) throw InvariantViolation("inversion graph is disconnected");
    const Label l(BitString::from_word(g.edge_count(), s));
    if (dist[s] > out.diameter || (dist[s] == out.diameter && lex_less(l.bits, out.farthest.bits))) {
      out.diameter = dist[s];
      out.farthest = l;
    }
  }
  return out;
}

}  // namespace invdiam

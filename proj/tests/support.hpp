#pragma once

// Shared helpers for the test binaries: fixture loading, seeded random
// graphs, and brute-force oracles that share no code with the solvers.

#include <algorithm>
#include <cstdint>
#include <fstream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "invdiam/graph.hpp"

namespace invdiam::testing {

inline std::string fixture_path(const std::string& name) { return std::string(INVDIAM_FIXTURE_DIR) + "/" + name; }

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline std::vector<LabeledGraph> load_corpus(const std::string& name) {
  return parse_graph_list(read_text(fixture_path(name)));
}

inline Label label_from_word(std::size_t edges, std::uint64_t word) {
  return Label(BitString::from_word(edges, word));
}

inline Label random_label(std::mt19937_64& rng, std::size_t edges) {
  Label l = Label::zeros(edges);
  for (std::size_t e = 0; e < edges; ++e) l.bits.set(e, (rng() & 1u) != 0);
  return l;
}

inline std::vector<Vertex> random_permutation(std::mt19937_64& rng, std::size_t n) {
  std::vector<Vertex> p(n);
  std::iota(p.begin(), p.end(), Vertex{0});
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

inline Graph random_graph(std::mt19937_64& rng, std::size_t n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<Edge> es;
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v = u + 1; v < n; ++v) {
      if (coin(rng)) es.push_back({u, v});
    }
  }
  return Graph(n, std::move(es));
}

inline Graph permuted(const Graph& g, const std::vector<Vertex>& perm) {
  return relabel(g, Label::zeros(g.edge_count()), perm).graph;
}

// A connected graph with maximum degree <= 2 on 2..12 vertices.
inline Graph random_max_degree_2(std::mt19937_64& rng) {
  const std::size_t n = 2 + rng() % 11;
  const bool cyc = n >= 3 && (rng() & 1u) != 0;
  return permuted(cyc ? Graph::cycle(n) : Graph::path(n), random_permutation(rng, n));
}

// A connected graph with maximum degree <= 3 on 2..12 vertices: a random
// degree-capped spanning tree plus random extra edges under the cap.
inline Graph random_max_degree_3(std::mt19937_64& rng) {
  const std::size_t n = 2 + rng() % 11;
  std::vector<std::size_t> deg(n, 0);
  std::vector<Edge> es;
  for (Vertex v = 1; v < n; ++v) {
    std::vector<Vertex> open;
    for (Vertex u = 0; u < v; ++u) {
      if (deg[u] < 3) open.push_back(u);
    }
    const Vertex u = open[rng() % open.size()];
    es.push_back({u, v});
    ++deg[u];
    ++deg[v];
  }
  const std::size_t extra = rng() % (n + 1);
  for (std::size_t i = 0; i < extra * 4; ++i) {
    const Vertex u = static_cast<Vertex>(rng() % n), v = static_cast<Vertex>(rng() % n);
    if (u == v || deg[u] >= 3 || deg[v] >= 3) continue;
    const Edge e{std::min(u, v), std::max(u, v)};
    if (std::find(es.begin(), es.end(), e) != es.end()) continue;
    es.push_back(e);
    ++deg[u];
    ++deg[v];
  }
  return Graph(n, std::move(es));
}

// A random k-tree on n >= k vertices with some edges deleted.
inline Graph random_partial_k_tree(std::mt19937_64& rng, int k, std::size_t n, double keep) {
  std::vector<std::vector<Vertex>> cliques;
  std::vector<Edge> es;
  std::vector<Vertex> base(static_cast<std::size_t>(k));
  std::iota(base.begin(), base.end(), Vertex{0});
  for (Vertex u = 0; u < static_cast<Vertex>(k); ++u) {
    for (Vertex v = u + 1; v < static_cast<Vertex>(k); ++v) es.push_back({u, v});
  }
  cliques.push_back(base);
  for (Vertex x = static_cast<Vertex>(k); x < n; ++x) {
    const auto c = cliques[rng() % cliques.size()];
    for (Vertex y : c) es.push_back({y, x});
    for (std::size_t drop = 0; drop < c.size(); ++drop) {
      auto nc = c;
      nc[drop] = x;
      cliques.push_back(nc);
    }
  }
  std::bernoulli_distribution coin(keep);
  std::vector<Edge> kept;
  for (const auto& e : es) {
    if (coin(rng)) kept.push_back(e);
  }
  return Graph(n, std::move(kept));
}

// Number of maps V -> F2^t realizing pi, by trying all (2^t)^n of them.
inline std::uint64_t brute_force_count(const Graph& g, const Label& pi, int t) {
  const std::size_t n = g.vertex_count();
  const std::uint64_t q = std::uint64_t{1} << t;
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < n; ++i) total *= q;
  std::vector<std::uint32_t> f(n, 0);
  std::uint64_t hits = 0;
  for (std::uint64_t code = 0; code < total; ++code) {
    std::uint64_t c = code;
    for (std::size_t i = 0; i < n; ++i) {
      f[i] = static_cast<std::uint32_t>(c % q);
      c /= q;
    }
    bool ok = true;
    for (EdgeIndex e = 0; e < g.edge_count() && ok; ++e) {
      const auto [u, v] = g.edge(e);
      ok = ((__builtin_popcount(f[u] & f[v]) & 1) != 0) == pi[e];
    }
    if (ok) ++hits;
  }
  return hits;
}

}  // namespace invdiam::testing

#pragma once

// The leveled k-tree family G_m^(k): start from K_k; at every stage, each
// k-clique present so far receives 2^k new vertices, one per pattern
// x in F2^k, the new vertex joined to the clique with labels x.
// Also: a k-tree recognizer, lemma probes over concrete assignments, and a
// per-m feasibility scan.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "assignment.hpp"
#include "errors.hpp"
#include "gf2.hpp"
#include "graph.hpp"

namespace invdiam {

inline constexpr std::uint64_t kFamilyVertexGuard = 1'000'000;

struct Clique {
  std::vector<Vertex> vertices;  // sorted
  int level = 0;                 // max vertex level

  friend bool operator==(const Clique&, const Clique&) = default;
};

struct LeveledGraph {
  int k = 0;
  int m = 0;
  Graph graph;
  Label label;
  std::vector<int> level;
  std::vector<Clique> cliques;                  // registry, in creation order
  std::vector<std::int64_t> parent_clique;      // -1 for the initial clique
};

// Vertex and k-clique counts of G_0 .. G_m.
struct FamilySize {
  std::uint64_t vertices = 0;
  std::uint64_t edges = 0;
  std::uint64_t cliques = 0;
};

inline std::vector<FamilySize> projected_family_sizes(int k, int m) {
  if (k < 1 || k > 16) throw InputError("family: k must lie in 1..16");
  if (m < 0) throw InputError("family: m must be non-negative");
  const std::uint64_t children = std::uint64_t{1} << k;
  std::vector<FamilySize> out;
  FamilySize s{static_cast<std::uint64_t>(k), static_cast<std::uint64_t>(k) * (k - 1) / 2, 1};
  out.push_back(s);
  for (int i = 1; i <= m; ++i) {
    const long double v = static_cast<long double>(s.vertices) + children * static_cast<long double>(s.cliques);
    if (v > 1e18L) throw BudgetExceeded("family: projected size overflows");
    const std::uint64_t added = children * s.cliques;
    s.vertices += added;
    s.edges += added * static_cast<std::uint64_t>(k);
    s.cliques += added * static_cast<std::uint64_t>(k);
    out.push_back(s);
  }
  return out;
}

inline LeveledGraph build_family(int k, int m, std::optional<Label> initial_label = std::nullopt) {
  const auto sizes = projected_family_sizes(k, m);
  if (sizes.back().vertices > kFamilyVertexGuard) {
    throw BudgetExceeded("family: G_" + std::to_string(m) + " with k=" + std::to_string(k) + " would have " +
                         std::to_string(sizes.back().vertices) + " vertices, above the guard of " +
                         std::to_string(kFamilyVertexGuard));
  }
  const std::size_t initial_edges = static_cast<std::size_t>(k) * (k - 1) / 2;
  const Label init = initial_label ? *initial_label : Label::zeros(initial_edges);
  if (init.size() != initial_edges) throw InputError("family: initial label must have k(k-1)/2 bits");

  struct RawEdge {
    Edge e;
    bool bit;
  };
  std::vector<RawEdge> raw;
  raw.reserve(sizes.back().edges);
  LeveledGraph lg;
  lg.k = k;
  lg.m = m;
  lg.level.assign(static_cast<std::size_t>(k), 0);
  lg.parent_clique.assign(static_cast<std::size_t>(k), -1);
  {
    // K_k edges in canonical order, so the initial label aligns bit for bit.
    std::size_t e = 0;
    for (Vertex u = 0; u < static_cast<Vertex>(k); ++u) {
      for (Vertex v = u + 1; v < static_cast<Vertex>(k); ++v) raw.push_back({{u, v}, init[e++]});
    }
    Clique c;
    for (Vertex v = 0; v < static_cast<Vertex>(k); ++v) c.vertices.push_back(v);
    lg.cliques.push_back(std::move(c));
  }
  Vertex next = static_cast<Vertex>(k);
  const std::uint32_t patterns = std::uint32_t{1} << k;
  for (int stage = 1; stage <= m; ++stage) {
    const std::size_t snapshot = lg.cliques.size();
    for (std::size_t ci = 0; ci < snapshot; ++ci) {
      for (std::uint32_t x = 0; x < patterns; ++x) {
        const Vertex u = next++;
        lg.level.push_back(stage);
        lg.parent_clique.push_back(static_cast<std::int64_t>(ci));
        const std::vector<Vertex> members = lg.cliques[ci].vertices;
        for (int j = 0; j < k; ++j) raw.push_back({{members[static_cast<std::size_t>(j)], u}, ((x >> j) & 1u) != 0});
        for (int j = 0; j < k; ++j) {
          Clique c;
          for (int i = 0; i < k; ++i) {
            if (i != j) c.vertices.push_back(members[static_cast<std::size_t>(i)]);
          }
          c.vertices.push_back(u);  // u is the newest vertex, so order stays sorted
          c.level = stage;
          lg.cliques.push_back(std::move(c));
        }
      }
    }
  }
  std::sort(raw.begin(), raw.end(), [](const RawEdge& a, const RawEdge& b) { return a.e < b.e; });
  std::vector<Edge> edges;
  edges.reserve(raw.size());
  for (const auto& r : raw) edges.push_back(r.e);
  lg.graph = Graph(next, std::move(edges));
  lg.label = Label::zeros(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i) lg.label.bits.set(i, raw[i].bit);
  return lg;
}

// True iff G reduces to K_k by repeatedly deleting a vertex whose
// neighborhood is a k-clique.
inline bool is_k_tree(const Graph& g, int k) {
  if (k < 1) return false;
  const std::size_t n = g.vertex_count();
  const std::size_t kk = static_cast<std::size_t>(k);
  if (n < kk) return false;
  std::vector<std::set<Vertex>> adj(n);
  for (const auto& e : g.edges()) {
    adj[e.u].insert(e.v);
    adj[e.v].insert(e.u);
  }
  auto neighborhood_is_clique = [&](Vertex v) {
    std::vector<Vertex> nb(adj[v].begin(), adj[v].end());
    for (std::size_t i = 0; i < nb.size(); ++i) {
      for (std::size_t j = i + 1; j < nb.size(); ++j) {
        if (!adj[nb[i]].count(nb[j])) return false;
      }
    }
    return true;
  };
  std::vector<char> removed(n, 0);
  std::vector<Vertex> stack;
  for (Vertex v = 0; v < n; ++v) {
    if (adj[v].size() == kk) stack.push_back(v);
  }
  std::size_t remaining = n;
  while (remaining > kk && !stack.empty()) {
    const Vertex v = stack.back();
    stack.pop_back();
    if (removed[v] || adj[v].size() != kk || !neighborhood_is_clique(v)) continue;
    removed[v] = 1;
    --remaining;
    for (Vertex w : adj[v]) {
      adj[w].erase(v);
      if (adj[w].size() == kk) stack.push_back(w);
    }
    adj[v].clear();
  }
  if (remaining != kk) return false;
  for (Vertex v = 0; v < n; ++v) {
    if (!removed[v] && adj[v].size() != kk - 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Probes.

struct ProbeViolation {
  std::vector<Vertex> clique;
  std::optional<Vertex> child;
  std::string detail;
};

struct ProbeReport {
  std::string probe;
  std::uint64_t checked = 0;
  std::vector<ProbeViolation> violations;

  bool pass() const { return violations.empty(); }
};

namespace detail {

inline void require_probe_input(const LeveledGraph& lg, const Assignment& f, bool exact_dim) {
  if (exact_dim && f.t != 2 * lg.k - 1) {
    throw std::invalid_argument("probe: assignment dimension must be 2k-1 = " + std::to_string(2 * lg.k - 1));
  }
  if (!verify(lg.graph, lg.label, f)) throw std::invalid_argument("probe: assignment does not realize the label");
}

inline std::vector<Gf2Vector> vectors_of(const Assignment& f, const std::vector<Vertex>& vs) {
  std::vector<Gf2Vector> out;
  for (Vertex v : vs) out.push_back(f.vectors[v]);
  return out;
}

}  // namespace detail

// Every registered k-clique C with l(C) <= m-1 carries linearly independent vectors.
inline ProbeReport probe_clique_independence(const LeveledGraph& lg, const Assignment& f) {
  detail::require_probe_input(lg, f, true);
  ProbeReport r{"clique_independence", 0, {}};
  for (const auto& c : lg.cliques) {
    if (c.level > lg.m - 1) continue;
    ++r.checked;
    const auto vs = detail::vectors_of(f, c.vertices);
    if (!is_independent(vs)) r.violations.push_back({c.vertices, std::nullopt, "vectors are dependent"});
  }
  return r;
}

// For each registered k-clique C with l(C) <= m-2 and each child u of C with
// l(u) = l(C)+1: f(C) + f(u) is independent, or f(u) is the sum of f(C).
inline ProbeReport probe_extension_dichotomy(const LeveledGraph& lg, const Assignment& f) {
  detail::require_probe_input(lg, f, true);
  ProbeReport r{"extension_dichotomy", 0, {}};
  std::map<std::int64_t, std::vector<Vertex>> children;
  for (Vertex u = 0; u < lg.graph.vertex_count(); ++u) {
    if (lg.parent_clique[u] >= 0) children[lg.parent_clique[u]].push_back(u);
  }
  for (std::size_t ci = 0; ci < lg.cliques.size(); ++ci) {
    const auto& c = lg.cliques[ci];
    if (c.level > lg.m - 2) continue;
    auto it = children.find(static_cast<std::int64_t>(ci));
    if (it == children.end()) continue;
    auto vs = detail::vectors_of(f, c.vertices);
    Gf2Vector sum = Gf2Vector::zero(f.t);
    for (const auto& v : vs) sum += v;
    for (Vertex u : it->second) {
      if (lg.level[u] != c.level + 1) continue;
      ++r.checked;
      vs.push_back(f.vectors[u]);
      const bool independent = is_independent(vs);
      vs.pop_back();
      if (!independent && f.vectors[u] != sum) {
        r.violations.push_back({c.vertices, u, "child vector neither independent of the clique nor its sum"});
      }
    }
  }
  return r;
}

struct BadClique {
  std::vector<Vertex> clique;
  int radical_dim = 0;
};

struct BadCliqueReport {
  std::uint64_t checked = 0;
  std::vector<BadClique> bad;
};

// Every clique contained in a registered k-clique, with dim(V_C ∩ V_C^⊥) >= |C|-1.
inline BadCliqueReport probe_bad_cliques(const LeveledGraph& lg, const Assignment& f) {
  detail::require_probe_input(lg, f, false);
  std::set<std::vector<Vertex>> seen;
  BadCliqueReport r;
  for (const auto& c : lg.cliques) {
    const std::size_t k = c.vertices.size();
    for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << k); ++mask) {
      std::vector<Vertex> sub;
      for (std::size_t i = 0; i < k; ++i) {
        if ((mask >> i) & 1u) sub.push_back(c.vertices[i]);
      }
      if (!seen.insert(sub).second) continue;
      ++r.checked;
      const auto vs = detail::vectors_of(f, sub);
      const int rad = radical_dimension(vs);
      if (rad >= static_cast<int>(sub.size()) - 1) r.bad.push_back({sub, rad});
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Exact feasibility over clique states.
//
// A k-clique that still faces d expansion stages can be completed iff for
// every pattern x some u satisfies f(C).u = x and every clique C - c_j + u
// can be completed with d-1 stages left. Children of distinct cliques never
// share an edge, so G_m is satisfiable iff the initial clique admits a
// realizing tuple that survives m stages. Tuples are k vectors of F2^t.

struct FeasibilityTable {
  int k = 0;
  int t = 0;
  std::vector<std::vector<char>> feasible;  // feasible[d][tuple]

  std::uint64_t tuple_count() const { return std::uint64_t{1} << (k * t); }
};

inline std::uint32_t tuple_vector(std::uint64_t tuple, int j, int t) {
  return static_cast<std::uint32_t>((tuple >> (j * t)) & ((std::uint64_t{1} << t) - 1));
}

inline FeasibilityTable clique_feasibility(int k, int t, int depth) {
  if (k < 1 || k > 4 || t < 0 || k * t > 24) throw BudgetExceeded("clique feasibility limited to k <= 4, k*t <= 24");
  FeasibilityTable tab{k, t, {}};
  const std::uint64_t tuples = tab.tuple_count();
  const std::uint32_t domain = std::uint32_t{1} << t;
  tab.feasible.push_back(std::vector<char>(tuples, 1));
  for (int d = 1; d <= depth; ++d) {
    const auto& prev = tab.feasible.back();
    std::vector<char> cur(tuples, 0);
    for (std::uint64_t a = 0; a < tuples; ++a) {
      std::uint32_t covered = 0;  // patterns x with a surviving child
      for (std::uint32_t u = 0; u < domain; ++u) {
        bool survives = true;
        std::uint32_t x = 0;
        for (int j = 0; j < k && survives; ++j) {
          const std::uint64_t shift = static_cast<std::uint64_t>(j) * static_cast<std::uint64_t>(t);
          const std::uint64_t replaced = (a & ~(((std::uint64_t{1} << t) - 1) << shift)) | (std::uint64_t{u} << shift);
          if (!prev[replaced]) survives = false;
          if (dot_bits(tuple_vector(a, j, t), u)) x |= std::uint32_t{1} << j;
        }
        if (survives) covered |= std::uint32_t{1} << x;
      }
      const std::uint32_t all = (std::uint32_t{1} << (std::uint32_t{1} << k)) - 1;
      cur[a] = covered == all ? 1 : 0;
    }
    tab.feasible.push_back(std::move(cur));
  }
  return tab;
}

// Exact verdict for G_m^(k) with the given initial label at dimension t.
inline bool family_satisfiable(const FeasibilityTable& tab, int m, const Label& initial_label) {
  if (m < 0 || m >= static_cast<int>(tab.feasible.size())) throw std::invalid_argument("family_satisfiable: depth");
  const int k = tab.k;
  for (std::uint64_t a = 0; a < tab.tuple_count(); ++a) {
    if (!tab.feasible[static_cast<std::size_t>(m)][a]) continue;
    bool realizes = true;
    std::size_t e = 0;
    for (int i = 0; i < k && realizes; ++i) {
      for (int j = i + 1; j < k; ++j) {
        if (dot_bits(tuple_vector(a, i, tab.t), tuple_vector(a, j, tab.t)) != initial_label[e++]) {
          realizes = false;
          break;
        }
      }
    }
    if (realizes) return true;
  }
  return false;
}

struct ScanRow {
  int m = 0;
  std::uint64_t vertices = 0;
  std::uint64_t edges = 0;
  Verdict solver = Verdict::timeout;
  std::uint64_t nodes = 0;
  double seconds = 0;
  std::optional<bool> exact;  // clique-state feasibility; nullopt when k*t too large
  bool skipped = false;       // above the growth guard
};

// For m = 0..m_max, solve(G_m^(k), pi^(k), t) under a per-m time budget,
// alongside the exact clique-state verdict.
inline std::vector<ScanRow> family_min_dim_scan(int k, int m_max, int t, std::chrono::milliseconds per_m_budget,
                                                std::optional<Label> initial_label = std::nullopt) {
  const std::size_t initial_edges = static_cast<std::size_t>(k) * (k - 1) / 2;
  const Label init = initial_label ? *initial_label : Label::zeros(initial_edges);
  std::optional<FeasibilityTable> tab;
  if (k <= 4 && k * t <= 24) tab = clique_feasibility(k, t, m_max);
  const auto sizes = projected_family_sizes(k, m_max);
  std::vector<ScanRow> rows;
  for (int m = 0; m <= m_max; ++m) {
    ScanRow row;
    row.m = m;
    row.vertices = sizes[static_cast<std::size_t>(m)].vertices;
    row.edges = sizes[static_cast<std::size_t>(m)].edges;
    if (tab) row.exact = family_satisfiable(*tab, m, init);
    if (row.vertices > kFamilyVertexGuard) {
      row.skipped = true;
      rows.push_back(row);
      continue;
    }
    const auto start = std::chrono::steady_clock::now();
    const auto lg = build_family(k, m, init);
    const auto r = solve_with_limits(lg.graph, lg.label, t, {start + per_m_budget, 0});
    row.solver = r.verdict;
    row.nodes = r.nodes;
    row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (r.verdict == Verdict::sat && !verify(lg.graph, lg.label, *r.assignment)) {
      throw InvariantViolation("family scan: solver witness fails verification");
    }
    if (row.exact && r.verdict != Verdict::timeout && *row.exact != (r.verdict == Verdict::sat)) {
      throw InvariantViolation("family scan: solver and clique-state verdicts disagree at m=" + std::to_string(m));
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace invdiam

#pragma once

// Vector assignments f: V -> F2^t with f(u).f(v) = pi(uv) on every edge.
// The minimum such t for a label is the inversion distance between two
// orientations whose difference is that label.
//
// Two independent engines live here:
//  - a complete backtracking search (vertices in maximum-adjacency order,
//    candidates are the affine solution sets of the linear systems imposed
//    by already-assigned neighbors, conflict-directed backjumping);
//  - an exact counter by variable elimination over factor tables, usable
//    on graphs of small treewidth.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "errors.hpp"
#include "gf2.hpp"
#include "graph.hpp"

namespace invdiam {

struct Assignment {
  int t = 0;
  std::vector<Gf2Vector> vectors;

  static Assignment zeros(std::size_t n, int t) { return {t, std::vector<Gf2Vector>(n, Gf2Vector::zero(t))}; }

  // Same dot products, one extra zero coordinate on every vector.
  Assignment padded() const {
    Assignment a{t + 1, {}};
    for (const auto& v : vectors) a.vectors.push_back(v.padded());
    return a;
  }

  friend bool operator==(const Assignment&, const Assignment&) = default;
};

inline bool verify(const Graph& g, const Label& pi, const Assignment& f) {
  if (f.vectors.size() != g.vertex_count() || pi.size() != g.edge_count()) return false;
  for (const auto& v : f.vectors) {
    if (v.dim() != f.t) return false;
  }
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (dot(f.vectors[g.edge(e).u], f.vectors[g.edge(e).v]) != pi[e]) return false;
  }
  return true;
}

struct SearchLimits {
  std::optional<std::chrono::steady_clock::time_point> deadline;
  std::uint64_t max_nodes = 0;  // 0: unlimited

  static SearchLimits within(std::chrono::milliseconds budget) {
    return {std::chrono::steady_clock::now() + budget, 0};
  }
};

enum class Verdict { sat, unsat, timeout };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::sat:
      return "sat";
    case Verdict::unsat:
      return "unsat";
    case Verdict::timeout:
      return "timeout";
  }
  return "?";
}

struct SolveResult {
  Verdict verdict = Verdict::unsat;
  std::optional<Assignment> assignment;
  std::uint64_t nodes = 0;
};

namespace detail {

struct PriorNeighbor {
  std::uint32_t level;
  bool label;
};

// Static part of the search: the vertex order and, per position, the
// earlier-placed neighbors with their edge labels.
struct SearchPlan {
  std::vector<Vertex> order;
  std::vector<std::uint32_t> offset;  // prior[offset[i] .. offset[i+1])
  std::vector<PriorNeighbor> prior;

  SearchPlan(const Graph& g, const Label& pi) {
    const std::size_t n = g.vertex_count();
    std::vector<std::uint32_t> position(n, UINT32_MAX);
    std::vector<std::uint32_t> into_prefix(n, 0);
    // Maximum-adjacency order: most neighbors already placed, then lowest index.
    std::set<std::pair<std::int64_t, Vertex>> queue;
    for (Vertex v = 0; v < n; ++v) queue.insert({0, v});
    order.reserve(n);
    while (!queue.empty()) {
      const Vertex v = queue.begin()->second;
      queue.erase(queue.begin());
      position[v] = static_cast<std::uint32_t>(order.size());
      order.push_back(v);
      for (Vertex w : g.neighbors(v)) {
        if (position[w] != UINT32_MAX) continue;
        queue.erase({-static_cast<std::int64_t>(into_prefix[w]), w});
        ++into_prefix[w];
        queue.insert({-static_cast<std::int64_t>(into_prefix[w]), w});
      }
    }
    offset.reserve(n + 1);
    offset.push_back(0);
    for (std::size_t i = 0; i < n; ++i) {
      const Vertex v = order[i];
      const auto& nb = g.neighbors(v);
      const auto& inc = g.incident_edges(v);
      for (std::size_t j = 0; j < nb.size(); ++j) {
        if (position[nb[j]] < i) prior.push_back({position[nb[j]], pi[inc[j]]});
      }
      offset.push_back(static_cast<std::uint32_t>(prior.size()));
    }
  }

  std::size_t size() const { return order.size(); }
};

// Candidate set of one position: particular + span(basis), walked by a counter.
struct Candidates {
  std::uint32_t particular = 0;
  std::array<std::uint32_t, Gf2Vector::kMaxDim> basis{};
  int nullity = 0;
  std::uint64_t next = 0;

  std::uint64_t count() const { return std::uint64_t{1} << nullity; }
  std::uint32_t member(std::uint64_t index) const {
    std::uint32_t v = particular;
    for (int b = 0; b < nullity; ++b) {
      if ((index >> b) & 1u) v ^= basis[static_cast<std::size_t>(b)];
    }
    return v;
  }
};

inline Elimination candidates_at(const SearchPlan& plan, std::size_t i, const std::vector<std::uint32_t>& value, int t,
                                 std::vector<AugmentedRow>& scratch) {
  scratch.clear();
  for (std::uint32_t j = plan.offset[i]; j < plan.offset[i + 1]; ++j) {
    const auto& p = plan.prior[j];
    const std::uint32_t r = j - plan.offset[i];
    scratch.push_back({value[p.level], p.label, r < 64 ? std::uint64_t{1} << r : 0});
  }
  return eliminate(scratch, t);
}

inline void merge_levels(std::vector<std::uint32_t>& into, const std::vector<std::uint32_t>& from) {
  std::vector<std::uint32_t> out;
  out.reserve(into.size() + from.size());
  std::set_union(into.begin(), into.end(), from.begin(), from.end(), std::back_inserter(out));
  into.swap(out);
}

class LimitClock {
 public:
  explicit LimitClock(const SearchLimits& l) : limits_(l) {}

  // Counts one node; true once a limit has been reached.
  bool tick() {
    ++nodes_;
    if (limits_.max_nodes != 0 && nodes_ >= limits_.max_nodes) return true;
    if (limits_.deadline && (nodes_ & 1023u) == 0 && std::chrono::steady_clock::now() >= *limits_.deadline) {
      return true;
    }
    return false;
  }
  std::uint64_t nodes() const { return nodes_; }

 private:
  SearchLimits limits_;
  std::uint64_t nodes_ = 0;
};

inline Assignment to_assignment(const SearchPlan& plan, const std::vector<std::uint32_t>& value, int t) {
  Assignment a{t, std::vector<Gf2Vector>(plan.size(), Gf2Vector::zero(t))};
  for (std::size_t i = 0; i < plan.size(); ++i) a.vectors[plan.order[i]] = Gf2Vector(t, value[i]);
  return a;
}

}  // namespace detail

// Complete search for a t-dimensional assignment realizing pi.
inline SolveResult solve_with_limits(const Graph& g, const Label& pi, int t, const SearchLimits& limits) {
  if (t < 0 || t > Gf2Vector::kMaxDim) throw std::invalid_argument("solve: t must lie in 0..32");
  if (pi.size() != g.edge_count()) throw std::invalid_argument("solve: label size differs from edge count");
  const detail::SearchPlan plan(g, pi);
  const std::size_t n = plan.size();
  std::vector<std::uint32_t> value(n, 0);
  std::vector<detail::Candidates> cand(n);
  std::vector<std::vector<std::uint32_t>> conflicts(n);
  std::vector<detail::AugmentedRow> scratch;
  detail::LimitClock clock(limits);

  std::size_t i = 0;
  bool fresh = true;
  std::vector<std::uint32_t> conflict;
  while (true) {
    if (i == n) return {Verdict::sat, detail::to_assignment(plan, value, t), clock.nodes()};
    bool dead_end = false;
    if (fresh) {
      conflicts[i].clear();
      const auto e = detail::candidates_at(plan, i, value, t, scratch);
      if (!e.consistent) {
        conflict.clear();
        for (std::uint32_t j = plan.offset[i]; j < plan.offset[i + 1]; ++j) {
          const std::uint32_t r = j - plan.offset[i];
          if (!e.provenance_tracked || (r < 64 && ((e.conflict_rows >> r) & 1u))) {
            conflict.push_back(plan.prior[j].level);
          }
        }
        std::sort(conflict.begin(), conflict.end());
        conflict.erase(std::unique(conflict.begin(), conflict.end()), conflict.end());
        dead_end = true;
      } else {
        auto& c = cand[i];
        c.particular = e.particular;
        c.basis = e.basis;
        c.nullity = e.nullity;
        c.next = 0;
      }
    }
    if (!dead_end) {
      auto& c = cand[i];
      if (c.next < c.count()) {
        value[i] = c.member(c.next++);
        if (clock.tick()) return {Verdict::timeout, std::nullopt, clock.nodes()};
        ++i;
        fresh = true;
        continue;
      }
      // Every candidate failed: blame earlier conflicts plus the neighbors
      // that shaped this candidate set.
      conflict = conflicts[i];
      std::vector<std::uint32_t> shapers;
      for (std::uint32_t j = plan.offset[i]; j < plan.offset[i + 1]; ++j) shapers.push_back(plan.prior[j].level);
      std::sort(shapers.begin(), shapers.end());
      shapers.erase(std::unique(shapers.begin(), shapers.end()), shapers.end());
      detail::merge_levels(conflict, shapers);
    }
    if (conflict.empty()) return {Verdict::unsat, std::nullopt, clock.nodes()};
    const std::uint32_t h = conflict.back();
    conflict.pop_back();
    detail::merge_levels(conflicts[h], conflict);
    i = h;
    fresh = false;
  }
}

inline std::optional<Assignment> solve(const Graph& g, const Label& pi, int t) {
  auto r = solve_with_limits(g, pi, t, {});
  return r.assignment;
}

// Plain chronological backtracking over the same candidate sets; calls
// emit for every valid assignment in a deterministic order until emit
// returns false. Returns the number emitted.
inline std::uint64_t for_each_assignment(const Graph& g, const Label& pi, int t,
                                         const std::function<bool(const Assignment&)>& emit) {
  if (t < 0 || t > Gf2Vector::kMaxDim) throw std::invalid_argument("enumerate: t must lie in 0..32");
  if (pi.size() != g.edge_count()) throw std::invalid_argument("enumerate: label size differs from edge count");
  const detail::SearchPlan plan(g, pi);
  const std::size_t n = plan.size();
  std::vector<std::uint32_t> value(n, 0);
  std::vector<detail::Candidates> cand(n);
  std::vector<detail::AugmentedRow> scratch;
  std::uint64_t emitted = 0;
  if (n == 0) {
    emit(Assignment{t, {}});
    return 1;
  }
  std::size_t i = 0;
  bool fresh = true;
  while (true) {
    if (fresh) {
      const auto e = detail::candidates_at(plan, i, value, t, scratch);
      auto& c = cand[i];
      if (e.consistent) {
        c.particular = e.particular;
        c.basis = e.basis;
        c.nullity = e.nullity;
        c.next = 0;
      } else {
        c.nullity = 0;
        c.next = 1;  // empty
      }
    }
    auto& c = cand[i];
    if (c.next < c.count()) {
      value[i] = c.member(c.next++);
      if (i + 1 == n) {
        ++emitted;
        if (!emit(detail::to_assignment(plan, value, t))) return emitted;
        fresh = false;
      } else {
        ++i;
        fresh = true;
      }
      continue;
    }
    if (i == 0) return emitted;
    --i;
    fresh = false;
  }
}

inline std::vector<Assignment> enumerate_assignments(const Graph& g, const Label& pi, int t, std::uint64_t cap) {
  std::vector<Assignment> out;
  if (cap == 0) return out;
  for_each_assignment(g, pi, t, [&](const Assignment& a) {
    out.push_back(a);
    return out.size() < cap;
  });
  return out;
}

struct MinDim {
  std::optional<int> dim;  // nullopt: exceeds t_max
  std::optional<Assignment> witness;
};

inline MinDim min_dim(const Graph& g, const Label& pi, int t_max) {
  if (t_max < 0 || t_max > Gf2Vector::kMaxDim) throw std::invalid_argument("min_dim: t_max must lie in 0..32");
  for (int t = 0; t <= t_max; ++t) {
    if (auto a = solve(g, pi, t)) return {t, std::move(a)};
  }
  return {};
}

// ---------------------------------------------------------------------------
// Exact counting by variable elimination.

inline constexpr std::size_t kDefaultMaxFactorEntries = std::size_t{1} << 22;

// Number of t-dimensional assignments realizing pi. Throws BudgetExceeded
// when an intermediate factor table would exceed max_entries.
inline long double count_assignments(const Graph& g, const Label& pi, int t,
                                     std::size_t max_entries = kDefaultMaxFactorEntries) {
  if (t < 0 || t > 16) throw std::invalid_argument("count_assignments: t must lie in 0..16");
  if (pi.size() != g.edge_count()) throw std::invalid_argument("count_assignments: label size differs from edge count");
  struct Factor {
    std::vector<Vertex> scope;
    std::vector<long double> table;
    bool alive = true;
  };
  const std::size_t n = g.vertex_count();
  const std::uint32_t domain = std::uint32_t{1} << t;
  const std::uint32_t value_mask = domain - 1;
  std::vector<Factor> factors;
  std::vector<std::vector<std::size_t>> touching(n);
  std::vector<std::set<Vertex>> interaction(n);
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    const auto [u, v] = g.edge(e);
    Factor f{{u, v}, std::vector<long double>(std::size_t{domain} * domain), true};
    for (std::uint32_t a = 0; a < domain; ++a) {
      for (std::uint32_t b = 0; b < domain; ++b) {
        f.table[a | (std::size_t{b} << t)] = dot_bits(a, b) == pi[e] ? 1.0L : 0.0L;
      }
    }
    touching[u].push_back(factors.size());
    touching[v].push_back(factors.size());
    factors.push_back(std::move(f));
    interaction[u].insert(v);
    interaction[v].insert(u);
  }
  long double total = 1.0L;
  std::vector<char> gone(n, 0);
  for (std::size_t round = 0; round < n; ++round) {
    Vertex v = 0;
    std::size_t best = SIZE_MAX;
    for (Vertex x = 0; x < n; ++x) {
      if (!gone[x] && interaction[x].size() < best) {
        best = interaction[x].size();
        v = x;
      }
    }
    gone[v] = 1;
    std::vector<std::size_t> fs;
    for (std::size_t id : touching[v]) {
      if (factors[id].alive) fs.push_back(id);
    }
    if (fs.empty()) {
      total *= static_cast<long double>(domain);
      continue;
    }
    std::vector<Vertex> scope(interaction[v].begin(), interaction[v].end());
    const std::size_t width = scope.size() + 1;
    if (static_cast<double>(t) * static_cast<double>(width) > 62.0 ||
        (std::size_t{1} << (t * width)) > max_entries) {
      throw BudgetExceeded("elimination factor too large (treewidth too high for exact counting)");
    }
    // Combined layout: scope[0..s) then v; each slot t bits wide.
    std::vector<std::vector<int>> slot(fs.size());
    for (std::size_t k = 0; k < fs.size(); ++k) {
      for (Vertex x : factors[fs[k]].scope) {
        if (x == v) {
          slot[k].push_back(static_cast<int>(scope.size()));
        } else {
          slot[k].push_back(static_cast<int>(std::lower_bound(scope.begin(), scope.end(), x) - scope.begin()));
        }
      }
    }
    const std::size_t out_size = std::size_t{1} << (t * scope.size());
    std::vector<long double> out(out_size, 0.0L);
    const std::size_t combined = out_size << t;
    for (std::size_t idx = 0; idx < combined; ++idx) {
      long double prod = 1.0L;
      for (std::size_t k = 0; k < fs.size() && prod != 0.0L; ++k) {
        std::size_t fi = 0;
        for (std::size_t p = 0; p < slot[k].size(); ++p) {
          const std::size_t val = (idx >> (t * slot[k][p])) & value_mask;
          fi |= val << (t * p);
        }
        prod *= factors[fs[k]].table[fi];
      }
      out[idx & (out_size - 1)] += prod;
    }
    for (std::size_t id : fs) {
      factors[id].alive = false;
      factors[id].table.clear();
    }
    for (Vertex x : scope) {
      interaction[x].erase(v);
      for (Vertex y : scope) {
        if (x != y) interaction[x].insert(y);
      }
    }
    interaction[v].clear();
    if (scope.empty()) {
      total *= out[0];
      continue;
    }
    const std::size_t id = factors.size();
    factors.push_back({scope, std::move(out), true});
    for (Vertex x : scope) touching[x].push_back(id);
  }
  return total;
}

// Least t <= t_max with a realizing assignment, computed by counting.
inline std::optional<int> min_dim_by_counting(const Graph& g, const Label& pi, int t_max) {
  for (int t = 0; t <= t_max; ++t) {
    if (count_assignments(g, pi, t) > 0.0L) return t;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Diameter and hard labels.

inline constexpr std::size_t kDiameterMaxEdges = 24;

struct DiameterResult {
  std::optional<int> diameter;  // nullopt: some label exceeds t_max
  Label hardest;                // lexicographically least label attaining it (or the first that exceeds)
  std::optional<Assignment> witness;
  std::uint64_t labels_checked = 0;
};

namespace detail {

// Walks every label in Gray-code order. Adjacent labels differ in one edge,
// and inverting that edge's endpoints moves one step in I(G), so their
// minimum dimensions differ by at most one; the previous answer and witness
// seed the next search.
template <class Visit>
std::optional<Label> gray_label_walk(const Graph& g, int t_max, Visit&& visit) {
  const std::size_t m = g.edge_count();
  Label label = Label::zeros(m);
  int prev = 0;
  Assignment prev_witness = Assignment::zeros(g.vertex_count(), 0);
  const std::uint64_t total = std::uint64_t{1} << m;
  for (std::uint64_t step = 0; step < total; ++step) {
    if (step > 0) label.bits.flip(static_cast<std::size_t>(std::countr_zero(step)));
    int d = -1;
    std::optional<Assignment> w;
    if (prev > 0) {
      if (auto a = solve(g, label, prev - 1)) {
        d = prev - 1;
        w = std::move(a);
      }
    }
    if (d < 0) {
      if (verify(g, label, prev_witness)) {
        d = prev;
        w = prev_witness;
      } else if (auto a = solve(g, label, prev)) {
        d = prev;
        w = std::move(a);
      }
    }
    if (d < 0) {
      if (prev + 1 > t_max) return label;
      auto a = solve(g, label, prev + 1);
      if (!a) throw InvariantViolation("adjacent labels differ by more than one inversion");
      d = prev + 1;
      w = std::move(a);
    }
    visit(label, d, *w);
    prev = d;
    prev_witness = std::move(*w);
  }
  return std::nullopt;
}

}  // namespace detail

inline DiameterResult diameter_via_assignment(const Graph& g, int t_max) {
  if (g.edge_count() > kDiameterMaxEdges) {
    throw BudgetExceeded("diameter via assignment limited to " + std::to_string(kDiameterMaxEdges) + " edges");
  }
  DiameterResult out;
  out.diameter = 0;
  out.hardest = Label::zeros(g.edge_count());
  out.witness = Assignment::zeros(g.vertex_count(), 0);
  auto exceeded = detail::gray_label_walk(g, t_max, [&](const Label& l, int d, const Assignment& w) {
    ++out.labels_checked;
    if (d > *out.diameter || (d == *out.diameter && lex_less(l.bits, out.hardest.bits))) {
      out.diameter = d;
      out.hardest = l;
      out.witness = w;
    }
  });
  if (exceeded) {
    out.diameter.reset();
    out.hardest = *exceeded;
    out.witness.reset();
  }
  return out;
}

struct HardLabelResult {
  Label label;
  std::optional<int> min_dim;  // nullopt: exceeds t_max
  std::optional<Assignment> witness;
  bool exhaustive = false;
  std::uint64_t evaluated = 0;
};

namespace detail {

struct LabelScore {
  int dim = 0;            // least realizable dimension, or t_max + 1
  long double count = 0;  // realizations at that dimension

  bool better_than(const LabelScore& o) const { return dim != o.dim ? dim > o.dim : count < o.count; }
};

inline LabelScore score_label(const Graph& g, const Label& pi, int t_max) {
  for (int t = 0; t <= t_max; ++t) {
    long double c = 0;
    try {
      c = count_assignments(g, pi, t);
    } catch (const BudgetExceeded&) {
      // No gradient available; fall back to the search engine.
      const auto r = min_dim(g, pi, t_max);
      return {r.dim ? *r.dim : t_max + 1, 1.0L};
    }
    if (c > 0.0L) return {t, c};
  }
  return {t_max + 1, 0.0L};
}

}  // namespace detail

// Exhaustive over all labels when 2^|E| <= budget; otherwise steepest-ascent
// hill climbing on label bits with random restarts, scoring a label by its
// minimum dimension and then by how few assignments realize it there. The
// randomized search stops early once a label reaches t_max.
inline HardLabelResult hardest_label(const Graph& g, int t_max, std::uint64_t budget, std::uint64_t seed = 0) {
  const std::size_t m = g.edge_count();
  HardLabelResult out;
  if (m <= kDiameterMaxEdges && m < 64 && (std::uint64_t{1} << m) <= budget) {
    auto d = diameter_via_assignment(g, t_max);
    out.label = d.hardest;
    out.min_dim = d.diameter;
    out.witness = d.witness;
    out.exhaustive = true;
    out.evaluated = d.labels_checked;
    return out;
  }
  std::mt19937_64 rng(seed);
  Label best = Label::zeros(m);
  detail::LabelScore best_score = detail::score_label(g, best, t_max);
  out.evaluated = 1;
  auto random_label = [&] {
    Label l = Label::zeros(m);
    for (std::size_t e = 0; e < m; ++e) l.bits.set(e, (rng() & 1u) != 0);
    return l;
  };
  while (out.evaluated < budget && best_score.dim < t_max) {
    Label cur = random_label();
    detail::LabelScore cur_score = detail::score_label(g, cur, t_max);
    ++out.evaluated;
    while (out.evaluated < budget) {
      std::vector<std::size_t> edges(m);
      for (std::size_t e = 0; e < m; ++e) edges[e] = e;
      std::shuffle(edges.begin(), edges.end(), rng);
      std::optional<std::size_t> move;
      detail::LabelScore move_score = cur_score;
      for (std::size_t e : edges) {
        if (out.evaluated >= budget) break;
        cur.bits.flip(e);
        const auto s = detail::score_label(g, cur, t_max);
        ++out.evaluated;
        cur.bits.flip(e);
        if (s.better_than(move_score)) {
          move = e;
          move_score = s;
        }
      }
      if (!move) break;
      cur.bits.flip(*move);
      cur_score = move_score;
      if (cur_score.dim >= t_max) break;
    }
    if (cur_score.better_than(best_score) ||
        (!best_score.better_than(cur_score) && lex_less(cur.bits, best.bits))) {
      best = cur;
      best_score = cur_score;
    }
  }
  // Certify with the search engine, independently of the counting score.
  auto r = min_dim(g, best, t_max);
  const int certified = r.dim ? *r.dim : t_max + 1;
  if (certified != best_score.dim) throw InvariantViolation("search and counting engines disagree on a label");
  out.label = best;
  out.min_dim = r.dim;
  out.witness = r.witness;
  return out;
}

}  // namespace invdiam

#pragma once

// Exhaustive re-verification of local reducibility claims over F2^3.
//
// A configuration is a small graph on H plus its boundary N. Every boundary
// vertex v carries a candidate set B(v) of vectors and a designated value
// f(v) in B(v). H is reducible for a label and a family when some g with
// g(v) in B(v) on N and arbitrary g on H satisfies every edge equation.
// Existence of g is monotone in the sets, so checking every family whose
// sets sit at their minimum admissible size covers all larger families.
//
// Vector sets are 8-bit masks: bit x is the vector whose coordinate i is
// bit i of x.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "gf2.hpp"
#include "graph.hpp"

namespace invdiam {

inline constexpr int kReduceDim = 3;
inline constexpr int kReduceVectors = 1 << kReduceDim;

using VectorSet = std::uint8_t;

inline int set_size(VectorSet s) { return std::popcount(static_cast<unsigned>(s)); }
inline bool set_has(VectorSet s, int x) { return ((s >> x) & 1u) != 0; }

inline std::vector<std::string> set_members(VectorSet s) {
  std::vector<std::string> out;
  for (int x = 0; x < kReduceVectors; ++x) {
    if (set_has(s, x)) out.push_back(Gf2Vector(kReduceDim, static_cast<std::uint32_t>(x)).to_string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct BoundaryRule {
  Vertex vertex = 0;
  int min_size = 1;
  bool exclude_zero = false;
  bool include_zero = false;
  std::vector<EdgeIndex> exclude_zero_if_zero;  // 0 not in B when all these edges carry 0
  bool nonzero_value = false;                   // f(v) != 0
};

enum class ValueRuleKind {
  equal_implies_equal,  // vertices (a, b, c): f(a) = f(b) implies f(c) = f(a)
  no_double_pair,       // vertices (a, b, c, d): no split into two pairs with equal values
};

struct ValueRule {
  std::string name;
  ValueRuleKind kind = ValueRuleKind::equal_implies_equal;
  std::vector<Vertex> vertices;
};

enum class Admissibility {
  any,
  h_vertex_has_one,  // every vertex of H has an incident edge labeled 1
};

// "For every family meeting these rules, values can be chosen from the sets
// so that the predicate holds."
struct SelectionClaim {
  std::string name;
  std::vector<BoundaryRule> rules;
  ValueRule predicate;
};

struct Configuration {
  std::string name;
  Graph graph;
  std::vector<std::string> names;                 // per vertex
  std::vector<Vertex> h;
  std::vector<Vertex> boundary;
  std::vector<std::optional<bool>> label_domain;  // per edge: fixed bit or free
  Admissibility admissibility = Admissibility::any;
  std::vector<BoundaryRule> rules;                // aligned with boundary
  std::vector<ValueRule> value_rules;
  std::vector<SelectionClaim> selection_claims;
  std::string default_mutation;
};

struct BoundaryFamily {
  std::vector<VectorSet> sets;       // aligned with boundary
  std::vector<std::uint8_t> values;  // designated f(v)

  friend bool operator==(const BoundaryFamily&, const BoundaryFamily&) = default;
};

// ---------------------------------------------------------------------------
// Validation and predicates.

namespace detail {

inline std::size_t boundary_position(const Configuration& cfg, Vertex v) {
  auto it = std::find(cfg.boundary.begin(), cfg.boundary.end(), v);
  if (it == cfg.boundary.end()) throw InputError(cfg.name + ": vertex " + std::to_string(v) + " is not on the boundary");
  return static_cast<std::size_t>(it - cfg.boundary.begin());
}

inline bool rule_holds(const ValueRule& r, const std::vector<std::uint8_t>& value_of) {
  switch (r.kind) {
    case ValueRuleKind::equal_implies_equal:
      return value_of[0] != value_of[1] || value_of[2] == value_of[0];
    case ValueRuleKind::no_double_pair: {
      const auto& v = value_of;
      const bool p1 = v[0] == v[1] && v[2] == v[3];
      const bool p2 = v[0] == v[2] && v[1] == v[3];
      const bool p3 = v[0] == v[3] && v[1] == v[2];
      return !(p1 || p2 || p3);
    }
  }
  return false;
}

inline std::size_t rule_arity(ValueRuleKind k) { return k == ValueRuleKind::equal_implies_equal ? 3 : 4; }

}  // namespace detail

inline void validate(const Configuration& cfg) {
  const Graph& g = cfg.graph;
  const std::size_t n = g.vertex_count();
  if (cfg.names.size() != n) throw InputError(cfg.name + ": one name per vertex required");
  if (cfg.label_domain.size() != g.edge_count()) throw InputError(cfg.name + ": label domain size differs from edge count");
  if (cfg.rules.size() != cfg.boundary.size()) throw InputError(cfg.name + ": one rule per boundary vertex required");
  if (cfg.h.empty()) throw InputError(cfg.name + ": H is empty");
  if (cfg.h.size() > 4) throw BudgetExceeded(cfg.name + ": H limited to 4 vertices");
  std::vector<int> role(n, 0);
  for (Vertex v : cfg.h) {
    if (v >= n || role[v] != 0) throw InputError(cfg.name + ": bad H vertex");
    role[v] = 1;
  }
  for (Vertex v : cfg.boundary) {
    if (v >= n || role[v] != 0) throw InputError(cfg.name + ": bad boundary vertex");
    role[v] = 2;
  }
  for (Vertex v = 0; v < n; ++v) {
    if (role[v] == 0) throw InputError(cfg.name + ": vertex " + cfg.names[v] + " is neither in H nor on the boundary");
  }
  for (const auto& e : g.edges()) {
    if (role[e.u] == 2 && role[e.v] == 2) throw InputError(cfg.name + ": boundary vertices must be pairwise nonadjacent");
  }
  for (std::size_t i = 0; i < cfg.boundary.size(); ++i) {
    const Vertex v = cfg.boundary[i];
    const auto& r = cfg.rules[i];
    if (r.vertex != v) throw InputError(cfg.name + ": rules out of boundary order");
    if (g.degree(v) == 0) throw InputError(cfg.name + ": boundary vertex " + cfg.names[v] + " has no edge into H");
    if (r.min_size < 1 || r.min_size > kReduceVectors) throw InputError(cfg.name + ": min size out of range");
    for (EdgeIndex e : r.exclude_zero_if_zero) {
      if (e >= g.edge_count() || (g.edge(e).u != v && g.edge(e).v != v)) {
        throw InputError(cfg.name + ": conditional exclusion names an edge not at " + cfg.names[v]);
      }
    }
  }
  for (const auto& vr : cfg.value_rules) {
    if (vr.vertices.size() != detail::rule_arity(vr.kind)) throw InputError(cfg.name + ": value rule arity");
    for (Vertex v : vr.vertices) detail::boundary_position(cfg, v);
  }
}

inline bool admissible(const Configuration& cfg, const Label& labels) {
  if (labels.size() != cfg.graph.edge_count()) return false;
  for (EdgeIndex e = 0; e < cfg.graph.edge_count(); ++e) {
    if (cfg.label_domain[e] && *cfg.label_domain[e] != labels[e]) return false;
  }
  if (cfg.admissibility == Admissibility::h_vertex_has_one) {
    for (Vertex v : cfg.h) {
      bool one = false;
      for (EdgeIndex e : cfg.graph.incident_edges(v)) one = one || labels[e];
      if (!one) return false;
    }
  }
  return true;
}

// Admissible labels in deterministic order: free edges read as a binary
// counter, the lowest-indexed free edge most significant.
inline std::vector<Label> admissible_labels(const Configuration& cfg) {
  std::vector<EdgeIndex> free;
  Label base = Label::zeros(cfg.graph.edge_count());
  for (EdgeIndex e = 0; e < cfg.graph.edge_count(); ++e) {
    if (cfg.label_domain[e]) {
      base.bits.set(e, *cfg.label_domain[e]);
    } else {
      free.push_back(e);
    }
  }
  if (free.size() > 20) throw BudgetExceeded(cfg.name + ": too many free edges");
  std::vector<Label> out;
  for (std::uint64_t c = 0; c < (std::uint64_t{1} << free.size()); ++c) {
    Label l = base;
    for (std::size_t j = 0; j < free.size(); ++j) l.bits.set(free[j], ((c >> (free.size() - 1 - j)) & 1u) != 0);
    if (admissible(cfg, l)) out.push_back(std::move(l));
  }
  return out;
}

struct SetBounds {
  bool forced_zero = false;
  bool excluded_zero = false;
  int size = 1;
};

inline SetBounds set_bounds(const Configuration& cfg, const BoundaryRule& r, const Label& labels) {
  SetBounds b;
  b.forced_zero = r.include_zero;
  b.excluded_zero = r.exclude_zero;
  if (!r.exclude_zero_if_zero.empty()) {
    bool all_zero = true;
    for (EdgeIndex e : r.exclude_zero_if_zero) all_zero = all_zero && !labels[e];
    if (all_zero) b.excluded_zero = true;
  }
  b.size = std::max(r.min_size, b.forced_zero ? 1 : 0);
  (void)cfg;
  return b;
}

// Whether a set satisfies a rule (at any size at least the minimum).
inline bool set_satisfies(const Configuration& cfg, const BoundaryRule& r, const Label& labels, VectorSet s) {
  const auto b = set_bounds(cfg, r, labels);
  if (set_size(s) < b.size) return false;
  if (b.forced_zero && !set_has(s, 0)) return false;
  if (b.excluded_zero && set_has(s, 0)) return false;
  if (r.nonzero_value && (s & 0xfe) == 0) return false;
  return true;
}

// Minimum-size sets satisfying a rule, in lexicographic order of their
// sorted member lists.
inline std::vector<VectorSet> candidate_sets(const Configuration& cfg, const BoundaryRule& r, const Label& labels) {
  const auto b = set_bounds(cfg, r, labels);
  std::vector<VectorSet> out;
  if (b.forced_zero && b.excluded_zero) return out;
  std::vector<int> pool;
  for (int x = 0; x < kReduceVectors; ++x) {
    if (x == 0 && (b.forced_zero || b.excluded_zero)) continue;
    pool.push_back(x);
  }
  const int pick = b.size - (b.forced_zero ? 1 : 0);
  if (pick < 0 || pick > static_cast<int>(pool.size())) return out;
  std::vector<int> idx(static_cast<std::size_t>(pick));
  for (int i = 0; i < pick; ++i) idx[static_cast<std::size_t>(i)] = i;
  while (true) {
    VectorSet s = b.forced_zero ? 1 : 0;
    for (int i : idx) s |= static_cast<VectorSet>(1u << pool[static_cast<std::size_t>(i)]);
    if (set_satisfies(cfg, r, labels, s)) out.push_back(s);
    int i = pick - 1;
    while (i >= 0 && idx[static_cast<std::size_t>(i)] == static_cast<int>(pool.size()) - pick + i) --i;
    if (i < 0) break;
    ++idx[static_cast<std::size_t>(i)];
    for (int j = i + 1; j < pick; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  // Members sorted ascending make lexicographic order differ from mask order.
  std::sort(out.begin(), out.end(), [](VectorSet a, VectorSet b) { return set_members(a) < set_members(b); });
  return out;
}

namespace detail {

inline std::vector<std::uint8_t> allowed_values(const BoundaryRule& r, VectorSet s) {
  std::vector<std::uint8_t> out;
  for (int x = 0; x < kReduceVectors; ++x) {
    if (set_has(s, x) && !(r.nonzero_value && x == 0)) out.push_back(static_cast<std::uint8_t>(x));
  }
  return out;
}

struct ValueRuleIndex {
  const ValueRule* rule;
  std::vector<std::size_t> positions;
};

inline std::vector<ValueRuleIndex> index_rules(const Configuration& cfg, const std::vector<ValueRule>& rules) {
  std::vector<ValueRuleIndex> out;
  for (const auto& r : rules) {
    ValueRuleIndex ix{&r, {}};
    for (Vertex v : r.vertices) ix.positions.push_back(boundary_position(cfg, v));
    out.push_back(std::move(ix));
  }
  return out;
}

inline bool values_ok(const std::vector<ValueRuleIndex>& rules, const std::vector<std::uint8_t>& values) {
  std::vector<std::uint8_t> picked;
  for (const auto& r : rules) {
    picked.clear();
    for (std::size_t p : r.positions) picked.push_back(values[p]);
    if (!rule_holds(*r.rule, picked)) return false;
  }
  return true;
}

// Calls emit for every designated-value vector of a set tuple that meets
// the rules; stops when emit returns false. Returns the number emitted.
inline std::uint64_t for_each_designation(const std::vector<std::vector<std::uint8_t>>& allowed,
                                          const std::vector<ValueRuleIndex>& rules,
                                          const std::function<bool(const std::vector<std::uint8_t>&)>& emit) {
  const std::size_t b = allowed.size();
  for (const auto& a : allowed) {
    if (a.empty()) return 0;
  }
  std::vector<std::size_t> pos(b, 0);
  std::vector<std::uint8_t> values(b);
  std::uint64_t n = 0;
  while (true) {
    for (std::size_t i = 0; i < b; ++i) values[i] = allowed[i][pos[i]];
    if (values_ok(rules, values)) {
      ++n;
      if (!emit(values)) return n;
    }
    std::size_t i = b;
    while (i > 0) {
      --i;
      if (++pos[i] < allowed[i].size()) break;
      pos[i] = 0;
      if (i == 0) return n;
    }
    if (b == 0) return n;
  }
}

inline std::uint64_t count_designations(const std::vector<std::vector<std::uint8_t>>& allowed,
                                        const std::vector<ValueRuleIndex>& rules) {
  if (rules.empty()) {
    std::uint64_t n = 1;
    for (const auto& a : allowed) n *= a.size();
    return n;
  }
  return for_each_designation(allowed, rules, [](const std::vector<std::uint8_t>&) { return true; });
}

// Odometer over per-position option lists; the first position is most significant.
template <class Visit>
void for_each_tuple(const std::vector<std::vector<VectorSet>>& options, Visit&& visit) {
  for (const auto& o : options) {
    if (o.empty()) return;
  }
  const std::size_t b = options.size();
  std::vector<std::size_t> pos(b, 0);
  std::vector<VectorSet> tuple(b);
  while (true) {
    for (std::size_t i = 0; i < b; ++i) tuple[i] = options[i][pos[i]];
    if (!visit(tuple)) return;
    std::size_t i = b;
    bool advanced = false;
    while (i > 0) {
      --i;
      if (++pos[i] < options[i].size()) {
        advanced = true;
        break;
      }
      pos[i] = 0;
    }
    if (!advanced) return;
  }
}

}  // namespace detail

// Every boundary family at minimum set sizes, in deterministic order: set
// tuples lexicographically, then designated values lexicographically.
inline std::uint64_t for_each_family(const Configuration& cfg, const Label& labels,
                                     const std::function<bool(const BoundaryFamily&)>& emit) {
  std::vector<std::vector<VectorSet>> options;
  for (const auto& r : cfg.rules) options.push_back(candidate_sets(cfg, r, labels));
  const auto rules = detail::index_rules(cfg, cfg.value_rules);
  std::uint64_t n = 0;
  bool go = true;
  detail::for_each_tuple(options, [&](const std::vector<VectorSet>& sets) {
    std::vector<std::vector<std::uint8_t>> allowed;
    for (std::size_t i = 0; i < sets.size(); ++i) allowed.push_back(detail::allowed_values(cfg.rules[i], sets[i]));
    detail::for_each_designation(allowed, rules, [&](const std::vector<std::uint8_t>& values) {
      ++n;
      go = emit(BoundaryFamily{sets, values});
      return go;
    });
    return go;
  });
  return n;
}

inline std::vector<BoundaryFamily> enumerate_families(const Configuration& cfg, const Label& labels,
                                                      std::uint64_t cap = UINT64_MAX) {
  std::vector<BoundaryFamily> out;
  if (cap == 0) return out;
  for_each_family(cfg, labels, [&](const BoundaryFamily& f) {
    out.push_back(f);
    return out.size() < cap;
  });
  return out;
}

// Whether a family meets every rule of the configuration under the labels.
inline bool family_valid(const Configuration& cfg, const Label& labels, const BoundaryFamily& fam) {
  if (fam.sets.size() != cfg.boundary.size() || fam.values.size() != cfg.boundary.size()) return false;
  for (std::size_t i = 0; i < cfg.boundary.size(); ++i) {
    const auto& r = cfg.rules[i];
    if (fam.values[i] >= kReduceVectors || !set_has(fam.sets[i], fam.values[i])) return false;
    if (r.nonzero_value && fam.values[i] == 0) return false;
    if (!set_satisfies(cfg, r, labels, fam.sets[i])) return false;
  }
  return detail::values_ok(detail::index_rules(cfg, cfg.value_rules), fam.values);
}

// A 3-dim assignment of the whole configuration graph, vertex-indexed.
using LocalAssignment = std::vector<std::uint8_t>;

// Searches g over H (all of F2^3) and the boundary (within the sets), H
// assignments in lexicographic order, boundary values smallest first.
inline std::optional<LocalAssignment> check_family(const Configuration& cfg, const Label& labels,
                                                   const BoundaryFamily& fam) {
  const Graph& g = cfg.graph;
  const std::size_t hn = cfg.h.size();
  std::uint32_t combos = 1;
  for (std::size_t i = 0; i < hn; ++i) combos *= kReduceVectors;
  LocalAssignment a(g.vertex_count(), 0);
  for (std::uint32_t c = 0; c < combos; ++c) {
    for (std::size_t i = 0; i < hn; ++i) a[cfg.h[i]] = static_cast<std::uint8_t>((c >> (3 * (hn - 1 - i))) & 7u);
    bool ok = true;
    for (EdgeIndex e = 0; e < g.edge_count() && ok; ++e) {
      const auto [u, v] = g.edge(e);
      if (std::find(cfg.h.begin(), cfg.h.end(), u) != cfg.h.end() &&
          std::find(cfg.h.begin(), cfg.h.end(), v) != cfg.h.end()) {
        ok = dot_bits(a[u], a[v]) == labels[e];
      }
    }
    for (std::size_t i = 0; i < cfg.boundary.size() && ok; ++i) {
      const Vertex b = cfg.boundary[i];
      bool found = false;
      for (int x = 0; x < kReduceVectors && !found; ++x) {
        if (!set_has(fam.sets[i], x)) continue;
        bool fits = true;
        const auto& nb = g.neighbors(b);
        const auto& inc = g.incident_edges(b);
        for (std::size_t j = 0; j < nb.size() && fits; ++j) {
          fits = dot_bits(static_cast<std::uint32_t>(x), a[nb[j]]) == labels[inc[j]];
        }
        if (fits) {
          a[b] = static_cast<std::uint8_t>(x);
          found = true;
        }
      }
      ok = found;
    }
    if (ok) return a;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// The exhaustive check.

struct Counterexample {
  Label labels;
  BoundaryFamily family;
};

struct ClaimResult {
  std::string name;
  bool holds = true;
  std::uint64_t set_tuples = 0;
  std::optional<std::vector<VectorSet>> failure;
};

struct ReduceResult {
  std::string config;
  std::string mutation;  // empty: unmodified
  bool reducible = true;
  std::uint64_t labels = 0;
  std::uint64_t set_tuples = 0;
  std::uint64_t families = 0;
  std::optional<Counterexample> counterexample;
  std::vector<ClaimResult> claims;
  double seconds = 0;

  bool pass() const {
    return reducible && std::all_of(claims.begin(), claims.end(), [](const ClaimResult& c) { return c.holds; });
  }
};

struct ReduceOptions {
  unsigned jobs = 1;
  bool reverse_labels = false;
};

namespace detail {

// Bitmasks over the 8^|H| assignments of H.
class HMask {
 public:
  explicit HMask(std::size_t bits = 0) : words_((bits + 63) / 64, 0) {}
  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }
  HMask& operator|=(const HMask& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  static void intersect(const HMask& a, const HMask& b, HMask& out) {
    for (std::size_t i = 0; i < a.words_.size(); ++i) out.words_[i] = a.words_[i] & b.words_[i];
  }
  bool any() const {
    return std::any_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w != 0; });
  }

 private:
  std::vector<std::uint64_t> words_;
};

struct LabelOutcome {
  std::uint64_t set_tuples = 0;
  std::uint64_t families = 0;
  std::optional<BoundaryFamily> stuck;
};

// Checks all families for one label; stops at the first stuck one.
inline LabelOutcome check_label(const Configuration& cfg, const Label& labels) {
  const Graph& g = cfg.graph;
  const std::size_t hn = cfg.h.size();
  std::size_t combos = 1;
  for (std::size_t i = 0; i < hn; ++i) combos *= kReduceVectors;
  std::vector<int> h_slot(g.vertex_count(), -1);
  for (std::size_t i = 0; i < hn; ++i) h_slot[cfg.h[i]] = static_cast<int>(i);
  auto h_value = [&](std::size_t c, Vertex v) {
    return static_cast<std::uint32_t>((c >> (3 * (hn - 1 - static_cast<std::size_t>(h_slot[v])))) & 7u);
  };
  HMask internal(combos);
  for (std::size_t c = 0; c < combos; ++c) {
    bool ok = true;
    for (EdgeIndex e = 0; e < g.edge_count() && ok; ++e) {
      const auto [u, v] = g.edge(e);
      if (h_slot[u] >= 0 && h_slot[v] >= 0) ok = dot_bits(h_value(c, u), h_value(c, v)) == labels[e];
    }
    if (ok) internal.set(c);
  }
  const std::size_t bn = cfg.boundary.size();
  std::vector<std::array<HMask, kReduceVectors>> compat(bn);
  for (std::size_t i = 0; i < bn; ++i) {
    const Vertex b = cfg.boundary[i];
    for (int x = 0; x < kReduceVectors; ++x) {
      HMask m(combos);
      for (std::size_t c = 0; c < combos; ++c) {
        bool fits = true;
        const auto& nb = g.neighbors(b);
        const auto& inc = g.incident_edges(b);
        for (std::size_t j = 0; j < nb.size() && fits; ++j) {
          fits = dot_bits(static_cast<std::uint32_t>(x), h_value(c, nb[j])) == labels[inc[j]];
        }
        if (fits) m.set(c);
      }
      compat[i][static_cast<std::size_t>(x)] = std::move(m);
    }
  }
  std::vector<std::vector<VectorSet>> options(bn);
  std::vector<std::vector<HMask>> option_masks(bn);
  for (std::size_t i = 0; i < bn; ++i) {
    options[i] = candidate_sets(cfg, cfg.rules[i], labels);
    for (VectorSet s : options[i]) {
      HMask m(combos);
      for (int x = 0; x < kReduceVectors; ++x) {
        if (set_has(s, x)) m |= compat[i][static_cast<std::size_t>(x)];
      }
      option_masks[i].push_back(std::move(m));
    }
  }
  const auto rules = index_rules(cfg, cfg.value_rules);
  LabelOutcome out;
  // Odometer with running intersections: prefix[i+1] = prefix[i] & mask of position i.
  for (const auto& o : options) {
    if (o.empty()) return out;
  }
  std::vector<HMask> prefix(bn + 1, HMask(combos));
  prefix[0] = internal;
  std::vector<std::size_t> pos(bn, 0);
  for (std::size_t i = 0; i < bn; ++i) HMask::intersect(prefix[i], option_masks[i][0], prefix[i + 1]);
  std::vector<VectorSet> sets(bn);
  std::vector<std::vector<std::uint8_t>> allowed(bn);
  while (true) {
    for (std::size_t i = 0; i < bn; ++i) {
      sets[i] = options[i][pos[i]];
      allowed[i] = allowed_values(cfg.rules[i], sets[i]);
    }
    const std::uint64_t designations = count_designations(allowed, rules);
    if (designations > 0) {
      ++out.set_tuples;
      out.families += designations;
      if (!prefix[bn].any()) {
        BoundaryFamily fam{sets, {}};
        for_each_designation(allowed, rules, [&](const std::vector<std::uint8_t>& v) {
          fam.values = v;
          return false;
        });
        out.stuck = std::move(fam);
        return out;
      }
    }
    std::size_t i = bn;
    bool advanced = false;
    while (i > 0) {
      --i;
      if (++pos[i] < options[i].size()) {
        advanced = true;
        break;
      }
      pos[i] = 0;
    }
    if (!advanced) return out;
    for (std::size_t j = i; j < bn; ++j) HMask::intersect(prefix[j], option_masks[j][pos[j]], prefix[j + 1]);
  }
}

inline ClaimResult check_claim(const Configuration& cfg, const SelectionClaim& claim) {
  ClaimResult r{claim.name, true, 0, std::nullopt};
  const Label none = Label::zeros(cfg.graph.edge_count());
  std::vector<std::vector<VectorSet>> options;
  for (const auto& rule : claim.rules) options.push_back(candidate_sets(cfg, rule, none));
  const auto pred = index_rules(cfg, {claim.predicate});
  for_each_tuple(options, [&](const std::vector<VectorSet>& sets) {
    ++r.set_tuples;
    std::vector<std::vector<std::uint8_t>> allowed;
    for (std::size_t i = 0; i < sets.size(); ++i) allowed.push_back(allowed_values(claim.rules[i], sets[i]));
    bool found = false;
    for_each_designation(allowed, pred, [&](const std::vector<std::uint8_t>&) {
      found = true;
      return false;
    });
    if (!found) {
      r.holds = false;
      r.failure = sets;
      return false;
    }
    return true;
  });
  return r;
}

}  // namespace detail

inline ReduceResult check_reducible(const Configuration& cfg, const ReduceOptions& opt = {}) {
  validate(cfg);
  const auto start = std::chrono::steady_clock::now();
  auto labels = admissible_labels(cfg);
  if (opt.reverse_labels) std::reverse(labels.begin(), labels.end());
  std::vector<detail::LabelOutcome> outcomes(labels.size());
  const unsigned jobs = std::max(1u, std::min<unsigned>(opt.jobs, static_cast<unsigned>(labels.size())));
  if (jobs <= 1) {
    for (std::size_t i = 0; i < labels.size(); ++i) outcomes[i] = detail::check_label(cfg, labels[i]);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> workers;
    for (unsigned w = 0; w < jobs; ++w) {
      workers.emplace_back([&] {
        for (std::size_t i = next++; i < labels.size(); i = next++) outcomes[i] = detail::check_label(cfg, labels[i]);
      });
    }
    for (auto& t : workers) t.join();
  }
  ReduceResult r;
  r.config = cfg.name;
  r.labels = labels.size();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    r.set_tuples += outcomes[i].set_tuples;
    r.families += outcomes[i].families;
    if (outcomes[i].stuck && !r.counterexample) {
      r.reducible = false;
      r.counterexample = Counterexample{labels[i], *outcomes[i].stuck};
    }
  }
  for (const auto& c : cfg.selection_claims) r.claims.push_back(detail::check_claim(cfg, c));
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return r;
}

// Re-validates a counterexample from scratch: admissible labels, a valid
// family, and no assignment g at all (brute force over H).
inline bool confirm_counterexample(const Configuration& cfg, const Counterexample& ce) {
  validate(cfg);
  if (!admissible(cfg, ce.labels)) return false;
  if (!family_valid(cfg, ce.labels, ce.family)) return false;
  return !check_family(cfg, ce.labels, ce.family).has_value();
}

// ---------------------------------------------------------------------------
// Builtin configurations.

namespace detail {

struct ConfigBuilder {
  Configuration cfg;
  std::vector<Edge> edges;
  std::vector<std::optional<bool>> domain;

  ConfigBuilder(std::string name, std::vector<std::string> names, std::size_t h_count) {
    cfg.name = std::move(name);
    cfg.names = std::move(names);
    for (Vertex v = 0; v < cfg.names.size(); ++v) {
      if (v < h_count) {
        cfg.h.push_back(v);
      } else {
        cfg.boundary.push_back(v);
      }
    }
  }

  Vertex id(const std::string& n) const {
    auto it = std::find(cfg.names.begin(), cfg.names.end(), n);
    if (it == cfg.names.end()) throw std::logic_error("unknown vertex name " + n);
    return static_cast<Vertex>(it - cfg.names.begin());
  }

  ConfigBuilder& edge(const std::string& a, const std::string& b, std::optional<bool> fixed = std::nullopt) {
    edges.push_back({id(a), id(b)});
    domain.push_back(fixed);
    return *this;
  }

  EdgeIndex edge_of(const std::string& a, const std::string& b) const { return *cfg.graph.edge_index(id(a), id(b)); }

  // Finalizes the graph; fixed bits are re-aligned to canonical edge order.
  void finish_graph() {
    cfg.graph = Graph(cfg.names.size(), edges);
    cfg.label_domain.assign(edges.size(), std::nullopt);
    for (std::size_t i = 0; i < edges.size(); ++i) {
      cfg.label_domain[*cfg.graph.edge_index(edges[i].u, edges[i].v)] = domain[i];
    }
    cfg.rules.clear();
    for (Vertex b : cfg.boundary) cfg.rules.push_back(BoundaryRule{b, 1, false, false, {}, false});
  }

  BoundaryRule& rule(const std::string& v) { return cfg.rules[boundary_position(cfg, id(v))]; }
};

inline Configuration k4_minus() {
  ConfigBuilder b("K4minus", {"v0", "v1", "u0", "u1"}, 2);
  b.edge("v0", "v1").edge("v0", "u0").edge("v0", "u1").edge("v1", "u0").edge("v1", "u1");
  b.finish_graph();
  b.cfg.admissibility = Admissibility::h_vertex_has_one;
  for (std::string u : {"u0", "u1"}) {
    auto& r = b.rule(u);
    r.min_size = 4;
    r.exclude_zero_if_zero = {b.edge_of("v0", u), b.edge_of("v1", u)};
    r.nonzero_value = true;
  }
  b.cfg.default_mutation = "min-size";
  return b.cfg;
}

inline Configuration triangle() {
  ConfigBuilder b("triangle", {"v0", "v1", "v2", "u0", "u1", "u2"}, 3);
  b.edge("v0", "v1").edge("v0", "v2").edge("v1", "v2").edge("v0", "u0").edge("v1", "u1").edge("v2", "u2");
  b.finish_graph();
  b.cfg.admissibility = Admissibility::h_vertex_has_one;
  auto& r0 = b.rule("u0");
  r0.min_size = 2;
  r0.exclude_zero_if_zero = {b.edge_of("u0", "v0")};
  r0.nonzero_value = true;
  b.rule("u1").nonzero_value = true;
  b.rule("u2").nonzero_value = true;
  b.cfg.value_rules.push_back({"link", ValueRuleKind::equal_implies_equal, {b.id("u1"), b.id("u2"), b.id("u0")}});
  b.cfg.default_mutation = "link";
  return b.cfg;
}

inline Configuration p3() {
  ConfigBuilder b("P3", {"w", "u0", "u1", "u2"}, 1);
  b.edge("w", "u0", true).edge("w", "u1").edge("w", "u2");
  b.finish_graph();
  for (std::string u : {"u0", "u1", "u2"}) b.rule(u).min_size = 2;
  b.rule("u0").exclude_zero = true;
  b.rule("u1").exclude_zero_if_zero = {b.edge_of("w", "u1")};
  b.rule("u2").exclude_zero_if_zero = {b.edge_of("w", "u2")};
  b.cfg.default_mutation = "min-size";
  return b.cfg;
}

inline Configuration k23() {
  ConfigBuilder b("K23", {"v0", "v1", "u0", "u1", "u2"}, 2);
  for (std::string v : {"v0", "v1"}) {
    for (std::string u : {"u0", "u1", "u2"}) {
      const bool one = (v == "v0" && u == "u0") || (v == "v1" && u == "u2");
      b.edge(v, u, one);
    }
  }
  b.finish_graph();
  for (std::string u : {"u0", "u1", "u2"}) b.rule(u).min_size = 4;
  b.rule("u1").exclude_zero = true;
  b.rule("u0").include_zero = true;
  b.rule("u2").include_zero = true;
  b.cfg.default_mutation = "min-size";
  return b.cfg;
}

// The 4-cycle v0-v1-v3-v2-v0 with a pendant boundary vertex u_i at each v_i.
inline ConfigBuilder c4_base(const std::string& name, bool v2v3, std::optional<bool> pendant) {
  ConfigBuilder b(name, {"v0", "v1", "v2", "v3", "u0", "u1", "u2", "u3"}, 4);
  b.edge("v0", "v1", true).edge("v1", "v3", false).edge("v2", "v3", v2v3).edge("v0", "v2", false);
  for (std::string i : {"0", "1", "2", "3"}) b.edge("v" + i, "u" + i, pendant);
  b.finish_graph();
  return b;
}

inline Configuration c4_a() {
  auto b = c4_base("C4_a", false, std::nullopt);
  for (auto& r : b.cfg.rules) r.nonzero_value = true;
  b.cfg.default_mutation = "nonzero";
  return b.cfg;
}

inline Configuration c4_b() {
  auto b = c4_base("C4_b", true, false);
  for (auto& r : b.cfg.rules) r.nonzero_value = true;
  const ValueRule no_pairs{"no-double-pair", ValueRuleKind::no_double_pair,
                           {b.id("u0"), b.id("u1"), b.id("u2"), b.id("u3")}};
  b.cfg.value_rules.push_back(no_pairs);
  for (int t = 1; t <= 3; ++t) {
    SelectionClaim claim{"choose-without-double-pair-t" + std::to_string(t), b.cfg.rules, no_pairs};
    for (int i : {0, t}) {
      auto& r = claim.rules[static_cast<std::size_t>(i)];
      r.min_size = 2;
      r.exclude_zero = true;
    }
    b.cfg.selection_claims.push_back(std::move(claim));
  }
  b.cfg.default_mutation = "no-double-pair";
  return b.cfg;
}

inline Configuration bridge() {
  ConfigBuilder b("bridge", {"v0", "v1", "u0", "u1", "u2", "u3"}, 2);
  b.edge("v0", "v1", true).edge("v0", "u0").edge("v0", "u1").edge("v1", "u2").edge("v1", "u3");
  b.finish_graph();
  for (auto& r : b.cfg.rules) {
    r.min_size = 2;
    r.exclude_zero = true;
  }
  b.cfg.default_mutation = "min-size";
  return b.cfg;
}

}  // namespace detail

inline std::vector<Configuration> builtin_configs() {
  return {detail::k4_minus(), detail::triangle(), detail::p3(),  detail::k23(),
          detail::c4_a(),     detail::c4_b(),     detail::bridge()};
}

inline Configuration builtin_config(const std::string& name) {
  for (auto& c : builtin_configs()) {
    if (c.name == name) return c;
  }
  throw InputError("unknown configuration '" + name + "'");
}

// Drops one stated constraint: "min-size", "exclude-zero", "include-zero",
// "nonzero", "admissibility", or the name of a value rule. "default"
// selects the configuration's own control mutation.
inline Configuration mutate(Configuration cfg, const std::string& which) {
  const std::string m = which == "default" ? cfg.default_mutation : which;
  bool changed = false;
  auto each_rule = [&](auto&& fn) {
    for (auto& r : cfg.rules) changed = fn(r) || changed;
    for (auto& c : cfg.selection_claims) {
      for (auto& r : c.rules) fn(r);
    }
  };
  if (m == "min-size") {
    each_rule([](BoundaryRule& r) { return std::exchange(r.min_size, 1) != 1; });
  } else if (m == "exclude-zero") {
    each_rule([](BoundaryRule& r) {
      const bool had = r.exclude_zero || !r.exclude_zero_if_zero.empty();
      r.exclude_zero = false;
      r.exclude_zero_if_zero.clear();
      return had;
    });
  } else if (m == "include-zero") {
    each_rule([](BoundaryRule& r) { return std::exchange(r.include_zero, false); });
  } else if (m == "nonzero") {
    each_rule([](BoundaryRule& r) { return std::exchange(r.nonzero_value, false); });
  } else if (m == "admissibility") {
    changed = cfg.admissibility != Admissibility::any;
    cfg.admissibility = Admissibility::any;
  } else {
    const auto before = cfg.value_rules.size();
    std::erase_if(cfg.value_rules, [&](const ValueRule& r) { return r.name == m; });
    changed = cfg.value_rules.size() != before;
  }
  if (!changed) throw InputError("mutation '" + m + "' does not apply to configuration " + cfg.name);
  return cfg;
}

struct SuiteReport {
  std::vector<ReduceResult> results;
  bool pass() const {
    return std::all_of(results.begin(), results.end(), [](const ReduceResult& r) { return r.pass(); });
  }
};

inline SuiteReport run_suite(const ReduceOptions& opt = {}) {
  SuiteReport s;
  for (const auto& c : builtin_configs()) s.results.push_back(check_reducible(c, opt));
  return s;
}

}  // namespace invdiam

#include <catch_amalgamated.hpp>

#include <map>
#include <set>

#include "invdiam/assignment.hpp"
#include "invdiam/errors.hpp"
#include "invdiam/family.hpp"
#include "support.hpp"

using namespace invdiam;
using namespace invdiam::testing;

namespace {

// k-cliques of g by brute force over vertex subsets grown in index order.
std::uint64_t count_k_cliques(const Graph& g, int k) {
  std::uint64_t count = 0;
  std::vector<Vertex> cur;
  auto rec = [&](auto&& self, Vertex from) -> void {
    if (static_cast<int>(cur.size()) == k) {
      ++count;
      return;
    }
    for (Vertex v = from; v < g.vertex_count(); ++v) {
      bool ok = true;
      for (Vertex c : cur) ok = ok && g.has_edge(c, v);
      if (!ok) continue;
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return count;
}

Assignment make(int t, std::initializer_list<const char*> vs) {
  Assignment a{t, {}};
  for (const auto* s : vs) a.vectors.push_back(Gf2Vector::parse(s));
  return a;
}

}  // namespace

TEST_CASE("build examples") {
  for (int k = 1; k <= 4; ++k) {
    const auto g0 = build_family(k, 0);
    CHECK(g0.graph == Graph::complete(static_cast<std::size_t>(k)));
    CHECK(g0.label.bits.none());
  }
  const auto custom = build_family(3, 0, Label(BitString::parse("101")));
  CHECK(custom.label.to_string() == "101");

  const auto a = build_family(1, 1);
  CHECK(a.graph.vertex_count() == 3);
  CHECK(a.graph.edge_count() == 2);
  CHECK(a.label.to_string() == "01");

  const auto b = build_family(2, 1);
  CHECK(b.graph.vertex_count() == 6);
  CHECK(b.graph.edge_count() == 9);

  CHECK_THROWS_AS(build_family(2, 0, Label(BitString::parse("11"))), InputError);
  CHECK_THROWS_AS(build_family(0, 1), InputError);
}

TEST_CASE("projected sizes and the growth guard") {
  const std::vector<std::uint64_t> k2{2, 6, 42, 366, 3282, 29526, 265722, 2391486};
  const auto sizes = projected_family_sizes(2, 7);
  for (std::size_t i = 0; i < k2.size(); ++i) CHECK(sizes[i].vertices == k2[i]);
  CHECK(projected_family_sizes(1, 3).back().vertices == 27);
  CHECK_THROWS_AS(build_family(2, 7), BudgetExceeded);
  CHECK_THROWS_AS(build_family(1, 13), BudgetExceeded);
}

TEST_CASE("vertex counts follow the recurrence against an independent clique counter") {
  for (int k = 1; k <= 3; ++k) {
    const int m_max = k == 1 ? 5 : (k == 2 ? 3 : 2);
    for (int m = 1; m <= m_max; ++m) {
      const auto prev = build_family(k, m - 1);
      const auto cur = build_family(k, m);
      const auto cliques = count_k_cliques(prev.graph, k);
      REQUIRE(prev.cliques.size() == cliques);
      REQUIRE(cur.graph.vertex_count() == prev.graph.vertex_count() + (std::uint64_t{1} << k) * cliques);
      const auto p = projected_family_sizes(k, m).back();
      REQUIRE(p.vertices == cur.graph.vertex_count());
      REQUIRE(p.edges == cur.graph.edge_count());
      REQUIRE(p.cliques == cur.cliques.size());
    }
  }
}

TEST_CASE("levels, registry and child patterns") {
  for (int k = 1; k <= 3; ++k) {
    const auto lg = build_family(k, k == 3 ? 2 : 3);
    for (Vertex v = 0; v < lg.graph.vertex_count(); ++v) REQUIRE((lg.level[v] == 0) == (v < static_cast<Vertex>(k)));
    for (const auto& c : lg.cliques) {
      REQUIRE(static_cast<int>(c.vertices.size()) == k);
      int top = 0;
      for (std::size_t i = 0; i < c.vertices.size(); ++i) {
        top = std::max(top, lg.level[c.vertices[i]]);
        for (std::size_t j = i + 1; j < c.vertices.size(); ++j) REQUIRE(lg.graph.has_edge(c.vertices[i], c.vertices[j]));
      }
      REQUIRE(c.level == top);
    }
    // Every stage expands every earlier clique, so children are grouped per (clique, stage).
    std::map<std::pair<std::int64_t, int>, std::set<std::uint32_t>> patterns;
    for (Vertex u = static_cast<Vertex>(k); u < lg.graph.vertex_count(); ++u) {
      const auto& parent = lg.cliques[static_cast<std::size_t>(lg.parent_clique[u])];
      REQUIRE(lg.graph.degree(u) >= static_cast<std::size_t>(k));
      REQUIRE(parent.level < lg.level[u]);
      std::uint32_t x = 0;
      for (int j = 0; j < k; ++j) {
        const auto e = lg.graph.edge_index(parent.vertices[static_cast<std::size_t>(j)], u);
        REQUIRE(e);
        if (lg.label[*e]) x |= 1u << j;
      }
      REQUIRE(patterns[{lg.parent_clique[u], lg.level[u]}].insert(x).second);
    }
    for (const auto& [key, xs] : patterns) REQUIRE(xs.size() == (std::size_t{1} << k));
  }
}

TEST_CASE("is_k_tree examples") {
  for (int k = 1; k <= 5; ++k) CHECK(is_k_tree(Graph::complete(static_cast<std::size_t>(k)), k));
  CHECK(is_k_tree(build_family(2, 2).graph, 2));
  CHECK_FALSE(is_k_tree(Graph::cycle(4), 1));
  CHECK(is_k_tree(Graph::path(5), 1));
  CHECK_FALSE(is_k_tree(Graph::complete(4), 2));
  CHECK_FALSE(is_k_tree(Graph(3, {}), 1));
  CHECK_FALSE(is_k_tree(Graph::cycle(5), 2));
}

TEST_CASE("every built family is a k-tree") {
  for (int k = 1; k <= 4; ++k) {
    for (int m = 0; m <= (k <= 2 ? 4 : 2); ++m) REQUIRE(is_k_tree(build_family(k, m).graph, k));
  }
}

TEST_CASE("lower levels induce the smaller family") {
  for (int k = 1; k <= 3; ++k) {
    for (const char* init : {"", "1", "101"}) {
      if (std::string(init).size() != static_cast<std::size_t>(k) * (k - 1) / 2) continue;
      const Label l(BitString::parse(init));
      const int m = k == 3 ? 2 : 4;
      const auto big = build_family(k, m, l);
      for (int i = 0; i <= m; ++i) {
        const auto small = build_family(k, i, l);
        const auto pre = induced_prefix(big.graph, big.label, small.graph.vertex_count());
        REQUIRE(pre.graph == small.graph);
        REQUIRE(pre.label == small.label);
        REQUIRE(std::equal(small.level.begin(), small.level.end(), big.level.begin()));
      }
    }
  }
}

TEST_CASE("clique independence probe examples") {
  const auto a = build_family(1, 1);
  const auto fs = enumerate_assignments(a.graph, a.label, 1, 100);
  REQUIRE_FALSE(fs.empty());
  for (const auto& f : fs) {
    CHECK(f.vectors[0].to_string() == "1");
    CHECK(probe_clique_independence(a, f).pass());
  }

  const auto b = build_family(2, 1);
  const auto gs = enumerate_assignments(b.graph, b.label, 3, 10000);
  REQUIRE_FALSE(gs.empty());
  for (const auto& f : gs) {
    const std::vector<Gf2Vector> pair{f.vectors[0], f.vectors[1]};
    REQUIRE(rank(Gf2Matrix(3, pair)) == 2);
    REQUIRE(probe_clique_independence(b, f).pass());
  }
  CHECK_THROWS_AS(probe_clique_independence(b, gs.front().padded()), std::invalid_argument);
}

TEST_CASE("extension dichotomy probe examples") {
  const auto lg = build_family(2, 2);
  const auto fs = enumerate_assignments(lg.graph, lg.label, 3, 2000);
  REQUIRE_FALSE(fs.empty());
  for (const auto& f : fs) {
    const auto r = probe_extension_dichotomy(lg, f);
    REQUIRE(r.checked == 4);
    REQUIRE(r.pass());
  }
  auto broken = fs.front();
  broken.vectors[0] = Gf2Vector::zero(3);
  CHECK_THROWS_AS(probe_extension_dichotomy(lg, broken), std::invalid_argument);
}

TEST_CASE("lemma probes hold on every enumerated assignment for small families") {
  for (int k = 1; k <= 2; ++k) {
    for (int m = 0; m <= 2; ++m) {
      const auto lg = build_family(k, m);
      const auto fs = enumerate_assignments(lg.graph, lg.label, 2 * k - 1, 10000);
      if (k == 1 && m == 2) REQUIRE(fs.empty());
      for (const auto& f : fs) {
        REQUIRE(probe_clique_independence(lg, f).pass());
        REQUIRE(probe_extension_dichotomy(lg, f).pass());
      }
    }
  }
}

TEST_CASE("bad clique examples") {
  const auto zero = build_family(2, 0, Label(BitString::parse("0")));
  const auto r = probe_bad_cliques(zero, make(3, {"100", "010"}));
  CHECK(r.checked == 3);
  REQUIRE(r.bad.size() == 2);
  for (const auto& b : r.bad) CHECK(b.clique.size() == 1);

  const auto one = build_family(2, 0, Label(BitString::parse("1")));
  const auto s = probe_bad_cliques(one, make(3, {"110", "011"}));
  REQUIRE(s.bad.size() == 2);
  for (const auto& b : s.bad) CHECK(b.radical_dim >= 0);

  // Both vectors odd and their dot product 1: the Gram matrix is all ones, so the pair is bad too.
  const auto odd = probe_bad_cliques(one, make(3, {"111", "100"}));
  CHECK(odd.bad.size() == 3);

  // A self-orthogonal pair: both vectors even and orthogonal, so the pair is bad.
  const auto pair = probe_bad_cliques(zero, make(3, {"110", "000"}));
  CHECK(pair.bad.size() == 3);

  CHECK_THROWS_AS(probe_bad_cliques(one, make(3, {"100", "010"})), std::invalid_argument);
}

TEST_CASE("clique-state feasibility matches brute force on small families") {
  struct Case {
    int k, t, m;
    const char* init;
  };
  for (const auto& c : {Case{1, 1, 0, ""}, Case{1, 1, 1, ""}, Case{1, 1, 2, ""}, Case{1, 2, 2, ""},
                        Case{2, 1, 0, "1"}, Case{2, 2, 1, "0"}, Case{2, 2, 1, "1"}, Case{2, 3, 1, "0"},
                        Case{3, 2, 0, "110"}, Case{3, 3, 0, "111"}}) {
    const Label init(BitString::parse(c.init));
    const auto lg = build_family(c.k, c.m, init);
    const auto tab = clique_feasibility(c.k, c.t, c.m);
    INFO("k=" << c.k << " t=" << c.t << " m=" << c.m);
    REQUIRE(family_satisfiable(tab, c.m, init) == (brute_force_count(lg.graph, lg.label, c.t) > 0));
  }
}

TEST_CASE("the k=1 family needs two dimensions from m=2 on") {
  const auto lg = build_family(1, 2);
  CHECK(brute_force_count(lg.graph, lg.label, 1) == 0);
  const auto r = min_dim(lg.graph, lg.label, 3);
  CHECK(r.dim == 2);
  REQUIRE(r.witness);
  CHECK(verify(lg.graph, lg.label, *r.witness));
}

TEST_CASE("scan examples") {
  using namespace std::chrono_literals;
  const auto one = family_min_dim_scan(1, 4, 1, 10s);
  REQUIRE(one.size() == 5);
  CHECK(one[0].solver == Verdict::sat);
  CHECK(one[1].solver == Verdict::sat);
  for (int m = 2; m <= 4; ++m) CHECK(one[static_cast<std::size_t>(m)].solver == Verdict::unsat);

  const auto two = family_min_dim_scan(1, 4, 2, 10s);
  for (const auto& r : two) {
    CHECK(r.solver == Verdict::sat);
    CHECK(r.exact == true);
  }

  const auto k2 = family_min_dim_scan(2, 3, 3, 30s);
  for (const auto& r : k2) {
    INFO("m=" << r.m);
    REQUIRE(r.exact);
    if (r.solver != Verdict::timeout) CHECK((r.solver == Verdict::sat) == *r.exact);
  }
  CHECK(k2[2].exact == true);
  CHECK(k2[3].exact == false);
}

TEST_CASE("the exact verdicts at the boundary dimensions") {
  // One dimension more than the tight bound keeps every stage satisfiable.
  const auto k1 = clique_feasibility(1, 2, 6);
  const auto k2 = clique_feasibility(2, 4, 4);
  for (int m = 0; m <= 6; ++m) CHECK(family_satisfiable(k1, m, Label::zeros(0)));
  for (int m = 0; m <= 4; ++m) CHECK(family_satisfiable(k2, m, Label::zeros(1)));
  const auto k3 = clique_feasibility(3, 5, 4);
  CHECK(family_satisfiable(k3, 3, Label::zeros(3)));
  CHECK_FALSE(family_satisfiable(k3, 4, Label::zeros(3)));
  CHECK_THROWS_AS(clique_feasibility(5, 1, 1), BudgetExceeded);
}

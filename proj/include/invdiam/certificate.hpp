#pragma once

// JSON certificates for every computation, and a checker that re-validates
// them. Witnesses are verified directly; negative claims (no assignment at
// dimension t) are re-established with the counting engine, falling back
// to the search engine only when elimination exceeds its table budget.

#include <json.hpp>

#include <string>
#include <vector>

#include "assignment.hpp"
#include "errors.hpp"
#include "family.hpp"
#include "graph.hpp"
#include "inversion.hpp"
#include "reducibility.hpp"

namespace invdiam {

using Json = nlohmann::ordered_json;

inline Json assignment_json(const std::optional<Assignment>& a) {
  if (!a) return nullptr;
  Json arr = Json::array();
  for (const auto& v : a->vectors) arr.push_back(v.to_string());
  return arr;
}

inline Assignment assignment_from_json(const Json& j, int t, std::size_t n) {
  if (!j.is_array() || j.size() != n) throw InputError("certificate: assignment must list one vector per vertex");
  Assignment a{t, {}};
  for (const auto& s : j) {
    if (!s.is_string()) throw InputError("certificate: vectors are bit strings");
    const auto text = s.get<std::string>();
    if (static_cast<int>(text.size()) != t) throw InputError("certificate: vector length differs from t");
    try {
      a.vectors.push_back(Gf2Vector::parse(text));
    } catch (const std::invalid_argument& e) {
      throw InputError(std::string("certificate: ") + e.what());
    }
  }
  return a;
}

inline Json family_json(const Configuration& cfg, const BoundaryFamily& fam) {
  Json arr = Json::array();
  for (std::size_t i = 0; i < cfg.boundary.size(); ++i) {
    Json e;
    e["vertex"] = cfg.names[cfg.boundary[i]];
    e["set"] = set_members(fam.sets[i]);
    e["value"] = Gf2Vector(kReduceDim, fam.values[i]).to_string();
    arr.push_back(std::move(e));
  }
  return arr;
}

inline BoundaryFamily family_from_json(const Configuration& cfg, const Json& j) {
  if (!j.is_array() || j.size() != cfg.boundary.size()) throw InputError("certificate: family must list every boundary vertex");
  BoundaryFamily fam;
  for (std::size_t i = 0; i < cfg.boundary.size(); ++i) {
    const auto& e = j[i];
    if (e.at("vertex").get<std::string>() != cfg.names[cfg.boundary[i]]) throw InputError("certificate: family order");
    VectorSet s = 0;
    for (const auto& m : e.at("set")) {
      const auto v = Gf2Vector::parse(m.get<std::string>());
      if (v.dim() != kReduceDim) throw InputError("certificate: set members are 3-bit vectors");
      s |= static_cast<VectorSet>(1u << v.bits());
    }
    const auto value = Gf2Vector::parse(e.at("value").get<std::string>());
    if (value.dim() != kReduceDim) throw InputError("certificate: designated values are 3-bit vectors");
    fam.sets.push_back(s);
    fam.values.push_back(static_cast<std::uint8_t>(value.bits()));
  }
  return fam;
}

inline Json labels_by_edge(const Configuration& cfg, const Label& l) {
  Json o = Json::object();
  for (EdgeIndex e = 0; e < cfg.graph.edge_count(); ++e) {
    const auto [u, v] = cfg.graph.edge(e);
    o[cfg.names[u] + cfg.names[v]] = l[e] ? 1 : 0;
  }
  return o;
}

inline Json reduce_result_json(const Configuration& cfg, const ReduceResult& r) {
  Json j;
  j["config"] = r.config;
  j["mutation"] = r.mutation.empty() ? Json(nullptr) : Json(r.mutation);
  j["verdict"] = r.reducible ? "reducible" : "counterexample";
  j["labels"] = r.labels;
  j["set_tuples"] = r.set_tuples;
  j["families"] = r.families;
  Json claims = Json::array();
  for (const auto& c : r.claims) {
    Json cj;
    cj["name"] = c.name;
    cj["holds"] = c.holds;
    cj["set_tuples"] = c.set_tuples;
    if (c.failure) {
      Json sets = Json::array();
      for (VectorSet s : *c.failure) sets.push_back(set_members(s));
      cj["failure"] = sets;
    }
    claims.push_back(std::move(cj));
  }
  j["claims"] = claims;
  if (r.counterexample) {
    Json ce;
    ce["label"] = r.counterexample->labels.to_string();
    ce["label_by_edge"] = labels_by_edge(cfg, r.counterexample->labels);
    ce["family"] = family_json(cfg, r.counterexample->family);
    j["counterexample"] = ce;
  } else {
    j["counterexample"] = nullptr;
  }
  j["pass"] = r.pass();
  return j;
}

// ---------------------------------------------------------------------------
// Checking.

struct CheckOutcome {
  bool valid = true;
  std::vector<std::string> notes;

  void require(bool ok, const std::string& what) {
    notes.push_back((ok ? "ok: " : "FAILED: ") + what);
    valid = valid && ok;
  }
};

namespace detail {

inline LabeledGraph graph_from_json(const Json& j) { return parse_labeled_graph(j.at("graph").get<std::string>()); }

// No t-dimensional assignment exists.
inline void refute(CheckOutcome& out, const Graph& g, const Label& l, int t, const std::string& what) {
  if (t < 0) return;
  if (t > 16) {
    out.require(!solve(g, l, t).has_value(), what + " (complete search at t=" + std::to_string(t) + ")");
    return;
  }
  try {
    out.require(count_assignments(g, l, t) == 0.0L, what + " (elimination count at t=" + std::to_string(t) + ")");
  } catch (const BudgetExceeded&) {
    out.require(!solve(g, l, t).has_value(), what + " (complete search at t=" + std::to_string(t) + ")");
  }
}

inline void witness(CheckOutcome& out, const Graph& g, const Label& l, const Json& a, int t, const std::string& what) {
  try {
    const auto f = assignment_from_json(a, t, g.vertex_count());
    out.require(verify(g, l, f), what);
  } catch (const InputError& e) {
    out.require(false, what + " (" + e.what() + ")");
  }
}

inline void check_min_dim_claim(CheckOutcome& out, const Graph& g, const Label& l, const Json& dim, const Json& a,
                                int t_max, const std::string& what) {
  if (dim.is_null()) {
    refute(out, g, l, t_max, what + ": no assignment up to t_max");
    return;
  }
  const int d = dim.get<int>();
  witness(out, g, l, a, d, what + ": witness at dimension " + std::to_string(d));
  refute(out, g, l, d - 1, what + ": nothing below dimension " + std::to_string(d));
}

inline Configuration config_for(const Json& r) {
  auto cfg = builtin_config(r.at("config").get<std::string>());
  if (!r.at("mutation").is_null()) cfg = mutate(cfg, r.at("mutation").get<std::string>());
  return cfg;
}

}  // namespace detail

inline CheckOutcome check_certificate(const Json& c) {
  CheckOutcome out;
  const auto kind = c.at("kind").get<std::string>();
  if (kind == "assignment") {
    const auto lg = detail::graph_from_json(c);
    const Label l(BitString::parse(c.at("label").get<std::string>()));
    out.require(l == lg.label, "label matches the embedded graph");
    const int t = c.at("t").get<int>();
    if (c.at("verdict") == "sat") {
      detail::witness(out, lg.graph, l, c.at("assignment"), t, "assignment realizes the label");
    } else {
      detail::refute(out, lg.graph, l, t, "no assignment exists");
    }
  } else if (kind == "mindim") {
    const auto lg = detail::graph_from_json(c);
    detail::check_min_dim_claim(out, lg.graph, lg.label, c.at("min_dim"), c.at("assignment"), c.at("t_max").get<int>(),
                                "minimum dimension");
  } else if (kind == "distance") {
    const auto lg = detail::graph_from_json(c);
    const auto o1 = parse_orientation(c.at("orientations")[0].get<std::string>(), lg.graph);
    const auto o2 = parse_orientation(c.at("orientations")[1].get<std::string>(), lg.graph);
    const Label l = diff_label(o1, o2);
    out.require(l.to_string() == c.at("label").get<std::string>(), "label is the difference of the orientations");
    detail::check_min_dim_claim(out, lg.graph, l, c.at("distance"), c.at("assignment"), c.at("params").at("t_max").get<int>(),
                                "distance");
    if (c.contains("bfs_distance")) {
      out.require(c.at("agree").get<bool>() == (c.at("bfs_distance") == c.at("distance")), "agree flag is consistent");
      out.require(c.at("agree").get<bool>(), "engines agree");
    }
  } else if (kind == "diameter" || kind == "bfs_diameter") {
    const auto lg = detail::graph_from_json(c);
    const Label l(BitString::parse(c.at("hardest_label").get<std::string>()));
    if (c.contains("assignment") && !c.at("assignment").is_null()) {
      detail::check_min_dim_claim(out, lg.graph, l, c.at("diameter"), c.at("assignment"), c.at("params").at("t_max").get<int>(),
                                  "hardest label");
    } else if (!c.at("diameter").is_null()) {
      detail::refute(out, lg.graph, l, c.at("diameter").get<int>() - 1, "hardest label needs the full diameter");
    }
    if (c.contains("agree")) out.require(c.at("agree").get<bool>(), "engines agree");
  } else if (kind == "family") {
    const int k = c.at("k").get<int>();
    const int m = c.at("m").get<int>();
    const Label init(BitString::parse(c.at("initial_label").get<std::string>()));
    const auto sizes = projected_family_sizes(k, m).back();
    out.require(sizes.vertices == c.at("vertices").get<std::uint64_t>(), "vertex count follows the recurrence");
    out.require(sizes.edges == c.at("edges").get<std::uint64_t>(), "edge count follows the recurrence");
    if (c.contains("graph")) {
      const auto lg = build_family(k, m, init);
      out.require(serialize_labeled_graph(lg.graph, lg.label) == c.at("graph").get<std::string>(), "embedded graph rebuilds");
    }
  } else if (kind == "family_scan") {
    const int k = c.at("params").at("k").get<int>();
    const int t = c.at("params").at("t").get<int>();
    const Label init(BitString::parse(c.at("params").at("initial_label").get<std::string>()));
    const auto rows = c.at("rows");
    const auto tab = clique_feasibility(k, t, static_cast<int>(rows.size()) - 1);
    for (const auto& r : rows) {
      const int m = r.at("m").get<int>();
      const bool exact = family_satisfiable(tab, m, init);
      out.require(r.at("exact") == (exact ? "sat" : "unsat"), "clique-state verdict at m=" + std::to_string(m));
      const auto s = r.at("solver").get<std::string>();
      if (s == "sat" || s == "unsat") out.require((s == "sat") == exact, "solver verdict at m=" + std::to_string(m));
    }
  } else if (kind == "probe") {
    const int k = c.at("params").at("k").get<int>();
    const int m = c.at("params").at("m").get<int>();
    const Label init(BitString::parse(c.at("params").at("initial_label").get<std::string>()));
    const auto lg = build_family(k, m, init);
    for (const auto& a : c.at("assignments")) {
      const auto f = assignment_from_json(a, 2 * k - 1, lg.graph.vertex_count());
      out.require(verify(lg.graph, lg.label, f), "probed assignment is valid");
      out.require(probe_clique_independence(lg, f).pass(), "clique independence re-checks");
      out.require(probe_extension_dichotomy(lg, f).pass(), "extension dichotomy re-checks");
    }
    out.require(c.at("violations").get<std::uint64_t>() == 0 || !c.at("pass").get<bool>(), "pass flag is consistent");
  } else if (kind == "reduce") {
    for (const auto& r : c.at("results")) {
      const auto cfg = detail::config_for(r);
      const std::string tag = cfg.name + (r.at("mutation").is_null() ? "" : " mutated by " + r.at("mutation").get<std::string>());
      if (!r.at("counterexample").is_null()) {
        const auto& ce = r.at("counterexample");
        Counterexample x{Label(BitString::parse(ce.at("label").get<std::string>())), family_from_json(cfg, ce.at("family"))};
        out.require(confirm_counterexample(cfg, x), tag + ": counterexample is admissible, valid and stuck");
      } else {
        const auto again = check_reducible(cfg);
        out.require(again.reducible, tag + ": re-run finds every family reducible");
        out.require(again.families == r.at("families").get<std::uint64_t>(), tag + ": family count reproduces");
      }
    }
  } else if (kind == "search_hard") {
    const int t_max = c.at("params").at("t_max").get<int>();
    for (const auto& r : c.at("results")) {
      const auto lg = detail::graph_from_json(r);
      out.require(lg.label.to_string() == r.at("label").get<std::string>(), "label matches the embedded graph");
      detail::check_min_dim_claim(out, lg.graph, lg.label, r.at("min_dim"), r.at("assignment"), t_max, "hard label");
    }
  } else {
    throw InputError("certificate: unknown kind '" + kind + "'");
  }
  return out;
}

}  // namespace invdiam

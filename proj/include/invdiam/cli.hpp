#pragma once

// Command-line front end. run_cli is the whole program minus main(), so
// tests can drive it in-process. Every run writes one JSON document.
//
// Exit status: 0 completed, 1 completed with a failing verdict (a
// reducibility counterexample or a rejected certificate), 2 input error,
// 3 budget exceeded, 4 internal invariant violation.

#include <CLI11.hpp>

#include <chrono>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "assignment.hpp"
#include "certificate.hpp"
#include "errors.hpp"
#include "family.hpp"
#include "graph.hpp"
#include "inversion.hpp"
#include "reducibility.hpp"

namespace invdiam {

inline constexpr const char* kToolVersion = "0.1.0";

enum ExitCode : int { kExitOk = 0, kExitVerdict = 1, kExitInput = 2, kExitBudget = 3, kExitInvariant = 4 };

namespace cli {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InputError("cannot write " + path);
  out << text;
}

inline std::string trim(std::string s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  const auto e = s.find_last_not_of(" \t\r\n");
  return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

inline Json load_json(const std::string& path) {
  try {
    return Json::parse(read_file(path));
  } catch (const Json::parse_error& e) {
    throw InputError(path + ": " + e.what());
  }
}

struct Result {
  Json doc;
  int status = kExitOk;
};

inline Json graph_json(const Graph& g, const Label& l) { return serialize_labeled_graph(g, l); }

inline Json min_dim_value(const MinDim& r) { return r.dim ? Json(*r.dim) : Json(nullptr); }

inline Result cmd_assign(const std::string& path, int t) {
  const auto lg = parse_labeled_graph(read_file(path));
  const auto a = solve(lg.graph, lg.label, t);
  Json j;
  j["kind"] = "assignment";
  j["graph"] = graph_json(lg.graph, lg.label);
  j["label"] = lg.label.to_string();
  j["t"] = t;
  j["assignment"] = assignment_json(a);
  j["verdict"] = a ? "sat" : "unsat";
  return {j};
}

inline Result cmd_mindim(const std::string& path, int t_max) {
  const auto lg = parse_labeled_graph(read_file(path));
  const auto r = min_dim(lg.graph, lg.label, t_max);
  Json j;
  j["kind"] = "mindim";
  j["graph"] = graph_json(lg.graph, lg.label);
  j["label"] = lg.label.to_string();
  j["t_max"] = t_max;
  j["min_dim"] = min_dim_value(r);
  j["assignment"] = assignment_json(r.witness);
  j["verdict"] = r.dim ? "sat" : "exceeds";
  return {j};
}

inline Result cmd_distance(const std::string& graph_path, const std::string& o1_path, const std::string& o2_path,
                           bool oracle) {
  const auto lg = parse_labeled_graph(read_file(graph_path));
  const auto o1 = parse_orientation(trim(read_file(o1_path)), lg.graph);
  const auto o2 = parse_orientation(trim(read_file(o2_path)), lg.graph);
  const Label l = diff_label(o1, o2);
  const int t_max = static_cast<int>(std::min<std::size_t>(lg.graph.edge_count(), Gf2Vector::kMaxDim));
  const auto r = min_dim(lg.graph, l, t_max);
  if (!r.dim) throw InvariantViolation("distance exceeds the edge count");
  Json j;
  j["kind"] = "distance";
  j["params"] = {{"oracle", oracle}, {"t_max", t_max}};
  j["graph"] = graph_json(lg.graph, Label::zeros(lg.graph.edge_count()));
  j["orientations"] = {o1.flips.to_string(), o2.flips.to_string()};
  j["label"] = l.to_string();
  j["distance"] = *r.dim;
  j["assignment"] = assignment_json(r.witness);
  if (oracle) {
    const int b = bfs_distance(lg.graph, o1, o2);
    j["bfs_distance"] = b;
    j["agree"] = b == *r.dim;
    if (b != *r.dim) throw InvariantViolation("assignment and BFS distances disagree");
  }
  return {j};
}

inline Result cmd_bfs_diameter(const std::string& path) {
  const auto lg = parse_labeled_graph(read_file(path));
  const auto d = bfs_diameter(lg.graph);
  Json j;
  j["kind"] = "bfs_diameter";
  j["graph"] = graph_json(lg.graph, Label::zeros(lg.graph.edge_count()));
  j["diameter"] = d.diameter;
  j["hardest_label"] = d.farthest.to_string();
  return {j};
}

inline Result cmd_diameter(const std::string& path, const std::string& engine, int t_max) {
  const auto lg = parse_labeled_graph(read_file(path));
  Json j;
  j["kind"] = "diameter";
  j["params"] = {{"engine", engine}, {"t_max", t_max}};
  j["graph"] = graph_json(lg.graph, Label::zeros(lg.graph.edge_count()));
  std::optional<DiameterResult> a;
  std::optional<BfsDiameter> b;
  if (engine == "assign" || engine == "both") a = diameter_via_assignment(lg.graph, t_max);
  if (engine == "bfs" || engine == "both") b = bfs_diameter(lg.graph);
  if (a) {
    j["diameter"] = a->diameter ? Json(*a->diameter) : Json(nullptr);
    j["hardest_label"] = a->hardest.to_string();
    j["assignment"] = assignment_json(a->witness);
    j["labels_checked"] = a->labels_checked;
  } else {
    j["diameter"] = b->diameter;
    j["hardest_label"] = b->farthest.to_string();
  }
  if (b) j["bfs_diameter"] = b->diameter;
  if (a && b) {
    const bool agree = a->diameter && *a->diameter == b->diameter && a->hardest == b->farthest;
    j["agree"] = agree;
    if (!agree) throw InvariantViolation("assignment and BFS diameters disagree");
  }
  return {j};
}

inline Label initial_label_arg(const std::string& text, int k) {
  const std::size_t edges = static_cast<std::size_t>(k) * (k - 1) / 2;
  if (text.empty()) return Label::zeros(edges);
  Label l(BitString::parse(text));
  if (l.size() != edges) throw InputError("--initial-label needs k(k-1)/2 = " + std::to_string(edges) + " bits");
  return l;
}

inline Result cmd_family(int k, int m, const std::string& initial, const std::string& ilg_path,
                         const std::string& levels_path) {
  const Label init = initial_label_arg(initial, k);
  const auto lg = build_family(k, m, init);
  Json j;
  j["kind"] = "family";
  j["k"] = k;
  j["m"] = m;
  j["initial_label"] = init.to_string();
  j["vertices"] = lg.graph.vertex_count();
  j["edges"] = lg.graph.edge_count();
  j["cliques"] = lg.cliques.size();
  j["k_tree"] = is_k_tree(lg.graph, k);
  const std::string ilg = serialize_labeled_graph(lg.graph, lg.label);
  if (!ilg_path.empty()) {
    write_file(ilg_path, ilg + "\n");
    j["ilg_file"] = ilg_path;
  } else {
    j["graph"] = ilg;
  }
  if (!levels_path.empty()) {
    std::string text;
    for (Vertex v = 0; v < lg.graph.vertex_count(); ++v) {
      text += std::to_string(v) + " " + std::to_string(lg.level[v]) + "\n";
    }
    write_file(levels_path, text);
    j["levels_file"] = levels_path;
  } else {
    j["levels"] = lg.level;
  }
  return {j};
}

inline Result cmd_family_scan(int k, int m_max, int t, long long budget_ms, const std::string& initial) {
  const Label init = initial_label_arg(initial, k);
  const auto rows = family_min_dim_scan(k, m_max, t, std::chrono::milliseconds(budget_ms), init);
  Json j;
  j["kind"] = "family_scan";
  j["params"] = {{"k", k}, {"m_max", m_max}, {"t", t}, {"budget_ms", budget_ms}, {"initial_label", init.to_string()}};
  Json arr = Json::array();
  for (const auto& r : rows) {
    Json row;
    row["m"] = r.m;
    row["vertices"] = r.vertices;
    row["edges"] = r.edges;
    row["solver"] = r.skipped ? "skipped" : to_string(r.solver);
    row["nodes"] = r.nodes;
    row["exact"] = r.exact ? Json(*r.exact ? "sat" : "unsat") : Json(nullptr);
    arr.push_back(std::move(row));
  }
  j["rows"] = arr;
  Json timing = Json::array();
  for (const auto& r : rows) timing.push_back(r.seconds);
  j["row_seconds"] = timing;
  return {j};
}

inline Result cmd_probe(int k, int m, const std::string& initial, const std::string& ilg_path,
                        const std::string& cert_path, std::uint64_t cap) {
  const Label init = initial_label_arg(initial, k);
  const auto lg = build_family(k, m, init);
  if (!ilg_path.empty()) {
    const auto given = parse_labeled_graph(read_file(ilg_path));
    if (!(given.graph == lg.graph) || !(given.label == lg.label)) {
      throw InputError(ilg_path + " is not G_" + std::to_string(m) + " for k=" + std::to_string(k) + " with this initial label");
    }
  }
  const int t = 2 * k - 1;
  std::vector<Assignment> fs;
  if (!cert_path.empty()) {
    const auto c = load_json(cert_path);
    fs.push_back(assignment_from_json(c.at("assignment"), c.at("t").get<int>(), lg.graph.vertex_count()));
    if (!verify(lg.graph, lg.label, fs.back())) throw InputError("probe: assignment does not realize the family label");
    if (fs.back().t != t) throw InputError("probe: assignment dimension must be 2k-1 = " + std::to_string(t));
  } else {
    fs = enumerate_assignments(lg.graph, lg.label, t, cap);
  }
  std::uint64_t ci = 0, ed = 0, bad = 0, violations = 0;
  Json examples = Json::array();
  for (const auto& f : fs) {
    const auto a = probe_clique_independence(lg, f);
    const auto b = probe_extension_dichotomy(lg, f);
    const auto c = probe_bad_cliques(lg, f);
    ci += a.checked;
    ed += b.checked;
    bad += c.bad.size();
    violations += a.violations.size() + b.violations.size();
    if ((!a.pass() || !b.pass()) && examples.size() < 10) examples.push_back(assignment_json(f));
  }
  Json j;
  j["kind"] = "probe";
  j["params"] = {{"k", k}, {"m", m}, {"t", t}, {"initial_label", init.to_string()}, {"cap", cap}};
  j["assignments_probed"] = fs.size();
  j["clique_independence_checks"] = ci;
  j["extension_dichotomy_checks"] = ed;
  j["bad_cliques_seen"] = bad;
  j["violations"] = violations;
  j["pass"] = violations == 0;
  // A bounded sample: certificates stay small and the checker re-probes it.
  Json sample = Json::array();
  for (std::size_t i = 0; i < fs.size() && i < 16; ++i) sample.push_back(assignment_json(fs[i]));
  j["assignments"] = sample;
  j["violating_examples"] = examples;
  return {j, violations == 0 ? kExitOk : kExitVerdict};
}

inline Result cmd_reduce(const std::string& config, bool all, const std::string& mutation, unsigned jobs) {
  if (all == !config.empty()) throw InputError("reduce: give exactly one of --config or --all");
  std::vector<Configuration> cfgs;
  if (all) {
    cfgs = builtin_configs();
  } else {
    cfgs.push_back(builtin_config(config));
  }
  Json results = Json::array();
  bool pass = true;
  for (auto& base : cfgs) {
    Configuration cfg = mutation.empty() ? base : mutate(base, mutation);
    auto r = check_reducible(cfg, {jobs, false});
    if (!mutation.empty()) r.mutation = mutation == "default" ? base.default_mutation : mutation;
    pass = pass && r.pass();
    results.push_back(reduce_result_json(cfg, r));
  }
  Json j;
  j["kind"] = "reduce";
  j["params"] = {{"config", all ? Json("all") : Json(config)},
                 {"mutation", mutation.empty() ? Json(nullptr) : Json(mutation)},
                 {"jobs", jobs}};
  j["results"] = results;
  j["pass"] = pass;
  return {j, pass ? kExitOk : kExitVerdict};
}

inline Result cmd_search_hard(const std::string& path, int t_max, std::uint64_t budget, std::uint64_t seed) {
  const auto graphs = parse_graph_list(read_file(path));
  Json results = Json::array();
  for (const auto& lg : graphs) {
    const auto h = hardest_label(lg.graph, t_max, budget, seed);
    Json r;
    r["graph"] = graph_json(lg.graph, h.label);
    r["label"] = h.label.to_string();
    r["min_dim"] = h.min_dim ? Json(*h.min_dim) : Json(nullptr);
    r["verdict"] = h.min_dim ? "sat" : "exceeds";
    r["assignment"] = assignment_json(h.witness);
    r["exhaustive"] = h.exhaustive;
    r["evaluated"] = h.evaluated;
    results.push_back(std::move(r));
  }
  Json j;
  j["kind"] = "search_hard";
  j["params"] = {{"t_max", t_max}, {"budget", budget}, {"seed", seed}};
  j["results"] = results;
  return {j};
}

inline Result cmd_check(const std::string& path) {
  const auto c = load_json(path);
  CheckOutcome o;
  try {
    o = check_certificate(c);
  } catch (const Json::exception& e) {
    throw InputError(std::string("certificate: ") + e.what());
  }
  Json j;
  j["kind"] = "check";
  j["target_kind"] = c.at("kind");
  j["valid"] = o.valid;
  j["notes"] = o.notes;
  return {j, o.valid ? kExitOk : kExitVerdict};
}

// Short human-readable summary for --pretty.
inline void pretty(const Json& j, std::ostream& os) {
  const auto kind = j.value("kind", std::string());
  if (kind == "reduce") {
    os << std::left << std::setw(12) << "config" << std::setw(16) << "verdict" << std::setw(10) << "labels"
       << "families\n";
    for (const auto& r : j.at("results")) {
      os << std::left << std::setw(12) << r.at("config").get<std::string>() << std::setw(16)
         << r.at("verdict").get<std::string>() << std::setw(10) << r.at("labels").get<std::uint64_t>()
         << r.at("families").get<std::uint64_t>() << "\n";
    }
    return;
  }
  if (kind == "family_scan") {
    os << std::left << std::setw(4) << "m" << std::setw(10) << "vertices" << std::setw(10) << "solver" << "exact\n";
    for (const auto& r : j.at("rows")) {
      os << std::left << std::setw(4) << r.at("m").get<int>() << std::setw(10) << r.at("vertices").get<std::uint64_t>()
         << std::setw(10) << r.at("solver").get<std::string>() << r.at("exact").dump() << "\n";
    }
    return;
  }
  for (const auto& [key, value] : j.items()) {
    if (value.is_primitive()) os << key << ": " << value.dump() << "\n";
  }
}

}  // namespace cli

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact inversion distances and diameters of graph orientations"};
  app.require_subcommand(1);
  app.fallthrough();
  bool no_meta = false, pretty = false;
  std::string output;
  app.add_flag("--no-meta", no_meta, "Omit timing metadata (byte-identical output for identical input)");
  app.add_flag("--pretty", pretty, "Also print a human-readable summary to stderr");
  app.add_option("-o,--output", output, "Write the JSON document here instead of stdout");

  std::string graph, o1, o2, config, mutation, initial, ilg, levels, cert;
  int t = 0, t_max = 8, k = 1, m = 0;
  bool oracle = false, all = false, scan = false;
  std::string engine = "assign";
  unsigned jobs = 1;
  std::uint64_t budget = 1 << 16, seed = 0, cap = 10000;
  long long budget_ms = 60000;

  auto* assign = app.add_subcommand("assign", "Find a t-dimensional vector assignment for a labeled graph");
  assign->add_option("graph", graph, ".ilg file")->required();
  assign->add_option("-t,--t", t, "Dimension")->required()->check(CLI::Range(0, 32));

  auto* mindim = app.add_subcommand("mindim", "Least dimension of an assignment for a labeled graph");
  mindim->add_option("graph", graph, ".ilg file")->required();
  mindim->add_option("--t-max", t_max, "Largest dimension tried")->check(CLI::Range(0, 32));

  auto* distance = app.add_subcommand("distance", "Inversion distance between two orientations");
  distance->add_option("graph", graph, ".ilg file (labels ignored)")->required();
  distance->add_option("orientation1", o1, "Orientation file")->required();
  distance->add_option("orientation2", o2, "Orientation file")->required();
  distance->add_flag("--oracle", oracle, "Also run breadth-first search and require agreement");

  auto* bfs = app.add_subcommand("bfs-diameter", "Inversion diameter by breadth-first search");
  bfs->add_option("graph", graph, ".ilg file (labels ignored)")->required();

  auto* diameter = app.add_subcommand("diameter", "Inversion diameter");
  diameter->add_option("graph", graph, ".ilg file (labels ignored)")->required();
  diameter->add_option("--engine", engine, "assign, bfs or both")->check(CLI::IsMember({"assign", "bfs", "both"}));
  diameter->add_option("--t-max", t_max, "Largest dimension tried")->check(CLI::Range(0, 32));

  auto* family = app.add_subcommand("family", "Build the leveled k-tree G_m^(k), or scan its feasibility");
  family->add_option("--k", k, "Clique size")->required()->check(CLI::Range(1, 8));
  family->add_option("--m", m, "Stages (largest stage when scanning)")->required()->check(CLI::Range(0, 64));
  family->add_option("--initial-label", initial, "Label of the initial clique (default all zero)");
  family->add_option("--ilg", ilg, "Write the graph here");
  family->add_option("--levels", levels, "Write 'vertex level' lines here");
  family->add_flag("--scan", scan, "Solve G_0..G_m at dimension --t instead of emitting the graph");
  family->add_option("-t,--t", t, "Dimension for --scan")->check(CLI::Range(0, 32));
  family->add_option("--budget-ms", budget_ms, "Per-m solver time budget for --scan")->check(CLI::PositiveNumber);

  auto* probe = app.add_subcommand("probe", "Check clique lemmas on assignments of G_m^(k)");
  probe->add_option("--k", k, "Clique size")->required()->check(CLI::Range(1, 4));
  probe->add_option("--m", m, "Stages")->required()->check(CLI::Range(0, 16));
  probe->add_option("--initial-label", initial, "Label of the initial clique (default all zero)");
  probe->add_option("--ilg", ilg, "Require this .ilg to equal the built family");
  probe->add_option("--assignment", cert, "Assignment certificate to probe (default: enumerate)");
  probe->add_option("--cap", cap, "Enumeration cap");

  auto* reduce = app.add_subcommand("reduce", "Verify reducibility configurations");
  reduce->add_option("--config", config, "Configuration name");
  reduce->add_flag("--all", all, "All builtin configurations");
  reduce->add_option("--mutate", mutation,
                     "Drop a constraint: min-size, exclude-zero, include-zero, nonzero, admissibility, a value-rule "
                     "name, or default");
  reduce->add_option("--jobs", jobs, "Worker threads")->check(CLI::Range(1u, 256u));

  auto* search = app.add_subcommand("search-hard", "Search for labels of large minimum dimension");
  search->add_option("graphs", graph, "File of concatenated .ilg graphs (labels ignored)")->required();
  search->add_option("--t-max", t_max, "Largest dimension tried")->check(CLI::Range(0, 16));
  search->add_option("--budget", budget, "Label evaluations per graph");
  search->add_option("--seed", seed, "Random seed");

  auto* check = app.add_subcommand("check", "Re-validate a certificate");
  check->add_option("certificate", cert, "JSON certificate")->required();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "invdiam: " << e.what() << "\n";
    return kExitInput;
  }

  const auto start = std::chrono::steady_clock::now();
  cli::Result res;
  try {
    if (*assign) {
      res = cli::cmd_assign(graph, t);
    } else if (*mindim) {
      res = cli::cmd_mindim(graph, t_max);
    } else if (*distance) {
      res = cli::cmd_distance(graph, o1, o2, oracle);
    } else if (*bfs) {
      res = cli::cmd_bfs_diameter(graph);
    } else if (*diameter) {
      res = cli::cmd_diameter(graph, engine, t_max);
    } else if (*family) {
      res = scan ? cli::cmd_family_scan(k, m, t, budget_ms, initial) : cli::cmd_family(k, m, initial, ilg, levels);
    } else if (*probe) {
      res = cli::cmd_probe(k, m, initial, ilg, cert, cap);
    } else if (*reduce) {
      res = cli::cmd_reduce(config, all, mutation, jobs);
    } else if (*search) {
      res = cli::cmd_search_hard(graph, t_max, budget, seed);
    } else if (*check) {
      res = cli::cmd_check(cert);
    }
  } catch (const InputError& e) {
    err << "invdiam: input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const std::invalid_argument& e) {
    err << "invdiam: input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const BudgetExceeded& e) {
    err << "invdiam: budget exceeded: " << e.what() << "\n";
    return kExitBudget;
  } catch (const InvariantViolation& e) {
    err << "invdiam: invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  }
  if (!no_meta) {
    res.doc["meta"] = {{"tool", "invdiam"},
                       {"version", kToolVersion},
                       {"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()}};
  } else {
    res.doc.erase("row_seconds");
  }
  const std::string text = res.doc.dump(2) + "\n";
  try {
    if (output.empty()) {
      out << text;
    } else {
      cli::write_file(output, text);
    }
  } catch (const InputError& e) {
    err << "invdiam: " << e.what() << "\n";
    return kExitInput;
  }
  if (pretty) cli::pretty(res.doc, err);
  return res.status;
}

}  // namespace invdiam

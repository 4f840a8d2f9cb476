#pragma once

// Simple undirected graphs with a canonical edge order, plus the two
// per-edge bit strings defined against that order: labels and
// orientations. Also the .ilg text format.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "errors.hpp"

namespace invdiam {

using Vertex = std::uint32_t;
using EdgeIndex = std::uint32_t;

// Growable bit sequence; bit i of word i/64 is position i.
class BitString {
 public:
  BitString() = default;
  explicit BitString(std::size_t size) : words_((size + 63) / 64, 0), size_(size) {}

  static BitString from_word(std::size_t size, std::uint64_t word) {
    if (size > 64) throw std::invalid_argument("BitString::from_word: size exceeds 64");
    BitString b(size);
    if (size > 0) b.words_[0] = size == 64 ? word : (word & ((std::uint64_t{1} << size) - 1));
    return b;
  }

  static BitString parse(std::string_view text) {
    BitString b(text.size());
    for (std::size_t i = 0; i < text.size(); ++i) {
      if (text[i] == '1') {
        b.set(i, true);
      } else if (text[i] != '0') {
        throw InputError("bit string: expected '0' or '1'");
      }
    }
    return b;
  }

  std::size_t size() const { return size_; }
  bool get(std::size_t i) const { return ((words_[i / 64] >> (i % 64)) & 1u) != 0; }
  bool operator[](std::size_t i) const { return get(i); }
  void set(std::size_t i, bool v) {
    const std::uint64_t m = std::uint64_t{1} << (i % 64);
    if (v) {
      words_[i / 64] |= m;
    } else {
      words_[i / 64] &= ~m;
    }
  }
  void flip(std::size_t i) { words_[i / 64] ^= std::uint64_t{1} << (i % 64); }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }
  bool none() const {
    return std::all_of(words_.begin(), words_.end(), [](std::uint64_t w) { return w == 0; });
  }

  // Requires size() <= 64.
  std::uint64_t to_word() const {
    if (size_ > 64) throw BudgetExceeded("bit string longer than 64 bits");
    return words_.empty() ? 0 : words_[0];
  }

  BitString operator^(const BitString& other) const {
    if (size_ != other.size_) throw std::invalid_argument("BitString: size mismatch");
    BitString r = *this;
    for (std::size_t i = 0; i < words_.size(); ++i) r.words_[i] ^= other.words_[i];
    return r;
  }

  std::string to_string() const {
    std::string s(size_, '0');
    for (std::size_t i = 0; i < size_; ++i) {
      if (get(i)) s[i] = '1';
    }
    return s;
  }

  // Order of the text forms: position 0 is most significant.
  friend bool lex_less(const BitString& a, const BitString& b) {
    const std::size_t n = std::min(a.size_, b.size_);
    for (std::size_t i = 0; i < n; ++i) {
      if (a.get(i) != b.get(i)) return b.get(i);
    }
    return a.size_ < b.size_;
  }

  friend bool operator==(const BitString&, const BitString&) = default;

 private:
  std::vector<std::uint64_t> words_;
  std::size_t size_ = 0;
};

// pi: E(G) -> F2, one bit per canonical edge index.
struct Label {
  BitString bits;

  Label() = default;
  explicit Label(BitString b) : bits(std::move(b)) {}
  static Label zeros(std::size_t edges) { return Label(BitString(edges)); }

  std::size_t size() const { return bits.size(); }
  bool operator[](std::size_t e) const { return bits[e]; }
  std::string to_string() const { return bits.to_string(); }
  friend bool operator==(const Label&, const Label&) = default;
};

// Bit e = 0: edge (u, v), u < v, is the arc u -> v; bit e = 1: v -> u.
struct Orientation {
  BitString flips;

  Orientation() = default;
  explicit Orientation(BitString b) : flips(std::move(b)) {}
  static Orientation canonical(std::size_t edges) { return Orientation(BitString(edges)); }

  std::size_t size() const { return flips.size(); }
  std::string to_string() const { return flips.to_string(); }
  friend bool operator==(const Orientation&, const Orientation&) = default;
};

struct Edge {
  Vertex u;
  Vertex v;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

class Graph {
 public:
  Graph() = default;

  // Normalizes each pair to u < v and sorts; rejects loops, duplicates and
  // out-of-range endpoints with InputError.
  Graph(std::size_t n, std::vector<Edge> edges) : n_(n), edges_(std::move(edges)) {
    for (auto& e : edges_) {
      if (e.u == e.v) throw InputError("loop at vertex " + std::to_string(e.u));
      if (e.u >= n_ || e.v >= n_) {
        throw InputError("edge (" + std::to_string(e.u) + ", " + std::to_string(e.v) + ") out of range");
      }
      if (e.u > e.v) std::swap(e.u, e.v);
    }
    std::sort(edges_.begin(), edges_.end());
    for (std::size_t i = 1; i < edges_.size(); ++i) {
      if (edges_[i] == edges_[i - 1]) {
        throw InputError("duplicate edge (" + std::to_string(edges_[i].u) + ", " + std::to_string(edges_[i].v) + ")");
      }
    }
    adjacency_.assign(n_, {});
    incident_.assign(n_, {});
    for (EdgeIndex i = 0; i < edges_.size(); ++i) {
      adjacency_[edges_[i].u].push_back(edges_[i].v);
      adjacency_[edges_[i].v].push_back(edges_[i].u);
    }
    for (auto& nb : adjacency_) std::sort(nb.begin(), nb.end());
    for (Vertex x = 0; x < n_; ++x) {
      for (Vertex y : adjacency_[x]) incident_[x].push_back(*edge_index(x, y));
    }
  }

  static Graph complete(std::size_t n) {
    std::vector<Edge> es;
    for (Vertex u = 0; u < n; ++u) {
      for (Vertex v = u + 1; v < n; ++v) es.push_back({u, v});
    }
    return Graph(n, std::move(es));
  }

  static Graph path(std::size_t n) {
    std::vector<Edge> es;
    for (Vertex u = 0; u + 1 < n; ++u) es.push_back({u, u + 1});
    return Graph(n, std::move(es));
  }

  static Graph cycle(std::size_t n) {
    std::vector<Edge> es;
    for (Vertex u = 0; u + 1 < n; ++u) es.push_back({u, u + 1});
    if (n >= 3) es.push_back({0, static_cast<Vertex>(n - 1)});
    return Graph(n, std::move(es));
  }

  std::size_t vertex_count() const { return n_; }
  std::size_t edge_count() const { return edges_.size(); }
  const std::vector<Edge>& edges() const { return edges_; }
  const Edge& edge(EdgeIndex e) const { return edges_[e]; }

  // Sorted neighbors of x, and the edge index of each, aligned.
  const std::vector<Vertex>& neighbors(Vertex x) const { return adjacency_[x]; }
  const std::vector<EdgeIndex>& incident_edges(Vertex x) const { return incident_[x]; }
  std::size_t degree(Vertex x) const { return adjacency_[x].size(); }

  std::optional<EdgeIndex> edge_index(Vertex a, Vertex b) const {
    if (a > b) std::swap(a, b);
    const Edge key{a, b};
    auto it = std::lower_bound(edges_.begin(), edges_.end(), key);
    if (it == edges_.end() || *it != key) return std::nullopt;
    return static_cast<EdgeIndex>(it - edges_.begin());
  }

  bool has_edge(Vertex a, Vertex b) const {
    if (a >= n_ || b >= n_ || a == b) return false;
    const auto& nb = adjacency_[a];
    return std::binary_search(nb.begin(), nb.end(), b);
  }

  friend bool operator==(const Graph& a, const Graph& b) { return a.n_ == b.n_ && a.edges_ == b.edges_; }

 private:
  std::size_t n_ = 0;
  std::vector<Edge> edges_;
  std::vector<std::vector<Vertex>> adjacency_;
  std::vector<std::vector<EdgeIndex>> incident_;
};

struct LabeledGraph {
  Graph graph;
  Label label;
};

inline std::size_t max_degree(const Graph& g) {
  std::size_t d = 0;
  for (Vertex x = 0; x < g.vertex_count(); ++x) d = std::max(d, g.degree(x));
  return d;
}

// N_G(H): vertices outside h with a neighbor inside h. Sorted.
inline std::vector<Vertex> boundary(const Graph& g, const std::vector<Vertex>& h) {
  std::vector<char> in_h(g.vertex_count(), 0), out(g.vertex_count(), 0);
  for (Vertex x : h) {
    if (x >= g.vertex_count()) throw std::invalid_argument("boundary: vertex out of range");
    in_h[x] = 1;
  }
  for (Vertex x : h) {
    for (Vertex y : g.neighbors(x)) {
      if (!in_h[y]) out[y] = 1;
    }
  }
  std::vector<Vertex> result;
  for (Vertex y = 0; y < g.vertex_count(); ++y) {
    if (out[y]) result.push_back(y);
  }
  return result;
}

inline bool is_independent_set(const Graph& g, const std::vector<Vertex>& s) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    for (std::size_t j = i + 1; j < s.size(); ++j) {
      if (g.has_edge(s[i], s[j])) return false;
    }
  }
  return true;
}

// Image of (g, label) under the vertex map x -> perm[x], re-canonicalized.
inline LabeledGraph relabel(const Graph& g, const Label& label, const std::vector<Vertex>& perm) {
  std::vector<Edge> es;
  std::vector<std::pair<Edge, bool>> tagged;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    Edge m{perm[g.edge(e).u], perm[g.edge(e).v]};
    if (m.u > m.v) std::swap(m.u, m.v);
    es.push_back(m);
    tagged.push_back({m, label[e]});
  }
  Graph out(g.vertex_count(), std::move(es));
  Label l = Label::zeros(out.edge_count());
  for (const auto& [edge, bit] : tagged) l.bits.set(*out.edge_index(edge.u, edge.v), bit);
  return {std::move(out), std::move(l)};
}

// Subgraph induced by vertices 0..count-1 with the restricted label.
inline LabeledGraph induced_prefix(const Graph& g, const Label& label, std::size_t count) {
  std::vector<Edge> es;
  std::vector<bool> bits;
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    if (g.edge(e).v < count) {
      es.push_back(g.edge(e));
      bits.push_back(label[e]);
    }
  }
  Graph out(count, std::move(es));
  Label l = Label::zeros(out.edge_count());
  for (std::size_t i = 0; i < bits.size(); ++i) l.bits.set(i, bits[i]);
  return {std::move(out), std::move(l)};
}

// ---------------------------------------------------------------------------
// .ilg format: "n m", then m lines "u v b".

namespace detail {

class LineReader {
 public:
  explicit LineReader(std::string_view text) : text_(text) {}

  // Next line that is neither blank nor a '#' comment.
  bool next(std::string& line) {
    while (pos_ < text_.size()) {
      const auto end = text_.find('\n', pos_);
      const auto stop = end == std::string_view::npos ? text_.size() : end;
      line.assign(text_.substr(pos_, stop - pos_));
      pos_ = stop + 1;
      ++line_no_;
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const auto first = line.find_first_not_of(" \t");
      if (first == std::string::npos || line[first] == '#') continue;
      return true;
    }
    return false;
  }

  std::size_t line_no() const { return line_no_; }

 private:
  std::string_view text_;
  std::size_t pos_ = 0;
  std::size_t line_no_ = 0;
};

inline std::vector<long long> parse_ints(const std::string& line, std::size_t expected, std::size_t line_no) {
  std::istringstream in(line);
  std::vector<long long> out;
  std::string tok;
  while (in >> tok) {
    std::size_t used = 0;
    long long v = 0;
    try {
      v = std::stoll(tok, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != tok.size()) {
      throw InputError("line " + std::to_string(line_no) + ": malformed token '" + tok + "'");
    }
    out.push_back(v);
  }
  if (out.size() != expected) {
    throw InputError("line " + std::to_string(line_no) + ": expected " + std::to_string(expected) + " integers");
  }
  return out;
}

inline LabeledGraph read_labeled_graph(LineReader& reader, const std::string& header) {
  const auto nm = parse_ints(header, 2, reader.line_no());
  if (nm[0] < 0 || nm[1] < 0) throw InputError("line " + std::to_string(reader.line_no()) + ": negative count");
  const auto n = static_cast<std::size_t>(nm[0]);
  const auto m = static_cast<std::size_t>(nm[1]);
  std::vector<Edge> es;
  std::vector<std::pair<Edge, bool>> tagged;
  std::string line;
  for (std::size_t i = 0; i < m; ++i) {
    if (!reader.next(line)) throw InputError("unexpected end of input: expected " + std::to_string(m) + " edge lines");
    const auto uvb = parse_ints(line, 3, reader.line_no());
    if (uvb[0] < 0 || uvb[1] < 0 || static_cast<std::size_t>(uvb[0]) >= n || static_cast<std::size_t>(uvb[1]) >= n) {
      throw InputError("line " + std::to_string(reader.line_no()) + ": vertex out of range");
    }
    if (uvb[2] != 0 && uvb[2] != 1) throw InputError("line " + std::to_string(reader.line_no()) + ": label must be 0 or 1");
    Edge e{static_cast<Vertex>(uvb[0]), static_cast<Vertex>(uvb[1])};
    if (e.u == e.v) throw InputError("line " + std::to_string(reader.line_no()) + ": loop");
    if (e.u > e.v) std::swap(e.u, e.v);
    es.push_back(e);
    tagged.push_back({e, uvb[2] == 1});
  }
  Graph g(n, std::move(es));
  Label l = Label::zeros(g.edge_count());
  for (const auto& [e, b] : tagged) l.bits.set(*g.edge_index(e.u, e.v), b);
  return {std::move(g), std::move(l)};
}

}  // namespace detail

inline LabeledGraph parse_labeled_graph(std::string_view text) {
  detail::LineReader reader(text);
  std::string line;
  if (!reader.next(line)) throw InputError("empty graph input");
  auto lg = detail::read_labeled_graph(reader, line);
  if (reader.next(line)) throw InputError("line " + std::to_string(reader.line_no()) + ": trailing content");
  return lg;
}

// A file of concatenated .ilg blocks; blank and '#' lines may separate them.
inline std::vector<LabeledGraph> parse_graph_list(std::string_view text) {
  detail::LineReader reader(text);
  std::vector<LabeledGraph> out;
  std::string line;
  while (reader.next(line)) out.push_back(detail::read_labeled_graph(reader, line));
  return out;
}

inline std::string serialize_labeled_graph(const Graph& g, const Label& label) {
  if (label.size() != g.edge_count()) throw std::invalid_argument("serialize: label size differs from edge count");
  std::string out = std::to_string(g.vertex_count()) + " " + std::to_string(g.edge_count());
  for (EdgeIndex e = 0; e < g.edge_count(); ++e) {
    out += "\n" + std::to_string(g.edge(e).u) + " " + std::to_string(g.edge(e).v) + " " + (label[e] ? "1" : "0");
  }
  return out;
}

inline Orientation parse_orientation(std::string_view text, const Graph& g) {
  while (!text.empty() && (text.back() == '\n' || text.back() == '\r' || text.back() == ' ')) text.remove_suffix(1);
  while (!text.empty() && (text.front() == ' ' || text.front() == '\n')) text.remove_prefix(1);
  if (text.size() != g.edge_count()) {
    throw InputError("orientation has " + std::to_string(text.size()) + " bits, graph has " +
                     std::to_string(g.edge_count()) + " edges");
  }
  return Orientation(BitString::parse(text));
}

inline Label parse_label(std::string_view text, const Graph& g) {
  if (text.size() != g.edge_count()) {
    throw InputError("label has " + std::to_string(text.size()) + " bits, graph has " +
                     std::to_string(g.edge_count()) + " edges");
  }
  return Label(BitString::parse(text));
}

}  // namespace invdiam

#pragma once

// Weighted resolution trees: a finite tree whose vertices carry integer
// self-intersection weights. The text format, the intersection matrix, and
// the validity checks every downstream computation relies on live here.
//
// File format ("splicegraph 1"):
//   # comment lines and blank lines are ignored
//   splicegraph 1
//   vertex <id> <integer-weight>
//   edge <id> <id>
// Vertices must be declared before edges mention them.

#include "splice/exact.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <numeric>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace splice {

enum class VertexClass {
  node,             // valence >= 3
  end,              // valence 1
  string_interior,  // valence 2
  isolated          // valence 0
};

struct GraphVertex {
  std::string id;
  Int weight;

  friend bool operator==(const GraphVertex& a, const GraphVertex& b) {
    return a.id == b.id && a.weight == b.weight;
  }
};

namespace detail {

inline void check_vertex_id(const std::string& id) {
  if (id.empty()) throw argument_error("vertex id must be non-empty");
  for (char c : id)
    if (c == '#' || std::isspace(static_cast<unsigned char>(c)))
      throw argument_error("vertex id '" + id +
                           "' may not contain whitespace or '#'");
}

}  // namespace detail

class ResolutionGraph {
 public:
  // Structural checks only: ids well formed and unique, endpoints known,
  // no self-loops, no duplicate edges, no cycles. Connectivity and
  // definiteness are validate() concerns, not construction errors.
  static ResolutionGraph build(
      std::vector<GraphVertex> vertices,
      const std::vector<std::pair<std::string, std::string>>& edges) {
    ResolutionGraph g;
    g.vertices_ = std::move(vertices);
    for (std::size_t i = 0; i < g.vertices_.size(); ++i) {
      detail::check_vertex_id(g.vertices_[i].id);
      if (!g.id_index_.emplace(g.vertices_[i].id, i).second)
        throw argument_error("duplicate vertex id '" + g.vertices_[i].id +
                             "'");
    }
    g.adj_.resize(g.vertices_.size());
    std::vector<std::size_t> root(g.vertices_.size());
    std::iota(root.begin(), root.end(), std::size_t{0});
    auto find = [&root](std::size_t x) {
      while (root[x] != x) x = root[x] = root[root[x]];
      return x;
    };
    std::map<std::pair<std::size_t, std::size_t>, bool> seen;
    for (const auto& [ida, idb] : edges) {
      const auto ia = g.index_of(ida), ib = g.index_of(idb);
      if (!ia) throw argument_error("edge references unknown vertex '" + ida + "'");
      if (!ib) throw argument_error("edge references unknown vertex '" + idb + "'");
      if (*ia == *ib)
        throw argument_error("self-loop at vertex '" + ida + "' not allowed");
      const auto key = std::minmax(*ia, *ib);
      if (!seen.emplace(key, true).second)
        throw argument_error("duplicate edge between '" + ida + "' and '" +
                             idb + "'");
      const std::size_t ra = find(*ia), rb = find(*ib);
      if (ra == rb)
        throw argument_error("edge between '" + ida + "' and '" + idb +
                             "' creates a cycle: not a tree");
      root[ra] = rb;
      g.edges_.emplace_back(*ia, *ib);
      g.adj_[*ia].push_back(*ib);
      g.adj_[*ib].push_back(*ia);
    }
    for (auto& nb : g.adj_) std::sort(nb.begin(), nb.end());
    return g;
  }

  std::size_t vertex_count() const { return vertices_.size(); }
  const GraphVertex& vertex(std::size_t i) const { return vertices_.at(i); }
  const std::vector<GraphVertex>& vertices() const { return vertices_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const {
    return edges_;
  }
  const std::vector<std::size_t>& neighbors(std::size_t i) const {
    return adj_.at(i);
  }

  std::optional<std::size_t> index_of(const std::string& id) const {
    const auto it = id_index_.find(id);
    if (it == id_index_.end()) return std::nullopt;
    return it->second;
  }

  std::size_t valence(std::size_t i) const { return adj_.at(i).size(); }

  VertexClass classify(std::size_t i) const {
    switch (valence(i)) {
      case 0:
        return VertexClass::isolated;
      case 1:
        return VertexClass::end;
      case 2:
        return VertexClass::string_interior;
      default:
        return VertexClass::node;
    }
  }

  std::vector<std::size_t> node_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < vertex_count(); ++i)
      if (classify(i) == VertexClass::node) out.push_back(i);
    return out;
  }

  std::vector<std::size_t> end_indices() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < vertex_count(); ++i)
      if (classify(i) == VertexClass::end) out.push_back(i);
    return out;
  }

  bool connected() const {
    if (vertices_.empty()) return false;
    std::vector<bool> seen(vertex_count(), false);
    std::vector<std::size_t> stack{0};
    seen[0] = true;
    std::size_t reached = 1;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t w : adj_[v])
        if (!seen[w]) {
          seen[w] = true;
          ++reached;
          stack.push_back(w);
        }
    }
    return reached == vertex_count();
  }

  // Cached: recomputation is deterministic, so a benign race at worst
  // repeats identical work.
  bool negative_definite() const;

  friend bool operator==(const ResolutionGraph& a, const ResolutionGraph& b) {
    if (a.vertices_ != b.vertices_) return false;
    auto norm = [](const ResolutionGraph& g) {
      std::vector<std::pair<std::size_t, std::size_t>> e;
      e.reserve(g.edges_.size());
      for (auto [x, y] : g.edges_) e.push_back(std::minmax(x, y));
      std::sort(e.begin(), e.end());
      return e;
    };
    return norm(a) == norm(b);
  }

 private:
  std::vector<GraphVertex> vertices_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<std::vector<std::size_t>> adj_;
  std::map<std::string, std::size_t> id_index_;
  mutable std::optional<bool> negdef_cache_;

  friend bool cached_negative_definite(const ResolutionGraph&);
};

// ---------------------------------------------------------------------------
// Intersection matrix A: diagonal = weights, off-diagonal 1 per edge.

inline IntMatrix intersection_matrix(const ResolutionGraph& g) {
  if (g.vertex_count() == 0)
    throw argument_error("graph has no vertices");
  IntMatrix a(g.vertex_count(), g.vertex_count());
  for (std::size_t i = 0; i < g.vertex_count(); ++i)
    a.at(i, i) = g.vertex(i).weight;
  for (const auto& [x, y] : g.edges()) {
    a.at(x, y) = 1;
    a.at(y, x) = 1;
  }
  return a;
}

// Intersection matrix of the induced subgraph on `subset` (given in the
// desired row order).
inline IntMatrix intersection_matrix(const ResolutionGraph& g,
                                     const std::vector<std::size_t>& subset) {
  if (subset.empty()) throw argument_error("subset must be non-empty");
  std::map<std::size_t, std::size_t> pos;
  for (std::size_t i = 0; i < subset.size(); ++i) {
    if (!pos.emplace(subset[i], i).second)
      throw argument_error("subset contains a repeated vertex");
  }
  IntMatrix a(subset.size(), subset.size());
  for (std::size_t i = 0; i < subset.size(); ++i)
    a.at(i, i) = g.vertex(subset[i]).weight;
  for (const auto& [x, y] : g.edges()) {
    const auto ix = pos.find(x), iy = pos.find(y);
    if (ix != pos.end() && iy != pos.end()) {
      a.at(ix->second, iy->second) = 1;
      a.at(iy->second, ix->second) = 1;
    }
  }
  return a;
}

inline bool cached_negative_definite(const ResolutionGraph& g) {
  if (!g.negdef_cache_)
    g.negdef_cache_ = is_negative_definite(intersection_matrix(g));
  return *g.negdef_cache_;
}

inline bool ResolutionGraph::negative_definite() const {
  return cached_negative_definite(*this);
}

// ---------------------------------------------------------------------------
// Validation

struct ValidationReport {
  bool connected = false;
  bool tree = false;
  bool negative_definite = false;

  bool ok() const { return connected && tree && negative_definite; }

  std::string summary() const {
    auto mark = [](bool b) { return b ? "pass" : "FAIL"; };
    std::string s;
    s += "connected: ";
    s += mark(connected);
    s += "\ntree: ";
    s += mark(tree);
    s += "\nnegative definite: ";
    s += mark(negative_definite);
    s += "\nverdict: ";
    s += ok() ? "valid" : "invalid";
    return s;
  }
};

inline ValidationReport validate(const ResolutionGraph& g) {
  ValidationReport r;
  r.connected = g.connected();
  // Acyclicity is structural (enforced at construction), so the tree check
  // reduces to the edge count law together with connectivity.
  r.tree = r.connected && g.edges().size() + 1 == g.vertex_count();
  r.negative_definite = g.negative_definite();
  return r;
}

inline void require_valid(const ResolutionGraph& g) {
  const ValidationReport r = validate(g);
  if (!r.ok()) {
    std::string why;
    if (!r.connected) why = "graph is not connected";
    else if (!r.tree) why = "graph is not a tree";
    else why = "intersection matrix is not negative definite";
    throw validation_error(why);
  }
}

// ---------------------------------------------------------------------------
// Parsing / serialization

inline ResolutionGraph parse_graph(std::istream& in) {
  std::string line;
  int lineno = 0;
  bool header_seen = false;
  std::vector<GraphVertex> vertices;
  std::vector<std::pair<std::string, std::string>> edge_ids;
  std::map<std::string, int> vertex_line;  // declared ids -> line
  std::map<std::pair<std::string, std::string>, int> edge_seen;
  // Union-find over declared ids so cycle errors carry a line number.
  std::map<std::string, std::string> root;
  auto find = [&root](std::string x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream toks(line);
    std::string word;
    if (!(toks >> word)) continue;    // blank
    if (word[0] == '#') continue;     // comment line
    if (!header_seen) {
      std::string version;
      if (word != "splicegraph" || !(toks >> version))
        throw parse_error(lineno, "expected header 'splicegraph 1'");
      if (version != "1")
        throw parse_error(lineno, "unsupported splicegraph version '" +
                                      version + "'");
      std::string extra;
      if (toks >> extra)
        throw parse_error(lineno, "trailing tokens after header");
      header_seen = true;
      continue;
    }
    if (word == "vertex") {
      std::string id, weight_tok, extra;
      if (!(toks >> id >> weight_tok))
        throw parse_error(lineno, "vertex line needs '<id> <weight>'");
      if (toks >> extra)
        throw parse_error(lineno, "trailing tokens on vertex line");
      if (vertex_line.count(id))
        throw parse_error(lineno, "duplicate vertex id '" + id + "' (first declared on line " +
                                      std::to_string(vertex_line[id]) + ")");
      bool numeric = !weight_tok.empty();
      for (std::size_t i = 0; i < weight_tok.size() && numeric; ++i) {
        const char c = weight_tok[i];
        if (i == 0 && c == '-') {
          numeric = weight_tok.size() > 1;
          continue;
        }
        if (c < '0' || c > '9') numeric = false;
      }
      if (!numeric)
        throw parse_error(lineno,
                          "weight '" + weight_tok + "' is not an integer");
      vertices.push_back(GraphVertex{id, Int(weight_tok)});
      vertex_line[id] = lineno;
      root[id] = id;
      continue;
    }
    if (word == "edge") {
      std::string a, b, extra;
      if (!(toks >> a >> b))
        throw parse_error(lineno, "edge line needs '<id> <id>'");
      if (toks >> extra)
        throw parse_error(lineno, "trailing tokens on edge line");
      if (!vertex_line.count(a))
        throw parse_error(lineno, "edge references unknown vertex '" + a + "'");
      if (!vertex_line.count(b))
        throw parse_error(lineno, "edge references unknown vertex '" + b + "'");
      if (a == b)
        throw parse_error(lineno, "self-loop at vertex '" + a + "' not allowed");
      const auto key = std::minmax(a, b);
      if (edge_seen.count(key))
        throw parse_error(lineno, "duplicate edge between '" + a + "' and '" +
                                      b + "'");
      edge_seen[key] = lineno;
      if (find(a) == find(b))
        throw parse_error(lineno, "edge between '" + a + "' and '" + b +
                                      "' creates a cycle: not a tree");
      root[find(a)] = find(b);
      edge_ids.emplace_back(a, b);
      continue;
    }
    throw parse_error(lineno, "unknown directive '" + word + "'");
  }
  if (lineno == 0) lineno = 1;  // empty stream still reports a position
  if (!header_seen)
    throw parse_error(lineno, "missing header 'splicegraph 1'");
  if (vertices.empty())
    throw parse_error(lineno, "graph declares no vertices");
  try {
    return ResolutionGraph::build(std::move(vertices), edge_ids);
  } catch (const argument_error& e) {
    throw parse_error(lineno, e.what());  // construction re-checks; unreachable
  }
}

inline ResolutionGraph parse_graph(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

// Canonical form: vertices in first-seen order, edges sorted lexicographically
// with each edge's smaller id first. Applying parse then serialize again is
// byte-identical.
inline std::string serialize_graph(const ResolutionGraph& g) {
  std::string out = "splicegraph 1\n";
  for (const auto& v : g.vertices())
    out += "vertex " + v.id + " " + v.weight.str() + "\n";
  std::vector<std::pair<std::string, std::string>> lines;
  lines.reserve(g.edges().size());
  for (const auto& [x, y] : g.edges()) {
    std::string a = g.vertex(x).id, b = g.vertex(y).id;
    if (b < a) std::swap(a, b);
    lines.emplace_back(std::move(a), std::move(b));
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& [a, b] : lines) out += "edge " + a + " " + b + "\n";
  return out;
}

// ---------------------------------------------------------------------------
// Determinant and discriminant invariants

// d(Gamma) = det(-A); equals the order of the discriminant group.
inline Int graph_determinant(const ResolutionGraph& g) {
  require_valid(g);
  return determinant(intersection_matrix(g).negated());
}

// Invariant factors > 1 of the cokernel of A, i.e. the abelian group
// structure of coker(A) with trivial factors dropped.
inline std::vector<Int> discriminant_invariants(const ResolutionGraph& g) {
  require_valid(g);
  const SmithDecomposition s = smith_normal_form(intersection_matrix(g));
  std::vector<Int> out;
  for (const Int& f : s.invariant_factors)
    if (f > 1) out.push_back(f);
  return out;
}

}  // namespace splice

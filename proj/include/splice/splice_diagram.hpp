#pragma once

// Collapsing a weighted resolution tree to its splice diagram: every maximal
// chain of valence-2 vertices becomes a single edge, and each edge carries,
// at each node endpoint v, the determinant of the negated intersection form
// of the subtree cut off at v in that direction. Linking weights ell / ell'
// and the per-node products d_v are tabulated here as well.

#include "splice/exact.hpp"
#include "splice/resolution_graph.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace splice {

// Degenerate input marker: a string (no vertex of valence >= 3) has no
// usable splice diagram. Callers report this case; it is not a crash.
class no_nodes_error : public error {
 public:
  using error::error;
};

inline bool has_nodes(const ResolutionGraph& g) {
  for (std::size_t i = 0; i < g.vertex_count(); ++i)
    if (g.valence(i) >= 3) return true;
  return false;
}

struct SpliceVertexInfo {
  std::string id;           // inherited from the resolution tree
  std::size_t graph_index;  // position in the resolution tree
  bool is_node;             // valence >= 3 (else an end)
};

struct SpliceEdgeInfo {
  std::size_t a, b;  // diagram vertex indices, a < b
  std::optional<Int> weight_a, weight_b;  // present iff that endpoint is a node
  std::vector<std::size_t> gamma_path;    // tree vertex indices, a's to b's

  std::size_t other(std::size_t v) const {
    if (v == a) return b;
    if (v == b) return a;
    throw argument_error("vertex is not an endpoint of this edge");
  }
  const std::optional<Int>& weight_at(std::size_t v) const {
    if (v == a) return weight_a;
    if (v == b) return weight_b;
    throw argument_error("vertex is not an endpoint of this edge");
  }
};

class SpliceDiagram {
 public:
  const ResolutionGraph& graph() const { return graph_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  const SpliceVertexInfo& vertex(std::size_t i) const {
    return vertices_.at(i);
  }
  const std::vector<SpliceVertexInfo>& vertices() const { return vertices_; }
  const std::vector<SpliceEdgeInfo>& edges() const { return edges_; }
  const SpliceEdgeInfo& edge(std::size_t e) const { return edges_.at(e); }

  // Edge indices incident to diagram vertex i, ascending.
  const std::vector<std::size_t>& incident_edges(std::size_t i) const {
    return incidence_.at(i);
  }

  // Diagram indices of nodes / ends, each ascending by tree position. The
  // end order fixes the variable order z1..zn used everywhere downstream.
  const std::vector<std::size_t>& nodes() const { return nodes_; }
  const std::vector<std::size_t>& ends() const { return ends_; }

  std::optional<std::size_t> index_of(const std::string& id) const {
    const auto it = id_index_.find(id);
    if (it == id_index_.end()) return std::nullopt;
    return it->second;
  }

  // d_ve: the weight the edge carries at diagram vertex v (a node).
  const Int& weight_at(std::size_t edge_index, std::size_t v) const {
    const auto& w = edge(edge_index).weight_at(v);
    if (!w)
      throw argument_error("edge carries no weight at an end vertex");
    return *w;
  }

  friend SpliceDiagram splice_from_resolution(const ResolutionGraph& g);

 private:
  ResolutionGraph graph_;
  std::vector<SpliceVertexInfo> vertices_;
  std::vector<SpliceEdgeInfo> edges_;
  std::vector<std::vector<std::size_t>> incidence_;
  std::vector<std::size_t> nodes_, ends_;
  std::map<std::string, std::size_t> id_index_;
};

// d_ve for the tree: determinant of the negated intersection form of the
// component of g minus `apex` that contains `toward`.
inline Int cutoff_determinant(const ResolutionGraph& g, std::size_t apex,
                              std::size_t toward) {
  std::vector<bool> seen(g.vertex_count(), false);
  seen[apex] = true;
  std::vector<std::size_t> member, stack{toward};
  seen[toward] = true;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    member.push_back(v);
    for (std::size_t w : g.neighbors(v))
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
  }
  std::sort(member.begin(), member.end());
  return determinant(intersection_matrix(g, member).negated());
}

inline SpliceDiagram splice_from_resolution(const ResolutionGraph& g) {
  require_valid(g);
  if (!has_nodes(g))
    throw no_nodes_error(
        "graph has no vertex of valence >= 3; splice diagram is degenerate");

  SpliceDiagram d;
  d.graph_ = g;
  std::vector<std::size_t> diagram_index(g.vertex_count(), SIZE_MAX);
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    if (g.valence(i) == 2) continue;
    diagram_index[i] = d.vertices_.size();
    const bool node = g.valence(i) >= 3;
    d.vertices_.push_back(SpliceVertexInfo{g.vertex(i).id, i, node});
    d.id_index_[g.vertex(i).id] = diagram_index[i];
    (node ? d.nodes_ : d.ends_).push_back(diagram_index[i]);
  }
  d.incidence_.resize(d.vertices_.size());

  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    if (diagram_index[i] == SIZE_MAX) continue;
    for (std::size_t first : g.neighbors(i)) {
      // Walk through the valence-2 chain until the next kept vertex.
      std::vector<std::size_t> path{i, first};
      std::size_t prev = i, cur = first;
      while (diagram_index[cur] == SIZE_MAX) {
        const auto& nb = g.neighbors(cur);
        const std::size_t next = (nb[0] == prev) ? nb[1] : nb[0];
        path.push_back(next);
        prev = cur;
        cur = next;
      }
      if (cur < i) continue;  // recorded from the other side already
      SpliceEdgeInfo e;
      e.a = diagram_index[i];
      e.b = diagram_index[cur];
      e.gamma_path = path;
      if (d.vertices_[e.a].is_node) {
        e.weight_a = cutoff_determinant(g, i, path[1]);
        if (*e.weight_a <= 0)
          throw internal_error("cut-off subtree determinant not positive");
      }
      if (d.vertices_[e.b].is_node) {
        e.weight_b = cutoff_determinant(g, cur, path[path.size() - 2]);
        if (*e.weight_b <= 0)
          throw internal_error("cut-off subtree determinant not positive");
      }
      const std::size_t idx = d.edges_.size();
      d.edges_.push_back(std::move(e));
      d.incidence_[d.edges_[idx].a].push_back(idx);
      d.incidence_[d.edges_[idx].b].push_back(idx);
    }
  }
  for (auto& inc : d.incidence_) std::sort(inc.begin(), inc.end());
  return d;
}

// ---------------------------------------------------------------------------
// Paths and linking weights

// Vertex/edge sequence of the unique diagram path from `from` to `to`.
struct DiagramPath {
  std::vector<std::size_t> vertices;  // from .. to inclusive
  std::vector<std::size_t> edges;     // edges.size() + 1 == vertices.size()
};

inline DiagramPath diagram_path(const SpliceDiagram& d, std::size_t from,
                                std::size_t to) {
  const std::size_t n = d.vertex_count();
  if (from >= n || to >= n) throw argument_error("diagram vertex out of range");
  std::vector<std::size_t> parent_vertex(n, SIZE_MAX), parent_edge(n, SIZE_MAX);
  std::vector<bool> seen(n, false);
  std::vector<std::size_t> stack{from};
  seen[from] = true;
  while (!stack.empty()) {
    const std::size_t v = stack.back();
    stack.pop_back();
    if (v == to) break;
    for (std::size_t e : d.incident_edges(v)) {
      const std::size_t w = d.edge(e).other(v);
      if (!seen[w]) {
        seen[w] = true;
        parent_vertex[w] = v;
        parent_edge[w] = e;
        stack.push_back(w);
      }
    }
  }
  if (!seen[to]) throw internal_error("diagram is not connected");
  DiagramPath p;
  for (std::size_t v = to; v != from; v = parent_vertex[v]) {
    p.vertices.push_back(v);
    p.edges.push_back(parent_edge[v]);
  }
  p.vertices.push_back(from);
  std::reverse(p.vertices.begin(), p.vertices.end());
  std::reverse(p.edges.begin(), p.edges.end());
  return p;
}

struct LinkingTable {
  // Keyed by (node diagram-index, end diagram-index).
  std::map<std::pair<std::size_t, std::size_t>, Int> ell, ell_prime;
  // Keyed by node diagram-index: product of its incident edge weights.
  std::map<std::size_t, Int> d_v;

  const Int& ell_at(std::size_t v, std::size_t w) const {
    const auto it = ell.find({v, w});
    if (it == ell.end()) throw argument_error("no linking entry for (v,w)");
    return it->second;
  }
  const Int& ell_prime_at(std::size_t v, std::size_t w) const {
    const auto it = ell_prime.find({v, w});
    if (it == ell_prime.end())
      throw argument_error("no linking entry for (v,w)");
    return it->second;
  }
  const Int& node_product(std::size_t v) const {
    const auto it = d_v.find(v);
    if (it == d_v.end()) throw argument_error("not a node of the diagram");
    return it->second;
  }
};

// Product of the incident edge weights at node v.
inline Int node_weight(const SpliceDiagram& d, std::size_t v) {
  if (v >= d.vertex_count() || !d.vertex(v).is_node)
    throw argument_error("not a node of the diagram");
  Int prod = 1;
  for (std::size_t e : d.incident_edges(v)) prod *= d.weight_at(e, v);
  return prod;
}

inline Int node_weight(const SpliceDiagram& d, const std::string& id) {
  const auto i = d.index_of(id);
  if (!i) throw argument_error("unknown node id '" + id + "'");
  return node_weight(d, *i);
}

inline LinkingTable linking_table(const SpliceDiagram& d) {
  LinkingTable t;
  for (std::size_t v : d.nodes()) t.d_v[v] = node_weight(d, v);
  for (std::size_t v : d.nodes()) {
    for (std::size_t w : d.ends()) {
      const DiagramPath p = diagram_path(d, v, w);
      Int full = 1, away = 1;  // away: contributions at path vertices != v
      for (std::size_t k = 0; k + 1 < p.vertices.size(); ++k) {
        const std::size_t z = p.vertices[k];  // w itself carries no weights
        for (std::size_t e : d.incident_edges(z)) {
          if (std::find(p.edges.begin(), p.edges.end(), e) != p.edges.end())
            continue;
          const Int& weight = d.weight_at(e, z);
          full *= weight;
          if (z != v) away *= weight;
        }
      }
      t.ell[{v, w}] = full;
      t.ell_prime[{v, w}] = away;
    }
  }
  return t;
}

// Diagram ends lying beyond edge e as seen from node v (the ends of the
// component of the diagram minus v that contains e's far side), ascending.
inline std::vector<std::size_t> ends_beyond(const SpliceDiagram& d,
                                            std::size_t v, std::size_t e) {
  const auto& inc = d.incident_edges(v);
  if (std::find(inc.begin(), inc.end(), e) == inc.end())
    throw argument_error("edge is not incident to the given node");
  std::vector<bool> seen(d.vertex_count(), false);
  seen[v] = true;
  std::vector<std::size_t> stack{d.edge(e).other(v)}, out;
  seen[stack[0]] = true;
  while (!stack.empty()) {
    const std::size_t z = stack.back();
    stack.pop_back();
    if (!d.vertex(z).is_node) out.push_back(z);
    for (std::size_t f : d.incident_edges(z)) {
      const std::size_t u = d.edge(f).other(z);
      if (!seen[u]) {
        seen[u] = true;
        stack.push_back(u);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Text form: `node <id>` / `end <id>` lines, then `edge` lines listing the
// node endpoint first, with that endpoint's weight, then the far endpoint
// and (for node-node edges) its weight. Ends never carry weights.

inline std::string serialize_diagram(const SpliceDiagram& d) {
  std::string out;
  for (std::size_t v : d.nodes()) out += "node " + d.vertex(v).id + "\n";
  for (std::size_t w : d.ends()) out += "end " + d.vertex(w).id + "\n";
  std::vector<std::string> lines;
  for (const auto& e : d.edges()) {
    std::size_t first = e.a, second = e.b;
    if (!d.vertex(first).is_node) std::swap(first, second);
    std::string line = "edge " + d.vertex(first).id + " " +
                       d.vertex(second).id + " " +
                       e.weight_at(first)->str();
    if (const auto& w2 = e.weight_at(second)) line += " " + w2->str();
    lines.push_back(line + "\n");
  }
  std::sort(lines.begin(), lines.end());
  for (const auto& l : lines) out += l;
  return out;
}

}  // namespace splice

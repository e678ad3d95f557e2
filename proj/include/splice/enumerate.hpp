#pragma once

// Exhaustive generation of small weighted trees up to isomorphism, and the
// scanner that classifies each one by how far it gets through the pipeline:
// invalid (not negative definite), no nodes, semigroup failure, congruence
// failure, or all conditions passing.
//
// Trees are grown by attaching one leaf at a time; duplicates are rejected
// through a canonical code (centroid-rooted, children sorted, weights
// embedded), so each isomorphism class is visited exactly once.

#include "splice/congruence.hpp"
#include "splice/discriminant.hpp"
#include "splice/exact.hpp"
#include "splice/resolution_graph.hpp"
#include "splice/semigroup.hpp"
#include "splice/splice_diagram.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <string>
#include <vector>

namespace splice {

inline constexpr std::size_t kMaxEnumerationVertices = 10;
inline constexpr std::size_t kEnumerationGraphGuard = 5'000'000;

namespace detail {

inline std::string rooted_code(const ResolutionGraph& g, std::size_t v,
                               std::size_t parent) {
  std::vector<std::string> child_codes;
  for (std::size_t w : g.neighbors(v))
    if (w != parent) child_codes.push_back(rooted_code(g, w, v));
  std::sort(child_codes.begin(), child_codes.end());
  std::string code = "(" + g.vertex(v).weight.str() + "|";
  for (const auto& c : child_codes) code += c;
  return code + ")";
}

inline std::vector<std::size_t> tree_centroids(const ResolutionGraph& g) {
  const std::size_t n = g.vertex_count();
  if (n == 1) return {0};
  // Repeatedly strip leaves; the last one or two vertices standing are the
  // centers. Centers work as canonical roots just as well as weight
  // centroids, since both are isomorphism-invariant.
  std::vector<std::size_t> degree(n);
  std::vector<bool> removed(n, false);
  std::vector<std::size_t> layer;
  for (std::size_t i = 0; i < n; ++i) {
    degree[i] = g.valence(i);
    if (degree[i] <= 1) layer.push_back(i);
  }
  std::size_t remaining = n;
  while (remaining > 2) {
    std::vector<std::size_t> next;
    for (std::size_t v : layer) {
      removed[v] = true;
      --remaining;
      for (std::size_t w : g.neighbors(v))
        if (!removed[w] && --degree[w] == 1) next.push_back(w);
    }
    layer = std::move(next);
  }
  std::vector<std::size_t> centers;
  for (std::size_t i = 0; i < n; ++i)
    if (!removed[i]) centers.push_back(i);
  return centers;
}

}  // namespace detail

// Isomorphism-invariant identifier: equal codes iff the weighted trees are
// isomorphic respecting weights.
inline std::string canonical_tree_code(const ResolutionGraph& g) {
  std::string best;
  for (std::size_t c : detail::tree_centroids(g)) {
    std::string code = detail::rooted_code(g, c, SIZE_MAX);
    if (best.empty() || code < best) best = std::move(code);
  }
  return best;
}

// All weighted trees (up to isomorphism) with 1..max_vertices vertices and
// weights in [weight_min, -1], in a fixed deterministic order: sizes
// ascending, canonical code ascending within a size. No definiteness filter.
inline void enumerate_weighted_trees(
    std::size_t max_vertices, const Int& weight_min,
    const std::function<void(const ResolutionGraph&)>& fn) {
  if (max_vertices < 1) throw argument_error("need at least one vertex");
  if (max_vertices > kMaxEnumerationVertices)
    throw resource_error("enumeration limited to " +
                         std::to_string(kMaxEnumerationVertices) +
                         " vertices");
  if (weight_min > -1) throw argument_error("weight minimum must be <= -1");

  std::vector<Int> weights;
  for (Int w = weight_min; w <= -1; ++w) weights.push_back(w);

  std::size_t emitted = 0;
  auto emit = [&](const ResolutionGraph& g) {
    if (++emitted > kEnumerationGraphGuard)
      throw resource_error("tree enumeration exceeded its graph budget");
    fn(g);
  };

  std::map<std::string, ResolutionGraph> level;
  for (const Int& w : weights) {
    ResolutionGraph g =
        ResolutionGraph::build({GraphVertex{"v1", w}}, {});
    level.emplace(canonical_tree_code(g), std::move(g));
  }
  for (const auto& [code, g] : level) emit(g);

  for (std::size_t size = 2; size <= max_vertices; ++size) {
    std::map<std::string, ResolutionGraph> next;
    for (const auto& [code, g] : level) {
      for (std::size_t attach = 0; attach < g.vertex_count(); ++attach) {
        for (const Int& w : weights) {
          std::vector<GraphVertex> vs = g.vertices();
          const std::string new_id = "v" + std::to_string(size);
          vs.push_back(GraphVertex{new_id, w});
          std::vector<std::pair<std::string, std::string>> es;
          for (const auto& [x, y] : g.edges())
            es.emplace_back(g.vertex(x).id, g.vertex(y).id);
          es.emplace_back(g.vertex(attach).id, new_id);
          ResolutionGraph bigger = ResolutionGraph::build(std::move(vs), es);
          std::string bcode = canonical_tree_code(bigger);
          next.emplace(std::move(bcode), std::move(bigger));
        }
      }
    }
    for (const auto& [bcode, bigger] : next) emit(bigger);
    level = std::move(next);
  }
}

// Same stream restricted to graphs whose intersection form is negative
// definite (i.e. the valid ones).
inline void enumerate_trees(
    std::size_t max_vertices, const Int& weight_min,
    const std::function<void(const ResolutionGraph&)>& fn) {
  enumerate_weighted_trees(max_vertices, weight_min,
                           [&](const ResolutionGraph& g) {
                             if (g.negative_definite()) fn(g);
                           });
}

// ---------------------------------------------------------------------------
// Scanning

enum class ScanClass {
  invalid,          // intersection form not negative definite
  no_nodes,         // valid but no vertex of valence >= 3
  semigroup_fail,   // some (node, edge) weight misses its semigroup
  congruence_fail,  // semigroup holds, no matching-character choice exists
  all_pass
};

inline const char* scan_class_name(ScanClass c) {
  switch (c) {
    case ScanClass::invalid: return "invalid";
    case ScanClass::no_nodes: return "no-nodes";
    case ScanClass::semigroup_fail: return "semigroup-fail";
    case ScanClass::congruence_fail: return "congruence-fail";
    case ScanClass::all_pass: return "all-pass";
  }
  return "?";
}

struct ScanSummary {
  std::size_t max_vertices = 0;
  Int weight_min;
  std::size_t total = 0;
  std::size_t invalid = 0, no_nodes = 0, semigroup_fail = 0,
              congruence_fail = 0, all_pass = 0;
  // Up to three serialized exemplars per class, in stream order.
  std::map<ScanClass, std::vector<std::string>> exemplars;
  // False if any congruence verdict relied on a truncated enumeration.
  bool all_exhaustive = true;
};

inline ScanClass classify_graph(const ResolutionGraph& g, std::size_t cap,
                                bool* exhaustive = nullptr) {
  if (exhaustive) *exhaustive = true;
  if (!g.negative_definite()) return ScanClass::invalid;
  if (!has_nodes(g)) return ScanClass::no_nodes;
  const SpliceDiagram d = splice_from_resolution(g);
  const LinkingTable lt = linking_table(d);
  const std::vector<PhaseVector> gens = action_generators(g);
  const CongruenceResult r = search_congruence(d, lt, gens, cap);
  if (exhaustive) *exhaustive = r.exhaustive;
  if (!r.semigroup_ok) return ScanClass::semigroup_fail;
  return r.satisfied ? ScanClass::all_pass : ScanClass::congruence_fail;
}

inline ScanSummary scan(std::size_t max_vertices, const Int& weight_min,
                        std::size_t cap = 10000) {
  ScanSummary s;
  s.max_vertices = max_vertices;
  s.weight_min = weight_min;
  enumerate_weighted_trees(max_vertices, weight_min,
                           [&](const ResolutionGraph& g) {
    ++s.total;
    bool exhaustive = true;
    const ScanClass c = classify_graph(g, cap, &exhaustive);
    s.all_exhaustive = s.all_exhaustive && exhaustive;
    switch (c) {
      case ScanClass::invalid: ++s.invalid; break;
      case ScanClass::no_nodes: ++s.no_nodes; break;
      case ScanClass::semigroup_fail: ++s.semigroup_fail; break;
      case ScanClass::congruence_fail: ++s.congruence_fail; break;
      case ScanClass::all_pass: ++s.all_pass; break;
    }
    auto& ex = s.exemplars[c];
    if (ex.size() < 3) ex.push_back(serialize_graph(g));
  });
  return s;
}

}  // namespace splice

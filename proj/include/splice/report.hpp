#pragma once

// End-to-end pipeline over one graph, plus serialization of every stage:
// validation, determinant and group invariants, splice diagram, linking
// weights, semigroup verdicts, monomial counts, congruence search, equation
// system, one-node normal form. JSON output is deterministic: insertion
// order is fixed and every exact value is carried as a string.

#include "splice/congruence.hpp"
#include "splice/discriminant.hpp"
#include "splice/enumerate.hpp"
#include "splice/equations.hpp"
#include "splice/exact.hpp"
#include "splice/resolution_graph.hpp"
#include "splice/semigroup.hpp"
#include "splice/splice_diagram.hpp"

#include <json.hpp>

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace splice {

using Json = nlohmann::ordered_json;

struct PipelineOptions {
  std::size_t monomial_cap = 10000;
  // Element enumeration is skipped (with a note) above this order; the
  // group structure is still computed exactly from the generators.
  Int group_order_guard = 100000;
};

struct PipelineReport {
  ResolutionGraph graph;
  PipelineOptions options;
  ValidationReport validation;
  bool valid = false;

  std::optional<Int> det;
  std::vector<Int> invariants;  // invariant factors > 1 of the cokernel
  std::vector<std::string> notes;

  std::vector<PhaseVector> generators;            // empty when no ends
  std::optional<DiscriminantAction> action;       // when enumerated
  std::optional<FreenessReport> freeness;
  std::vector<Int> group_structure;               // from the generators

  bool no_nodes = false;
  std::optional<SpliceDiagram> diagram;
  std::optional<LinkingTable> linking;
  std::optional<SemigroupVerdict> semigroup;
  std::optional<CongruenceResult> congruence;
  std::optional<EquationSystem> equations;
  std::optional<BrieskornData> brieskorn;
};

inline PipelineReport run_pipeline(const ResolutionGraph& g,
                                   const PipelineOptions& opts = {}) {
  PipelineReport r;
  r.graph = g;
  r.options = opts;
  r.validation = validate(g);
  r.valid = r.validation.ok();
  if (!r.valid) return r;

  r.det = graph_determinant(g);
  r.invariants = discriminant_invariants(g);

  r.generators = action_generators(g);
  if (r.generators.empty()) {
    r.notes.push_back("no ends: the diagonal action has no coordinates");
  } else {
    r.group_structure = abelian_invariants(r.generators);
    if (*r.det <= opts.group_order_guard) {
      r.action = generate_group(r.generators, *r.det);
      if (r.action->order != *r.det)
        throw internal_error(
            "group order " + int_string(r.action->order) +
            " differs from determinant " + int_string(*r.det) +
            "; the faithfulness expectation failed for this input and "
            "results cannot be trusted");
      r.freeness = check_free_codim1(*r.action);
    } else {
      r.notes.push_back(
          "group enumeration skipped: order exceeds the in-memory guard");
    }
  }

  if (!has_nodes(g)) {
    r.no_nodes = true;
    r.notes.push_back(
        "no nodes: splice system is empty (cyclic quotient case)");
    return r;
  }

  r.diagram = splice_from_resolution(g);
  r.linking = linking_table(*r.diagram);
  r.semigroup = check_semigroup_condition(*r.diagram, *r.linking);
  r.congruence = search_congruence(*r.diagram, *r.linking, r.generators,
                                   opts.monomial_cap);
  if (r.congruence->satisfied) {
    std::map<std::size_t, RatMatrix> coeffs;
    for (std::size_t v : r.diagram->nodes()) {
      const std::size_t delta = r.diagram->incident_edges(v).size();
      coeffs.emplace(v, generic_coefficients(delta - 2, delta));
    }
    r.equations = build_equation_system(
        *r.diagram, *r.linking, assignment_choice_map(*r.congruence), coeffs);
  }
  if (r.diagram->nodes().size() == 1)
    r.brieskorn = brieskorn_form(*r.diagram);
  return r;
}

// ---------------------------------------------------------------------------
// JSON pieces

inline Json json_graph(const ResolutionGraph& g) {
  Json vertices = Json::array();
  for (std::size_t i = 0; i < g.vertex_count(); ++i) {
    const char* cls = nullptr;
    switch (g.classify(i)) {
      case VertexClass::node: cls = "node"; break;
      case VertexClass::end: cls = "end"; break;
      case VertexClass::string_interior: cls = "string-interior"; break;
      case VertexClass::isolated: cls = "isolated"; break;
    }
    vertices.push_back({{"id", g.vertex(i).id},
                        {"weight", int_string(g.vertex(i).weight)},
                        {"valence", g.valence(i)},
                        {"class", cls}});
  }
  std::vector<std::pair<std::string, std::string>> edge_ids;
  for (const auto& [x, y] : g.edges()) {
    std::string a = g.vertex(x).id, b = g.vertex(y).id;
    if (b < a) std::swap(a, b);
    edge_ids.emplace_back(std::move(a), std::move(b));
  }
  std::sort(edge_ids.begin(), edge_ids.end());
  Json edges = Json::array();
  for (const auto& [a, b] : edge_ids) edges.push_back({a, b});
  return Json{{"vertex_count", g.vertex_count()},
              {"vertices", std::move(vertices)},
              {"edges", std::move(edges)}};
}

inline Json json_validation(const ValidationReport& v) {
  return Json{{"connected", v.connected},
              {"tree", v.tree},
              {"negative_definite", v.negative_definite},
              {"valid", v.ok()}};
}

inline Json json_phases(const std::vector<Rat>& phases) {
  Json a = Json::array();
  for (const Rat& q : phases) a.push_back(rat_string(q));
  return a;
}

inline Json json_ints(const std::vector<Int>& values) {
  Json a = Json::array();
  for (const Int& v : values) a.push_back(int_string(v));
  return a;
}

inline Json json_group(const PipelineReport& r) {
  if (r.generators.empty()) return nullptr;
  Json ends = Json::array();
  for (std::size_t i : r.graph.end_indices())
    ends.push_back(r.graph.vertex(i).id);
  Json gens = Json::array();
  for (const auto& p : r.generators) gens.push_back(json_phases(p.phases));
  Json out{{"ends", std::move(ends)},
           {"generators", std::move(gens)},
           {"structure", json_ints(r.group_structure)},
           {"enumerated", r.action.has_value()}};
  if (r.action) {
    out["order"] = int_string(r.action->order);
    out["free_codim1"] = r.freeness->free;
    if (!r.freeness->free)
      out["freeness_offender"] = json_phases(r.freeness->offender->phases);
  }
  return out;
}

inline Json json_diagram(const SpliceDiagram& d) {
  Json nodes = Json::array(), ends = Json::array(), edges = Json::array();
  for (std::size_t v : d.nodes()) nodes.push_back(d.vertex(v).id);
  for (std::size_t w : d.ends()) ends.push_back(d.vertex(w).id);
  for (const auto& e : d.edges()) {
    Json path = Json::array();
    for (std::size_t gi : e.gamma_path)
      path.push_back(d.graph().vertex(gi).id);
    edges.push_back(
        {{"a", d.vertex(e.a).id},
         {"b", d.vertex(e.b).id},
         {"weight_a", e.weight_a ? Json(int_string(*e.weight_a)) : Json()},
         {"weight_b", e.weight_b ? Json(int_string(*e.weight_b)) : Json()},
         {"path", std::move(path)}});
  }
  return Json{{"nodes", std::move(nodes)},
              {"ends", std::move(ends)},
              {"edges", std::move(edges)},
              {"text", serialize_diagram(d)}};
}

inline Json json_linking(const SpliceDiagram& d, const LinkingTable& lt) {
  Json nodes = Json::array();
  for (std::size_t v : d.nodes()) {
    Json rows = Json::array();
    for (std::size_t w : d.ends())
      rows.push_back({{"end", d.vertex(w).id},
                      {"ell", int_string(lt.ell_at(v, w))},
                      {"ell_prime", int_string(lt.ell_prime_at(v, w))}});
    nodes.push_back({{"node", d.vertex(v).id},
                     {"d_v", int_string(lt.node_product(v))},
                     {"ends", std::move(rows)}});
  }
  return Json{{"nodes", std::move(nodes)}};
}

inline Json json_edge_ref(const SpliceDiagram& d, std::size_t e) {
  return Json{d.vertex(d.edge(e).a).id, d.vertex(d.edge(e).b).id};
}

inline Json json_semigroup(const SpliceDiagram& d,
                           const SemigroupVerdict& verdict) {
  Json pairs = Json::array();
  for (const auto& p : verdict.pairs) {
    Json ends = Json::array();
    for (std::size_t w : p.ends) ends.push_back(d.vertex(w).id);
    Json row{{"node", d.vertex(p.node).id},
             {"edge", json_edge_ref(d, p.edge)},
             {"ends", std::move(ends)},
             {"target", int_string(p.target_prime)},
             {"generators", json_ints(p.gens_prime)},
             {"member", p.member_prime},
             {"full_target", int_string(p.target_full)},
             {"full_generators", json_ints(p.gens_full)},
             {"full_member", p.member_full},
             {"pass", p.pass()}};
    if (p.member_prime) row["witness"] = json_ints(p.witness_prime);
    if (p.member_full) row["full_witness"] = json_ints(p.witness_full);
    pairs.push_back(std::move(row));
  }
  return Json{{"pass", verdict.pass}, {"pairs", std::move(pairs)}};
}

inline Json json_monomial(const Monomial& m) {
  return Json{{"monomial", monomial_string(m)},
              {"exponents", json_ints(m.exponents)}};
}

inline Json json_congruence(const SpliceDiagram& d,
                            const CongruenceResult& r) {
  Json out{{"semigroup_ok", r.semigroup_ok},
           {"satisfied", r.satisfied},
           {"exhaustive", r.exhaustive}};
  if (r.empty_pair)
    out["empty_pair"] = Json{{"node", d.vertex(r.empty_pair->first).id},
                             {"edge", json_edge_ref(d, r.empty_pair->second)}};
  Json sizes = Json::array();
  for (const auto& [node, edge, count, truncated] : r.list_sizes)
    sizes.push_back({{"node", d.vertex(node).id},
                     {"edge", json_edge_ref(d, edge)},
                     {"count", count},
                     {"truncated", truncated}});
  out["admissible_counts"] = std::move(sizes);
  if (r.satisfied) {
    Json assignment = Json::array();
    for (const auto& na : r.assignment) {
      Json choices = Json::array();
      for (const auto& ec : na.choices) {
        Json c = json_monomial(ec.monomial);
        c["edge"] = json_edge_ref(d, ec.edge);
        c["position"] = ec.position;
        choices.push_back(std::move(c));
      }
      assignment.push_back({{"node", d.vertex(na.node).id},
                            {"character", json_phases(na.character)},
                            {"choices", std::move(choices)}});
    }
    out["assignment"] = std::move(assignment);
  } else {
    Json failing = Json::array();
    for (std::size_t v : r.failing_nodes) failing.push_back(d.vertex(v).id);
    out["failing_nodes"] = std::move(failing);
  }
  return out;
}

inline Json json_equations(const EquationSystem& sys) {
  const SpliceDiagram& d = sys.diagram;
  Json variables = Json::array();
  const std::vector<std::string> names = variable_names(d);
  for (std::size_t k = 0; k < d.ends().size(); ++k)
    variables.push_back(
        {{"name", names[k]}, {"end", d.vertex(d.ends()[k]).id}});
  Json items = Json::array();
  for (const auto& eq : sys.equations) {
    Json terms = Json::array();
    for (const auto& [c, m] : eq.terms) {
      Json t = json_monomial(m);
      t["coefficient"] = rat_string(c);
      terms.push_back(std::move(t));
    }
    items.push_back({{"node", d.vertex(eq.node).id},
                     {"text", equation_string(eq)},
                     {"terms", std::move(terms)}});
  }
  return Json{{"count", sys.equations.size()},
              {"variables", std::move(variables)},
              {"genericity_certified", sys.genericity_certified},
              {"items", std::move(items)}};
}

inline Json json_brieskorn(const BrieskornData& b) {
  return Json{{"exponents", json_ints(b.exponents)},
              {"classical", b.classical}};
}

inline Json json_report(const PipelineReport& r) {
  Json out{{"schema", 1},
           {"graph", json_graph(r.graph)},
           {"validation", json_validation(r.validation)}};
  out["determinant"] = r.det ? Json(int_string(*r.det)) : Json();
  out["discriminant_invariants"] = json_ints(r.invariants);
  out["notes"] = r.notes;
  out["group"] = json_group(r);
  out["splice"] = r.diagram ? json_diagram(*r.diagram) : Json();
  out["linking"] =
      r.diagram ? json_linking(*r.diagram, *r.linking) : Json();
  out["semigroup"] =
      r.semigroup ? json_semigroup(*r.diagram, *r.semigroup) : Json();
  out["congruence"] =
      r.congruence ? json_congruence(*r.diagram, *r.congruence) : Json();
  out["equations"] = r.equations ? json_equations(*r.equations) : Json();
  out["brieskorn"] = r.brieskorn ? json_brieskorn(*r.brieskorn) : Json();
  return out;
}

inline Json json_scan(const ScanSummary& s) {
  Json classes{{"invalid", s.invalid},
               {"no-nodes", s.no_nodes},
               {"semigroup-fail", s.semigroup_fail},
               {"congruence-fail", s.congruence_fail},
               {"all-pass", s.all_pass}};
  Json exemplars;
  for (const auto& [cls, list] : s.exemplars) exemplars[scan_class_name(cls)] = list;
  return Json{{"schema", 1},
              {"max_vertices", s.max_vertices},
              {"weight_min", int_string(s.weight_min)},
              {"total", s.total},
              {"classes", std::move(classes)},
              {"exhaustive", s.all_exhaustive},
              {"exemplars", std::move(exemplars)}};
}

// ---------------------------------------------------------------------------
// Text rendering

inline std::string text_report(const PipelineReport& r) {
  std::string out;
  out += "graph: " + std::to_string(r.graph.vertex_count()) + " vertices, " +
         std::to_string(r.graph.edges().size()) + " edges\n";
  out += r.validation.summary() + "\n";
  if (!r.valid) return out;
  out += "determinant: " + int_string(*r.det) + "\n";
  out += "discriminant invariants:";
  if (r.invariants.empty()) out += " (trivial group)";
  for (const Int& f : r.invariants) out += " " + int_string(f);
  out += "\n";
  for (const auto& n : r.notes) out += "note: " + n + "\n";

  if (!r.generators.empty()) {
    out += "group generators (phases per end):\n";
    for (const auto& p : r.generators) {
      out += " ";
      for (const Rat& q : p.phases) out += " " + rat_string(q);
      out += "\n";
    }
    if (r.action) {
      out += "group order: " + int_string(r.action->order) + "\n";
      out += std::string("free in codimension 1: ") +
             (r.freeness->free ? "yes" : "NO") + "\n";
    }
  }
  if (r.no_nodes) return out;

  const SpliceDiagram& d = *r.diagram;
  out += "splice diagram:\n" + serialize_diagram(d);
  for (std::size_t v : d.nodes()) {
    out += "d_" + d.vertex(v).id + " = " +
           int_string(r.linking->node_product(v)) + "\n";
  }
  out += std::string("semigroup condition: ") +
         (r.semigroup->pass ? "pass" : "FAIL") + "\n";
  for (const auto& p : r.semigroup->pairs) {
    if (p.pass()) continue;
    out += "  fails at node " + d.vertex(p.node).id + ", edge " +
           d.vertex(d.edge(p.edge).a).id + "--" +
           d.vertex(d.edge(p.edge).b).id + ": " + int_string(p.target_prime) +
           " not reachable from";
    for (const Int& g : p.gens_prime) out += " " + int_string(g);
    out += "\n";
  }
  const CongruenceResult& c = *r.congruence;
  out += std::string("congruence condition: ") +
         (c.satisfied ? "pass" : "FAIL") +
         (c.exhaustive ? "" : " (search truncated; verdict not certified)") +
         "\n";
  if (c.satisfied) {
    for (const auto& na : c.assignment) {
      out += "  node " + d.vertex(na.node).id + ":";
      for (const auto& ec : na.choices)
        out += " " + monomial_string(ec.monomial);
      out += "\n";
    }
  } else if (!c.semigroup_ok) {
    out += "  admissible set empty at node " +
           d.vertex(c.empty_pair->first).id + ", edge " +
           d.vertex(d.edge(c.empty_pair->second).a).id + "--" +
           d.vertex(d.edge(c.empty_pair->second).b).id + "\n";
  } else {
    out += "  no matching choice at node(s):";
    for (std::size_t v : c.failing_nodes) out += " " + d.vertex(v).id;
    out += "\n";
  }
  if (r.equations) {
    out += "equations (" + std::to_string(r.equations->equations.size()) +
           "):\n";
    for (const auto& eq : r.equations->equations)
      out += "  " + equation_string(eq) + "\n";
  }
  if (r.brieskorn) {
    out += "one-node normal form exponents:";
    for (const Int& p : r.brieskorn->exponents) out += " " + int_string(p);
    if (!r.brieskorn->classical) out += " (some exponent < 2)";
    out += "\n";
  }
  return out;
}

inline std::string text_scan(const ScanSummary& s) {
  std::string out;
  out += "scanned " + std::to_string(s.total) + " weighted trees (<= " +
         std::to_string(s.max_vertices) + " vertices, weights >= " +
         int_string(s.weight_min) + ")\n";
  out += "  invalid:          " + std::to_string(s.invalid) + "\n";
  out += "  no-nodes:         " + std::to_string(s.no_nodes) + "\n";
  out += "  semigroup-fail:   " + std::to_string(s.semigroup_fail) + "\n";
  out += "  congruence-fail:  " + std::to_string(s.congruence_fail) + "\n";
  out += "  all-pass:         " + std::to_string(s.all_pass) + "\n";
  if (!s.all_exhaustive)
    out += "  (some verdicts relied on truncated enumerations)\n";
  for (const auto& [cls, list] : s.exemplars) {
    out += std::string("exemplar ") + scan_class_name(cls) + ":\n";
    for (const auto& text : list) {
      std::istringstream in(text);
      std::string line;
      while (std::getline(in, line)) out += "    " + line + "\n";
      out += "    --\n";
    }
  }
  return out;
}

}  // namespace splice

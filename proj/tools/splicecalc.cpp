// Command-line front end: weighted resolution trees in, per-stage verdicts
// out. Subcommands cover each stage (validate, splice, semigroup, monomials,
// group, congruence, equations), the full report, and a small-graph scanner.
//
// Exit codes: 0 completed (verdicts are data), 1 usage error, 2 parse or
// validation error, 3 resource guard tripped, 4 condition failed and
// --strict was given.

#include <splice/splice.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

namespace {

using namespace splice;

struct Opts {
  std::string file;
  bool json = false;
  bool strict = false;
  std::size_t cap = 10000;
  long long degree_bound = -1;
  std::size_t max_vertices = 0;
  long long weight_min = -2;
};

ResolutionGraph load_graph(const std::string& path) {
  if (path == "-") return parse_graph(std::cin);
  std::ifstream in(path);
  if (!in) throw parse_error(0, "cannot open '" + path + "'");
  return parse_graph(in);
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

// Shared first stage for the diagram-level commands. Returns false when the
// graph has no nodes (degenerate case, already reported, exit 0).
bool open_diagram(const Opts& o, ResolutionGraph& g,
                  std::optional<SpliceDiagram>& d,
                  std::optional<LinkingTable>& lt) {
  g = load_graph(o.file);
  require_valid(g);
  if (!has_nodes(g)) {
    if (o.json)
      emit(Json{{"schema", 1},
                {"graph", json_graph(g)},
                {"notes",
                 Json::array(
                     {"no nodes: splice system is empty (cyclic quotient "
                      "case)"})},
                {"splice", nullptr}});
    else
      std::cout << "no nodes: splice system is empty (cyclic quotient case)\n";
    return false;
  }
  d = splice_from_resolution(g);
  lt = linking_table(*d);
  return true;
}

int cmd_validate(const Opts& o) {
  const ResolutionGraph g = load_graph(o.file);
  const ValidationReport v = validate(g);
  if (o.json)
    emit(Json{{"schema", 1},
              {"graph", json_graph(g)},
              {"validation", json_validation(v)}});
  else
    std::cout << v.summary() << "\n";
  return v.ok() ? 0 : 2;
}

int cmd_splice(const Opts& o) {
  ResolutionGraph g;
  std::optional<SpliceDiagram> d;
  std::optional<LinkingTable> lt;
  if (!open_diagram(o, g, d, lt)) return 0;
  if (o.json) {
    emit(Json{{"schema", 1},
              {"splice", json_diagram(*d)},
              {"linking", json_linking(*d, *lt)}});
    return 0;
  }
  std::cout << serialize_diagram(*d);
  for (std::size_t v : d->nodes()) {
    std::cout << "node " << d->vertex(v).id
              << ": d_v = " << int_string(lt->node_product(v)) << "\n";
    for (std::size_t w : d->ends())
      std::cout << "  to end " << d->vertex(w).id
                << ": ell = " << int_string(lt->ell_at(v, w))
                << ", ell' = " << int_string(lt->ell_prime_at(v, w)) << "\n";
  }
  return 0;
}

int cmd_semigroup(const Opts& o) {
  ResolutionGraph g;
  std::optional<SpliceDiagram> d;
  std::optional<LinkingTable> lt;
  if (!open_diagram(o, g, d, lt)) return 0;
  const SemigroupVerdict verdict = check_semigroup_condition(*d, *lt);
  if (o.json) {
    emit(Json{{"schema", 1}, {"semigroup", json_semigroup(*d, verdict)}});
  } else {
    for (const auto& p : verdict.pairs) {
      std::cout << "node " << d->vertex(p.node).id << ", edge "
                << d->vertex(d->edge(p.edge).a).id << "--"
                << d->vertex(d->edge(p.edge).b).id << ": "
                << int_string(p.target_prime) << " from";
      for (const Int& gen : p.gens_prime) std::cout << " " << int_string(gen);
      std::cout << (p.pass() ? "  [ok]" : "  [FAIL]") << "\n";
    }
    std::cout << "semigroup condition: " << (verdict.pass ? "pass" : "FAIL")
              << "\n";
  }
  return (!verdict.pass && o.strict) ? 4 : 0;
}

int cmd_monomials(const Opts& o) {
  ResolutionGraph g;
  std::optional<SpliceDiagram> d;
  std::optional<LinkingTable> lt;
  if (!open_diagram(o, g, d, lt)) return 0;
  Json pairs = Json::array();
  for (std::size_t v : d->nodes()) {
    for (std::size_t e : d->incident_edges(v)) {
      const MonomialList list = admissible_monomials(*d, *lt, v, e, o.cap);
      if (o.json) {
        Json monos = Json::array();
        for (const auto& m : list.monomials) monos.push_back(json_monomial(m));
        pairs.push_back({{"node", d->vertex(v).id},
                         {"edge", json_edge_ref(*d, e)},
                         {"count", list.monomials.size()},
                         {"truncated", list.truncated},
                         {"monomials", std::move(monos)}});
      } else {
        std::cout << "node " << d->vertex(v).id << ", edge "
                  << d->vertex(d->edge(e).a).id << "--"
                  << d->vertex(d->edge(e).b).id << ": "
                  << list.monomials.size() << " monomial"
                  << (list.monomials.size() == 1 ? "" : "s")
                  << (list.truncated ? " (truncated)" : "") << "\n";
        for (const auto& m : list.monomials)
          std::cout << "  " << monomial_string(m) << "\n";
      }
    }
  }
  if (o.json) emit(Json{{"schema", 1}, {"monomials", std::move(pairs)}});
  return 0;
}

int cmd_group(const Opts& o) {
  PipelineOptions popts;
  popts.monomial_cap = o.cap;
  const ResolutionGraph g = load_graph(o.file);
  require_valid(g);
  PipelineReport r;
  r.graph = g;
  r.det = graph_determinant(g);
  r.invariants = discriminant_invariants(g);
  r.generators = action_generators(g);
  if (!r.generators.empty()) {
    r.group_structure = abelian_invariants(r.generators);
    if (*r.det <= popts.group_order_guard) {
      r.action = generate_group(r.generators, *r.det);
      r.freeness = check_free_codim1(*r.action);
    }
  }
  if (o.json) {
    emit(Json{{"schema", 1},
              {"determinant", int_string(*r.det)},
              {"discriminant_invariants", json_ints(r.invariants)},
              {"group", json_group(r)}});
    return 0;
  }
  std::cout << "determinant: " << int_string(*r.det) << "\n";
  if (r.generators.empty()) {
    std::cout << "no ends: the diagonal action has no coordinates\n";
    return 0;
  }
  std::cout << "generators (phases per end):\n";
  for (const auto& p : r.generators) {
    std::cout << " ";
    for (const Rat& q : p.phases) std::cout << " " << rat_string(q);
    std::cout << "\n";
  }
  std::cout << "structure:";
  if (r.group_structure.empty()) std::cout << " trivial";
  for (const Int& f : r.group_structure) std::cout << " " << int_string(f);
  std::cout << "\n";
  if (r.action) {
    std::cout << "order: " << int_string(r.action->order) << "\n";
    std::cout << "free in codimension 1: " << (r.freeness->free ? "yes" : "NO")
              << "\n";
  } else {
    std::cout << "element enumeration skipped (order above guard)\n";
  }
  return 0;
}

int cmd_congruence(const Opts& o) {
  ResolutionGraph g;
  std::optional<SpliceDiagram> d;
  std::optional<LinkingTable> lt;
  if (!open_diagram(o, g, d, lt)) return 0;
  const std::vector<PhaseVector> gens = action_generators(g);
  const CongruenceResult r = search_congruence(*d, *lt, gens, o.cap);
  if (o.json) {
    emit(Json{{"schema", 1}, {"congruence", json_congruence(*d, r)}});
  } else {
    if (r.satisfied) {
      std::cout << "congruence condition: pass\n";
      for (const auto& na : r.assignment) {
        std::cout << "node " << d->vertex(na.node).id << " (character";
        for (const Rat& q : na.character) std::cout << " " << rat_string(q);
        std::cout << "):";
        for (const auto& ec : na.choices)
          std::cout << " " << monomial_string(ec.monomial);
        std::cout << "\n";
      }
    } else if (!r.semigroup_ok) {
      std::cout << "congruence condition: FAIL (no admissible monomials at "
                   "node "
                << d->vertex(r.empty_pair->first).id << ", edge "
                << d->vertex(d->edge(r.empty_pair->second).a).id << "--"
                << d->vertex(d->edge(r.empty_pair->second).b).id << ")\n";
    } else {
      std::cout << "congruence condition: FAIL"
                << (r.exhaustive ? " (certified)" : " (search truncated)")
                << "\n";
      for (std::size_t v : r.failing_nodes)
        std::cout << "  no matching choice at node " << d->vertex(v).id
                  << "\n";
    }
  }
  return (!r.satisfied && o.strict) ? 4 : 0;
}

int cmd_equations(const Opts& o) {
  ResolutionGraph g;
  std::optional<SpliceDiagram> d;
  std::optional<LinkingTable> lt;
  if (!open_diagram(o, g, d, lt)) return 0;
  const std::vector<PhaseVector> gens = action_generators(g);
  const CongruenceResult r = search_congruence(*d, *lt, gens, o.cap);

  Json out{{"schema", 1}};
  std::optional<EquationSystem> sys;
  if (r.satisfied) {
    std::map<std::size_t, RatMatrix> coeffs;
    for (std::size_t v : d->nodes()) {
      const std::size_t delta = d->incident_edges(v).size();
      coeffs.emplace(v, generic_coefficients(delta - 2, delta));
    }
    sys = build_equation_system(*d, *lt, assignment_choice_map(r), coeffs);
  }

  if (!o.json) {
    if (sys) {
      for (const auto& eq : sys->equations)
        std::cout << equation_string(eq) << "\n";
    } else if (!r.semigroup_ok) {
      std::cout << "no equations: semigroup condition fails\n";
    } else {
      std::cout << "no equations: congruence condition fails\n";
    }
  } else {
    out["equations"] = sys ? json_equations(*sys) : Json();
    if (!sys)
      out["reason"] = r.semigroup_ok ? "congruence condition fails"
                                     : "semigroup condition fails";
  }

  if (d->nodes().size() == 1) {
    const BrieskornData b = brieskorn_form(*d);
    if (o.json) {
      out["brieskorn"] = json_brieskorn(b);
    } else {
      std::cout << "one-node normal form exponents:";
      for (const Int& p : b.exponents) std::cout << " " << int_string(p);
      if (!b.classical) std::cout << " (some exponent < 2)";
      std::cout << "\n";
    }
  }

  if (o.degree_bound >= 0 && sys) {
    Json deform = Json::array();
    for (const auto& na : r.assignment) {
      const std::vector<Monomial> monos = deformation_monomials(
          *d, *lt, gens, na.character, Int(o.degree_bound));
      if (o.json) {
        Json list = Json::array();
        for (const auto& m : monos) list.push_back(json_monomial(m));
        deform.push_back({{"node", d->vertex(na.node).id},
                          {"character", json_phases(na.character)},
                          {"monomials", std::move(list)}});
      } else {
        std::cout << "deformation monomials (node " << d->vertex(na.node).id
                  << ", degree <= " << o.degree_bound << "):";
        for (std::size_t i = 0; i < monos.size(); ++i)
          std::cout << (i ? ", " : " ") << monomial_string(monos[i]);
        if (monos.empty()) std::cout << " none";
        std::cout << "\n";
      }
    }
    if (o.json) out["deformations"] = std::move(deform);
  }
  if (o.json) emit(out);
  return (!r.satisfied && o.strict) ? 4 : 0;
}

int cmd_report(const Opts& o) {
  PipelineOptions popts;
  popts.monomial_cap = o.cap;
  const ResolutionGraph g = load_graph(o.file);
  const PipelineReport r = run_pipeline(g, popts);
  if (o.json)
    emit(json_report(r));
  else
    std::cout << text_report(r);
  if (!r.valid) return 2;
  const bool conditions_ok =
      r.no_nodes || (r.semigroup->pass && r.congruence->satisfied);
  return (!conditions_ok && o.strict) ? 4 : 0;
}

int cmd_scan(const Opts& o) {
  const ScanSummary s = scan(o.max_vertices, Int(o.weight_min), o.cap);
  if (o.json)
    emit(json_scan(s));
  else
    std::cout << text_scan(s);
  const bool conditions_ok = s.semigroup_fail == 0 && s.congruence_fail == 0;
  return (!conditions_ok && o.strict) ? 4 : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"splice diagram calculus for weighted resolution trees"};
  app.require_subcommand(1);
  Opts o;

  auto add_common = [&](CLI::App* sub, bool with_cap) {
    sub->add_option("file", o.file,
                    "graph file in splicegraph format ('-' for stdin)")
        ->required();
    sub->add_flag("--json", o.json, "machine-readable JSON on stdout");
    sub->add_flag("--strict", o.strict,
                  "exit 4 when a checked condition fails");
    if (with_cap)
      sub->add_option("--cap", o.cap,
                      "monomial enumeration cap per (node, edge)");
  };

  auto* validate_cmd = app.add_subcommand(
      "validate", "check tree shape and negative definiteness");
  add_common(validate_cmd, false);
  auto* splice_cmd = app.add_subcommand(
      "splice", "collapse to the splice diagram and print linking data");
  add_common(splice_cmd, false);
  auto* semigroup_cmd = app.add_subcommand(
      "semigroup", "check the semigroup condition at every node and edge");
  add_common(semigroup_cmd, true);
  auto* monomials_cmd = app.add_subcommand(
      "monomials", "enumerate admissible monomials per node and edge");
  add_common(monomials_cmd, true);
  auto* group_cmd = app.add_subcommand(
      "group", "discriminant group generators, order, structure, freeness");
  add_common(group_cmd, false);
  auto* congruence_cmd = app.add_subcommand(
      "congruence", "search for matching-character monomial choices");
  add_common(congruence_cmd, true);
  auto* equations_cmd = app.add_subcommand(
      "equations", "build the equation system from a congruence witness");
  add_common(equations_cmd, true);
  equations_cmd->add_option(
      "--degree-bound", o.degree_bound,
      "also list deformation monomials up to this total degree");
  auto* report_cmd =
      app.add_subcommand("report", "full pipeline report for one graph");
  add_common(report_cmd, true);

  auto* scan_cmd = app.add_subcommand(
      "scan", "enumerate small weighted trees and tally pipeline verdicts");
  scan_cmd->add_option("--max-vertices", o.max_vertices, "largest tree size")
      ->required();
  scan_cmd->add_option("--weight-min", o.weight_min,
                       "most negative vertex weight")
      ->required();
  scan_cmd->add_option("--cap", o.cap, "monomial enumeration cap");
  scan_cmd->add_flag("--json", o.json, "machine-readable JSON on stdout");
  scan_cmd->add_flag("--strict", o.strict,
                     "exit 4 when any scanned graph fails a condition");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }

  try {
    if (*validate_cmd) return cmd_validate(o);
    if (*splice_cmd) return cmd_splice(o);
    if (*semigroup_cmd) return cmd_semigroup(o);
    if (*monomials_cmd) return cmd_monomials(o);
    if (*group_cmd) return cmd_group(o);
    if (*congruence_cmd) return cmd_congruence(o);
    if (*equations_cmd) return cmd_equations(o);
    if (*report_cmd) return cmd_report(o);
    if (*scan_cmd) return cmd_scan(o);
  } catch (const splice::parse_error& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 2;
  } catch (const splice::validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return 2;
  } catch (const splice::resource_error& e) {
    std::cerr << "resource limit: " << e.what() << "\n";
    return 3;
  } catch (const splice::argument_error& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 1;
  } catch (const splice::error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

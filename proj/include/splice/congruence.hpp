#pragma once

// The diagonal group action must carry each equation to a multiple of
// itself, i.e. every term of an equation must pick up the same phase. This
// file checks that for built systems and, independently, searches for a
// per-node choice of one admissible monomial per edge with matching phases.
// The search is per node: different nodes may use different characters.

#include "splice/discriminant.hpp"
#include "splice/equations.hpp"
#include "splice/exact.hpp"
#include "splice/semigroup.hpp"
#include "splice/splice_diagram.hpp"

#include <map>
#include <optional>
#include <utility>
#include <vector>

namespace splice {

struct SemiInvarianceItem {
  bool pass = true;
  // When failing: the element index and the two term indices whose phases
  // differ under it.
  std::optional<std::size_t> element;
  std::optional<std::pair<std::size_t, std::size_t>> terms;
};

struct SemiInvarianceReport {
  std::vector<SemiInvarianceItem> items;  // one per equation, system order
  bool all_pass = true;
};

inline SemiInvarianceReport equation_semi_invariance(
    const EquationSystem& sys, const DiscriminantAction& a) {
  const std::size_t n = sys.diagram.ends().size();
  for (const auto& el : a.elements)
    if (el.phases.size() != n)
      throw dimension_error(
          "group elements and equation system use different end sets");
  SemiInvarianceReport report;
  for (const auto& eq : sys.equations) {
    SemiInvarianceItem item;
    for (std::size_t g = 0; g < a.elements.size() && item.pass; ++g) {
      const Rat first = phase_of(a.elements[g], eq.terms[0].second.exponents);
      for (std::size_t t = 1; t < eq.terms.size(); ++t) {
        if (phase_of(a.elements[g], eq.terms[t].second.exponents) != first) {
          item.pass = false;
          item.element = g;
          item.terms = std::make_pair(std::size_t{0}, t);
          break;
        }
      }
    }
    report.all_pass = report.all_pass && item.pass;
    report.items.push_back(item);
  }
  return report;
}

// ---------------------------------------------------------------------------
// Search for matching-character choices

struct EdgeChoice {
  std::size_t edge;
  Monomial monomial;
  std::size_t position;  // index within that edge's admissible enumeration
};

struct NodeAssignment {
  std::size_t node;
  std::vector<EdgeChoice> choices;  // edges ascending
  std::vector<Rat> character;       // shared phases on the generators
};

struct CongruenceResult {
  // False when some (node, edge) has an empty admissible set, which is the
  // same thing as the semigroup condition failing there; that alone decides
  // the verdict.
  bool semigroup_ok = true;
  std::optional<std::pair<std::size_t, std::size_t>> empty_pair;

  bool satisfied = false;
  std::vector<NodeAssignment> assignment;   // complete when satisfied
  std::vector<std::size_t> failing_nodes;   // nodes with no matching choice

  // True when no enumeration was truncated, so a negative verdict is a
  // certificate rather than a search giving up.
  bool exhaustive = true;

  // Admissible-list sizes per (node, edge), for reporting.
  std::vector<std::tuple<std::size_t, std::size_t, std::size_t, bool>>
      list_sizes;  // (node, edge, count, truncated)
};

// Phases are compared on the generators only; equality there extends to the
// whole group since phases add along generator words.
inline CongruenceResult search_congruence(const SpliceDiagram& d,
                                          const LinkingTable& lt,
                                          const std::vector<PhaseVector>& gens,
                                          std::size_t cap = 10000) {
  CongruenceResult result;
  result.satisfied = true;
  for (std::size_t v : d.nodes()) {
    const auto& edges = d.incident_edges(v);
    std::vector<MonomialList> lists;
    for (std::size_t e : edges) {
      lists.push_back(admissible_monomials(d, lt, v, e, cap));
      result.exhaustive = result.exhaustive && !lists.back().truncated;
      result.list_sizes.emplace_back(v, e, lists.back().monomials.size(),
                                     lists.back().truncated);
      if (lists.back().monomials.empty()) {
        result.semigroup_ok = false;
        result.empty_pair = {v, e};
        result.satisfied = false;
        result.assignment.clear();
        return result;
      }
    }

    // First monomial per distinct phase tuple for every later edge.
    std::vector<std::map<std::vector<Rat>, std::size_t>> first_by_phase(
        edges.size());
    for (std::size_t i = 1; i < edges.size(); ++i)
      for (std::size_t j = 0; j < lists[i].monomials.size(); ++j) {
        const auto key = generator_phases(gens, lists[i].monomials[j].exponents);
        first_by_phase[i].emplace(key, j);  // keeps the earliest
      }

    bool found = false;
    for (std::size_t j0 = 0; j0 < lists[0].monomials.size() && !found; ++j0) {
      const auto key =
          generator_phases(gens, lists[0].monomials[j0].exponents);
      std::vector<std::size_t> picks{j0};
      bool complete = true;
      for (std::size_t i = 1; i < edges.size(); ++i) {
        const auto it = first_by_phase[i].find(key);
        if (it == first_by_phase[i].end()) {
          complete = false;
          break;
        }
        picks.push_back(it->second);
      }
      if (!complete) continue;
      NodeAssignment na;
      na.node = v;
      na.character = key;
      for (std::size_t i = 0; i < edges.size(); ++i)
        na.choices.push_back(
            EdgeChoice{edges[i], lists[i].monomials[picks[i]], picks[i]});
      result.assignment.push_back(std::move(na));
      found = true;
    }
    if (!found) {
      result.satisfied = false;
      result.failing_nodes.push_back(v);
    }
  }
  if (!result.satisfied) result.assignment.clear();
  return result;
}

inline CongruenceResult search_congruence(const SpliceDiagram& d,
                                          const LinkingTable& lt,
                                          const DiscriminantAction& a,
                                          std::size_t cap = 10000) {
  return search_congruence(d, lt, a.generators, cap);
}

// Convenience: the monomial choice map a successful search denotes, ready
// for the equation builder.
inline std::map<std::pair<std::size_t, std::size_t>, Monomial>
assignment_choice_map(const CongruenceResult& r) {
  if (!r.satisfied)
    throw argument_error("no assignment available to convert");
  std::map<std::pair<std::size_t, std::size_t>, Monomial> choice;
  for (const auto& na : r.assignment)
    for (const auto& ec : na.choices) choice[{na.node, ec.edge}] = ec.monomial;
  return choice;
}

}  // namespace splice

#pragma once

// The finite abelian group attached to a negative-definite tree acts
// diagonally on the end-variables. Elements are stored as vectors of
// rational phases mod 1 (phase q standing for the unit scalar exp(2*pi*i*q)),
// so the whole action lives in exact arithmetic. Generators come from the
// end-indexed rows of the inverse of the negated intersection matrix.

#include "splice/exact.hpp"
#include "splice/resolution_graph.hpp"

#include <algorithm>
#include <deque>
#include <optional>
#include <set>
#include <vector>

namespace splice {

struct PhaseVector {
  std::vector<Rat> phases;  // each in [0, 1)

  static PhaseVector zero(std::size_t n) {
    PhaseVector p;
    p.phases.assign(n, Rat(0));
    return p;
  }
  bool is_zero() const {
    return std::all_of(phases.begin(), phases.end(),
                       [](const Rat& q) { return q == 0; });
  }
  std::size_t nonzero_count() const {
    std::size_t c = 0;
    for (const Rat& q : phases) c += (q != 0);
    return c;
  }
  PhaseVector plus(const PhaseVector& o) const {
    if (phases.size() != o.phases.size())
      throw dimension_error("phase vectors have different lengths");
    PhaseVector r;
    r.phases.reserve(phases.size());
    for (std::size_t i = 0; i < phases.size(); ++i)
      r.phases.push_back(mod1(phases[i] + o.phases[i]));
    return r;
  }
  friend bool operator==(const PhaseVector& a, const PhaseVector& b) {
    return a.phases == b.phases;
  }
  friend bool operator<(const PhaseVector& a, const PhaseVector& b) {
    return a.phases < b.phases;
  }
};

// One generator per end w_j of the tree: its phases are the end-indexed
// entries of the row of inverse(-A) at w_j, reduced mod 1. A graph with no
// ends (a lone vertex) yields an empty list; callers flag that case.
inline std::vector<PhaseVector> action_generators(const ResolutionGraph& g) {
  require_valid(g);
  const std::vector<std::size_t> ends = g.end_indices();
  if (ends.empty()) return {};
  const RatMatrix inv = inverse(intersection_matrix(g).negated());
  std::vector<PhaseVector> gens;
  for (std::size_t j : ends) {
    PhaseVector p;
    for (std::size_t k : ends) p.phases.push_back(mod1(inv.at(j, k)));
    gens.push_back(std::move(p));
  }
  return gens;
}

struct DiscriminantAction {
  std::vector<PhaseVector> generators;
  std::vector<PhaseVector> elements;  // breadth-first order; [0] is identity
  Int order = 0;
};

// Closure of the generators under coordinatewise addition mod 1. The caller
// supplies the order it expects (the graph determinant); growing past it
// means a computation bug somewhere upstream, not a bigger group.
inline DiscriminantAction generate_group(std::vector<PhaseVector> gens,
                                         const Int& order_bound) {
  if (gens.empty()) throw argument_error("no generators supplied");
  const std::size_t n = gens[0].phases.size();
  for (const auto& p : gens)
    if (p.phases.size() != n)
      throw dimension_error("generators have mixed lengths");
  if (order_bound < 1) throw argument_error("order bound must be positive");

  DiscriminantAction a;
  a.generators = std::move(gens);
  std::set<PhaseVector> seen;
  std::deque<PhaseVector> queue;
  const PhaseVector id = PhaseVector::zero(n);
  seen.insert(id);
  queue.push_back(id);
  a.elements.push_back(id);
  while (!queue.empty()) {
    const PhaseVector cur = std::move(queue.front());
    queue.pop_front();
    for (const auto& gen : a.generators) {
      PhaseVector next = cur.plus(gen);
      if (seen.insert(next).second) {
        if (Int(a.elements.size()) >= order_bound)
          throw resource_error(
              "group closure exceeded the expected order " +
              int_string(order_bound) +
              "; the generating phases are inconsistent with the "
              "determinant, which indicates a computation bug");
        a.elements.push_back(next);
        queue.push_back(std::move(next));
      }
    }
  }
  a.order = Int(a.elements.size());
  return a;
}

struct FreenessReport {
  bool free = true;
  std::optional<PhaseVector> offender;
};

// Free in codimension one: no coordinate hyperplane is fixed pointwise by a
// non-identity element. An element fixing {z_k = 0} must act trivially on
// every coordinate except k, so offenders are exactly the non-identity
// elements with at most one nonzero phase.
inline FreenessReport check_free_codim1(const DiscriminantAction& a) {
  FreenessReport r;
  for (const auto& el : a.elements) {
    if (el.is_zero()) continue;
    if (el.nonzero_count() <= 1) {
      r.free = false;
      r.offender = el;
      return r;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Characters: the phase by which a group element scales a monomial.

struct Character {
  std::vector<Rat> values;  // aligned with DiscriminantAction::elements

  friend bool operator==(const Character& x, const Character& y) {
    return x.values == y.values;
  }
};

inline Rat phase_of(const PhaseVector& el, const std::vector<Int>& exponents) {
  if (el.phases.size() != exponents.size())
    throw dimension_error("exponent count does not match phase length");
  Rat s = 0;
  for (std::size_t k = 0; k < exponents.size(); ++k)
    s += Rat(exponents[k]) * el.phases[k];
  return mod1(s);
}

inline Character monomial_character(const DiscriminantAction& a,
                                    const std::vector<Int>& exponents) {
  Character c;
  c.values.reserve(a.elements.size());
  for (const auto& el : a.elements) c.values.push_back(phase_of(el, exponents));
  return c;
}

// Phases on the generators only. Two monomials agree on the whole group iff
// they agree on every generator (phases add along words), so comparisons can
// stay generator-sized even when the group is large.
inline std::vector<Rat> generator_phases(const std::vector<PhaseVector>& gens,
                                         const std::vector<Int>& exponents) {
  std::vector<Rat> out;
  out.reserve(gens.size());
  for (const auto& gen : gens) out.push_back(phase_of(gen, exponents));
  return out;
}

// ---------------------------------------------------------------------------
// Group structure straight from the generators, no element enumeration:
// scale all phases by their common denominator D, stack the integer rows on
// top of D times the identity, and read the subgroup's invariant factors off
// the Smith form. Serves as an independent cross-check of the enumeration.

inline std::vector<Int> abelian_invariants(
    const std::vector<PhaseVector>& gens) {
  if (gens.empty()) return {};
  const std::size_t n = gens[0].phases.size();
  Int d = 1;
  for (const auto& p : gens)
    for (const Rat& q : p.phases)
      d = boost::multiprecision::lcm(d, Int(boost::multiprecision::denominator(q)));
  IntMatrix m(gens.size() + n, n);
  for (std::size_t i = 0; i < gens.size(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const Rat scaled = gens[i].phases[j] * Rat(d);
      if (boost::multiprecision::denominator(scaled) != 1)
        throw internal_error("phase scaling failed to clear denominators");
      m.at(i, j) = Int(boost::multiprecision::numerator(scaled));
    }
  for (std::size_t j = 0; j < n; ++j) m.at(gens.size() + j, j) = d;

  const SmithDecomposition s = smith_normal_form(m);
  std::vector<Int> out;
  for (const Int& f : s.invariant_factors) {
    if (f == 0) throw internal_error("stacked phase lattice lost full rank");
    if (d % f != 0)
      throw internal_error("invariant factor does not divide the denominator");
    const Int quotient = d / f;
    if (quotient > 1) out.push_back(quotient);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Order of the group generated by the phases, via the same lattice route.
inline Int abelian_order(const std::vector<PhaseVector>& gens) {
  Int order = 1;
  for (const Int& f : abelian_invariants(gens)) order *= f;
  return order;
}

// ---------------------------------------------------------------------------
// Convenience: build the action for a graph and insist the order matches the
// determinant. A mismatch is reported as an internal fault: for genuine
// negative-definite trees the diagonal action is expected to be faithful, so
// disagreement means the computation (or that expectation) broke down.

inline DiscriminantAction discriminant_action(const ResolutionGraph& g) {
  const Int d = graph_determinant(g);
  std::vector<PhaseVector> gens = action_generators(g);
  if (gens.empty())
    throw argument_error(
        "graph has no ends; the diagonal action has no coordinates to act on");
  DiscriminantAction a = generate_group(std::move(gens), d);
  if (a.order != d)
    throw internal_error(
        "group order " + int_string(a.order) + " differs from determinant " +
        int_string(d) +
        "; the faithfulness expectation failed for this input and results "
        "cannot be trusted");
  return a;
}

}  // namespace splice

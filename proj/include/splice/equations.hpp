#pragma once

// Equation systems attached to a splice diagram: each node v of valence
// delta contributes delta-2 equations, every term a scalar multiple of an
// admissible monomial for one of v's edges, so all terms at v share the
// homogeneous weight d_v. One-node diagrams reduce to the classical
// sum-of-powers normal form. Coefficient genericity is certified by the
// maximal-minor criterion, and equisingular deformation candidates are
// enumerated under a caller-supplied degree bound.

#include "splice/discriminant.hpp"
#include "splice/exact.hpp"
#include "splice/semigroup.hpp"
#include "splice/splice_diagram.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace splice {

struct Equation {
  std::size_t node;  // diagram vertex index
  std::vector<std::pair<Rat, Monomial>> terms;
};

struct EquationSystem {
  SpliceDiagram diagram;
  std::vector<Equation> equations;  // grouped by node, nodes ascending
  bool genericity_certified = false;
};

inline std::string equation_string(const Equation& eq) {
  std::string out;
  for (const auto& [coeff, mono] : eq.terms) {
    if (!out.empty()) out += " + ";
    const std::string ms = monomial_string(mono);
    if (coeff == 1)
      out += ms;
    else if (ms == "1")
      out += rat_string(coeff);
    else
      out += rat_string(coeff) + " " + ms;
  }
  return out + " = 0";
}

// ---------------------------------------------------------------------------
// Genericity: every maximal (k x k) minor of the k x m coefficient matrix
// must be nonsingular.

struct HammReport {
  bool ok = true;
  // Column set (ascending) of the first singular maximal minor otherwise.
  std::vector<std::size_t> singular_columns;
};

inline HammReport hamm_check(const RatMatrix& m) {
  const std::size_t k = m.rows(), cols = m.cols();
  if (cols < k)
    throw dimension_error(
        "coefficient matrix needs at least as many columns as rows");
  std::vector<std::size_t> pick(k);
  for (std::size_t i = 0; i < k; ++i) pick[i] = i;
  HammReport report;
  while (true) {
    RatMatrix minor(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) minor.at(i, j) = m.at(i, pick[j]);
    if (determinant(minor) == 0) {
      report.ok = false;
      report.singular_columns = pick;
      return report;
    }
    // next k-combination of columns, lexicographic
    std::size_t i = k;
    while (i-- > 0) {
      if (pick[i] + (k - i) < cols) {
        ++pick[i];
        for (std::size_t j = i + 1; j < k; ++j) pick[j] = pick[j - 1] + 1;
        break;
      }
      if (i == 0) return report;
    }
  }
}

// Deterministic coefficients that always pass the minor criterion: the
// Vandermonde rows (j^i for j = 1..m), nonsingular because the nodes are
// distinct positive integers.
inline RatMatrix generic_coefficients(std::size_t k, std::size_t m) {
  if (k < 1 || m < k)
    throw dimension_error("coefficient shape must be k x m with m >= k");
  RatMatrix out(k, m);
  for (std::size_t j = 0; j < m; ++j) {
    Rat power = 1;
    for (std::size_t i = 0; i < k; ++i) {
      out.at(i, j) = power;
      power *= Rat(j + 1);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Weights of monomials at a node

// Sum of exponent * ell_vw over all ends (the v-weight of the monomial).
inline Int node_weight_of_monomial(const SpliceDiagram& d,
                                   const LinkingTable& lt, std::size_t v,
                                   const Monomial& m) {
  if (m.exponents.size() != d.ends().size())
    throw dimension_error("monomial length does not match the end count");
  Int s = 0;
  for (std::size_t k = 0; k < m.exponents.size(); ++k) {
    if (m.exponents[k] < 0) throw argument_error("negative exponent");
    s += m.exponents[k] * lt.ell_at(v, d.ends()[k]);
  }
  return s;
}

// ---------------------------------------------------------------------------
// System construction

// One chosen admissible monomial per (node, incident edge), one coefficient
// matrix of shape (delta_v - 2) x delta_v per node. Produces delta_v - 2
// equations per node; the total is always (number of ends) - 2.
inline EquationSystem build_equation_system(
    const SpliceDiagram& d, const LinkingTable& lt,
    const std::map<std::pair<std::size_t, std::size_t>, Monomial>& choice,
    const std::map<std::size_t, RatMatrix>& coefficients) {
  EquationSystem sys;
  sys.diagram = d;
  sys.genericity_certified = true;
  for (std::size_t v : d.nodes()) {
    const auto& edges = d.incident_edges(v);
    const std::size_t delta = edges.size();

    std::vector<Monomial> monos;
    for (std::size_t e : edges) {
      const auto it = choice.find({v, e});
      if (it == choice.end())
        throw argument_error("no monomial chosen for node '" +
                             d.vertex(v).id + "' on one of its edges");
      const Monomial& m = it->second;
      if (m.exponents.size() != d.ends().size())
        throw dimension_error("monomial length does not match the end count");
      const std::vector<std::size_t> beyond = ends_beyond(d, v, e);
      for (std::size_t k = 0; k < m.exponents.size(); ++k) {
        const std::size_t w = d.ends()[k];
        if (m.exponents[k] != 0 &&
            std::find(beyond.begin(), beyond.end(), w) == beyond.end())
          throw argument_error(
              "monomial " + monomial_string(m) + " for node '" +
              d.vertex(v).id +
              "' uses a variable on the wrong side of its edge");
      }
      const Int w = node_weight_of_monomial(d, lt, v, m);
      if (w != lt.node_product(v))
        throw argument_error("monomial " + monomial_string(m) +
                             " for node '" + d.vertex(v).id + "' has weight " +
                             int_string(w) + ", required " +
                             int_string(lt.node_product(v)));
      monos.push_back(m);
    }

    const auto cit = coefficients.find(v);
    if (cit == coefficients.end())
      throw argument_error("no coefficient matrix for node '" +
                           d.vertex(v).id + "'");
    const RatMatrix& c = cit->second;
    if (c.rows() != delta - 2 || c.cols() != delta)
      throw dimension_error("coefficient matrix for node '" + d.vertex(v).id +
                            "' must be " + std::to_string(delta - 2) + " x " +
                            std::to_string(delta));
    const HammReport h = hamm_check(c);
    if (!h.ok) {
      std::string cols;
      for (std::size_t j : h.singular_columns)
        cols += (cols.empty() ? "" : ", ") + std::to_string(j + 1);
      throw argument_error("coefficient matrix for node '" + d.vertex(v).id +
                           "' has a singular maximal minor at columns " +
                           cols);
    }

    for (std::size_t r = 0; r < delta - 2; ++r) {
      Equation eq;
      eq.node = v;
      for (std::size_t cth = 0; cth < delta; ++cth)
        eq.terms.emplace_back(c.at(r, cth), monos[cth]);
      sys.equations.push_back(std::move(eq));
    }
  }
  if (sys.equations.size() + 2 != d.ends().size())
    throw internal_error("equation count does not match end count minus two");
  return sys;
}

// ---------------------------------------------------------------------------
// One-node diagrams: the sum-of-powers normal form

struct BrieskornData {
  std::vector<Int> exponents;  // aligned with the end order z1..zn
  RatMatrix coefficients;      // (n-2) x n, passes the minor criterion
  bool classical = false;      // all exponents >= 2
};

inline BrieskornData brieskorn_form(const SpliceDiagram& d) {
  if (d.nodes().size() != 1)
    throw argument_error(
        "diagram has " + std::to_string(d.nodes().size()) +
        " nodes; the one-node normal form needs exactly one (use the full "
        "system builder instead)");
  const std::size_t v = d.nodes()[0];
  BrieskornData b;
  b.classical = true;
  for (std::size_t w : d.ends()) {
    const Int* weight = nullptr;
    for (std::size_t e : d.incident_edges(v))
      if (d.edge(e).other(v) == w) {
        weight = &d.weight_at(e, v);
        break;
      }
    if (!weight) throw internal_error("one-node diagram missing a leaf edge");
    b.exponents.push_back(*weight);
    if (*weight < 2) b.classical = false;
  }
  b.coefficients =
      generic_coefficients(d.ends().size() - 2, d.ends().size());
  return b;
}

// The equation system the one-node normal form denotes, built through the
// general path (each leaf edge's unique admissible monomial is z_w^{d_ve}).
inline EquationSystem brieskorn_system(const SpliceDiagram& d,
                                       const LinkingTable& lt) {
  const BrieskornData b = brieskorn_form(d);
  const std::size_t v = d.nodes()[0];
  std::map<std::pair<std::size_t, std::size_t>, Monomial> choice;
  for (std::size_t e : d.incident_edges(v)) {
    const std::size_t w = d.edge(e).other(v);
    const std::size_t k = static_cast<std::size_t>(
        std::find(d.ends().begin(), d.ends().end(), w) - d.ends().begin());
    Monomial m;
    m.exponents.assign(d.ends().size(), Int(0));
    m.exponents[k] = b.exponents[k];
    choice[{v, e}] = std::move(m);
  }
  return build_equation_system(d, lt, choice, {{v, b.coefficients}});
}

// ---------------------------------------------------------------------------
// Equisingular deformation candidates: all monomials of total degree at most
// the bound whose v-weight reaches d_v at EVERY node and whose phases on the
// group generators match the target. Ascending lexicographic order.

inline std::vector<Monomial> deformation_monomials(
    const SpliceDiagram& d, const LinkingTable& lt,
    const std::vector<PhaseVector>& gens,
    const std::vector<Rat>& target_generator_phases, Int degree_bound) {
  if (degree_bound < 0) throw argument_error("degree bound must be >= 0");
  if (gens.size() != target_generator_phases.size())
    throw dimension_error("target phases do not match the generator count");
  const std::size_t n = d.ends().size();

  std::vector<Monomial> out;
  Monomial m;
  m.exponents.assign(n, Int(0));
  std::size_t steps = 0;
  auto rec = [&](auto&& self, std::size_t k, Int remaining) -> void {
    if (++steps > kEnumerationStepGuard)
      throw resource_error(
          "deformation enumeration exceeded its step budget; lower the "
          "degree bound");
    if (k == n) {
      for (std::size_t v : d.nodes())
        if (node_weight_of_monomial(d, lt, v, m) < lt.node_product(v)) return;
      for (std::size_t j = 0; j < gens.size(); ++j)
        if (phase_of(gens[j], m.exponents) != target_generator_phases[j])
          return;
      out.push_back(m);
      return;
    }
    for (Int a = 0; a <= remaining; ++a) {
      m.exponents[k] = a;
      self(self, k + 1, remaining - a);
    }
    m.exponents[k] = 0;
  };
  rec(rec, 0, degree_bound);
  return out;
}

// Wrapper for callers holding a full action and an element-indexed
// character: the target phases on the generators are read off the character
// at the generators' positions in the element list.
inline std::vector<Monomial> deformation_monomials(
    const SpliceDiagram& d, const LinkingTable& lt,
    const DiscriminantAction& a, const Character& target, Int degree_bound) {
  if (target.values.size() != a.elements.size())
    throw dimension_error("character does not match the element list");
  std::vector<Rat> on_gens;
  for (const auto& gen : a.generators) {
    const auto it = std::find(a.elements.begin(), a.elements.end(), gen);
    if (it == a.elements.end())
      throw internal_error("generator missing from the element list");
    on_gens.push_back(
        target.values[static_cast<std::size_t>(it - a.elements.begin())]);
  }
  return deformation_monomials(d, lt, a.generators, on_gens, degree_bound);
}

}  // namespace splice

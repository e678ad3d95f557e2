#pragma once

// Numerical semigroup membership and the per-edge condition it supports:
// at every node v and incident edge e, the edge weight d_ve must be a
// nonnegative integer combination of the ell' weights toward e's side
// (equivalently, d_v a combination of the ell weights). Admissible
// monomials are the solutions of sum(alpha_w * ell_vw) = d_v with support
// beyond one edge; they feed the equation builder and the congruence search.

#include "splice/exact.hpp"
#include "splice/splice_diagram.hpp"

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

namespace splice {

// Dynamic programming works on a dense reachability table, so targets are
// capped; beyond this the decision is refused, never approximated.
inline constexpr std::size_t kSemigroupTargetCap = 8'000'000;

// Branch-and-prune enumeration budget (tree-node visits, not solutions).
inline constexpr std::size_t kEnumerationStepGuard = 20'000'000;

struct SemigroupResult {
  bool member = false;
  // Aligned with the caller's generator order; empty when not a member.
  std::vector<Int> multipliers;
};

// Decides target ∈ { sum(c_i * g_i) : c_i >= 0 }. The witness is canonical:
// multipliers are lexicographically minimal when generators are scanned in
// ascending (value, position) order, which pushes weight onto larger
// generators and keeps golden outputs stable.
inline SemigroupResult semigroup_member(const Int& target,
                                        const std::vector<Int>& generators) {
  if (generators.empty()) throw argument_error("generator list is empty");
  for (const Int& g : generators)
    if (g < 1) throw argument_error("generators must be positive");
  if (target < 0) throw argument_error("target must be nonnegative");

  const std::size_t k = generators.size();
  SemigroupResult r;
  if (target == 0) {
    r.member = true;
    r.multipliers.assign(k, Int(0));
    return r;
  }
  if (target > Int(kSemigroupTargetCap))
    throw resource_error("semigroup membership target " + int_string(target) +
                         " exceeds the dynamic-programming cap");
  const std::size_t t_max = target.convert_to<std::size_t>();

  std::vector<std::size_t> order(k);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return generators[a] != generators[b] ? generators[a] < generators[b]
                                          : a < b;
  });

  // reach[i][t]: t representable by generators order[i..k-1].
  std::vector<std::vector<bool>> reach(k + 1,
                                       std::vector<bool>(t_max + 1, false));
  reach[k][0] = true;
  for (std::size_t i = k; i-- > 0;) {
    const Int& g = generators[order[i]];
    if (g > Int(t_max)) {
      reach[i] = reach[i + 1];
      continue;
    }
    const std::size_t gs = g.convert_to<std::size_t>();
    for (std::size_t t = 0; t <= t_max; ++t)
      reach[i][t] = reach[i + 1][t] || (t >= gs && reach[i][t - gs]);
  }
  r.member = reach[0][t_max];
  if (!r.member) return r;

  r.multipliers.assign(k, Int(0));
  std::size_t t = t_max;
  for (std::size_t i = 0; i < k; ++i) {
    const Int& g = generators[order[i]];
    const std::size_t gs =
        g > Int(t_max) ? t_max + 1 : g.convert_to<std::size_t>();
    std::size_t mult = 0;
    while (!reach[i + 1][t]) {
      if (gs > t) throw internal_error("witness reconstruction lost the path");
      t -= gs;
      ++mult;
    }
    r.multipliers[order[i]] = Int(mult);
  }
  return r;
}

// ---------------------------------------------------------------------------
// The condition at every (node, edge) pair of a diagram, in both guises.

struct EdgePairVerdict {
  std::size_t node = 0;  // diagram vertex index
  std::size_t edge = 0;  // diagram edge index
  std::vector<std::size_t> ends;  // diagram ends beyond the edge, ascending

  Int target_prime;               // d_ve
  std::vector<Int> gens_prime;    // ell' values, aligned with `ends`
  bool member_prime = false;
  std::vector<Int> witness_prime;

  Int target_full;                // d_v
  std::vector<Int> gens_full;     // ell values, aligned with `ends`
  bool member_full = false;
  std::vector<Int> witness_full;

  bool pass() const { return member_prime && member_full; }
};

struct SemigroupVerdict {
  std::vector<EdgePairVerdict> pairs;  // ordered by (node, edge)
  bool pass = true;
};

inline SemigroupVerdict check_semigroup_condition(const SpliceDiagram& d,
                                                  const LinkingTable& lt) {
  SemigroupVerdict verdict;
  for (std::size_t v : d.nodes()) {
    for (std::size_t e : d.incident_edges(v)) {
      EdgePairVerdict p;
      p.node = v;
      p.edge = e;
      p.ends = ends_beyond(d, v, e);
      p.target_prime = d.weight_at(e, v);
      p.target_full = lt.node_product(v);
      for (std::size_t w : p.ends) {
        p.gens_prime.push_back(lt.ell_prime_at(v, w));
        p.gens_full.push_back(lt.ell_at(v, w));
      }
      const SemigroupResult a = semigroup_member(p.target_prime, p.gens_prime);
      const SemigroupResult b = semigroup_member(p.target_full, p.gens_full);
      p.member_prime = a.member;
      p.witness_prime = a.multipliers;
      p.member_full = b.member;
      p.witness_full = b.multipliers;
      verdict.pass = verdict.pass && p.pass();
      verdict.pairs.push_back(std::move(p));
    }
  }
  return verdict;
}

// ---------------------------------------------------------------------------
// Monomials on the end-variables

// Exponents aligned with diagram.ends(); that order also names the
// variables z1..zn.
struct Monomial {
  std::vector<Int> exponents;

  Int total_degree() const {
    Int s = 0;
    for (const Int& e : exponents) s += e;
    return s;
  }
  friend bool operator==(const Monomial& x, const Monomial& y) {
    return x.exponents == y.exponents;
  }
  friend bool operator<(const Monomial& x, const Monomial& y) {
    return std::lexicographical_compare(x.exponents.begin(), x.exponents.end(),
                                        y.exponents.begin(),
                                        y.exponents.end());
  }
};

using ExponentVector = Monomial;

inline std::vector<std::string> variable_names(const SpliceDiagram& d) {
  std::vector<std::string> names;
  for (std::size_t k = 0; k < d.ends().size(); ++k)
    names.push_back("z" + std::to_string(k + 1));
  return names;
}

inline std::string monomial_string(const Monomial& m) {
  std::string out;
  for (std::size_t k = 0; k < m.exponents.size(); ++k) {
    if (m.exponents[k] == 0) continue;
    if (!out.empty()) out += " ";
    out += "z" + std::to_string(k + 1);
    if (m.exponents[k] != 1) out += "^" + m.exponents[k].str();
  }
  return out.empty() ? "1" : out;
}

struct MonomialList {
  std::vector<Monomial> monomials;  // ascending lexicographic
  bool truncated = false;           // true iff the cap cut the list short
};

// All exponent vectors supported on the ends beyond edge e at node v with
// sum(alpha_w * ell_vw) = d_v, in ascending lexicographic order. An empty
// list is a legitimate outcome (the condition fails at (v, e)).
inline MonomialList admissible_monomials(const SpliceDiagram& d,
                                         const LinkingTable& lt, std::size_t v,
                                         std::size_t e,
                                         std::size_t cap = 10000) {
  if (v >= d.vertex_count() || !d.vertex(v).is_node)
    throw argument_error("not a node of the diagram");
  const auto& inc = d.incident_edges(v);
  if (std::find(inc.begin(), inc.end(), e) == inc.end())
    throw argument_error("edge is not incident to the given node");

  const std::vector<std::size_t> support = ends_beyond(d, v, e);
  std::vector<Int> weights;
  std::vector<std::size_t> positions;  // index into d.ends() order
  for (std::size_t w : support) {
    weights.push_back(lt.ell_at(v, w));
    const auto it = std::find(d.ends().begin(), d.ends().end(), w);
    positions.push_back(
        static_cast<std::size_t>(it - d.ends().begin()));
  }
  const Int target = lt.node_product(v);

  std::vector<Int> suffix_gcd(weights.size() + 1, Int(0));
  for (std::size_t i = weights.size(); i-- > 0;)
    suffix_gcd[i] = boost::multiprecision::gcd(weights[i], suffix_gcd[i + 1]);

  MonomialList out;
  std::vector<Int> partial(weights.size(), Int(0));
  std::size_t steps = 0;

  auto record = [&]() -> bool {  // false: stop enumeration
    if (out.monomials.size() == cap) {
      out.truncated = true;
      return false;
    }
    Monomial m;
    m.exponents.assign(d.ends().size(), Int(0));
    for (std::size_t i = 0; i < positions.size(); ++i)
      m.exponents[positions[i]] = partial[i];
    out.monomials.push_back(std::move(m));
    return true;
  };

  auto rec = [&](auto&& self, std::size_t level, Int residual) -> bool {
    if (++steps > kEnumerationStepGuard)
      throw resource_error("admissible monomial enumeration exceeded its step budget");
    if (residual % suffix_gcd[level] != 0) return true;  // nothing below
    if (level + 1 == weights.size()) {
      if (residual % weights[level] == 0) {
        partial[level] = residual / weights[level];
        return record();
      }
      return true;
    }
    const Int limit = residual / weights[level];
    for (Int a = 0; a <= limit; ++a) {
      partial[level] = a;
      if (!self(self, level + 1, residual - a * weights[level])) return false;
    }
    return true;
  };
  rec(rec, 0, target);
  return out;
}

}  // namespace splice

#pragma once

// Singularities: graded Rees algebras presented by generators per degree, chart by chart.

#include <map>
#include <span>
#include <utility>
#include <vector>

#include "galli/ideal.hpp"

namespace galli {

/// The algebra over O generated by finitely many elements in positive degrees.
/// No generators at all is the zero singularity.
struct ChartAlg {
  VarSet vars;
  std::map<unsigned, std::vector<Poly>> gens;

  bool is_zero() const { return gens.empty(); }
  std::vector<unsigned> degrees() const;
  unsigned max_degree() const { return gens.empty() ? 0 : gens.rbegin()->first; }
  unsigned degree_lcm() const;
  /// Ideal of the generators listed in degree d (not the graded piece).
  Ideal listed(unsigned d) const;
  void add(unsigned degree, const Poly& g);

  bool operator==(const ChartAlg&) const = default;
};

using Pair = std::pair<Ideal, unsigned>;

ChartAlg from_pairs(const VarSet& vars, std::span<const Pair> pairs);
ChartAlg unit_alg(const VarSet& vars);

/// Pieces A_0 .. A_dmax.
std::vector<Ideal> graded_pieces(const ChartAlg& a, unsigned dmax);
Ideal graded_piece(const ChartAlg& a, unsigned d);

ChartAlg sum(const ChartAlg& a, const ChartAlg& b);

/// Canonical presentation: reduced bases per degree, without generators that lower degrees already produce.
ChartAlg simplify(const ChartAlg& a);
ChartAlg differential_closure(const ChartAlg& a);
bool is_diff_closed(const ChartAlg& a);

Ideal sing_locus_ideal(const ChartAlg& a);
bool is_resolved(const ChartAlg& a);

/// (A_b, b) with b the lcm of the listed degrees.
Pair ideal_type_rep(const ChartAlg& a);

bool graded_equal(const ChartAlg& a, const ChartAlg& b, unsigned dmax);
bool equivalent_at(const ChartAlg& a, const ChartAlg& b, unsigned n, unsigned depth = 2);

ChartAlg substitute(const ChartAlg& a, std::span<const Poly> images, const VarSet& target);
/// Sets the listed coordinates to zero and drops them.
ChartAlg restrict(const ChartAlg& a, std::span<const std::size_t> zoom);
/// Closure of the lift of a to `ambient` plus (<zoom coordinates>, 1).
ChartAlg extend(const ChartAlg& a, const VarSet& ambient, std::span<const std::size_t> zoom);

/// One presentation per chart id.
struct ReesAlg {
  std::map<int, ChartAlg> charts;

  const ChartAlg& at(int chart) const;
  bool is_resolved() const;
  bool operator==(const ReesAlg&) const = default;
};

ReesAlg sum(const ReesAlg& a, const ReesAlg& b);
ReesAlg differential_closure(const ReesAlg& a);

}  // namespace galli

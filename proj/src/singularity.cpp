#include "galli/singularity.hpp"

#include <algorithm>
#include <numeric>

namespace galli {

std::vector<unsigned> ChartAlg::degrees() const {
  std::vector<unsigned> out;
  for (const auto& [d, g] : gens) out.push_back(d);
  return out;
}

unsigned ChartAlg::degree_lcm() const {
  unsigned l = 1;
  for (const auto& [d, g] : gens) l = std::lcm(l, d);
  return l;
}

Ideal ChartAlg::listed(unsigned d) const {
  auto it = gens.find(d);
  return it == gens.end() ? Ideal::zero(vars) : Ideal(vars, it->second);
}

void ChartAlg::add(unsigned degree, const Poly& g) {
  if (degree == 0) throw Error(ErrorCode::BadDegree, "generator degrees must be positive");
  if (!(g.vars() == vars)) throw Error(ErrorCode::VarSetMismatch, "generator over a different variable set");
  if (!g.is_zero()) gens[degree].push_back(g);
}

ChartAlg from_pairs(const VarSet& vars, std::span<const Pair> pairs) {
  ChartAlg a{vars, {}};
  for (const auto& [ideal, b] : pairs) {
    if (b == 0) throw Error(ErrorCode::BadDegree, "pair degree must be at least 1");
    for (const auto& g : ideal.gens()) a.add(b, g);
  }
  return a;
}

ChartAlg unit_alg(const VarSet& vars) {
  ChartAlg a{vars, {}};
  a.add(1, Poly::constant(vars, 1));
  return a;
}

std::vector<Ideal> graded_pieces(const ChartAlg& a, unsigned dmax) {
  std::vector<Ideal> pieces;
  pieces.push_back(Ideal::unit(a.vars));
  std::vector<std::pair<unsigned, Ideal>> parts;
  for (const auto& [d, g] : a.gens) parts.emplace_back(d, Ideal(a.vars, a.listed(d).groebner()));
  for (unsigned k = 1; k <= dmax; ++k) {
    std::vector<Poly> acc;
    for (const auto& [e, ideal] : parts) {
      if (e > k) break;
      const Ideal& lower = pieces[k - e];
      if (lower.is_zero()) continue;
      for (const auto& f : lower.groebner())
        for (const auto& g : ideal.gens()) acc.push_back(f * g);
    }
    pieces.emplace_back(a.vars, std::move(acc));
  }
  return pieces;
}

Ideal graded_piece(const ChartAlg& a, unsigned d) { return graded_pieces(a, d).back(); }

ChartAlg sum(const ChartAlg& a, const ChartAlg& b) {
  if (!(a.vars == b.vars)) throw Error(ErrorCode::HabitatMismatch, "summands live on different charts");
  ChartAlg out = a;
  for (const auto& [d, gs] : b.gens)
    for (const auto& g : gs) out.add(d, g);
  return out;
}

ChartAlg simplify(const ChartAlg& a) {
  ChartAlg out{a.vars, {}};
  for (const auto& [d, gs] : a.gens) {
    const Ideal lower = graded_piece(out, d);
    const Ideal here(a.vars, gs);
    for (const auto& g : here.groebner())
      if (!lower.member(g)) out.add(d, g);
  }
  return out;
}

ChartAlg differential_closure(const ChartAlg& a) {
  if (a.is_zero()) return a;
  std::map<unsigned, std::vector<Poly>> work = a.gens;
  for (unsigned d = a.max_degree(); d >= 2; --d) {
    auto it = work.find(d);
    if (it == work.end()) continue;
    const auto basis = Ideal(a.vars, it->second).groebner();
    it->second = basis;
    auto& below = work[d - 1];
    for (const auto& g : basis) {
      below.push_back(g);
      for (std::size_t v = 0; v < a.vars.size(); ++v) {
        Poly p = g.partial(v);
        if (!p.is_zero()) below.push_back(std::move(p));
      }
    }
  }
  ChartAlg closed{a.vars, {}};
  for (const auto& [d, gs] : work)
    for (const auto& g : gs) closed.add(d, g);
  return simplify(closed);
}

bool is_diff_closed(const ChartAlg& a) {
  const unsigned top = 2 * std::max(1u, a.max_degree());
  const auto pieces = graded_pieces(a, top + 1);
  for (unsigned d = 0; d <= top; ++d)
    if (!pieces[d].contains(delta(pieces[d + 1]))) return false;
  return true;
}

Ideal sing_locus_ideal(const ChartAlg& a) {
  Ideal acc = Ideal::zero(a.vars);
  for (const auto& [d, gs] : a.gens) {
    acc = sum(acc, delta_power(Ideal(a.vars, gs), d - 1));
    if (acc.is_unit()) return Ideal::unit(a.vars);
  }
  return Ideal(a.vars, acc.groebner());
}

bool is_resolved(const ChartAlg& a) { return sing_locus_ideal(a).is_unit(); }

Pair ideal_type_rep(const ChartAlg& a) {
  if (a.is_zero()) throw Error(ErrorCode::ZeroSingularity, "the zero singularity has no ideal-type representative");
  const unsigned b = a.degree_lcm();
  return {Ideal(a.vars, graded_piece(a, b).groebner()), b};
}

bool graded_equal(const ChartAlg& a, const ChartAlg& b, unsigned dmax) {
  if (!(a.vars == b.vars)) return false;
  const auto pa = graded_pieces(a, dmax);
  const auto pb = graded_pieces(b, dmax);
  for (unsigned d = 1; d <= dmax; ++d)
    if (!pa[d].equals(pb[d])) return false;
  return true;
}

bool equivalent_at(const ChartAlg& a, const ChartAlg& b, unsigned n, unsigned depth) {
  if (n == 0 || depth == 0) throw Error(ErrorCode::BadDegree, "equivalence check needs positive N and depth");
  const ChartAlg ca = differential_closure(a);
  const ChartAlg cb = differential_closure(b);
  const auto pa = graded_pieces(ca, n * depth);
  const auto pb = graded_pieces(cb, n * depth);
  for (unsigned k = 1; k <= depth; ++k)
    if (!pa[k * n].equals(pb[k * n])) return false;
  return true;
}

ChartAlg substitute(const ChartAlg& a, std::span<const Poly> images, const VarSet& target) {
  ChartAlg out{target, {}};
  for (const auto& [d, gs] : a.gens)
    for (const auto& g : gs) out.add(d, g.substitute(images, target));
  return out;
}

ChartAlg restrict(const ChartAlg& a, std::span<const std::size_t> zoom) {
  const VarSet target = a.vars.without(zoom);
  std::vector<Poly> images;
  std::size_t next = 0;
  for (std::size_t v = 0; v < a.vars.size(); ++v) {
    if (std::find(zoom.begin(), zoom.end(), v) != zoom.end())
      images.emplace_back(target);
    else
      images.push_back(Poly::variable(target, next++));
  }
  return substitute(a, images, target);
}

ChartAlg extend(const ChartAlg& a, const VarSet& ambient, std::span<const std::size_t> zoom) {
  ChartAlg lifted{ambient, {}};
  for (const auto& [d, gs] : a.gens)
    for (const auto& g : gs) lifted.add(d, rename_into(g, ambient));
  for (auto v : zoom) lifted.add(1, Poly::variable(ambient, v));
  return differential_closure(lifted);
}

const ChartAlg& ReesAlg::at(int chart) const {
  auto it = charts.find(chart);
  if (it == charts.end()) throw Error(ErrorCode::HabitatMismatch, "no algebra on chart " + std::to_string(chart));
  return it->second;
}

bool ReesAlg::is_resolved() const {
  return std::all_of(charts.begin(), charts.end(), [](const auto& kv) { return galli::is_resolved(kv.second); });
}

ReesAlg sum(const ReesAlg& a, const ReesAlg& b) {
  ReesAlg out;
  if (a.charts.size() != b.charts.size()) throw Error(ErrorCode::HabitatMismatch, "summands live on different habitats");
  for (const auto& [id, alg] : a.charts) {
    auto it = b.charts.find(id);
    if (it == b.charts.end()) throw Error(ErrorCode::HabitatMismatch, "summands live on different habitats");
    out.charts.emplace(id, sum(alg, it->second));
  }
  return out;
}

ReesAlg differential_closure(const ReesAlg& a) {
  ReesAlg out;
  for (const auto& [id, alg] : a.charts) out.charts.emplace(id, differential_closure(alg));
  return out;
}

}  // namespace galli

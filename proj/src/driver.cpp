#include "galli/driver.hpp"

namespace galli {

bool SmoothnessCertificate::verify() const { return misses_open(ideal, opens); }

SmoothnessCertificate smoothness_certificate(const Chart& chart, const Poly& g) {
  if (g.is_zero()) throw Error(ErrorCode::ZeroIdeal, "smoothness of the zero polynomial");
  SmoothnessCertificate c;
  c.chart = chart.id;
  const Ideal principal(chart.vars, {g});
  c.ideal = sum(sum(principal, delta(principal)), Ideal(chart.vars, chart.piece));
  c.opens = chart.opens;
  c.basis = c.ideal.groebner();
  c.smooth = c.verify();
  if (!c.smooth) {
    std::string text;
    for (const auto& p : c.basis) text += (text.empty() ? "" : ", ") + p.to_string();
    throw NotSmoothError(c.basis, "chart " + std::to_string(chart.id) + ": " + g.to_string() + " is singular along <" + text + ">");
  }
  return c;
}

void check_squarefree(const Poly& f) {
  if (f.is_constant()) throw Error(ErrorCode::BadDegree, "the hypersurface equation must be nonconstant");
  const Ideal principal(f.vars(), {f});
  const int n = static_cast<int>(f.vars().size());
  if (sum(principal, delta(principal)).dimension() >= n - 1)
    throw Error(ErrorCode::NotSquarefree, f.to_string() + " has a repeated factor");
}

Poly strict_transform(const Chart& chart, const Poly& f, std::size_t r, std::map<std::size_t, unsigned>* exponents) {
  Poly p = f.substitute(chart.to_root, chart.vars);
  for (std::size_t s = r; s < chart.slots.size(); ++s) {
    if (!chart.present(s)) continue;
    const Poly e = chart.slot_poly(s);
    const unsigned k = valuation(p, e);
    if (k == 0) continue;
    p = p.divide_exact(e.pow(k));
    if (exponents) (*exponents)[s] = k;
  }
  return p;
}

ResolutionTree desingularize_hypersurface(const Poly& f, const StrategyOptions& opts) {
  check_squarefree(f);
  const VarSet& vars = f.vars();
  const Scenario s{vars, {}, {{Ideal(vars, {f}), 2}}, static_cast<unsigned>(vars.size())};
  StrategyResult r = win(new_game(s), opts);
  ResolutionTree tree;
  tree.f = f;
  tree.habitats = r.state.habitats;
  tree.centers = r.state.centers;
  tree.steps = r.steps;
  for (const auto& chart : r.state.habitat().charts) {
    Leaf leaf;
    leaf.chart = chart.id;
    leaf.strict = strict_transform(chart, f, 0, &leaf.exceptional);
    leaf.certificate = smoothness_certificate(chart, leaf.strict);
    tree.leaves.push_back(std::move(leaf));
  }
  return tree;
}

}  // namespace galli

#include "galli/gallimaufry.hpp"

#include <algorithm>
#include <numeric>

namespace galli {

namespace {

constexpr unsigned kMaxDeltaSteps = 10'000;
constexpr int kLocalDegree = 3;

bool face_less(const Face& a, const Face& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  return a < b;
}

std::vector<std::size_t> view_slots(const Chart& chart, const std::set<std::size_t>& relaxed) {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < chart.r(); ++s)
    if (chart.present(s) && !relaxed.count(s)) out.push_back(s);
  return out;
}

// Subsets of `slots` whose hypersurfaces meet the zero set of `sing`, downward closed.
std::set<Face> chart_faces(const Chart& chart, const Ideal& sing, const std::vector<std::size_t>& slots) {
  std::set<Face> faces = {Face{}};
  std::vector<Face> level = {Face{}};
  while (!level.empty()) {
    std::vector<Face> next;
    for (const auto& f : level) {
      for (auto s : slots) {
        if (!f.empty() && s <= f.back()) continue;
        Face g = f;
        g.push_back(s);
        bool closed = true;
        for (std::size_t drop = 0; drop + 1 < g.size() && closed; ++drop) {
          Face sub = g;
          sub.erase(sub.begin() + static_cast<long>(drop));
          closed = faces.count(sub) > 0;
        }
        if (!closed) continue;
        std::vector<Poly> gens = sing.gens();
        for (auto t : g) gens.push_back(chart.slot_poly(t));
        if (!misses_open(Ideal(chart.vars, gens), chart.opens)) {
          faces.insert(g);
          next.push_back(g);
        }
      }
    }
    level = std::move(next);
  }
  return faces;
}

Ideal strip(const Ideal& ideal, const std::map<std::size_t, unsigned>& exponents, const std::map<std::size_t, Poly>& coords) {
  Poly divisor = Poly::constant(ideal.vars(), 1);
  for (const auto& [s, e] : exponents) divisor = divisor * coords.at(s).pow(e);
  std::vector<Poly> out;
  for (const auto& g : ideal.gens()) out.push_back(g.divide_exact(divisor));
  return Ideal(ideal.vars(), std::move(out));
}

// min{a : Delta^a(ideal) + locus has no zero where the opens are nonzero}.
unsigned unit_distance(const Ideal& ideal, const Ideal& locus, const std::vector<Poly>& opens) {
  Ideal j = ideal;
  unsigned a = 0;
  while (!misses_open(sum(j, locus), opens)) {
    if (++a > kMaxDeltaSteps) throw Error(ErrorCode::ResourceLimit, "order computation did not terminate");
    j = delta(Ideal(j.vars(), j.groebner()));
  }
  return a;
}

ChartAlg map_gens(const ChartAlg& a, const auto& fn) {
  ChartAlg out{a.vars, {}};
  for (const auto& [d, gs] : a.gens)
    for (const auto& g : gs) out.add(d, fn(g));
  return out;
}

// Slots meeting Sing keep their coordinate through the zoom chain.
Poly slot_on_zoom(const Chart& chart, std::size_t s, const VarSet& target) {
  return Poly::variable(target, target.require(chart.vars.name(*chart.slots[s]))) - Poly::constant(target, chart.shift(s));
}

Poly poly_onto_zoom(Poly p, const std::vector<CoordChange>& chain, const VarSet& target) {
  for (const auto& c : chain) p = c.apply(p);
  return rename_into(p, target);
}

std::vector<Poly> onto_zoom(const Chart& chart, const std::vector<Poly>& ps, const Zoom& z) {
  ChartAlg tmp{chart.vars, {}};
  for (auto p : ps) {
    for (const auto& c : z.chain) p = c.apply(p);
    tmp.add(1, p);
  }
  return restrict(tmp, z.vars).listed(1).gens();
}

}  // namespace

unsigned degree_lcm(const ReesAlg& a) {
  unsigned l = 1;
  for (const auto& [id, alg] : a.charts) l = std::lcm(l, alg.degree_lcm());
  return l;
}

ChartAlg apply_chain(const ChartAlg& a, const std::vector<CoordChange>& chain, bool close) {
  if (chain.empty()) return a;
  ChartAlg out = a;
  for (const auto& c : chain) out = map_gens(out, [&](const Poly& p) { return c.apply(p); });
  return close ? differential_closure(out) : out;
}

ChartAlg undo_chain(const ChartAlg& a, const std::vector<CoordChange>& chain, bool close) {
  if (chain.empty()) return a;
  ChartAlg out = a;
  for (auto it = chain.rbegin(); it != chain.rend(); ++it)
    out = map_gens(out, [&](const Poly& p) { return it->undo(p); });
  return close ? differential_closure(out) : out;
}

ChartAlg zoom_coefficients(const ChartAlg& a, const Zoom& z) {
  const VarSet& target = z.restricted.vars;
  ChartAlg out{target, {}};
  const ChartAlg moved = apply_chain(a, z.chain, false);
  for (const auto& [d, gs] : moved.gens)
    for (const auto& g : gs) {
      // Breadth-first over derivative orders along the zoom coordinates.
      std::vector<Poly> level = {g};
      for (unsigned k = 0; k < d && !level.empty(); ++k) {
        std::vector<Poly> next;
        for (const auto& f : level) {
          const Poly r = rename_into(f, target);
          if (!r.is_zero()) out.add(d - k, r);
          for (auto v : z.vars) {
            Poly df = f.partial(v);
            if (df.is_zero()) continue;
            if (std::find(next.begin(), next.end(), df) == next.end()) next.push_back(std::move(df));
          }
        }
        level = std::move(next);
      }
    }
  return out;
}

Zoom find_zoom(const Chart& chart, const ChartAlg& a, unsigned m, const std::set<std::size_t>& relaxed) {
  const std::size_t n = chart.n();
  if (m > n) throw Error(ErrorCode::BadDegree, "gallimaufry dimension exceeds the ambient dimension");
  Zoom z;
  z.changed = a;
  for (std::size_t step = 0; step + m < n; ++step) {
    const ChartAlg r = restrict(z.changed, z.vars);
    std::vector<Poly> candidates;
    const Ideal one = r.listed(1);
    for (const auto& g : one.gens()) candidates.push_back(rename_into(g, chart.vars));
    for (const auto& g : one.groebner()) candidates.push_back(rename_into(g, chart.vars));
    std::optional<CoordChange> best;
    int best_tier = 3;
    auto consider = [&](const Poly& f) {
      for (std::size_t v = 0; v < n; ++v) {
        if (std::find(z.vars.begin(), z.vars.end(), v) != z.vars.end()) continue;
        auto change = solve_for(f, v);
        if (!change) continue;
        int tier = change->g.is_zero() ? 0 : 1;
        const auto on_v = chart.slots_on(v);
        if (!on_v.empty()) {
          if (!change->g.is_constant()) continue;
          const Rational at = -change->g.constant_term() / change->a;
          bool ok = true;
          for (auto s : on_v) {
            if (chart.shift(s) != at) continue;
            // The zoom would be this hypersurface itself.
            ok = ok && relaxed.count(s) > 0;
            tier = 2;
          }
          if (!ok) continue;
        }
        if (tier < best_tier) {
          best_tier = tier;
          best = change;
        }
      }
    };
    for (const auto& f : candidates) {
      consider(f);
      if (best_tier == 0) break;
    }
    if (!best && !chart.opens.empty()) {
      // Elements of degree 1 after inverting the chart's open conditions.
      Poly h = Poly::constant(chart.vars, 1);
      for (const auto& o : chart.opens) h = h * o;
      const Poly hr = poly_onto_zoom(h, z.chain, r.vars);
      for (int degree = 1; degree <= kLocalDegree && !best && !hr.is_constant(); ++degree)
        for (std::size_t v = 0; v < r.vars.size(); ++v)
          if (auto f = solvable_after_inverting(one, hr, v, degree)) consider(rename_into(*f, chart.vars));
    }
    if (!best)
      throw ZoomFailure(chart.id, "chart " + std::to_string(chart.id) + ": no degree-1 element solvable for a free coordinate (dimension " +
                                               std::to_string(n - step) + " -> " + std::to_string(n - step - 1) +
                                               "); split the chart so that a maximal-contact coordinate exists");
    z.changed = apply_chain(z.changed, {*best});
    z.chain.push_back(*best);
    z.vars.push_back(best->var);
  }
  z.restricted = restrict(z.changed, z.vars);
  return z;
}

bool Analysis::tight() const {
  if (resolved || bold || maxorder != 1) return false;
  return std::all_of(labels.begin(), labels.end(), [](const auto& kv) { return kv.second == 0; });
}

std::set<std::size_t> Analysis::vertices() const {
  std::set<std::size_t> out;
  for (const auto& f : complex)
    if (f.size() == 1) out.insert(f.front());
  return out;
}

const ChartAnalysis& Analysis::chart(int id) const {
  for (const auto& c : charts)
    if (c.chart == id) return c;
  throw Error(ErrorCode::HabitatMismatch, "no analysis for chart " + std::to_string(id));
}

Analysis analyze(const Habitat& h, const Gallimaufry& g) {
  Analysis an;
  an.B = std::lcm(g.b0, degree_lcm(g.alg));
  std::set<Face> all_faces;
  for (const auto& chart : h.charts) {
    ChartAnalysis ca;
    ca.chart = chart.id;
    const ChartAlg& a = g.alg.at(chart.id);
    ca.sing = Ideal(chart.vars, sum(sing_locus_ideal(a), Ideal(chart.vars, chart.piece)).groebner());
    ca.singular = !misses_open(ca.sing, chart.opens);
    if (ca.singular) {
      an.resolved = false;
      ca.zoom = find_zoom(chart, a, g.m, g.relaxed);
      ca.bold = ca.zoom->restricted.is_zero();
      an.bold = an.bold || ca.bold;
      ca.faces = chart_faces(chart, ca.sing, view_slots(chart, g.relaxed));
      all_faces.insert(ca.faces.begin(), ca.faces.end());
    }
    an.charts.push_back(std::move(ca));
  }
  an.complex.assign(all_faces.begin(), all_faces.end());
  std::sort(an.complex.begin(), an.complex.end(), face_less);
  if (an.resolved || an.bold) {
    an.b = g.b0;
    return an;
  }
  std::map<int, ChartAlg> coefficients;
  an.rep_degree = an.B;
  for (std::size_t i = 0; i < an.charts.size(); ++i) {
    auto& ca = an.charts[i];
    if (!ca.singular) continue;
    ChartAlg c = zoom_coefficients(g.rep_at(ca.chart), *ca.zoom);
    an.rep_degree = std::lcm(an.rep_degree, c.degree_lcm());
    coefficients.emplace(ca.chart, std::move(c));
  }
  const unsigned D = an.rep_degree;
  for (std::size_t i = 0; i < an.charts.size(); ++i) {
    auto& ca = an.charts[i];
    if (!ca.singular) continue;
    const Chart& chart = h.charts[i];
    const ChartAlg& r = ca.zoom->restricted;
    ca.rep_ideal = Ideal(r.vars, graded_piece(coefficients.at(ca.chart), D).groebner());
    if (ca.rep_ideal.is_zero()) throw Error(ErrorCode::InvariantBreach, "representative vanishes on the zoom");
    const Ideal& ideal = ca.rep_ideal;
    std::map<std::size_t, Poly> coords;
    for (const auto& f : ca.faces) {
      if (f.size() != 1) continue;
      const std::size_t s = f.front();
      coords.emplace(s, slot_on_zoom(chart, s, r.vars));
      ca.exponents[s] = extract_factor(ideal, coords.at(s)).exponent;
    }
    const Ideal locus = sum(sing_locus_ideal(r), Ideal(r.vars, onto_zoom(chart, chart.piece, *ca.zoom)));
    std::vector<Poly> opens;
    for (const auto& o : chart.opens) opens.push_back(poly_onto_zoom(o, ca.zoom->chain, r.vars));
    ca.delta_steps = unit_distance(strip(ideal, ca.exponents, coords), locus, opens);
    Rational o(ca.delta_steps, D);
    o.canonicalize();
    if (o > an.maxorder) an.maxorder = o;
    for (const auto& [s, e] : ca.exponents) {
      Rational label(e, D);
      label.canonicalize();
      auto it = an.labels.find(s);
      if (it == an.labels.end() || label < it->second) an.labels[s] = label;
    }
  }
  an.maxorder.canonicalize();
  bool fits = g.b0 % an.maxorder.get_den().get_ui() == 0;
  for (const auto& [s, l] : an.labels) fits = fits && g.b0 % l.get_den().get_ui() == 0;
  unsigned b = an.B;
  b = std::lcm(b, static_cast<unsigned>(an.maxorder.get_den().get_ui()));
  for (const auto& [s, l] : an.labels) b = std::lcm(b, static_cast<unsigned>(l.get_den().get_ui()));
  an.b = fits ? g.b0 : b;
  return an;
}

std::vector<Face> habitat_complex(const Habitat& h, const Analysis& an) {
  std::set<Face> all;
  for (std::size_t i = 0; i < h.charts.size(); ++i) {
    const auto& ca = an.charts.at(i);
    if (!ca.singular) continue;
    auto faces = chart_faces(h.charts[i], ca.sing, view_slots(h.charts[i], {}));
    all.insert(faces.begin(), faces.end());
  }
  std::vector<Face> out(all.begin(), all.end());
  std::sort(out.begin(), out.end(), face_less);
  return out;
}

CenterPlan bold_center(const Habitat& h, const Gallimaufry& g, const Analysis& an) {
  (void)g;
  if (!an.bold) throw Error(ErrorCode::NotBold, "type II blowup needs a bold gallimaufry");
  CenterPlan plan;
  for (std::size_t i = 0; i < h.charts.size(); ++i) {
    const auto& ca = an.charts[i];
    if (!ca.bold) continue;
    plan.chains[ca.chart] = ca.zoom->chain;
    auto coords = ca.zoom->vars;
    std::sort(coords.begin(), coords.end());
    plan.center[ca.chart] = coords;
  }
  return plan;
}

CenterPlan face_center(const Habitat& h, const Gallimaufry& g, const Analysis& an, const Face& face) {
  (void)g;
  if (an.bold) throw Error(ErrorCode::Bold, "type I blowup needs labels, but the gallimaufry is bold");
  if (an.resolved) throw Error(ErrorCode::Resolved, "nothing to blow up");
  if (face.empty() || std::find(an.complex.begin(), an.complex.end(), face) == an.complex.end())
    throw Error(ErrorCode::IllegalMove, "type I blowup needs a nonempty face of the complex");
  Rational total = 0;
  for (auto s : face) total += an.labels.at(s);
  if (total < 1) throw Error(ErrorCode::IllegalMove, "type I blowup needs a face whose label sum is at least 1");
  CenterPlan plan;
  for (std::size_t i = 0; i < h.charts.size(); ++i) {
    const auto& ca = an.charts[i];
    if (!ca.singular || !ca.faces.count(face)) continue;
    auto chain = ca.zoom->chain;
    auto coords = ca.zoom->vars;
    for (auto s : face) {
      const std::size_t v = *h.charts[i].slots[s];
      if (h.charts[i].shift(s) != 0) chain.push_back(CoordChange{v, 1, -Poly::constant(h.charts[i].vars, h.charts[i].shift(s))});
      coords.push_back(v);
    }
    plan.chains[ca.chart] = chain;
    std::sort(coords.begin(), coords.end());
    plan.center[ca.chart] = coords;
  }
  return plan;
}

ReesAlg tightify_rep(const Habitat& h, const Gallimaufry& g, const Analysis& an) {
  if (an.resolved) throw Error(ErrorCode::Resolved, "a resolved gallimaufry has no tightification");
  if (an.bold) throw Error(ErrorCode::Bold, "a bold gallimaufry has no tightification");
  if (an.maxorder <= 0) throw Error(ErrorCode::IllegalMove, "tightification needs positive maxorder");
  const auto scaled = [&](unsigned degree) {
    const Rational q = an.maxorder * degree;
    if (q.get_den() != 1) throw Error(ErrorCode::NonIntegralDegree, "maxorder times generating degree is not an integer");
    return static_cast<unsigned>(q.get_num().get_ui());
  };
  scaled(an.b);
  ReesAlg out;
  for (std::size_t i = 0; i < h.charts.size(); ++i) {
    const Chart& chart = h.charts[i];
    const auto& ca = an.charts[i];
    const ChartAlg& a = g.rep_at(chart.id);
    if (ca.singular) {
      const ChartAlg& r = ca.zoom->restricted;
      const Ideal& ideal = ca.rep_ideal;
      std::map<std::size_t, Poly> coords;
      for (const auto& [s, e] : ca.exponents)
        coords.emplace(s, slot_on_zoom(chart, s, r.vars));
      const std::vector<Pair> pairs = {{strip(ideal, ca.exponents, coords), scaled(an.rep_degree)}, {ideal, an.rep_degree}};
      ChartAlg lifted{chart.vars, {}};
      for (const auto& [d, gs] : from_pairs(r.vars, pairs).gens)
        for (const auto& f : gs) lifted.add(d, rename_into(f, chart.vars));
      for (auto v : ca.zoom->vars) lifted.add(1, Poly::variable(chart.vars, v));
      out.charts.emplace(chart.id, undo_chain(lifted, ca.zoom->chain, false));
    } else {
      const unsigned D = std::lcm(an.rep_degree, a.degree_lcm());
      const Ideal ideal(a.vars, graded_piece(a, D).groebner());
      std::map<std::size_t, unsigned> exps;
      std::map<std::size_t, Poly> coords;
      if (!ideal.is_zero())
        for (auto s : view_slots(chart, g.relaxed)) {
          coords.emplace(s, chart.slot_poly(s));
          exps[s] = extract_factor(ideal, coords.at(s)).exponent;
        }
      const std::vector<Pair> pairs = {{strip(ideal, exps, coords), scaled(D)}, {ideal, D}};
      out.charts.emplace(chart.id, from_pairs(a.vars, pairs));
    }
  }
  return out;
}

ReesAlg tightify(const Habitat& h, const Gallimaufry& g, const Analysis& an) {
  return differential_closure(tightify_rep(h, g, an));
}

ReesAlg intersect(const Habitat& h, const ReesAlg& a, std::size_t slot, bool close) {
  ReesAlg out;
  for (const auto& chart : h.charts) {
    ChartAlg c = a.at(chart.id);
    c.add(1, chart.present(slot) ? chart.slot_poly(slot) : Poly::constant(chart.vars, 1));
    out.charts.emplace(chart.id, close ? differential_closure(c) : c);
  }
  return out;
}

}  // namespace galli

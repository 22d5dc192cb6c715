#include "galli/game.hpp"

#include <algorithm>
#include <numeric>

#include "galli/transform.hpp"

namespace galli {

namespace {

Report make_report(const Thread& t) {
  const Analysis& an = t.analysis;
  Report r;
  r.thread = t.id;
  r.active = t.active;
  r.dim = t.m;
  r.gendeg = an.b;
  r.bold = an.bold;
  r.resolved = an.resolved;
  r.complex = an.complex;
  if (!an.bold) {
    r.labels = an.labels;
    r.maxorder = an.maxorder;
  }
  return r;
}

Thread& find_thread(GameState& g, int id) { return const_cast<Thread&>(static_cast<const GameState&>(g).thread(id)); }

constexpr int kMaxSplits = 64;

// Splits chart `id` along x_v = r where r separates the thread's singular points there; false when none does.
bool split_for(GameState& g, int id, const Thread& t) {
  const Chart& chart = g.habitat().chart(id);
  const Ideal sing = sing_locus_ideal(t.history.back().at(id));
  for (std::size_t v = 0; v < chart.n(); ++v) {
    const auto minpoly = minimal_polynomial(sing, v);
    if (!minpoly) return false;
    const Poly x = Poly::variable(chart.vars, v);
    for (const auto& r : rational_roots(*minpoly)) {
      const Poly cut = x - Poly::constant(chart.vars, r);
      auto opens = chart.opens;
      opens.push_back(cut);
      if (misses_open(sum(sing, Ideal(chart.vars, {cut})), chart.opens) || misses_open(sing, opens)) continue;
      // The other values of x_v, as a polynomial that is nonzero where x_v = r.
      std::vector<Rational> q = *minpoly;
      auto divides = [&] {
        Rational rem = 0;
        for (auto it = q.rbegin(); it != q.rend(); ++it) rem = rem * r + *it;
        return rem == 0;
      };
      while (q.size() > 1 && divides()) {
        std::vector<Rational> next(q.size() - 1);
        Rational carry = 0;
        for (std::size_t k = q.size() - 1; k-- > 0;) {
          carry = carry * r + q[k + 1];
          next[k] = carry;
        }
        q = std::move(next);
      }
      Poly keep(chart.vars);
      for (std::size_t k = 0; k < q.size(); ++k) keep += Poly::constant(chart.vars, q[k]) * x.pow(static_cast<unsigned>(k));
      const auto ids = split_chart(g.habitats.back(), id, cut, keep);
      for (auto& u : g.threads) {
        if (!u.active) continue;
        for (auto* charts : {&u.history.back().charts, &u.reps.back().charts}) {
          const ChartAlg alg = charts->at(id);
          charts->erase(id);
          for (int nid : ids) charts->emplace(nid, alg);
        }
      }
      return true;
    }
  }
  return false;
}

// Analyses the given threads (all active ones when empty), splitting charts where no zoom exists.
void refresh(GameState& g, std::vector<int> ids = {}) {
  if (ids.empty())
    for (const auto& t : g.threads)
      if (t.active) ids.push_back(t.id);
  for (int round = 0;; ++round) {
    int failed = -1;
    try {
      for (int id : ids) {
        failed = id;
        Thread& t = g.threads[static_cast<std::size_t>(id)];
        t.analysis = analyze(g.habitat(), t.current());
      }
      return;
    } catch (const ZoomFailure& e) {
      if (round >= kMaxSplits || !split_for(g, e.chart(), g.threads[static_cast<std::size_t>(failed)])) throw;
    }
    ids.clear();
    for (const auto& t : g.threads)
      if (t.active) ids.push_back(t.id);
  }
}

void spawn(GameState& g, const Thread& parent, Relation rel, ReesAlg alg, ReesAlg rep, unsigned m,
           std::set<std::size_t> relaxed, unsigned b0, std::optional<std::size_t> vertex = std::nullopt) {
  Thread t;
  t.id = static_cast<int>(g.threads.size());
  t.relation = rel;
  t.parent = parent.id;
  t.vertex = vertex;
  t.born = g.habitats.size() - 1;
  t.history.push_back(std::move(alg));
  t.reps.push_back(std::move(rep));
  t.m = m;
  t.relaxed = std::move(relaxed);
  t.b0 = b0;
  g.threads.push_back(std::move(t));
  refresh(g, {g.threads.back().id});
}

// Where the strict part of a (the algebra without its exceptional factor) meets the exceptional hypersurface x_e = 0.
Ideal strict_meets_exceptional(const ChartAlg& a, std::size_t e) {
  const Poly u = Poly::variable(a.vars, e);
  if (is_resolved(a)) return Ideal::unit(a.vars);
  const Ideal ideal(a.vars, graded_piece(a, a.degree_lcm()).groebner());
  if (ideal.is_zero()) return Ideal(a.vars, {u});
  return sum(extract_factor(ideal, u).rest, Ideal(a.vars, {u}));
}

// Blowup charts are trimmed so that the last chart is whole; prefer a last coordinate whose chart sees every point
// where a strict part meets the new hypersurface.
std::optional<std::size_t> preferred_last(const std::vector<std::size_t>& coords, const std::vector<ChildChart>& kids,
                                          const std::vector<ReesAlg>& algs) {
  auto sees_all = [&](std::size_t k, std::size_t upto) {
    for (std::size_t t = 0; t < upto; ++t)
      for (const auto& kid : kids) {
        if (*kid.exceptional == k) continue;
        const ChartAlg& a = algs[t].at(kid.child_id);
        if (!sum(strict_meets_exceptional(a, *kid.exceptional), Ideal(a.vars, {Poly::variable(a.vars, k)})).is_unit()) return false;
      }
    return true;
  };
  for (std::size_t upto : {algs.size(), std::size_t{1}})
    for (auto it = coords.rbegin(); it != coords.rend(); ++it)
      if (sees_all(*it, upto)) return *it;
  return std::nullopt;
}

// Number of (thread, child chart, dimension) triples for which no zoom exists.
int zoom_failures(const BlowupResult& out, const std::vector<ReesAlg>& algs, const std::vector<const Thread*>& threads,
                  int parent) {
  int failures = 0;
  for (const auto& kid : out.children.at(parent)) {
    const Chart& chart = out.habitat.chart(kid.child_id);
    for (std::size_t t = 0; t < threads.size(); ++t) {
      const ChartAlg& a = algs[t].at(kid.child_id);
      if (sum(sing_locus_ideal(a), Ideal(chart.vars, chart.piece)).is_unit()) continue;
      for (unsigned m = 0; m <= threads[t]->m; ++m) {
        try {
          find_zoom(chart, a, m, threads[t]->relaxed);
        } catch (const Error&) {
          ++failures;
        }
      }
    }
  }
  return failures;
}

std::vector<std::size_t> last_is(const std::vector<std::size_t>& coords, std::size_t k) {
  std::vector<std::size_t> order;
  for (auto v : coords)
    if (v != k) order.push_back(v);
  order.push_back(k);
  return order;
}

void do_blowup(GameState& g, const Thread& proposer, const CenterPlan& plan) {
  Habitat h = g.habitat();
  std::map<int, ReesAlg> changed, changed_reps;
  for (const auto& t : g.threads)
    if (t.active) {
      changed.emplace(t.id, t.history.back());
      changed_reps.emplace(t.id, t.reps.back());
    }
  for (const auto& [id, chain] : plan.chains) {
    if (chain.empty()) continue;
    Chart& c = h.chart(id);
    for (const auto& step : chain) c = apply_change(c, step);
    for (auto& [tid, alg] : changed) alg.charts.at(id) = apply_chain(alg.at(id), chain);
    for (auto& [tid, alg] : changed_reps) alg.charts.at(id) = apply_chain(alg.at(id), chain, false);
  }
  std::vector<int> carried;
  for (const auto& t : g.threads) {
    if (!t.active) continue;
    const ReesAlg& a = changed.at(t.id);
    const bool contained = std::all_of(plan.center.begin(), plan.center.end(), [&](const auto& kv) {
      return center_in_sing(a.at(kv.first), kv.second);
    });
    if (contained)
      carried.push_back(t.id);
    else if (t.id == proposer.id || t.id == 0)
      throw Error(ErrorCode::InvariantBreach, "thread T" + std::to_string(t.id) + " does not contain the center it must");
  }
  auto run = [&](const CenterSpec& center) {
    std::pair<BlowupResult, std::vector<ReesAlg>> r{blowup(h, center), {}};
    for (int id : carried) r.second.push_back(transform(changed.at(id), center, r.first).alg);
    return r;
  };
  std::vector<const Thread*> carried_threads;
  for (int id : carried) carried_threads.push_back(&g.thread(id));
  auto [out, algs] = run(plan.center);
  CenterSpec better = plan.center;
  for (const auto& [id, coords] : plan.center) {
    if (coords.size() < 2) continue;
    const auto pref = preferred_last(coords, out.children.at(id), algs);
    std::optional<std::pair<int, bool>> best;
    for (auto k : coords) {
      CenterSpec trial = plan.center;
      trial[id] = last_is(coords, k);
      const auto r = trial == plan.center ? std::make_pair(out, algs) : run(trial);
      const std::pair<int, bool> score{zoom_failures(r.first, r.second, carried_threads, id), k != pref.value_or(coords.back())};
      if (!best || score < *best) {
        best = score;
        better[id] = trial[id];
      }
    }
  }
  if (better != plan.center) std::tie(out, algs) = run(better);
  std::vector<ReesAlg> reps;
  for (int id : carried) reps.push_back(transform(changed_reps.at(id), better, out).raw);
  g.habitats.push_back(out.habitat);
  g.centers.push_back(better);
  std::set<std::size_t> inside;
  for (std::size_t j = 0; j < h.r && !better.empty(); ++j) {
    const bool all = std::all_of(better.begin(), better.end(), [&](const auto& kv) {
      const Chart& c = h.chart(kv.first);
      std::vector<Poly> gens;
      for (auto v : kv.second) gens.push_back(Poly::variable(c.vars, v));
      return c.present(j) && Ideal(c.vars, gens).member(c.slot_poly(j));
    });
    if (all) inside.insert(j);
  }
  g.center_inside.push_back(std::move(inside));
  for (auto& t : g.threads) {
    if (!t.active) continue;
    auto it = std::find(carried.begin(), carried.end(), t.id);
    if (it == carried.end()) {
      t.active = false;
      continue;
    }
    t.history.push_back(algs[static_cast<std::size_t>(it - carried.begin())]);
    t.reps.push_back(reps[static_cast<std::size_t>(it - carried.begin())]);
  }
  refresh(g);
}

Rational label_sum(const Analysis& an, const Face& f) {
  Rational s = 0;
  for (auto v : f) {
    auto it = an.labels.find(v);
    if (it != an.labels.end()) s += it->second;
  }
  return s;
}

}  // namespace

std::string to_string(const Move& m) {
  const std::string t = " T" + std::to_string(m.thread);
  switch (m.kind) {
    case MoveKind::BlowupI: {
      std::string f;
      for (auto v : m.face) f += (f.empty() ? "" : ",") + std::to_string(v + 1);
      return "blowup1" + t + " {" + f + "}";
    }
    case MoveKind::BlowupII: return "blowup2" + t;
    case MoveKind::Descend: return "descend" + t;
    case MoveKind::Tightify: return "tightify" + t;
    case MoveKind::Relax: return "relax" + t + " " + std::to_string(m.vertex + 1);
    case MoveKind::Intersect: return "intersect" + t + " " + std::to_string(m.vertex + 1);
  }
  return "?";
}

const Thread& GameState::thread(int id) const {
  if (id < 0 || static_cast<std::size_t>(id) >= threads.size())
    throw Error(ErrorCode::IllegalMove, "unknown thread T" + std::to_string(id));
  return threads[static_cast<std::size_t>(id)];
}

GameState new_game(const Scenario& s) {
  if (s.m > s.vars.size()) throw Error(ErrorCode::InvalidScenario, "dimension exceeds the number of variables");
  GameState g;
  g.scenario = s;
  g.habitats.push_back(new_habitat(s.vars, s.hypersurfaces));
  for (const auto& [ideal, b] : s.pairs)
    if (!(ideal.vars() == s.vars)) throw Error(ErrorCode::InvalidScenario, "pair over a different variable set");
  Thread t;
  t.reps.push_back(ReesAlg{{{0, from_pairs(s.vars, s.pairs)}}});
  t.history.push_back(differential_closure(t.reps.back()));
  t.m = s.m;
  for (const auto& [ideal, b] : s.pairs) t.b0 = std::lcm(t.b0, b);
  g.threads.push_back(std::move(t));
  refresh(g);
  g.reports_log.push_back(reports(g));
  return g;
}

std::vector<Report> reports(const GameState& g) {
  std::vector<Report> out;
  for (const auto& t : g.threads) out.push_back(make_report(t));
  return out;
}

bool is_won(const GameState& g) { return g.main().analysis.resolved; }

std::optional<std::string> violation(const GameState& g, const Move& m) {
  if (is_won(g)) return "the game is won; no further moves";
  if (m.thread < 0 || static_cast<std::size_t>(m.thread) >= g.threads.size()) return "the move must name an existing thread";
  const Thread& t = g.thread(m.thread);
  if (!t.active) return "the thread must be active";
  const Analysis& an = t.analysis;
  switch (m.kind) {
    case MoveKind::BlowupI:
      if (an.resolved) return "type I blowup needs an unresolved thread";
      if (an.bold) return "type I blowup needs a gallimaufry that is not bold";
      if (m.face.empty() || std::find(an.complex.begin(), an.complex.end(), m.face) == an.complex.end())
        return "type I blowup needs a nonempty face of the complex";
      if (label_sum(an, m.face) < 1) return "type I blowup needs a face whose label sum is at least 1";
      return std::nullopt;
    case MoveKind::BlowupII:
      if (!an.bold) return "type II blowup needs a bold gallimaufry";
      return std::nullopt;
    case MoveKind::Descend:
      if (t.m == 0) return "descent needs dimension at least 1";
      if (!an.tight()) return "descent needs a tight gallimaufry";
      if (!an.empty_set_complex()) return "descent needs the empty set complex";
      return std::nullopt;
    case MoveKind::Tightify:
      if (an.resolved || an.bold || an.maxorder <= 0)
        return "tightification needs a gallimaufry that is not bold and has positive maxorder";
      return std::nullopt;
    case MoveKind::Relax:
      if (!an.vertices().count(m.vertex)) return "relaxation needs a vertex of the thread's complex";
      return std::nullopt;
    case MoveKind::Intersect: {
      std::set<std::size_t> vs;
      for (const auto& f : habitat_complex(g.habitat(), an))
        if (f.size() == 1) vs.insert(f.front());
      if (!vs.count(m.vertex)) return "intersection needs a vertex of the complex computed from the habitat";
      return std::nullopt;
    }
  }
  return "unknown move";
}

std::vector<Move> legal_moves(const GameState& g) {
  std::vector<Move> out;
  if (is_won(g)) return out;
  for (const auto& t : g.threads) {
    if (!t.active) continue;
    std::vector<Move> cands;
    for (const auto& f : t.analysis.complex)
      if (!f.empty()) cands.push_back({MoveKind::BlowupI, t.id, f, 0});
    cands.push_back({MoveKind::BlowupII, t.id, {}, 0});
    cands.push_back({MoveKind::Descend, t.id, {}, 0});
    cands.push_back({MoveKind::Tightify, t.id, {}, 0});
    for (auto v : t.analysis.vertices()) cands.push_back({MoveKind::Relax, t.id, {}, v});
    if (!t.analysis.resolved)
      for (const auto& f : habitat_complex(g.habitat(), t.analysis))
        if (f.size() == 1) cands.push_back({MoveKind::Intersect, t.id, {}, f.front()});
    for (const auto& c : cands)
      if (!violation(g, c)) out.push_back(c);
  }
  return out;
}

GameState apply_move(const GameState& g0, const Move& m) {
  if (auto why = violation(g0, m)) throw Error(ErrorCode::IllegalMove, to_string(m) + ": " + *why);
  GameState g = g0;
  const Thread t = g.thread(m.thread);
  const Habitat& h = g.habitat();
  switch (m.kind) {
    case MoveKind::BlowupI:
      do_blowup(g, t, face_center(h, t.current(), t.analysis, m.face));
      break;
    case MoveKind::BlowupII:
      do_blowup(g, t, bold_center(h, t.current(), t.analysis));
      break;
    case MoveKind::Tightify: {
      const Rational ob = t.analysis.maxorder * t.analysis.b;
      if (ob.get_den() != 1) throw Error(ErrorCode::NonIntegralDegree, "maxorder times generating degree is not an integer");
      const unsigned b0 = std::lcm(t.analysis.b, static_cast<unsigned>(ob.get_num().get_ui()));
      ReesAlg rep = tightify_rep(h, t.current(), t.analysis);
      ReesAlg alg = differential_closure(rep);
      spawn(g, t, Relation::Tightification, std::move(alg), std::move(rep), t.m, t.relaxed, b0);
      break;
    }
    case MoveKind::Descend:
      spawn(g, t, Relation::Descent, t.history.back(), t.reps.back(), t.m - 1, t.relaxed, t.b0);
      break;
    case MoveKind::Relax: {
      auto relaxed = t.relaxed;
      relaxed.insert(m.vertex);
      spawn(g, t, Relation::Relaxation, t.history.back(), t.reps.back(), t.m, relaxed, t.b0, m.vertex);
      break;
    }
    case MoveKind::Intersect:
      spawn(g, t, Relation::Intersection, intersect(h, t.history.back(), m.vertex), intersect(h, t.reps.back(), m.vertex, false),
            t.m, t.relaxed, t.b0, m.vertex);
      break;
  }
  g.moves.push_back(m);
  g.reports_log.push_back(reports(g));
  return g;
}

namespace {

std::string describe(const std::vector<Report>& want, const std::vector<Report>& got) {
  if (want.size() != got.size())
    return "expected " + std::to_string(want.size()) + " threads, got " + std::to_string(got.size());
  for (std::size_t i = 0; i < want.size(); ++i)
    if (!(want[i] == got[i])) return "report for T" + std::to_string(want[i].thread) + " differs";
  return "reports differ";
}

}  // namespace

GameState replay(const Scenario& s, const std::vector<Move>& moves, const std::vector<std::vector<Report>>* expected) {
  GameState g = new_game(s);
  auto check = [&](std::size_t k) {
    if (!expected || k >= expected->size()) return;
    if (!((*expected)[k] == g.reports_log[k]))
      throw Error(ErrorCode::ReplayDivergence, "turn " + std::to_string(k) + ": " + describe((*expected)[k], g.reports_log[k]));
  };
  check(0);
  for (std::size_t k = 0; k < moves.size(); ++k) {
    if (auto why = violation(g, moves[k]))
      throw Error(ErrorCode::ReplayDivergence, "turn " + std::to_string(k + 1) + ": " + to_string(moves[k]) + " is illegal (" + *why + ")");
    g = apply_move(g, moves[k]);
    check(k + 1);
  }
  return g;
}

}  // namespace galli

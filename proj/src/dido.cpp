#include "galli/dido.hpp"

#include <algorithm>

namespace galli {

const char* tag_name(Tag t) {
  switch (t) {
    case Tag::Hiro: return "hiro";
    case Tag::Redorder: return "redorder";
    case Tag::Induction: return "induction";
    case Tag::BoldII: return "boldII";
  }
  return "?";
}

bool multiset_less(std::vector<Rational> b, std::vector<Rational> a) {
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  std::vector<Rational> only_a, only_b;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(only_a));
  std::set_difference(b.begin(), b.end(), a.begin(), a.end(), std::back_inserter(only_b));
  if (only_a.empty()) return false;
  return std::all_of(only_b.begin(), only_b.end(), [&](const Rational& x) { return only_a.back() > x; });
}

namespace {

bool subset(const Face& a, const Face& b) { return std::includes(b.begin(), b.end(), a.begin(), a.end()); }

Rational label_sum(const Analysis& an, const Face& f) {
  Rational s = 0;
  for (auto v : f) s += an.labels.at(v);
  return s;
}

std::vector<Rational> measure(const Analysis& an) {
  std::vector<Rational> out;
  for (const auto& f : an.complex)
    if (!f.empty()) out.push_back(label_sum(an, f));
  std::sort(out.begin(), out.end(), std::greater<>());
  return out;
}

class Dido {
 public:
  Dido(const GameState& g, const StrategyOptions& opts) : opts_(opts) { r_.state = g; }

  StrategyResult run() {
    reduce_maxorder(0);
    if (!is_won(r_.state)) throw Error(ErrorCode::InvariantBreach, "strategy finished without resolving the main thread");
    return std::move(r_);
  }

 private:
  const Thread& t(int id) const { return r_.state.thread(id); }
  int last() const { return r_.state.threads.back().id; }

  void play(const Move& m, Tag tag) {
    if (r_.steps.size() >= opts_.max_moves)
      throw Error(ErrorCode::TerminationBreach, "move cap of " + std::to_string(opts_.max_moves) + " reached");
    if (auto why = violation(r_.state, m))
      throw Error(ErrorCode::InvariantBreach, "strategy chose an illegal move " + to_string(m) + " (" + *why + ")");
    const std::size_t blowups = r_.state.centers.size();
    r_.state = apply_move(r_.state, m);
    r_.steps.push_back({m, tag});
    if (r_.state.centers.size() > blowups)
      for (const auto& face : within_)
        for (auto j : face)
          if (!r_.state.center_inside.back().count(j))
            throw Error(ErrorCode::InvariantBreach, "center of " + to_string(m) + " is not inside E_" + std::to_string(j + 1) +
                                                        " of the face being resolved");
    if (opts_.on_move) opts_.on_move(r_.steps.back(), r_.state);
  }

  bool done(int id) const { return is_won(r_.state) || t(id).analysis.resolved || !t(id).active; }

  void reduce_maxorder(int id) {
    while (!done(id)) {
      const Analysis& an = t(id).analysis;
      if (an.bold) {
        play({MoveKind::BlowupII, id, {}, 0}, Tag::BoldII);
        continue;
      }
      if (an.maxorder == 0) {
        resolve_monomial(id);
        continue;
      }
      if (an.tight()) {
        if (t(id).m == 0) throw Error(ErrorCode::InvariantBreach, "tight gallimaufry of dimension 0");
        resolve_tight(id);
        continue;
      }
      const Rational before = an.maxorder;
      play({MoveKind::Tightify, id, {}, 0}, Tag::Redorder);
      resolve_tight(last());
      const Rational after = t(id).analysis.resolved ? Rational(0) : t(id).analysis.maxorder;
      r_.redorder_episodes.emplace_back(before, after);
      if (!done(id) && !(after < before))
        throw Error(ErrorCode::TerminationBreach, "maxorder of T" + std::to_string(id) + " did not drop after a tightification episode");
    }
  }

  void resolve_monomial(int id) {
    while (!done(id)) {
      const Analysis& an = t(id).analysis;
      if (an.bold || an.maxorder != 0) return;
      std::vector<Face> cands;
      for (const auto& f : an.complex)
        if (!f.empty() && label_sum(an, f) >= 1) cands.push_back(f);
      if (cands.empty()) throw Error(ErrorCode::InvariantBreach, "monomial gallimaufry with no face of label sum at least 1");
      std::vector<Face> minimal;
      for (const auto& f : cands)
        if (std::none_of(cands.begin(), cands.end(), [&](const Face& g) { return g != f && subset(g, f); })) minimal.push_back(f);
      const Face face = *std::min_element(minimal.begin(), minimal.end());
      auto before = measure(an);
      r_.hiro_measures.push_back(before);
      play({MoveKind::BlowupI, id, face, 0}, Tag::Hiro);
      if (t(id).analysis.bold || t(id).analysis.maxorder != 0) continue;
      auto after = t(id).analysis.resolved ? std::vector<Rational>{} : measure(t(id).analysis);
      if (!multiset_less(after, before))
        throw Error(ErrorCode::TerminationBreach, "face label sums of T" + std::to_string(id) + " did not decrease");
    }
    if (t(id).analysis.resolved) r_.hiro_measures.push_back({});
  }

  // Faces of the complex over the vertices present when the episode began.
  static std::vector<Face> faces_over(const Analysis& an, const std::set<std::size_t>& w) {
    std::vector<Face> out;
    for (const auto& f : an.complex)
      if (std::all_of(f.begin(), f.end(), [&](std::size_t v) { return w.count(v) > 0; })) out.push_back(f);
    return out;
  }

  void resolve_tight(int id) {
    const std::set<std::size_t> w = t(id).analysis.vertices();
    while (!done(id)) {
      const Analysis& an = t(id).analysis;
      if (!an.tight()) {
        reduce_maxorder(id);
        return;
      }
      if (t(id).m == 0) throw Error(ErrorCode::InvariantBreach, "tight gallimaufry of dimension 0");
      const auto work = faces_over(an, w);
      std::vector<Face> maximal;
      for (const auto& f : work)
        if (std::none_of(work.begin(), work.end(), [&](const Face& g) { return g != f && subset(f, g); }))
          maximal.push_back(f);
      if (maximal.empty()) throw Error(ErrorCode::InvariantBreach, "unresolved tight thread with no face over its vertices");
      const Face face = *std::min_element(maximal.begin(), maximal.end());
      int cur = id;
      for (auto j : face) {
        play({MoveKind::Intersect, cur, {}, j}, Tag::Induction);
        cur = last();
      }
      while (!t(cur).analysis.resolved && !t(cur).analysis.vertices().empty()) {
        play({MoveKind::Relax, cur, {}, *t(cur).analysis.vertices().begin()}, Tag::Induction);
        cur = last();
      }
      if (!t(cur).analysis.resolved) {
        within_.push_back(face);
        play({MoveKind::Descend, cur, {}, 0}, Tag::Induction);
        reduce_maxorder(last());
        within_.pop_back();
      }
      if (!done(id) && t(id).analysis.tight() && faces_over(t(id).analysis, w).size() >= work.size())
        throw Error(ErrorCode::TerminationBreach, "face count of T" + std::to_string(id) + " did not drop");
    }
  }

  StrategyOptions opts_;
  StrategyResult r_;
  /// Faces of the induction episodes in progress; their blowups must lie inside every listed hypersurface.
  std::vector<Face> within_;
};

}  // namespace

StrategyResult win(const GameState& g, const StrategyOptions& opts) { return Dido(g, opts).run(); }

}  // namespace galli

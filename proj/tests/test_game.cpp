#include <gtest/gtest.h>

#include "galli/game.hpp"
#include "helpers.hpp"

using namespace galli;
using namespace galli::testing;

namespace {

Scenario cusp() {
  auto v = vs({"x", "y"});
  return Scenario{v, {}, {{I(v, {"x^2-y^3"}), 1}}, 2};
}

Move mv(MoveKind k, int t, std::size_t vertex = 0) { return Move{k, t, {}, vertex}; }

std::vector<Move> trace_moves() {
  using K = MoveKind;
  return {mv(K::Tightify, 0), mv(K::Descend, 1), mv(K::Tightify, 2), mv(K::Descend, 3),  mv(K::BlowupII, 4),
          mv(K::Tightify, 0), mv(K::Intersect, 5, 0), mv(K::Relax, 6, 0), mv(K::Descend, 7), mv(K::Tightify, 8),
          mv(K::Descend, 9),  mv(K::BlowupII, 10)};
}

}  // namespace

TEST(game, cusp_first_report) {
  auto g = new_game(cusp());
  auto r = reports(g).front();
  EXPECT_EQ(r.dim, 2u);
  EXPECT_EQ(r.gendeg, 1u);
  EXPECT_FALSE(r.bold);
  EXPECT_EQ(r.complex, std::vector<Face>{Face{}});
  EXPECT_EQ(*r.maxorder, 2);
  EXPECT_EQ(legal_moves(g), std::vector<Move>{mv(MoveKind::Tightify, 0)});
}

TEST(game, unit_scenario_is_won) {
  auto v = vs({"x"});
  auto g = new_game(Scenario{v, {}, {{I(v, {"1"}), 1}}, 1});
  EXPECT_TRUE(is_won(g));
  EXPECT_TRUE(legal_moves(g).empty());
}

TEST(game, illegal_descent_is_rejected) {
  auto g = new_game(cusp());
  try {
    apply_move(g, mv(MoveKind::Descend, 0));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::IllegalMove);
    EXPECT_NE(std::string(e.what()).find("tight"), std::string::npos);
  }
}

TEST(game, single_blowup_resolves_degree_two_cusp) {
  auto v = vs({"x", "y"});
  auto g = new_game(Scenario{v, {}, {{I(v, {"x^2-y^3"}), 2}}, 2});
  g = apply_move(g, mv(MoveKind::Descend, 0));
  g = apply_move(g, mv(MoveKind::Tightify, 1));
  g = apply_move(g, mv(MoveKind::Descend, 2));
  ASSERT_TRUE(g.threads[3].analysis.bold);
  g = apply_move(g, mv(MoveKind::BlowupII, 3));
  EXPECT_TRUE(is_won(g));
}

TEST(game, trace) {
  auto moves = trace_moves();
  GameState g = new_game(cusp());
  std::vector<GameState> states = {g};
  for (const auto& m : moves) {
    g = apply_move(g, m);
    states.push_back(g);
  }
  auto v = vs({"x", "y"});
  // After tightify T0.
  EXPECT_TRUE(graded_equal(states[1].threads[1].history.back().at(0), differential_closure(alg(v, {{{"x^2-y^3"}, 2}})), 6));
  EXPECT_EQ(reports(states[1])[1].gendeg, 2u);
  EXPECT_EQ(reports(states[1])[1].complex, std::vector<Face>{Face{}});
  // After descend T1.
  EXPECT_EQ(*reports(states[2])[2].maxorder, Rational(3, 2));
  EXPECT_FALSE(reports(states[2])[2].bold);
  // After tightify T2: degree-1 piece is <x, y> on the plane, <y> on the line.
  EXPECT_TRUE(graded_piece(states[3].threads[3].history.back().at(0), 1).equals(I(v, {"x", "y"})));
  EXPECT_TRUE(reports(states[4])[4].bold);
  // After the type II blowup.
  const auto& s5 = states[5];
  const Chart& ychart = s5.habitat().charts[1];
  EXPECT_EQ(*ychart.slots[0], 1u);
  const auto& main = s5.threads[0].history.back();
  EXPECT_TRUE(main.at(ychart.id).listed(1).equals(I(v, {"(x^2-y)*y"})));
  auto r0 = reports(s5)[0];
  EXPECT_EQ(r0.complex, (std::vector<Face>{{}, {0}}));
  EXPECT_EQ(r0.labels.at(0), 1);
  EXPECT_EQ(*r0.maxorder, 1);
  for (int t = 1; t <= 4; ++t) EXPECT_TRUE(reports(s5)[t].resolved);
  // Tightification of T0 in the y chart.
  EXPECT_TRUE(states[6].threads[5].history.back().at(ychart.id).listed(1).equals(I(v, {"x^2-y"})));
  EXPECT_EQ(reports(states[6])[5].complex, r0.complex);
  // Descent after intersect and relax: restriction to y=0 is (x^2, 1), maxorder 2, empty set complex.
  auto r8 = reports(states[9])[8];
  EXPECT_EQ(*r8.maxorder, 2);
  EXPECT_EQ(r8.complex, std::vector<Face>{Face{}});
  const auto& z = states[9].threads[8].analysis.chart(ychart.id).zoom;
  ASSERT_TRUE(z.has_value());
  EXPECT_TRUE(z->restricted.listed(1).equals(I(z->restricted.vars, {"x^2"})));
  EXPECT_TRUE(reports(states[11])[10].bold);
  EXPECT_EQ(states.back().habitats.size(), 3u);
}

TEST(game, replay_matches_and_detects_divergence) {
  auto moves = trace_moves();
  auto g = replay(cusp(), moves);
  auto again = replay(cusp(), moves, &g.reports_log);
  EXPECT_EQ(reports(again), reports(g));
  auto bad = g.reports_log;
  bad[3][0].gendeg = 7;
  EXPECT_THROW(replay(cusp(), moves, &bad), Error);
  EXPECT_EQ(replay(cusp(), {}).turn(), 0);
}

TEST(game, relax_then_intersect_uses_the_habitat) {
  auto moves = trace_moves();
  moves.resize(6);
  auto g = replay(cusp(), moves);
  g = apply_move(g, mv(MoveKind::Relax, 5, 0));
  EXPECT_TRUE(reports(g)[6].complex == std::vector<Face>{Face{}});
  EXPECT_FALSE(violation(g, mv(MoveKind::Intersect, 6, 0)).has_value());
  EXPECT_TRUE(violation(g, mv(MoveKind::Relax, 6, 0)).has_value());
}

TEST(game, xy_shape) {
  auto v = vs({"x", "y"});
  auto g = new_game(Scenario{v, {}, {{I(v, {"x*y*(x-y)"}), 2}}, 2});
  auto r = reports(g)[0];
  EXPECT_EQ(r.gendeg, 2u);
  EXPECT_FALSE(r.bold);
  // Recorded here as computed; see the ledger for why this is not 1.
  EXPECT_EQ(*r.maxorder, Rational(3, 2));
}

#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "galli/dido.hpp"
#include "galli/serialize.hpp"
#include "helpers.hpp"

using namespace galli;
using namespace galli::testing;

namespace {

Json load(const std::string& name) {
  std::ifstream in(std::string(GALLI_FIXTURES) + "/" + name);
  return Json::parse(in);
}

void expect_invalid(const std::string& text) {
  try {
    scenario_from_json(Json::parse(text));
    FAIL() << text;
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidScenario) << text;
  }
}

}  // namespace

TEST(rational, strings) {
  EXPECT_EQ(rational_str(Rational(3, 2)), "3/2");
  EXPECT_EQ(rational_str(Rational(4, 2)), "2");
  EXPECT_EQ(parse_rational("6/4"), Rational(3, 2));
  EXPECT_EQ(parse_rational("0"), 0);
  EXPECT_THROW(parse_rational("1/0"), Error);
  EXPECT_THROW(parse_rational("half"), Error);
}

TEST(scenario, fixture_and_round_trip) {
  const Scenario s = scenario_from_json(load("cusp.json"));
  EXPECT_EQ(s.vars.names(), (std::vector<std::string>{"x", "y"}));
  EXPECT_EQ(s.m, 2u);
  ASSERT_EQ(s.pairs.size(), 1u);
  EXPECT_EQ(s.pairs[0].second, 1u);
  const Scenario back = scenario_from_json(to_json(s));
  EXPECT_EQ(to_json(back), to_json(s));
  const Scenario h = scenario_from_json(Json::parse(
      R"({"variables":["x","y","z"],"hypersurfaces":["x",null,"z"],"threads":[{"pairs":[{"degree":2,"generators":["x*y","z^2"]}]}]})"));
  EXPECT_EQ(h.m, 3u);
  ASSERT_EQ(h.hypersurfaces.size(), 3u);
  EXPECT_FALSE(h.hypersurfaces[1]);
  EXPECT_EQ(to_json(h)["hypersurfaces"], Json::parse(R"(["x",null,"z"])"));
}

TEST(scenario, rejects_bad_input) {
  expect_invalid(R"({"hypersurfaces":[],"threads":[]})");
  expect_invalid(R"({"variables":["x"],"threads":[]})");
  expect_invalid(R"({"variables":["x"],"threads":[{"pairs":[{"degree":1,"generators":["x"]}]},{"pairs":[{"degree":1,"generators":["x"]}]}]})");
  expect_invalid(R"({"variables":["x"],"threads":[{"pairs":[{"degree":0,"generators":["x"]}]}]})");
  expect_invalid(R"({"variables":["x"],"threads":[{"pairs":[{"degree":1,"generators":["y"]}]}]})");
  expect_invalid(R"({"variables":["x"],"threads":[{"pairs":[{"degree":1,"generators":["x"]}],"dimension":2}]})");
  expect_invalid(R"({"variables":["x","y"],"hypersurfaces":["x+y"],"threads":[{"pairs":[{"degree":1,"generators":["x"]}]}]})");
}

TEST(move, round_trip_and_one_based_vertices) {
  const std::vector<Move> moves = {{MoveKind::BlowupI, 2, {0, 3}, 0}, {MoveKind::BlowupII, 1, {}, 0},
                                   {MoveKind::Descend, 0, {}, 0},     {MoveKind::Tightify, 4, {}, 0},
                                   {MoveKind::Relax, 6, {}, 0},       {MoveKind::Intersect, 5, {}, 2}};
  for (const auto& m : moves) EXPECT_EQ(move_from_json(to_json(m)), m);
  EXPECT_EQ(to_json(moves[0]).dump(), R"({"kind":"blowup1","thread":2,"face":[1,4]})");
  EXPECT_EQ(to_json(moves[5]).dump(), R"({"kind":"intersect","thread":5,"vertex":3})");
  EXPECT_THROW(move_from_json(Json::parse(R"({"kind":"jump","thread":0})")), Error);
  EXPECT_THROW(move_from_json(Json::parse(R"({"kind":"relax","thread":0,"vertex":0})")), Error);
}

TEST(report, format) {
  Report r;
  r.thread = 5;
  r.dim = 2;
  r.gendeg = 2;
  r.complex = {{}, {0}};
  r.labels = {{0, Rational(1, 2)}};
  r.maxorder = Rational(3, 2);
  EXPECT_EQ(to_json(r).dump(),
            R"({"thread":5,"dim":2,"gendeg":2,"bold":false,"complex":[[],[1]],"labels":{"1":"1/2"},"maxorder":"3/2","active":true,"resolved":false})");
  EXPECT_EQ(report_from_json(to_json(r)), r);
  Report b;
  b.bold = true;
  b.complex = {{}};
  EXPECT_TRUE(to_json(b)["maxorder"].is_null());
  EXPECT_EQ(report_from_json(to_json(b)), b);
}

TEST(transcript, round_trip_replays) {
  const Scenario s = scenario_from_json(load("cusp.json"));
  const auto r = win(new_game(s));
  const std::string text = transcript_text(r.state);
  std::istringstream in(text);
  const Transcript t = read_transcript(in);
  EXPECT_EQ(t.moves.size(), r.steps.size());
  EXPECT_EQ(t.reports.size(), t.moves.size() + 1);
  const GameState g = replay(t.scenario, t.moves, &t.reports);
  EXPECT_TRUE(is_won(g));
  EXPECT_EQ(transcript_text(g), text);
  const auto first = Json::parse(text.substr(0, text.find('\n')));
  EXPECT_EQ(first["turn"], 0);
  EXPECT_TRUE(first.contains("scenario"));
}

TEST(transcript, rejects_malformed) {
  std::istringstream empty("");
  EXPECT_THROW(read_transcript(empty), Error);
  std::istringstream gap(R"({"turn":1,"move":{"kind":"tightify","thread":0}})");
  EXPECT_THROW(read_transcript(gap), Error);
  std::istringstream junk("not json");
  EXPECT_THROW(read_transcript(junk), Error);
}

TEST(algebra_json, lists_generators) {
  const Scenario s = scenario_from_json(load("cusp.json"));
  const Json j = algebra_json(new_game(s));
  ASSERT_EQ(j["threads"].size(), 1u);
  EXPECT_EQ(j["threads"][0]["charts"]["0"]["1"][0], "y^3 - x^2");
  EXPECT_EQ(j["charts"][0]["to_root"], Json::parse(R"(["x","y"])"));
}

TEST(move, text_form) {
  const std::vector<Move> moves = {{MoveKind::BlowupI, 2, {0, 3}, 0}, {MoveKind::BlowupII, 1, {}, 0},
                                   {MoveKind::Relax, 6, {}, 0}, {MoveKind::Intersect, 5, {}, 2}};
  for (const auto& m : moves) EXPECT_EQ(parse_move(to_string(m)), m);
  EXPECT_EQ(parse_move("tightify 0"), (Move{MoveKind::Tightify, 0, {}, 0}));
  EXPECT_THROW(parse_move("descend"), Error);
  EXPECT_THROW(parse_move("descend T0 3"), Error);
  EXPECT_THROW(parse_move("blowup1 T0 1,2"), Error);
}

TEST(report, text) {
  Report r;
  r.dim = 2;
  r.gendeg = 1;
  r.complex = {{}, {0}};
  r.labels = {{0, 1}};
  r.maxorder = Rational(1);
  EXPECT_EQ(report_text(r), "T0: dim 2, gendeg 1, complex {{} {1}}, labels 1:1, maxorder 1");
}

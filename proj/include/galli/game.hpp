#pragma once

// The resolution game: threads of gallimaufries, the six moves, reports and replay.

#include <optional>
#include <string>
#include <vector>

#include "galli/gallimaufry.hpp"

namespace galli {

/// Initial data: a habitat on the root chart and one singularity with its dimension.
struct Scenario {
  VarSet vars;
  std::vector<std::optional<Poly>> hypersurfaces;
  std::vector<Pair> pairs;
  unsigned m = 0;
};

enum class Relation { Main, Tightification, Descent, Relaxation, Intersection };

struct Thread {
  int id = 0;
  Relation relation = Relation::Main;
  std::optional<int> parent;
  std::optional<std::size_t> vertex;
  /// Index into GameState::habitats of history.front().
  std::size_t born = 0;
  /// One algebra per habitat the thread has lived on.
  std::vector<ReesAlg> history;
  /// Unclosed generators matching each history entry.
  std::vector<ReesAlg> reps;
  bool active = true;
  unsigned m = 0;
  std::set<std::size_t> relaxed;
  unsigned b0 = 1;
  Analysis analysis;

  Gallimaufry current() const { return {history.back(), m, relaxed, b0, reps.back()}; }
};

enum class MoveKind { BlowupI, BlowupII, Descend, Tightify, Relax, Intersect };

struct Move {
  MoveKind kind = MoveKind::Tightify;
  int thread = 0;
  Face face;
  std::size_t vertex = 0;

  bool operator==(const Move&) const = default;
};

std::string to_string(const Move& m);

/// The player's view of one thread.
struct Report {
  int thread = 0;
  bool active = true;
  unsigned dim = 0;
  unsigned gendeg = 1;
  bool bold = false;
  bool resolved = false;
  std::vector<Face> complex;
  std::map<std::size_t, Rational> labels;
  std::optional<Rational> maxorder;

  bool operator==(const Report&) const = default;
};

struct GameState {
  Scenario scenario;
  std::vector<Habitat> habitats;
  /// centers[k] took habitats[k] to habitats[k + 1], in the coordinates after the blowup's coordinate changes.
  std::vector<CenterSpec> centers;
  /// center_inside[k]: the slots j with centers[k] inside E_j.
  std::vector<std::set<std::size_t>> center_inside;
  std::vector<Thread> threads;
  std::vector<Move> moves;
  /// reports_log[k] = reports after k moves.
  std::vector<std::vector<Report>> reports_log;

  const Habitat& habitat() const { return habitats.back(); }
  const Thread& thread(int id) const;
  const Thread& main() const { return threads.front(); }
  int turn() const { return static_cast<int>(moves.size()); }
};

GameState new_game(const Scenario& s);

std::vector<Report> reports(const GameState& g);
bool is_won(const GameState& g);

/// The legality clause the move violates, if any.
std::optional<std::string> violation(const GameState& g, const Move& m);
std::vector<Move> legal_moves(const GameState& g);
GameState apply_move(const GameState& g, const Move& m);

/// Replays moves from the scenario; checks recorded reports when given.
GameState replay(const Scenario& s, const std::vector<Move>& moves,
                 const std::vector<std::vector<Report>>* expected = nullptr);

}  // namespace galli

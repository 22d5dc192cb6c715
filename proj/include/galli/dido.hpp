#pragma once

// The automated winning strategy.

#include <functional>
#include <vector>

#include "galli/game.hpp"

namespace galli {

enum class Tag { Hiro, Redorder, Induction, BoldII };

const char* tag_name(Tag t);

struct StrategyStep {
  Move move;
  Tag tag;
};

struct StrategyOptions {
  std::size_t max_moves = 10'000;
  /// Called after every move.
  std::function<void(const StrategyStep&, const GameState&)> on_move;
};

struct StrategyResult {
  GameState state;
  std::vector<StrategyStep> steps;
  /// Sorted (descending) label sums of nonempty faces, before each monomial blowup and once at the end.
  std::vector<std::vector<Rational>> hiro_measures;
  /// Maxorder of a thread before and after each tightify-and-resolve episode.
  std::vector<std::pair<Rational, Rational>> redorder_episodes;
};

/// True when b is obtained from a by replacing elements with finitely many strictly smaller ones.
bool multiset_less(std::vector<Rational> b, std::vector<Rational> a);

/// Plays until the main thread is resolved.
StrategyResult win(const GameState& g, const StrategyOptions& opts = {});

}  // namespace galli

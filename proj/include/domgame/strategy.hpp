#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "domgame/boxes.hpp"
#include "domgame/game.hpp"

namespace domgame {

enum class Tiebreak : std::uint8_t { kLookahead3, kHeuristic5 };
enum class MoveSource : std::uint8_t { kRootBoxesOnly, kAllDense };

struct StrategyConfig {
  // Heuristic5 applies only when the maximal gain is exactly 6; otherwise
  // the three-ply lookahead is used.
  Tiebreak tiebreak = Tiebreak::kHeuristic5;
  MoveSource ladder = MoveSource::kRootBoxesOnly;
  bool simplified_ok = false;  // input has no two leaves at distance 4
};

struct ScoredMove {
  MoveCandidate candidate;
  int gain = 0;
  long tiebreak_score = 0;
};

// Dominator's move: among the eligible dense-graph vertices, the maximal
// gain candidate whose successor admits a corruption-free decomposition.
// When the position carries a certified semi-corrupted component, the move
// is taken from the corrupted box. Throws InvariantViolation when no good
// move exists.
std::pair<int, GameState> play(const GameState& s, const StrategyConfig& cfg);

// Staller post-processing: the maximal-gain (graph, values) pair whose
// successor is good for the next Dominator move. Throws InvariantViolation
// when none exists.
GameState update(const GameState& s, int staller_move, const StrategyConfig& cfg);

// Among tied maximal-gain candidates, maximizes the minimal three-ply
// cumulative gain over all Staller replies in the underlying graph.
ScoredMove lookahead_tiebreak(const GameState& s, const std::vector<ScoredMove>& tied,
                              const StrategyConfig& cfg);

// The gain-6 priority cascade: white vertex of a dispensible component,
// then a BWBHH root box in the result, then a strong semi-triplet subtree
// or one with a B3 leaf, then a dispensible type-1 component.
ScoredMove heuristic_tiebreak(const GameState& s, const std::vector<ScoredMove>& tied,
                              const std::optional<BoxDecomposition>& current,
                              const StrategyConfig& cfg);

// Fast path for forests with no two leaves at distance 4: greedy maximal
// gain such that every successor component is a regular (non-C12) box on
// its own; no densify, no decomposition search.
std::pair<int, GameState> simplified_play(const GameState& s);
GameState simplified_update(const GameState& s, int staller_move);

bool no_two_leaves_at_distance4(const Forest& g);

// Every component is a regular complex or regular path box by itself.
bool all_components_plain_regular(const GameState& s);

}  // namespace domgame

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "domgame/forest.hpp"

namespace domgame {

enum class Color : std::uint8_t { kWhite, kBlue, kRed };
enum class Player : std::uint8_t { kDominator, kStaller };
enum class Variant : std::uint8_t { kDominatorStart, kStallerStart };

// Per-label color/value tables. Values are 0 (red), 2 (B2) or 3 (white/B3);
// a vertex is "high" when its value is 3.
using Colors = std::array<Color, kMaxLabels>;
using Values = std::array<std::int8_t, kMaxLabels>;

inline bool is_high(const Colors& c, const Values& p, int v) {
  return c[v] != Color::kRed && p[v] == 3;
}

const char* to_string(Color c);
const char* to_string(Player p);
const char* to_string(Variant v);

// Thrown when a state contradicts one of the guarantees the strategy is
// supposed to maintain (e.g. no good move exists). The verification harness
// records these as failures instead of aborting.
struct InvariantViolation {
  std::string what;
};

struct MoveRecord {
  Player player;
  int vertex;
  int gain;
  int psi;  // gain - 7 on Dominator moves, gain - 3 on Staller moves
};

// Full game state: the original forest, the current underlying graph
// (red vertices pruned, some blue-blue edges dropped), colors, values and
// the move ledger. Plain value type; branching play copies it.
struct GameState {
  Forest original;
  Forest underlying;
  Colors color{};
  Values value{};
  std::vector<MoveRecord> history;
  Variant variant = Variant::kDominatorStart;
  int cumulative_psi = 0;      // over algorithm-indexed moves
  int min_cumulative_psi = 0;  // minimum of the running sum above
  bool shifted = false;        // Staller-start opener already absorbed

  int n() const { return original.size(); }
  int moves_played() const { return static_cast<int>(history.size()); }
  Player to_move() const;

  // Algorithm-indexed move number of the NEXT move: in a Staller-start game
  // the opener is move 0 and the Dominator-start algorithm runs from 1.
  int next_algo_index() const;

  int total_value() const;
  VertexMask white_mask() const;
  VertexMask blue_mask() const;
};

// One post-move option: the underlying graph and value assignment chosen for
// the touched component, everything else carried over.
struct MoveCandidate {
  int move = -1;
  Forest new_underlying;
  Colors new_colors{};
  Values new_values{};
  int gain = 0;
  // Deterministic sort key: retained in-component edges then values.
  std::vector<std::pair<int, int>> retained_edges;
  std::vector<std::int8_t> value_key;
};

int t_max(int n, Variant variant);

GameState initial_state(const Forest& g, Variant variant);

// Exactly the non-red vertices of the underlying graph (Claim on legality).
VertexMask legal_moves(const GameState& s);

bool is_terminal(const GameState& s);

// Forced colors after playing v; throws on an illegal move.
Colors recolor(const GameState& s, int v);

// All legal (graph, value) pairs resulting from playing v, restricted to
// the component of v; ordered by descending gain, then by the deterministic
// key. Candidates gaining fewer than 3 points are dropped (a gain-3 option
// always exists).
std::vector<MoveCandidate> candidate_moves(const GameState& s, int v);

GameState apply(const GameState& s, const MoveCandidate& c);

// Staller-start bookkeeping: after the opener, every blue vertex is raised
// to B3 and subsequent moves run the Dominator-start algorithm shifted by
// one. Throws unless exactly one move was played in a Staller-start game.
GameState staller_start_shift(const GameState& s);

// Applies the Staller-start opener with the canonical post-move choice (all
// new blues kept at value 3, no optional edge removals) and shifts.
GameState apply_staller_opener(const GameState& s, int v);

// Brute-force re-derivations used by tests and the verification harness.
Colors colors_from_history(const Forest& original, const std::vector<int>& moves);
VertexMask legal_moves_by_definition(const Forest& original, const std::vector<int>& moves);

}  // namespace domgame

#pragma once

#include "domgame/forest.hpp"
#include "domgame/game.hpp"

namespace domgame {

constexpr int kDefaultOracleCap = 16;

// Exact game domination number by minimax over (dominated set, mover)
// states; Dominator minimizes the game length, Staller maximizes. Throws a
// capacity error when the forest exceeds the cap.
int gamma(const Forest& g, Variant variant, int cap = kDefaultOracleCap);

// Memo-free recursion, for cross-checking the transposition table.
int gamma_unmemoized(const Forest& g, Variant variant, int cap = 10);

// gamma(g, variant) <= t_max(n, variant).
bool verify_bound(const Forest& g, Variant variant, int cap = kDefaultOracleCap);

// Optimal remaining game length from an arbitrary dominated set; exposed
// for the dominated-set-sufficiency property tests.
int gamma_from(const Forest& g, VertexMask dominated, Player mover, int cap = kDefaultOracleCap);

}  // namespace domgame

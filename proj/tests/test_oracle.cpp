#include "domgame/oracle.hpp"

#include <map>

#include <stdexcept>

#include "doctest.h"
#include "domgame/strategy.hpp"
#include "domgame/tree_enum.hpp"
#include "helpers.hpp"

using namespace domgame;
using namespace domgame::test;

TEST_CASE("small gamma values") {
  CHECK(gamma(path_graph(2), Variant::kDominatorStart) == 1);
  CHECK(gamma(path_graph(3), Variant::kDominatorStart) == 1);
  CHECK(gamma(path_graph(5), Variant::kDominatorStart) == 3);  // frozen regression value
  CHECK(gamma(star_graph(3), Variant::kDominatorStart) == 1);
  CHECK(gamma(path_graph(2), Variant::kStallerStart) == 1);
}

TEST_CASE("bounds hold on all small trees") {
  for (int n = 2; n <= 9; ++n) {
    for (const CanonicalTree& t : trees(n)) {
      Forest g = t.decode();
      CHECK(verify_bound(g, Variant::kDominatorStart));
      CHECK(verify_bound(g, Variant::kStallerStart));
    }
  }
  CHECK(verify_bound(path_graph(2), Variant::kStallerStart));  // 1 <= 1
  CHECK(verify_bound(star_graph(3), Variant::kDominatorStart));
}

TEST_CASE("capacity guard") {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < 18; ++i) edges.push_back({i, i + 1});
  Forest f = from_edges(18, edges);
  CHECK_THROWS_AS(gamma(f, Variant::kDominatorStart), std::invalid_argument);
}

TEST_CASE("memoized and plain recursion agree") {
  for (int n = 2; n <= 8; ++n) {
    for (const CanonicalTree& t : trees(n)) {
      Forest g = t.decode();
      CHECK(gamma(g, Variant::kDominatorStart) == gamma_unmemoized(g, Variant::kDominatorStart));
      CHECK(gamma(g, Variant::kStallerStart) == gamma_unmemoized(g, Variant::kStallerStart));
    }
  }
}

TEST_CASE("the strategy never beats the optimum against a minimax Staller") {
  // Staller replies by minimax (maximizing the remaining game length); the
  // strategy's game can only be as short as gamma_D or longer.
  StrategyConfig cfg;
  for (int n = 2; n <= 9; ++n) {
    for (const CanonicalTree& t : trees(n)) {
      Forest g = t.decode();
      int gd = gamma(g, Variant::kDominatorStart);
      GameState s = initial_state(g, Variant::kDominatorStart);
      while (!is_terminal(s)) {
        if (s.to_move() == Player::kDominator) {
          s = play(s, cfg).second;
          continue;
        }
        VertexMask dominated = g.vertices() & ~s.white_mask();
        int best_move = -1, best_len = -1;
        for (int v : bits(legal_moves(s))) {
          VertexMask next = dominated | closed_neighborhood(g, bit(v));
          int len = 1 + gamma_from(g, next, Player::kDominator);
          if (len > best_len) {
            best_len = len;
            best_move = v;
          }
        }
        s = update(s, best_move, cfg);
      }
      CHECK(s.moves_played() >= gd);
      CHECK(s.moves_played() <= t_max(n, Variant::kDominatorStart));
    }
  }
}

TEST_CASE("the value depends only on the dominated set and mover") {
  Forest g = path_graph(6);
  // Group all one- and two-move histories by the dominated set they reach.
  std::map<std::pair<VertexMask, int>, int> seen;
  std::vector<int> verts = mask_to_vector(g.vertices());
  for (int a : verts) {
    for (int b : verts) {
      VertexMask d1 = closed_neighborhood(g, bit(a));
      VertexMask d2 = d1 | closed_neighborhood(g, bit(b));
      if (d2 == d1) continue;  // second move illegal
      int v = gamma_from(g, d2, Player::kDominator);
      auto key = std::make_pair(d2, 0);
      auto it = seen.find(key);
      if (it == seen.end()) seen[key] = v;
      else CHECK(it->second == v);
    }
  }
  CHECK(!seen.empty());
}

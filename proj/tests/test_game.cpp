#include "domgame/game.hpp"

#include <set>

#include <stdexcept>

#include "doctest.h"
#include "domgame/boxes.hpp"
#include "helpers.hpp"

using namespace domgame;
using namespace domgame::test;

TEST_CASE("t_max") {
  CHECK(t_max(23, Variant::kDominatorStart) == 13);
  CHECK(t_max(5, Variant::kDominatorStart) == 3);
  CHECK(t_max(2, Variant::kStallerStart) == 1);
  CHECK(t_max(4, Variant::kStallerStart) == 2);
  CHECK_THROWS_AS(t_max(1, Variant::kDominatorStart), std::invalid_argument);
}

TEST_CASE("initial state") {
  GameState s = initial_state(path_graph(2), Variant::kDominatorStart);
  CHECK(s.total_value() == 6);
  CHECK(s.white_mask() == s.underlying.vertices());
  CHECK(s.to_move() == Player::kDominator);

  GameState st = initial_state(path_graph(4), Variant::kStallerStart);
  CHECK(st.to_move() == Player::kStaller);
  CHECK(t_max(st.n(), st.variant) == 2);

  Forest isolated;
  isolated.add_vertex(0);
  isolated.add_vertex(2);
  isolated.add_edge(0, 2);
  isolated.add_vertex(4);
  CHECK_THROWS_AS(initial_state(isolated, Variant::kDominatorStart), std::invalid_argument);
}

TEST_CASE("recolor and legal moves") {
  GameState s = initial_state(path_graph(3), Variant::kDominatorStart);
  CHECK(legal_moves(s) == (bit(0) | bit(2) | bit(4)));

  Colors center = recolor(s, 2);
  CHECK(center[0] == Color::kRed);
  CHECK(center[2] == Color::kRed);
  CHECK(center[4] == Color::kRed);

  Colors leaf = recolor(s, 0);
  CHECK(leaf[0] == Color::kRed);
  CHECK(leaf[2] == Color::kBlue);
  CHECK(leaf[4] == Color::kWhite);

  GameState after_center = apply(s, candidate_moves(s, 2).front());
  CHECK(is_terminal(after_center));
  CHECK(legal_moves(after_center) == 0);

  GameState after_leaf = apply(s, candidate_moves(s, 0).front());
  CHECK(!is_terminal(after_leaf));
  CHECK(legal_moves(after_leaf) == (bit(2) | bit(4)));
  CHECK_THROWS_AS(recolor(after_leaf, 0), std::invalid_argument);

  // P5 middle: neighbors turn blue, the ends stay white.
  GameState p5 = initial_state(path_graph(5), Variant::kDominatorStart);
  Colors mid = recolor(p5, 4);
  CHECK(mid[4] == Color::kRed);
  CHECK(mid[2] == Color::kBlue);
  CHECK(mid[6] == Color::kBlue);
  CHECK(mid[0] == Color::kWhite);
  CHECK(mid[8] == Color::kWhite);
}

TEST_CASE("candidate moves") {
  GameState p2 = initial_state(path_graph(2), Variant::kDominatorStart);
  auto cands = candidate_moves(p2, 0);
  REQUIRE(cands.size() == 1);
  CHECK(cands[0].gain == 6);
  CHECK(cands[0].new_underlying.empty());

  GameState p3 = initial_state(path_graph(3), Variant::kDominatorStart);
  auto leaf_cands = candidate_moves(p3, 0);
  REQUIRE(leaf_cands.size() == 2);
  std::multiset<int> gains{leaf_cands[0].gain, leaf_cands[1].gain};
  CHECK(gains == std::multiset<int>{3, 4});

  // P5 at the second vertex: cross-check the best gain against a direct
  // recomputation of p(V) from the color definitions.
  GameState p5 = initial_state(path_graph(5), Variant::kDominatorStart);
  auto c5 = candidate_moves(p5, 2);
  Colors after = colors_from_history(p5.original, {2});
  int lowest = 0;
  for (int v : bits(p5.original.vertices())) {
    if (after[v] == Color::kWhite) lowest += 3;
    else if (after[v] == Color::kBlue) lowest += 2;
  }
  int best_gain = p5.total_value() - lowest;
  REQUIRE(!c5.empty());
  CHECK(c5.front().gain == best_gain);
  CHECK(c5.front().gain == 7);
}

TEST_CASE("apply and the psi ledger") {
  GameState p2 = initial_state(path_graph(2), Variant::kDominatorStart);
  GameState done = apply(p2, candidate_moves(p2, 0).front());
  CHECK(is_terminal(done));
  CHECK(done.history.back().gain == 6);
  CHECK(done.history.back().psi == -1);  // gain 6 on a Dominator move
  CHECK(done.cumulative_psi == -1);

  // Staller arithmetic: psi = gain - 3.
  GameState p3 = initial_state(path_graph(3), Variant::kDominatorStart);
  GameState s1 = apply(p3, candidate_moves(p3, 0).front());  // Dominator leaf
  int staller_move = 4;
  GameState s2 = apply(s1, candidate_moves(s1, staller_move).front());
  CHECK(s2.history.back().player == Player::kStaller);
  CHECK(s2.history.back().psi == s2.history.back().gain - 3);

  // Stale candidates are rejected.
  auto stale = candidate_moves(p3, 0).front();
  CHECK_THROWS_AS(apply(s1, stale), std::invalid_argument);
}

TEST_CASE("staller start shift") {
  // Opener on a P3 leaf: the blue neighbor is raised to B3.
  GameState s = initial_state(path_graph(3), Variant::kStallerStart);
  GameState shifted = apply_staller_opener(s, 0);
  CHECK(shifted.shifted);
  CHECK(shifted.color[2] == Color::kBlue);
  CHECK(shifted.value[2] == 3);
  CHECK(shifted.to_move() == Player::kDominator);
  CHECK(shifted.next_algo_index() == 1);
  CHECK(shifted.cumulative_psi == 0);

  // Star center ends the game outright.
  GameState star = initial_state(star_graph(3), Variant::kStallerStart);
  GameState ended = apply_staller_opener(star, 0);
  CHECK(is_terminal(ended));
  CHECK(ended.history.back().gain == 12);

  // P5 end leaf: neighbor high, the rest still good.
  GameState p5 = initial_state(path_graph(5), Variant::kStallerStart);
  GameState after = apply_staller_opener(p5, 0);
  CHECK(after.value[2] == 3);
  CHECK(is_good(after, Phase::kDominatorToMove));

  CHECK_THROWS_AS(staller_start_shift(s), std::invalid_argument);
  GameState wrong = initial_state(path_graph(3), Variant::kDominatorStart);
  CHECK_THROWS_AS(apply_staller_opener(wrong, 0), std::invalid_argument);
}

TEST_CASE("every candidate gains at least 3 and p(V) decreases") {
  GameState s = initial_state(spider_graph(3, 2), Variant::kDominatorStart);
  for (int v : bits(legal_moves(s))) {
    for (const MoveCandidate& c : candidate_moves(s, v)) {
      CHECK(c.gain >= 3);
      GameState t = apply(s, c);
      CHECK(t.total_value() == s.total_value() - c.gain);
    }
  }
}

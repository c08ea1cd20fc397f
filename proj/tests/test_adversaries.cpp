#include "domgame/adversaries.hpp"

#include <stdexcept>

#include "doctest.h"
#include "helpers.hpp"

using namespace domgame;
using namespace domgame::test;

TEST_CASE("exhaustive adversary proposes exactly the legal moves") {
  GameState s = initial_state(path_graph(3), Variant::kDominatorStart);
  StrategyConfig cfg;
  GameState s1 = apply(s, candidate_moves(s, 0).front());  // Dominator leaf
  Adversary adv{AdversaryKind::kExhaustive, 0};
  auto moves = staller_moves(s1, adv, cfg, nullptr);
  CHECK(moves == std::vector<int>{2, 4});

  GameState over = apply(s, candidate_moves(s, 2).front());
  CHECK_THROWS_AS(staller_moves(over, adv, cfg, nullptr), std::invalid_argument);
}

TEST_CASE("greedy adversary returns one deterministic legal move") {
  // Dispensible type 2 box, form (ii).
  Forest g = path_graph(8);
  GameState s;
  s.original = g;
  s.underlying = g;
  s.color.fill(Color::kRed);
  s.value.fill(0);
  std::string tags = "ww2ww2ww";
  std::vector<int> labels = mask_to_vector(g.vertices());
  for (size_t i = 0; i < labels.size(); ++i) {
    s.color[labels[i]] = tags[i] == 'w' ? Color::kWhite : Color::kBlue;
    s.value[labels[i]] = tags[i] == '2' ? 2 : 3;
  }
  StrategyConfig cfg;
  Adversary adv{AdversaryKind::kGreedyMinGain, 0};
  auto m1 = staller_moves(s, adv, cfg, nullptr);
  auto m2 = staller_moves(s, adv, cfg, nullptr);
  REQUIRE(m1.size() == 1);
  CHECK(m1 == m2);
  CHECK((legal_moves(s) & bit(m1[0])) != 0);
}

TEST_CASE("random adversary is reproducible per seed") {
  GameState s = initial_state(spider_graph(3, 2), Variant::kDominatorStart);
  StrategyConfig cfg;
  Adversary adv{AdversaryKind::kRandom, 42};
  SplitMix64 r1(42), r2(42), r3(7);
  std::vector<int> seq1, seq2, seq3;
  for (int i = 0; i < 8; ++i) {
    seq1.push_back(staller_moves(s, adv, cfg, &r1)[0]);
    seq2.push_back(staller_moves(s, adv, cfg, &r2)[0]);
    seq3.push_back(staller_moves(s, adv, cfg, &r3)[0]);
  }
  CHECK(seq1 == seq2);
  CHECK(seq1 != seq3);  // overwhelmingly likely for a 7-vertex menu
  CHECK_THROWS_AS(staller_moves(s, adv, cfg, nullptr), std::invalid_argument);
}

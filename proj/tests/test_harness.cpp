#include "domgame/verify.hpp"

#include "doctest.h"
#include "domgame/graph_io.hpp"
#include "helpers.hpp"

using namespace domgame;
using namespace domgame::test;

TEST_CASE("graph parsing") {
  ParsedGraph p2 = parse_graph("n 2\ne 0 1\n");
  CHECK(p2.forest == path_graph(2));

  ParsedGraph p3 = parse_graph("# comment\nn 3\ne 0 1\ne 1 2\n");
  CHECK(p3.forest == path_graph(3));
  CHECK(p3.id_of(0) == 0);
  CHECK(p3.id_of(4) == 2);

  // Arbitrary ids are remapped in first-appearance order.
  ParsedGraph weird = parse_graph("n 3\ne 7 100\ne 100 9\n");
  CHECK(weird.forest == path_graph(3));
  CHECK(weird.label_of(7) == 0);
  CHECK(weird.label_of(100) == 2);
  CHECK(weird.label_of(9) == 4);

  CHECK_THROWS_AS(parse_graph("n 3\ne 0 1\ne 1 2\ne 2 0\n"), ParseError);  // cycle
  CHECK_THROWS_AS(parse_graph("n 3\ne 0 1\n"), ParseError);                // isolate
  CHECK_THROWS_AS(parse_graph("n 2\ne 0\n"), ParseError);                  // malformed
  CHECK_THROWS_AS(parse_graph("e 0 1\n"), ParseError);                     // no header

  try {
    parse_graph("n 3\ne 0 1\nx 1 2\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
  }
}

TEST_CASE("verification smoke run stays clean") {
  VerifyOptions opt;
  opt.max_n = 7;
  opt.jobs = 2;
  VerificationReport r = run_verify(opt);
  CHECK(r.ok());
  CHECK(r.total_games > 0);
  CHECK(!r.per_n.empty());

  // Deterministic across runs and job counts.
  VerifyOptions opt1 = opt;
  opt1.jobs = 1;
  VerificationReport r1 = run_verify(opt1);
  CHECK(r1.total_games == r.total_games);
  CHECK(r1.failures.size() == r.failures.size());
}

TEST_CASE("forest scope smoke run") {
  VerifyOptions opt;
  opt.max_n = 6;
  opt.forests_scope = true;
  opt.jobs = 2;
  VerificationReport r = run_verify(opt);
  CHECK(r.ok());
}

TEST_CASE("greedy and random adversaries play single lines") {
  VerifyOptions opt;
  opt.max_n = 6;
  opt.adversary.kind = AdversaryKind::kGreedyMinGain;
  VerificationReport r = run_verify(opt);
  CHECK(r.ok());

  VerifyOptions ro;
  ro.max_n = 6;
  ro.adversary.kind = AdversaryKind::kRandom;
  ro.seed = 1234;
  VerificationReport rr1 = run_verify(ro);
  VerificationReport rr2 = run_verify(ro);
  CHECK(rr1.ok());
  CHECK(rr1.total_games == rr2.total_games);
}

TEST_CASE("records are stable text") {
  Forest g = path_graph(4);
  VerifyOptions opt;
  ForestResult a = verify_forest(g, Variant::kDominatorStart, opt, 1);
  ForestResult b = verify_forest(g, Variant::kDominatorStart, opt, 1);
  CHECK(a.games == b.games);
  CHECK(a.worst_t == b.worst_t);
  CHECK(a.worst_t <= t_max(4, Variant::kDominatorStart));

  GameRecord r;
  r.forest = "0.1.1";
  r.n = 3;
  r.variant = Variant::kStallerStart;
  r.adversary = "exhaustive";
  r.moves = {MoveRecord{Player::kStaller, 0, 3, 0}, MoveRecord{Player::kDominator, 2, 5, -2}};
  r.T = 2;
  r.t_max = 2;
  r.min_cumulative_psi = -2;
  r.result = "win";
  CHECK(r.to_line() ==
        "forest=0.1.1 n=3 variant=staller adversary=exhaustive T=2 Tmax=2 result=win "
        "minPsi=-2 moves=S:0:3:0,D:2:5:-2");
}

TEST_CASE("psi pattern checker accepts a clean game and flags a bad one") {
  GameState s = initial_state(path_graph(4), Variant::kDominatorStart);
  StrategyConfig cfg;
  while (!is_terminal(s)) {
    if (s.to_move() == Player::kDominator) s = play(s, cfg).second;
    else s = update(s, lowest_bit(legal_moves(s)), cfg);
  }
  CHECK(!check_psi_pattern(s).has_value());

  GameState fake = s;
  if (fake.history.size() >= 2) {
    fake.history[0].psi = -3;  // below the -2 floor
    fake.history[0].player = Player::kDominator;
    CHECK(check_psi_pattern(fake).has_value());
  }
}

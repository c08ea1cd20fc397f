#pragma once

#include <optional>
#include <string>
#include <vector>

#include "domgame/adversaries.hpp"
#include "domgame/forest.hpp"
#include "domgame/game.hpp"
#include "domgame/strategy.hpp"

namespace domgame {

// One played line with its verdict. All vertices are internal labels.
struct GameRecord {
  std::string forest;
  int n = 0;
  Variant variant = Variant::kDominatorStart;
  std::string adversary;
  std::vector<MoveRecord> moves;
  int T = 0;
  int t_max = 0;
  int min_cumulative_psi = 0;
  std::string result;  // win | loss | violation(<which>)

  bool failed() const { return result != "win"; }
  std::string to_line(const std::vector<long long>* ids = nullptr) const;
};

struct VerifyOptions {
  int max_n = 10;
  bool forests_scope = false;  // enumerate isolate-free forests instead of trees
  bool run_dominator_start = true;
  bool run_staller_start = true;
  Adversary adversary;
  StrategyConfig cfg;
  bool simplified = false;  // restrict to the distance-4-free family, fast path
  int jobs = 1;
  bool fail_fast = false;
  std::uint64_t seed = 0;
};

struct NSummary {
  int n = 0;
  Variant variant = Variant::kDominatorStart;
  long forests = 0;
  long games = 0;
  long failures = 0;
  int worst_t = 0;
  std::string to_line() const;
};

struct VerificationReport {
  long total_games = 0;
  std::vector<GameRecord> failures;
  std::vector<NSummary> per_n;
  std::string config_echo;
  bool ok() const { return failures.empty(); }
};

struct ForestResult {
  long games = 0;
  int worst_t = 0;
  std::vector<GameRecord> failures;
};

// Plays every adversary line on one forest, asserting the per-move
// invariants, and reports the worst game length.
ForestResult verify_forest(const Forest& g, Variant variant, const VerifyOptions& opt,
                           std::uint64_t task_seed);

VerificationReport run_verify(const VerifyOptions& opt);

// Per-move invariant check between consecutive states; returns a violation
// description or nothing. Independent re-derivations throughout.
std::optional<std::string> check_move(const GameState& before, const GameState& after,
                                      bool full_checks);

// Excess-gain pattern over a finished game: every non-final Dominator move
// with negative psi stays >= -2 and is repaid within the next two moves.
std::optional<std::string> check_psi_pattern(const GameState& final_state);

}  // namespace domgame

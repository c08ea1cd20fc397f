#include "domgame/verify.hpp"

#include <algorithm>
#include <atomic>
#include <sstream>
#include <thread>

#include "domgame/boxes.hpp"
#include "domgame/tree_enum.hpp"

namespace domgame {

std::string GameRecord::to_line(const std::vector<long long>* ids) const {
  std::ostringstream out;
  out << "forest=" << forest << " n=" << n << " variant=" << to_string(variant)
      << " adversary=" << adversary << " T=" << T << " Tmax=" << t_max << " result=" << result
      << " minPsi=" << min_cumulative_psi << " moves=";
  for (size_t i = 0; i < moves.size(); ++i) {
    if (i) out << ',';
    long long v = moves[i].vertex;
    if (ids && moves[i].vertex / 2 < static_cast<int>(ids->size()) && moves[i].vertex % 2 == 0)
      v = (*ids)[moves[i].vertex / 2];
    out << to_string(moves[i].player) << ':' << v << ':' << moves[i].gain << ':' << moves[i].psi;
  }
  return out.str();
}

std::string NSummary::to_line() const {
  std::ostringstream out;
  out << "n=" << n << " variant=" << to_string(variant) << " forests=" << forests
      << " games=" << games << " failures=" << failures << " worstT=" << worst_t;
  return out.str();
}

namespace {

std::vector<int> history_vertices(const GameState& s) {
  std::vector<int> out;
  for (const MoveRecord& m : s.history) out.push_back(m.vertex);
  return out;
}

}  // namespace

std::optional<std::string> check_move(const GameState& before, const GameState& after,
                                      bool full_checks) {
  const MoveRecord& mv = after.history.back();

  // Legality per definition (the dominated set must grow) matches the
  // non-red rule, and the move was legal.
  VertexMask legal_def = legal_moves_by_definition(before.original, history_vertices(before));
  if (legal_def != legal_moves(before)) return "legal-move set differs from W∪B";
  if ((legal_def & bit(mv.vertex)) == 0) return "illegal move played";

  // Colors re-derived from scratch.
  Colors expect = colors_from_history(after.original, history_vertices(after));
  for (int v : bits(after.original.vertices()))
    if (expect[v] != after.color[v]) return "colors diverge from definition";

  // Color monotonicity and the value function constraints.
  for (int v : bits(after.original.vertices())) {
    Color c0 = before.color[v], c1 = after.color[v];
    if (c0 == Color::kRed && c1 != Color::kRed) return "red vertex resurrected";
    if (c0 == Color::kBlue && c1 == Color::kWhite) return "blue vertex whitened";
    if (c1 == Color::kWhite && after.value[v] != 3) return "white vertex not worth 3";
    if (c1 == Color::kRed && after.value[v] != 0) return "red vertex not worth 0";
    if (c1 == Color::kBlue && after.value[v] != 2 && after.value[v] != 3)
      return "blue vertex with invalid value";
    if (c1 == Color::kRed && after.underlying.has_vertex(v)) return "red vertex in underlying";
    if (c1 != Color::kRed && !after.underlying.has_vertex(v)) return "live vertex missing";
  }

  // Moves gain at least 3 and p(V) decreases accordingly.
  if (mv.gain < 3) return "move gained fewer than 3 points";
  if (after.total_value() != before.total_value() - mv.gain) return "value ledger broken";

  // Underlying graph: monotone edge set, white neighborhoods intact, every
  // kept edge has a high endpoint and every white-incident edge is kept.
  for (auto [u, v] : after.underlying.edges()) {
    if (!before.underlying.has_edge(u, v)) return "underlying edge appeared";
    if (after.value[u] != 3 && after.value[v] != 3) return "kept edge without high endpoint";
  }
  for (int v : bits(after.underlying.vertices())) {
    if (after.color[v] != Color::kWhite) continue;
    if (after.underlying.neighbors_mask(v) != after.original.neighbors_mask(v))
      return "white neighborhood changed";
  }

  // Last move on a component gains at least 5.
  VertexMask comp = component_of(before.underlying, mv.vertex);
  if ((comp & after.underlying.vertices()) == 0 && mv.gain < 5)
    return "component eliminated with gain below 5";

  if (full_checks) {
    bool opener = after.variant == Variant::kStallerStart && after.moves_played() == 1;
    if (mv.player == Player::kStaller && mv.gain < 3) return "Staller gained fewer than 3";
    if (!opener && after.cumulative_psi < -2) return "cumulative excess gain below -2";
    if (!is_terminal(after)) {
      Phase phase = after.to_move() == Player::kDominator ? Phase::kDominatorToMove
                                                          : Phase::kStallerToMove;
      if (!is_good(after, phase)) return "invariant I violated";
    }
  }
  return std::nullopt;
}

std::optional<std::string> check_psi_pattern(const GameState& final_state) {
  // Algorithm-indexed psi sequence: the Staller-start opener is excluded.
  std::vector<int> psi;
  std::vector<bool> dominator;
  for (size_t i = 0; i < final_state.history.size(); ++i) {
    if (final_state.variant == Variant::kStallerStart && i == 0) continue;
    psi.push_back(final_state.history[i].psi);
    dominator.push_back(final_state.history[i].player == Player::kDominator);
  }
  int T = static_cast<int>(psi.size());
  for (int t = 0; t + 1 < T; ++t) {
    if (!dominator[t]) continue;
    if (psi[t] >= 0) continue;
    if (psi[t] < -2) return "Dominator move with psi below -2";
    bool ok = false;
    int sum = psi[t];
    for (int k = 1; k <= 2 && t + k < T; ++k) {
      sum += psi[t + k];
      if (sum >= 0) { ok = true; break; }
    }
    if (!ok) return "psi pattern violated at a Dominator move";
  }
  return std::nullopt;
}

namespace {

struct LineContext {
  const VerifyOptions* opt;
  GameRecord base;
  ForestResult* result;
  SplitMix64* rng;
  bool stop = false;
};

GameRecord finish_record(const LineContext& ctx, const GameState& s, std::string result) {
  GameRecord r = ctx.base;
  r.moves = s.history;
  r.T = s.moves_played();
  r.min_cumulative_psi = s.min_cumulative_psi;
  r.result = std::move(result);
  return r;
}

void record_failure(LineContext& ctx, GameRecord r) {
  ctx.result->failures.push_back(std::move(r));
  if (ctx.opt->fail_fast) ctx.stop = true;
}

// Depth-first traversal of all adversary lines; returns the number of
// completed games below this state (for the branch-count cross-check).
// End-of-game accounting: all value flows to gains, and the average-gain
// condition agrees with the bound check (for Dominator-start games).
std::optional<std::string> check_game_accounting(const GameState& s, int bound) {
  long total = 0;
  for (const MoveRecord& m : s.history) total += m.gain;
  if (s.variant == Variant::kDominatorStart) {
    long n = s.n();
    int T = s.moves_played();
    if (total != 3 * n) return "gains do not sum to 3n";
    bool avg5 = total >= 5l * T;
    bool bound_ok = T <= bound;
    if (avg5 != bound_ok) return "average-gain condition disagrees with the bound";
  }
  return std::nullopt;
}

long descend(LineContext& ctx, const GameState& s) {
  if (ctx.stop) return 0;
  if (is_terminal(s)) {
    ++ctx.result->games;
    ctx.result->worst_t = std::max(ctx.result->worst_t, s.moves_played());
    bool win = s.moves_played() <= ctx.base.t_max;
    std::optional<std::string> why;
    if (!ctx.opt->simplified) {
      why = check_psi_pattern(s);
      if (!why) why = check_game_accounting(s, ctx.base.t_max);
    }
    if (why) {
      record_failure(ctx, finish_record(ctx, s, "violation(" + *why + ")"));
    } else if (!win) {
      record_failure(ctx, finish_record(ctx, s, "loss"));
    }
    return 1;
  }

  bool full = !ctx.opt->simplified;
  if (s.to_move() == Player::kDominator) {
    try {
      auto [mv, s1] = play(s, ctx.opt->cfg);
      (void)mv;
      if (auto why = check_move(s, s1, full)) {
        ++ctx.result->games;
        record_failure(ctx, finish_record(ctx, s1, "violation(" + *why + ")"));
        return 1;
      }
      return descend(ctx, s1);
    } catch (const InvariantViolation& v) {
      ++ctx.result->games;
      record_failure(ctx, finish_record(ctx, s, "violation(" + v.what + ")"));
      return 1;
    }
  }

  std::vector<int> replies = staller_moves(s, ctx.opt->adversary, ctx.opt->cfg, ctx.rng);
  if (ctx.opt->adversary.kind == AdversaryKind::kExhaustive) {
    VertexMask expect = legal_moves(s);
    VertexMask got = 0;
    for (int m : replies) got |= bit(m);
    if (got != expect || replies.size() != static_cast<size_t>(popcount(expect))) {
      ++ctx.result->games;
      record_failure(ctx, finish_record(ctx, s, "violation(adversary not exhaustive)"));
      return 1;
    }
  }

  long below = 0;
  for (int m : replies) {
    if (ctx.stop) break;
    try {
      GameState s1 = update(s, m, ctx.opt->cfg);
      if (auto why = check_move(s, s1, full)) {
        ++ctx.result->games;
        record_failure(ctx, finish_record(ctx, s1, "violation(" + *why + ")"));
        ++below;
        continue;
      }
      below += descend(ctx, s1);
    } catch (const InvariantViolation& v) {
      ++ctx.result->games;
      record_failure(ctx, finish_record(ctx, s, "violation(" + v.what + ")"));
      ++below;
    }
  }
  return below;
}

}  // namespace

ForestResult verify_forest(const Forest& g, Variant variant, const VerifyOptions& opt,
                           std::uint64_t task_seed) {
  ForestResult result;
  SplitMix64 rng(task_seed);
  LineContext ctx{&opt, GameRecord{}, &result, &rng, false};
  ctx.base.forest = forest_id(g);
  ctx.base.n = g.size();
  ctx.base.variant = variant;
  ctx.base.adversary = to_string(opt.adversary.kind);
  ctx.base.t_max = t_max(g.size(), variant);

  GameState s0 = initial_state(g, variant);
  long counted = descend(ctx, s0);
  if (!ctx.stop && counted != result.games) {
    GameRecord r = ctx.base;
    r.result = "violation(game count cross-check failed)";
    result.failures.push_back(std::move(r));
  }
  return result;
}

VerificationReport run_verify(const VerifyOptions& opt) {
  struct Task {
    Forest forest;
    Variant variant;
    int n;
  };
  std::vector<Task> tasks;
  for (int n = 2; n <= opt.max_n; ++n) {
    std::vector<Forest> family;
    if (opt.forests_scope) {
      family = forests(n);
    } else {
      for (const CanonicalTree& t : trees(n)) family.push_back(t.decode());
    }
    for (const Forest& f : family) {
      if (opt.simplified && !no_two_leaves_at_distance4(f)) continue;
      if (opt.run_dominator_start) tasks.push_back({f, Variant::kDominatorStart, n});
      if (opt.run_staller_start) tasks.push_back({f, Variant::kStallerStart, n});
    }
  }

  std::vector<ForestResult> results(tasks.size());
  std::atomic<size_t> next{0};
  std::atomic<bool> abort{false};

  auto worker = [&] {
    for (;;) {
      size_t i = next.fetch_add(1);
      if (i >= tasks.size()) return;
      if (opt.fail_fast && abort.load()) return;
      VerifyOptions local = opt;
      if (opt.simplified) local.cfg.simplified_ok = true;
      results[i] = verify_forest(tasks[i].forest, tasks[i].variant, local,
                                 opt.seed * 0x9e3779b97f4a7c15ULL + i);
      if (!results[i].failures.empty()) abort.store(true);
    }
  };

  int jobs = std::max(1, opt.jobs);
  if (jobs == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int j = 0; j < jobs; ++j) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }

  VerificationReport report;
  std::ostringstream echo;
  echo << "max_n=" << opt.max_n << " scope=" << (opt.forests_scope ? "forests" : "trees")
       << " variant="
       << (opt.run_dominator_start && opt.run_staller_start
               ? "both"
               : (opt.run_dominator_start ? "dominator" : "staller"))
       << " adversary=" << to_string(opt.adversary.kind) << " seed=" << opt.seed
       << " jobs=" << jobs << " mode="
       << (opt.simplified ? "simplified"
                          : (opt.cfg.ladder == MoveSource::kAllDense ? "strict" : "default"))
       << " tiebreak="
       << (opt.cfg.tiebreak == Tiebreak::kHeuristic5 ? "heuristic5" : "lookahead3")
       << " rng=splitmix64 version=1.0.0";
  report.config_echo = echo.str();

  std::vector<NSummary> sums;
  for (size_t i = 0; i < tasks.size(); ++i) {
    report.total_games += results[i].games;
    for (GameRecord& r : results[i].failures) report.failures.push_back(std::move(r));
    NSummary* s = nullptr;
    for (NSummary& cand : sums)
      if (cand.n == tasks[i].n && cand.variant == tasks[i].variant) s = &cand;
    if (!s) {
      sums.push_back(NSummary{tasks[i].n, tasks[i].variant, 0, 0, 0, 0});
      s = &sums.back();
    }
    ++s->forests;
    s->games += results[i].games;
    s->failures += static_cast<long>(results[i].failures.size());
    s->worst_t = std::max(s->worst_t, results[i].worst_t);
  }
  report.per_n = std::move(sums);
  return report;
}

}  // namespace domgame

#include "domgame/adversaries.hpp"

#include <limits>
#include <stdexcept>

namespace domgame {

const char* to_string(AdversaryKind k) {
  switch (k) {
    case AdversaryKind::kExhaustive: return "exhaustive";
    case AdversaryKind::kGreedyMinGain: return "greedy";
    case AdversaryKind::kRandom: return "random";
  }
  return "?";
}

std::uint64_t SplitMix64::next() {
  std::uint64_t z = (state += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

namespace {

// Best gain Dominator can reach after the Staller line (s, m); used by the
// greedy antagonist to pick the reply that hurts most.
int dominator_best_after(const GameState& s, int m, const StrategyConfig& cfg) {
  GameState s1;
  try {
    s1 = update(s, m, cfg);
  } catch (const InvariantViolation&) {
    return 0;  // the harness will flag this line when actually played
  }
  if (is_terminal(s1)) return 0;
  int best = 0;
  for (int v : bits(legal_moves(s1))) {
    VertexMask region = component_of(s1.underlying, v);
    for (const MoveCandidate& c : candidate_moves(s1, v)) {
      if (c.gain <= best) break;
      if (region_good0(c.new_underlying, region, c.new_colors, c.new_values)) {
        best = c.gain;
        break;
      }
    }
  }
  return best;
}

}  // namespace

std::vector<int> staller_moves(const GameState& s, const Adversary& adv,
                               const StrategyConfig& cfg, SplitMix64* rng) {
  if (is_terminal(s)) throw std::invalid_argument("staller_moves: game is over");
  std::vector<int> legal = mask_to_vector(legal_moves(s));
  switch (adv.kind) {
    case AdversaryKind::kExhaustive:
      return legal;
    case AdversaryKind::kGreedyMinGain: {
      int best_move = legal.front();
      int best_score = std::numeric_limits<int>::max();
      for (int m : legal) {
        int score = dominator_best_after(s, m, cfg);
        if (score < best_score) {
          best_score = score;
          best_move = m;
        }
      }
      return {best_move};
    }
    case AdversaryKind::kRandom: {
      if (rng == nullptr) throw std::invalid_argument("staller_moves: random needs a generator");
      return {legal[rng->next() % legal.size()]};
    }
  }
  return legal;
}

}  // namespace domgame

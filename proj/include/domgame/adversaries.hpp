#pragma once

#include <cstdint>
#include <vector>

#include "domgame/game.hpp"
#include "domgame/strategy.hpp"

namespace domgame {

enum class AdversaryKind : std::uint8_t { kExhaustive, kGreedyMinGain, kRandom };

const char* to_string(AdversaryKind k);

// SplitMix64: the fixed, portable generator used for the random adversary.
struct SplitMix64 {
  std::uint64_t state;
  explicit SplitMix64(std::uint64_t seed) : state(seed) {}
  std::uint64_t next();
};

struct Adversary {
  AdversaryKind kind = AdversaryKind::kExhaustive;
  std::uint64_t seed = 0;
};

// Staller move proposals for the current state, ascending label order.
// Exhaustive returns every legal move; the others return a single move.
// Throws std::invalid_argument on a terminal state.
std::vector<int> staller_moves(const GameState& s, const Adversary& adv,
                               const StrategyConfig& cfg, SplitMix64* rng);

}  // namespace domgame

#include "domgame/strategy.hpp"

#include <algorithm>
#include <limits>
#include <unordered_map>

namespace domgame {

namespace {

bool candidate_before(const ScoredMove& a, const ScoredMove& b) {
  if (a.candidate.move != b.candidate.move) return a.candidate.move < b.candidate.move;
  if (a.candidate.retained_edges != b.candidate.retained_edges)
    return a.candidate.retained_edges < b.candidate.retained_edges;
  return a.candidate.value_key < b.candidate.value_key;
}

// Dominator's eligible vertices plus the good-successor candidate list.
struct DomCandidates {
  std::vector<ScoredMove> list;
  bool semi_mode = false;
  std::optional<BoxDecomposition> dec;  // decomposition of the pre-move dense graph
  DenseGraph dense;
  int max_gain = 0;
};

int root_box_index(const BoxDecomposition& dec, int box) {
  while (dec.parent_box[box] != -1) box = dec.parent_box[box];
  return box;
}

void collect_good(const GameState& s, VertexMask menu, std::vector<ScoredMove>* out) {
  for (int m : bits(menu)) {
    VertexMask region = component_of(s.underlying, m);
    for (MoveCandidate& c : candidate_moves(s, m)) {
      if (!region_good0(c.new_underlying, region, c.new_colors, c.new_values)) continue;
      out->push_back(ScoredMove{std::move(c), 0, 0});
      out->back().gain = out->back().candidate.gain;
    }
  }
}

DomCandidates dominator_candidates(const GameState& s, const StrategyConfig& cfg) {
  DomCandidates out;
  out.dense = densify(s.underlying, s.color, s.value);
  out.dec = find_decomposition(out.dense, 0);

  if (!out.dec) {
    // A Staller move left a corrupted box; per the certification it sits in
    // a semi-corrupted component and the repair move is taken from it.
    out.semi_mode = true;
    out.dec = find_decomposition(out.dense, 1);
    if (!out.dec)
      throw InvariantViolation{"no box decomposition with at most one corrupted box"};
    VertexMask box_verts = 0;
    VertexMask comp_verts = 0;
    for (const Box& b : out.dec->boxes)
      if (b.type == BoxType::kCorrupted) {
        box_verts = b.vertices;
        comp_verts = component_of(out.dense.graph, lowest_bit(b.vertices));
      }
    VertexMask menu = box_verts & out.dense.real_vertices();
    collect_good(s, menu, &out.list);
    int best = 0;
    for (const ScoredMove& sm : out.list) best = std::max(best, sm.gain);
    if (best < 8) {
      // The definition only promises a repair somewhere on the component.
      out.list.clear();
      collect_good(s, comp_verts & out.dense.real_vertices(), &out.list);
      for (const ScoredMove& sm : out.list) best = std::max(best, sm.gain);
      if (best < 8)
        throw InvariantViolation{"semi-corrupted component without an 8-point repair"};
    }
    out.max_gain = best;
    return out;
  }

  VertexMask menu = 0;
  bool all_small = true;
  for (VertexMask comp : components(out.dense.graph))
    if (popcount(comp) > 2) all_small = false;

  if (cfg.ladder == MoveSource::kAllDense) {
    menu = out.dense.real_vertices();
  } else {
    for (size_t i = 0; i < out.dec->boxes.size(); ++i)
      if (out.dec->parent_box[i] == -1) menu |= out.dec->boxes[i].vertices;
    menu &= out.dense.real_vertices();
    if (!all_small) {
      VertexMask non_leaves = 0;
      for (int v : bits(menu))
        if (out.dense.graph.degree(v) >= 2) non_leaves |= bit(v);
      menu = non_leaves;
    }
  }

  collect_good(s, menu, &out.list);
  for (const ScoredMove& sm : out.list) out.max_gain = std::max(out.max_gain, sm.gain);
  return out;
}

int best_dominator_gain(const GameState& s, const StrategyConfig& cfg) {
  if (is_terminal(s)) return 0;
  try {
    DomCandidates dc = dominator_candidates(s, cfg);
    return dc.max_gain;
  } catch (const InvariantViolation&) {
    // Keep hypothetical lookahead lines total; the real game will surface it.
    int best = 0;
    for (int m : bits(legal_moves(s))) {
      auto cands = candidate_moves(s, m);
      if (!cands.empty()) best = std::max(best, cands.front().gain);
    }
    return best;
  }
}

GameState update_or_best_raw(const GameState& s, int m, const StrategyConfig& cfg) {
  try {
    return update(s, m, cfg);
  } catch (const InvariantViolation&) {
    auto cands = candidate_moves(s, m);
    return apply(s, cands.front());
  }
}

}  // namespace

ScoredMove lookahead_tiebreak(const GameState& s, const std::vector<ScoredMove>& tied,
                              const StrategyConfig& cfg) {
  std::vector<ScoredMove> scored = tied;
  for (ScoredMove& sm : scored) {
    GameState s1 = apply(s, sm.candidate);
    long floor_term = 0;
    if (!is_terminal(s1)) {
      floor_term = std::numeric_limits<long>::max();
      for (int m : bits(legal_moves(s1))) {
        GameState s2 = update_or_best_raw(s1, m, cfg);
        long term = s2.history.back().gain + best_dominator_gain(s2, cfg);
        floor_term = std::min(floor_term, term);
      }
    }
    sm.tiebreak_score = sm.gain + floor_term;
  }
  const ScoredMove* best = &scored.front();
  for (const ScoredMove& sm : scored)
    if (sm.tiebreak_score > best->tiebreak_score ||
        (sm.tiebreak_score == best->tiebreak_score && candidate_before(sm, *best)))
      best = &sm;
  return *best;
}

namespace {

// Whether a box is a path of the given color pattern; 'B' blue, 'W' white,
// 'H' high. Both directions are tried.
bool box_matches_path(const DenseGraph& d, VertexMask box, const char* pattern) {
  int len = static_cast<int>(std::string(pattern).size());
  if (popcount(box) != len) return false;
  for (int v : bits(box))
    if (popcount(d.graph.neighbors_mask(v) & box) > 2) return false;
  for (int start : mask_to_vector(box)) {
    if (popcount(d.graph.neighbors_mask(start) & box) > 1) continue;
    std::vector<int> path{start};
    while (static_cast<int>(path.size()) < len) {
      VertexMask next = d.graph.neighbors_mask(path.back()) & box;
      if (path.size() > 1) next &= ~bit(path[path.size() - 2]);
      if (next == 0) break;
      path.push_back(lowest_bit(next));
    }
    if (static_cast<int>(path.size()) != len) continue;
    bool ok = true;
    for (int i = 0; i < len && ok; ++i) {
      int v = path[i];
      switch (pattern[i]) {
        case 'B': ok = d.colors[v] == Color::kBlue; break;
        case 'W': ok = d.colors[v] == Color::kWhite; break;
        case 'H': ok = d.values[v] == 3; break;
        default: ok = false;
      }
    }
    if (ok) return true;
  }
  return false;
}

struct SuccessorFacts {
  bool has_bwbhh_root = false;
  bool has_strong_or_b3_semi_triplet = false;
  bool has_d1_component = false;
};

SuccessorFacts successor_facts(const GameState& s, const MoveCandidate& c) {
  SuccessorFacts f;
  GameState s1 = apply(s, c);
  if (is_terminal(s1)) return f;
  DenseGraph d = densify(s1.underlying, s1.color, s1.value);
  auto dec = find_decomposition(d, 0);
  if (dec) {
    for (size_t i = 0; i < dec->boxes.size(); ++i) {
      if (dec->parent_box[i] != -1) continue;
      if (box_matches_path(d, dec->boxes[i].vertices, "BWBHH")) f.has_bwbhh_root = true;
      if (dec->boxes[i].type == BoxType::kDispensibleD1) f.has_d1_component = true;
    }
  }
  for (const SpecialSubtree& t : find_special_subtrees(d)) {
    if (t.kind == SubtreeKind::kStrongSemiTriplet ||
        (t.kind == SubtreeKind::kSemiTriplet && t.b3_leaf))
      f.has_strong_or_b3_semi_triplet = true;
  }
  return f;
}

}  // namespace

ScoredMove heuristic_tiebreak(const GameState& s, const std::vector<ScoredMove>& tied,
                              const std::optional<BoxDecomposition>& current,
                              const StrategyConfig& cfg) {
  (void)cfg;
  std::vector<const ScoredMove*> pool;
  for (const ScoredMove& sm : tied) pool.push_back(&sm);

  auto refine = [&pool](auto pred) {
    std::vector<const ScoredMove*> keep;
    for (const ScoredMove* sm : pool)
      if (pred(*sm)) keep.push_back(sm);
    if (!keep.empty()) pool = keep;
  };

  // (a) white vertex of a dispensible component.
  if (current) {
    refine([&](const ScoredMove& sm) {
      int m = sm.candidate.move;
      if (s.color[m] != Color::kWhite) return false;
      int b = current->box_of(m);
      if (b < 0) return false;
      BoxType rt = current->boxes[root_box_index(*current, b)].type;
      return rt == BoxType::kDispensibleD1 || rt == BoxType::kDispensibleD2;
    });
  }

  std::unordered_map<const ScoredMove*, SuccessorFacts> facts;
  for (const ScoredMove* sm : pool) facts[sm] = successor_facts(s, sm->candidate);

  refine([&](const ScoredMove& sm) { return facts[&sm].has_bwbhh_root; });
  refine([&](const ScoredMove& sm) { return facts[&sm].has_strong_or_b3_semi_triplet; });
  refine([&](const ScoredMove& sm) { return facts[&sm].has_d1_component; });

  const ScoredMove* best = pool.front();
  for (const ScoredMove* sm : pool)
    if (candidate_before(*sm, *best)) best = sm;
  return *best;
}

std::pair<int, GameState> play(const GameState& s, const StrategyConfig& cfg) {
  if (cfg.simplified_ok) return simplified_play(s);
  if (is_terminal(s)) throw std::invalid_argument("play: game is over");

  DomCandidates dc = dominator_candidates(s, cfg);
  if (dc.list.empty())
    throw InvariantViolation{"Dominator has no move with a good successor"};

  std::vector<ScoredMove> tied;
  for (ScoredMove& sm : dc.list)
    if (sm.gain == dc.max_gain) tied.push_back(std::move(sm));

  ScoredMove chosen = tied.front();
  if (tied.size() > 1) {
    if (cfg.tiebreak == Tiebreak::kHeuristic5 && dc.max_gain == 6) {
      chosen = heuristic_tiebreak(s, tied, dc.dec, cfg);
    } else {
      chosen = lookahead_tiebreak(s, tied, cfg);
    }
  }
  return {chosen.candidate.move, apply(s, chosen.candidate)};
}

GameState update(const GameState& s, int staller_move, const StrategyConfig& cfg) {
  if (cfg.simplified_ok) return simplified_update(s, staller_move);
  if (s.variant == Variant::kStallerStart && s.moves_played() == 0)
    return apply_staller_opener(s, staller_move);

  VertexMask region = component_of(s.underlying, staller_move);
  for (const MoveCandidate& c : candidate_moves(s, staller_move)) {
    if (region_good_before_dominator(c.new_underlying, region, c.new_colors, c.new_values))
      return apply(s, c);
  }
  throw InvariantViolation{"Staller move admits no good successor"};
}

bool no_two_leaves_at_distance4(const Forest& g) {
  std::vector<int> leaves;
  for (int v : bits(g.vertices()))
    if (g.degree(v) == 1) leaves.push_back(v);
  for (size_t i = 0; i < leaves.size(); ++i)
    for (size_t j = i + 1; j < leaves.size(); ++j)
      if (distance(g, leaves[i], leaves[j]) == 4) return false;
  return true;
}

namespace {

thread_local std::unordered_map<std::string, bool> g_plain_regular_memo;

// The component, taken as a single box, is a regular non-C12 box.
bool plain_regular_component(const Forest& underlying, VertexMask comp, const Colors& colors,
                             const Values& values) {
  std::string key = canonical_component_key(underlying, comp, colors, values);
  auto it = g_plain_regular_memo.find(key);
  if (it != g_plain_regular_memo.end()) return it->second;

  DenseGraph d;
  for (int v : bits(comp)) d.graph.add_vertex(v);
  for (int u : bits(comp))
    for (int v : bits(underlying.neighbors_mask(u) & comp))
      if (u < v) d.graph.add_edge(u, v);
  d.colors = colors;
  d.values = values;
  d.analysis = compute_triplets(d.graph, colors);

  bool ok = false;
  try {
    auto types = classify_box(d, comp, -1);
    ok = types.count(BoxType::kRegularSize2) != 0 || types.count(BoxType::kRegularHigh) != 0 ||
         types.count(BoxType::kRegularColored) != 0;
  } catch (const std::invalid_argument&) {
    ok = false;
  }
  g_plain_regular_memo[key] = ok;
  return ok;
}

bool successor_plain_regular(const Forest& underlying, VertexMask region, const Colors& colors,
                             const Values& values) {
  for (VertexMask comp : components(underlying)) {
    if ((comp & region) == 0) continue;
    if (!plain_regular_component(underlying, comp, colors, values)) return false;
  }
  return true;
}

}  // namespace

bool all_components_plain_regular(const GameState& s) {
  return successor_plain_regular(s.underlying, s.underlying.vertices(), s.color, s.value);
}

std::pair<int, GameState> simplified_play(const GameState& s) {
  if (is_terminal(s)) throw std::invalid_argument("simplified_play: game is over");
  if (!no_two_leaves_at_distance4(s.original))
    throw std::invalid_argument("simplified_play: two leaves at distance 4 in the input");
  const ScoredMove* best = nullptr;
  std::vector<ScoredMove> keep;
  for (int m : bits(legal_moves(s))) {
    VertexMask region = component_of(s.underlying, m);
    for (MoveCandidate& c : candidate_moves(s, m)) {
      if (!successor_plain_regular(c.new_underlying, region, c.new_colors, c.new_values))
        continue;
      keep.push_back(ScoredMove{std::move(c), 0, 0});
      keep.back().gain = keep.back().candidate.gain;
    }
  }
  for (const ScoredMove& sm : keep)
    if (!best || sm.gain > best->gain || (sm.gain == best->gain && candidate_before(sm, *best)))
      best = &sm;
  if (!best) throw InvariantViolation{"simplified play has no admissible move"};
  return {best->candidate.move, apply(s, best->candidate)};
}

GameState simplified_update(const GameState& s, int staller_move) {
  if (s.variant == Variant::kStallerStart && s.moves_played() == 0)
    return apply_staller_opener(s, staller_move);
  VertexMask region = component_of(s.underlying, staller_move);
  for (const MoveCandidate& c : candidate_moves(s, staller_move)) {
    if (successor_plain_regular(c.new_underlying, region, c.new_colors, c.new_values))
      return apply(s, c);
  }
  throw InvariantViolation{"simplified update has no admissible successor"};
}

}  // namespace domgame

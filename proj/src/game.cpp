#include "domgame/game.hpp"

#include <algorithm>
#include <stdexcept>

namespace domgame {

const char* to_string(Color c) {
  switch (c) {
    case Color::kWhite: return "W";
    case Color::kBlue: return "B";
    case Color::kRed: return "R";
  }
  return "?";
}

const char* to_string(Player p) {
  return p == Player::kDominator ? "D" : "S";
}

const char* to_string(Variant v) {
  return v == Variant::kDominatorStart ? "dominator" : "staller";
}

Player GameState::to_move() const {
  bool even_index = moves_played() % 2 == 0;
  if (variant == Variant::kDominatorStart)
    return even_index ? Player::kDominator : Player::kStaller;
  return even_index ? Player::kStaller : Player::kDominator;
}

int GameState::next_algo_index() const {
  if (variant == Variant::kDominatorStart) return moves_played() + 1;
  return moves_played();  // opener is move 0
}

int GameState::total_value() const {
  int sum = 0;
  for (int v : bits(underlying.vertices())) sum += value[v];
  return sum;
}

VertexMask GameState::white_mask() const {
  VertexMask m = 0;
  for (int v : bits(underlying.vertices()))
    if (color[v] == Color::kWhite) m |= bit(v);
  return m;
}

VertexMask GameState::blue_mask() const {
  VertexMask m = 0;
  for (int v : bits(underlying.vertices()))
    if (color[v] == Color::kBlue) m |= bit(v);
  return m;
}

int t_max(int n, Variant variant) {
  if (n < 2) throw std::invalid_argument("t_max: n must be at least 2");
  if (variant == Variant::kDominatorStart) return 3 * n / 5;
  return (3 * n + 2) / 5;
}

GameState initial_state(const Forest& g, Variant variant) {
  if (!g.is_isolate_free())
    throw std::invalid_argument("initial_state: forest has an isolated vertex");
  if (!g.is_acyclic())
    throw std::invalid_argument("initial_state: graph contains a cycle");
  for (int v : bits(g.vertices()))
    if (is_virtual_label(v))
      throw std::invalid_argument("initial_state: odd labels are reserved for virtual leaves");
  GameState s;
  s.original = g;
  s.underlying = g;
  s.color.fill(Color::kRed);
  s.value.fill(0);
  for (int v : bits(g.vertices())) {
    s.color[v] = Color::kWhite;
    s.value[v] = 3;
  }
  s.variant = variant;
  return s;
}

VertexMask legal_moves(const GameState& s) { return s.underlying.vertices(); }

bool is_terminal(const GameState& s) { return s.underlying.empty(); }

Colors recolor(const GameState& s, int v) {
  if (!s.underlying.has_vertex(v))
    throw std::invalid_argument("recolor: vertex is red or absent");
  // Playing v newly dominates its closed neighborhood in the original graph.
  VertexMask white = s.white_mask();
  VertexMask newly = (closed_neighborhood(s.original, bit(v))) & white;
  VertexMask white_after = white & ~newly;
  Colors out = s.color;
  for (int u : bits(s.underlying.vertices())) {
    if ((white_after & bit(u)) != 0) continue;
    // Dominated: red iff no white neighbor remains (original adjacency).
    bool has_white_nb = (s.original.neighbors_mask(u) & white_after) != 0;
    out[u] = has_white_nb ? Color::kBlue : Color::kRed;
  }
  return out;
}

namespace {

std::vector<std::int8_t> value_key_for(const Values& vals, VertexMask comp) {
  std::vector<std::int8_t> key;
  for (int u : bits(comp)) key.push_back(vals[u]);
  return key;
}

}  // namespace

std::vector<MoveCandidate> candidate_moves(const GameState& s, int v) {
  Colors nc = recolor(s, v);
  VertexMask comp = component_of(s.underlying, v);

  VertexMask pruned = 0;
  for (int u : bits(comp))
    if (nc[u] == Color::kRed) pruned |= bit(u);
  VertexMask survivors = comp & ~pruned;

  Forest base = s.underlying;
  base.remove_vertices(pruned);

  // Edges inside the component with two blue endpoints may be dropped; a kept
  // one must end up with a value-3 endpoint. Everything touching a white
  // vertex stays.
  std::vector<std::pair<int, int>> optional_edges;
  for (int u : bits(survivors))
    for (int w : bits(base.neighbors_mask(u) & survivors))
      if (u < w && nc[u] == Color::kBlue && nc[w] == Color::kBlue)
        optional_edges.emplace_back(u, w);

  std::vector<int> blues;
  for (int u : bits(survivors))
    if (nc[u] == Color::kBlue) blues.push_back(u);

  int ne = static_cast<int>(optional_edges.size());
  int nb = static_cast<int>(blues.size());
  if (ne + nb > 24)
    throw std::runtime_error("candidate_moves: enumeration space too large");

  int old_component_value = 0;
  for (int u : bits(comp)) old_component_value += s.value[u];

  std::vector<MoveCandidate> out;
  for (std::uint32_t drop = 0; drop < (1u << ne); ++drop) {
    Forest graph = base;
    for (int i = 0; i < ne; ++i)
      if (drop & (1u << i)) graph.remove_edge(optional_edges[i].first, optional_edges[i].second);

    for (std::uint32_t high = 0; high < (1u << nb); ++high) {
      Values nv = s.value;
      for (int u : bits(pruned)) nv[u] = 0;
      for (int u : bits(survivors))
        if (nc[u] == Color::kWhite) nv[u] = 3;
      for (int i = 0; i < nb; ++i) nv[blues[i]] = (high & (1u << i)) ? 3 : 2;

      bool ok = true;
      for (int i = 0; i < ne && ok; ++i)
        if (!(drop & (1u << i)))
          ok = nv[optional_edges[i].first] == 3 || nv[optional_edges[i].second] == 3;
      if (!ok) continue;

      int new_component_value = 0;
      for (int u : bits(survivors)) new_component_value += nv[u];
      int gain = old_component_value - new_component_value;
      if (gain < 3) continue;

      MoveCandidate c;
      c.move = v;
      c.new_underlying = graph;
      c.new_colors = nc;
      c.new_values = nv;
      c.gain = gain;
      for (int u : bits(survivors))
        for (int w : bits(graph.neighbors_mask(u) & survivors))
          if (u < w) c.retained_edges.emplace_back(u, w);
      c.value_key = value_key_for(nv, survivors);
      out.push_back(std::move(c));
    }
  }

  std::sort(out.begin(), out.end(), [](const MoveCandidate& a, const MoveCandidate& b) {
    if (a.gain != b.gain) return a.gain > b.gain;
    if (a.retained_edges != b.retained_edges) return a.retained_edges < b.retained_edges;
    return a.value_key < b.value_key;
  });
  return out;
}

GameState apply(const GameState& s, const MoveCandidate& c) {
  if (!s.underlying.has_vertex(c.move))
    throw std::invalid_argument("apply: stale candidate (move not legal)");
  Colors expect = recolor(s, c.move);
  if (expect != c.new_colors)
    throw std::invalid_argument("apply: stale candidate (colors do not match)");

  GameState out = s;
  out.underlying = c.new_underlying;
  out.color = c.new_colors;
  out.value = c.new_values;

  Player mover = s.to_move();
  int psi = mover == Player::kDominator ? c.gain - 7 : c.gain - 3;
  out.history.push_back(MoveRecord{mover, c.move, c.gain, psi});

  bool opener = s.variant == Variant::kStallerStart && s.moves_played() == 0;
  if (!opener) {
    out.cumulative_psi += psi;
    out.min_cumulative_psi = std::min(out.min_cumulative_psi, out.cumulative_psi);
  }
  return out;
}

GameState staller_start_shift(const GameState& s) {
  if (s.variant != Variant::kStallerStart || s.moves_played() != 1 || s.shifted)
    throw std::invalid_argument("staller_start_shift: requires a Staller-start game after the opener");
  GameState out = s;
  for (int v : bits(out.underlying.vertices()))
    if (out.color[v] == Color::kBlue) out.value[v] = 3;
  out.shifted = true;
  out.cumulative_psi = 0;
  out.min_cumulative_psi = 0;
  return out;
}

GameState apply_staller_opener(const GameState& s, int v) {
  if (s.variant != Variant::kStallerStart || s.moves_played() != 0)
    throw std::invalid_argument("apply_staller_opener: not at a Staller-start opener");
  Colors nc = recolor(s, v);
  MoveCandidate c;
  c.move = v;
  c.new_colors = nc;
  c.new_underlying = s.underlying;
  c.new_values = s.value;
  int gain = 0;
  for (int u : bits(s.underlying.vertices())) {
    if (nc[u] == Color::kRed) {
      c.new_underlying.remove_vertex(u);
      gain += s.value[u];
      c.new_values[u] = 0;
    }
  }
  c.gain = gain;
  return staller_start_shift(apply(s, c));
}

Colors colors_from_history(const Forest& original, const std::vector<int>& moves) {
  VertexMask dominated = 0;
  for (int m : moves) dominated |= closed_neighborhood(original, bit(m));
  Colors out;
  out.fill(Color::kRed);
  for (int v : bits(original.vertices())) {
    if ((dominated & bit(v)) == 0) {
      out[v] = Color::kWhite;
    } else if ((closed_neighborhood(original, bit(v)) & ~dominated) != 0) {
      out[v] = Color::kBlue;
    } else {
      out[v] = Color::kRed;
    }
  }
  return out;
}

VertexMask legal_moves_by_definition(const Forest& original, const std::vector<int>& moves) {
  VertexMask dominated = 0;
  for (int m : moves) dominated |= closed_neighborhood(original, bit(m));
  VertexMask out = 0;
  for (int v : bits(original.vertices()))
    if ((closed_neighborhood(original, bit(v)) & ~dominated) != 0) out |= bit(v);
  return out;
}

}  // namespace domgame

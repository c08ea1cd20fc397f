#include "domgame/densify.hpp"

#include <algorithm>
#include <stdexcept>

namespace domgame {

const std::array<int, 3>* TripletAnalysis::witnesses_of(int v) const {
  for (const auto& [owner, w] : witnesses)
    if (owner == v) return &w;
  return nullptr;
}

VertexMask white_tail2_leads(const Forest& g, const Colors& colors) {
  VertexMask out = 0;
  for (int v : bits(g.vertices())) {
    if (g.degree(v) <= 2) continue;
    for (const Tail& t : tails_of(g, v)) {
      if (t.length() != 2) continue;
      if (colors[t.path[0]] == Color::kWhite && colors[t.path[1]] == Color::kWhite)
        out |= bit(t.path[0]);
    }
  }
  return out;
}

TripletAnalysis compute_triplets(const Forest& g, const Colors& colors) {
  for (int v : bits(g.vertices()))
    if (is_virtual_label(v))
      throw std::invalid_argument("compute_triplets: expects an underlying graph");

  TripletAnalysis a;
  a.wt2 = white_tail2_leads(g, colors);
  VertexMask pw_cur = a.wt2;
  a.pw = pw_cur;

  for (int round = 1;; ++round) {
    VertexMask entrants = 0;
    for (int v : bits(g.vertices() & ~a.tt))
      if (popcount(g.neighbors_mask(v) & pw_cur) >= 3) entrants |= bit(v);
    if (entrants == 0) break;

    for (int v : bits(entrants)) {
      a.td[v] = static_cast<std::int8_t>(round + 1);
      a.td_max = round + 1;

      // Witness priorities: WT2 membership, then lower depth, then higher label.
      std::vector<int> cand = mask_to_vector(g.neighbors_mask(v) & pw_cur);
      std::sort(cand.begin(), cand.end(), [&](int x, int y) {
        bool wx = (a.wt2 & bit(x)) != 0, wy = (a.wt2 & bit(y)) != 0;
        if (wx != wy) return wx;
        if (!wx && a.td[x] != a.td[y]) return a.td[x] < a.td[y];
        return x > y;
      });
      std::array<int, 3> w{cand[0], cand[1], cand[2]};
      a.witnesses.emplace_back(v, w);
      for (int x : w) a.chosen |= bit(x);
    }
    a.tt |= entrants;

    VertexMask pw_next = a.wt2;
    for (int v : bits(a.tt))
      if (colors[v] == Color::kWhite && g.degree(v) == 4) pw_next |= bit(v);
    pw_cur = pw_next;
    a.pw |= pw_cur;
  }

  a.heads = a.tt & ~a.chosen;
  std::sort(a.witnesses.begin(), a.witnesses.end());
  return a;
}

bool DenseGraph::is_head(int v) const { return (analysis.heads & bit(v)) != 0; }

int DenseGraph::virtual_leaf_of(int head) const {
  for (const auto& [h, leaf] : virtual_of)
    if (h == head) return leaf;
  return -1;
}

VertexMask DenseGraph::real_vertices() const {
  VertexMask m = 0;
  for (int v : bits(graph.vertices()))
    if (!is_virtual_label(v)) m |= bit(v);
  return m;
}

DenseGraph densify(const Forest& g, const Colors& colors, const Values& values) {
  DenseGraph d;
  d.graph = g;
  d.colors = colors;
  d.values = values;
  d.analysis = compute_triplets(g, colors);

  for (int head : bits(d.analysis.heads)) {
    if (!d.graph.has_vertex(head)) continue;  // swallowed by an earlier head
    const auto* w = d.analysis.witnesses_of(head);
    VertexMask removed = 0;
    for (int x : *w) {
      if (!d.graph.has_edge(head, x)) continue;
      d.graph.remove_edge(head, x);
      removed |= component_of(d.graph, x);
    }
    d.graph.remove_vertices(removed);
    int leaf = head + 1;
    d.graph.add_vertex(leaf);
    d.graph.add_edge(head, leaf);
    d.colors[leaf] = Color::kWhite;
    d.values[leaf] = 3;
    d.virtual_of.emplace_back(head, leaf);
    d.removed.emplace_back(head, removed);
  }
  return d;
}

int lift_move(const DenseGraph& d, int v) {
  if (!d.graph.has_vertex(v))
    throw std::invalid_argument("lift_move: vertex not in dense graph");
  if (is_virtual_label(v))
    throw std::invalid_argument("lift_move: virtual leaves are not playable");
  return v;
}

}  // namespace domgame

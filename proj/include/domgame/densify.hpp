#pragma once

#include <array>
#include <vector>

#include "domgame/forest.hpp"
#include "domgame/game.hpp"

namespace domgame {

// Result of the iterated triplet construction on an underlying graph:
// leads of white length-2 tails, triplet vertices with their depths,
// potential witnesses, and the chosen witness triple per triplet vertex.
struct TripletAnalysis {
  VertexMask wt2 = 0;
  VertexMask tt = 0;
  VertexMask pw = 0;  // union over all rounds
  std::array<std::int8_t, kMaxLabels> td{};  // 0 when not a triplet vertex
  int td_max = 0;
  VertexMask heads = 0;       // triplet vertices never chosen as witnesses
  VertexMask chosen = 0;      // all chosen witnesses
  // Witness triple per triplet vertex, sorted by owner label.
  std::vector<std::pair<int, std::array<int, 3>>> witnesses;

  const std::array<int, 3>* witnesses_of(int v) const;
};

VertexMask white_tail2_leads(const Forest& g, const Colors& colors);

TripletAnalysis compute_triplets(const Forest& g, const Colors& colors);

// Underlying graph with each triplet head's witness subtrees replaced by a
// single white virtual leaf (label head+1). Colors and values are extended
// over the virtual labels.
struct DenseGraph {
  Forest graph;
  Colors colors{};
  Values values{};
  TripletAnalysis analysis;
  std::vector<std::pair<int, int>> virtual_of;          // (head, leaf)
  std::vector<std::pair<int, VertexMask>> removed;      // head -> removed set

  bool is_head(int v) const;
  int virtual_leaf_of(int head) const;  // -1 when none
  VertexMask real_vertices() const;
};

DenseGraph densify(const Forest& g, const Colors& colors, const Values& values);

// Maps a dense-graph move back to the underlying graph. Identity on real
// vertices; virtual leaves are never playable.
int lift_move(const DenseGraph& d, int v);

}  // namespace domgame

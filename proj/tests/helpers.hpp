#pragma once

#include <utility>
#include <vector>

#include "domgame/forest.hpp"
#include "domgame/game.hpp"

namespace domgame::test {

// Builds a forest from ordinal vertices 0..n-1 (mapped to labels 0,2,...).
inline Forest from_edges(int n, const std::vector<std::pair<int, int>>& edges) {
  Forest g;
  for (int i = 0; i < n; ++i) g.add_vertex(2 * i);
  for (auto [u, v] : edges) g.add_edge(2 * u, 2 * v);
  return g;
}

inline Forest path_graph(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1});
  return from_edges(n, edges);
}

// Star: vertex 0 is the center.
inline Forest star_graph(int leaves) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 1; i <= leaves; ++i) edges.push_back({0, i});
  return from_edges(leaves + 1, edges);
}

// Spider: center 0 with `legs` paths of length `len` attached.
inline Forest spider_graph(int legs, int len) {
  std::vector<std::pair<int, int>> edges;
  int next = 1;
  for (int l = 0; l < legs; ++l) {
    int prev = 0;
    for (int i = 0; i < len; ++i) {
      edges.push_back({prev, next});
      prev = next++;
    }
  }
  return from_edges(next, edges);
}

}  // namespace domgame::test

#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace domgame {

// Vertices are small integer labels. Real vertices carry even labels
// (0, 2, 4, ...); virtual leaves created by densify carry the odd label
// head+1. Everything in this project fits in a 64-label universe, so
// vertex sets are plain bitmasks.
using VertexMask = std::uint64_t;

constexpr int kMaxLabels = 64;

constexpr bool is_virtual_label(int v) { return (v & 1) != 0; }
constexpr VertexMask bit(int v) { return VertexMask{1} << v; }

int popcount(VertexMask m);
int lowest_bit(VertexMask m);
std::vector<int> mask_to_vector(VertexMask m);

// Iterates the set bits of a mask in ascending label order.
class BitRange {
 public:
  class iterator {
   public:
    explicit iterator(VertexMask m) : m_(m) {}
    int operator*() const;
    iterator& operator++();
    bool operator!=(const iterator& o) const { return m_ != o.m_; }

   private:
    VertexMask m_;
  };

  explicit BitRange(VertexMask m) : m_(m) {}
  iterator begin() const { return iterator(m_); }
  iterator end() const { return iterator(0); }

 private:
  VertexMask m_;
};

inline BitRange bits(VertexMask m) { return BitRange(m); }

// Undirected labeled forest on at most 64 labels. Adjacency is stored as
// one neighbor mask per label plus a degree cache; all orderings derived
// from it are by ascending label, so every traversal is deterministic.
class Forest {
 public:
  Forest() = default;

  void add_vertex(int v);
  void add_edge(int u, int v);
  void remove_edge(int u, int v);
  void remove_vertex(int v);        // drops incident edges
  void remove_vertices(VertexMask m);

  bool has_vertex(int v) const { return (present_ & bit(v)) != 0; }
  bool has_edge(int u, int v) const;

  VertexMask vertices() const { return present_; }
  int size() const { return popcount(present_); }
  bool empty() const { return present_ == 0; }

  VertexMask neighbors_mask(int v) const { return adj_[v]; }
  std::vector<int> neighbors(int v) const { return mask_to_vector(adj_[v]); }
  int degree(int v) const { return deg_[v]; }

  // Edges as (u, v) pairs with u < v, ascending.
  std::vector<std::pair<int, int>> edges() const;
  int edge_count() const;

  bool is_acyclic() const;
  bool is_isolate_free() const;
  bool is_connected_set(VertexMask m) const;

  bool operator==(const Forest& o) const;

 private:
  void check_vertex(int v) const;

  VertexMask present_ = 0;
  std::array<VertexMask, kMaxLabels> adj_{};
  std::array<std::int8_t, kMaxLabels> deg_{};
};

// Closed neighborhood of a vertex set. Throws std::invalid_argument if s
// contains labels not in g.
VertexMask closed_neighborhood(const Forest& g, VertexMask s);

// Maximal connected components, ordered by minimum label.
std::vector<VertexMask> components(const Forest& g);
VertexMask component_of(const Forest& g, int v);

enum class TailKind : std::uint8_t { kTail, kSubtail };

// A pendant path (v1..vk) hanging off an anchor v0: d(vk) = 1 and every
// interior vertex has degree 2. A tail additionally requires d(v0) > 2.
struct Tail {
  int anchor = -1;
  std::vector<int> path;  // v1..vk
  TailKind kind = TailKind::kTail;

  int lead() const { return path.front(); }
  int length() const { return static_cast<int>(path.size()); }
};

// All maximal tails anchored at v; empty when d(v) <= 2.
std::vector<Tail> tails_of(const Forest& g, int v);

// All maximal pendant paths hanging off v, regardless of d(v).
std::vector<Tail> subtails_of(const Forest& g, int v);

// Vertices of degree >= 3 with at least two tails.
VertexMask split_vertices(const Forest& g);

enum class ComponentKind : std::uint8_t { kPath, kComplex };

// Path component iff all degrees <= 2. Throws std::invalid_argument when c
// is not a maximal connected component of g.
ComponentKind classify_component(const Forest& g, VertexMask c);

// Distance matrix helper (only within one component; -1 across components).
int distance(const Forest& g, int u, int v);

}  // namespace domgame

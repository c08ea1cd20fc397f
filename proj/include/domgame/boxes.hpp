#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "domgame/densify.hpp"
#include "domgame/forest.hpp"
#include "domgame/game.hpp"

namespace domgame {

enum class BoxType : std::uint8_t {
  kRegularSize2,     // R1
  kRegularHigh,      // R2
  kRegularC12,       // R3
  kRegularColored,   // R4
  kDispensibleD1,
  kDispensibleD2,
  kHighLeftover,
  kCorrupted,
};

const char* to_string(BoxType t);
bool is_regular(BoxType t);

struct Box {
  VertexMask vertices = 0;
  int root = -1;  // -1 for regular boxes
  BoxType type = BoxType::kCorrupted;
};

struct BoxDecomposition {
  std::vector<Box> boxes;
  std::vector<int> parent_box;     // index, -1 for root boxes
  std::vector<int> parent_vertex;  // parent-side endpoint, -1
  int corrupted_count = 0;

  int box_of(int v) const;
};

// All box types a vertex set satisfies, evaluated without surrounding
// decomposition context (no child boxes). Regular types ignore the root;
// rooted types are evaluated only when a root is supplied. Corrupted is
// reported exactly when no other type applies. Throws when the set violates
// the basic box requirements.
std::set<BoxType> classify_box(const DenseGraph& d, VertexMask vs, int root = -1);

// Property P0 for a candidate box: every vertex with three or more internal
// white length-2 tails must, for each tail triple whose leads are not all
// potential witnesses of the underlying graph, have some tail vertex that
// parents a box whose root has internal degree at most one. `good_parents`
// is the set of vertices known to parent such a box.
bool check_p0(const DenseGraph& d, VertexMask box, VertexMask good_parents);

// Exhaustive backtracking search for a box decomposition with at most
// `allow_corrupted` corrupted boxes in total. Cut candidates are the edges
// incident to a blue vertex, tried smallest-subset-first in label order;
// the first valid decomposition is returned.
std::optional<BoxDecomposition> find_decomposition(const DenseGraph& d, int allow_corrupted);

// Same search restricted to one component, optionally forbidding box roots
// on the given vertices.
std::optional<BoxDecomposition> decompose_component(const DenseGraph& d, VertexMask comp,
                                                    int allow_corrupted,
                                                    VertexMask forbidden_roots = 0);

// Independent re-check of a returned decomposition: partition, per-box
// requirements and properties A1-A6, re-derived from first principles.
bool validate_decomposition(const DenseGraph& d, const BoxDecomposition& dec,
                            int allow_corrupted, std::string* why = nullptr);

enum class Phase : std::uint8_t {
  kDominatorToMove,  // post-Staller: one certified semi-corrupted component allowed
  kStallerToMove,    // post-Dominator: corruption-free decomposition required
};

// Goodness of the current underlying graph per Invariant I. Memoized per
// canonical colored component form (thread-local table).
bool is_good(const GameState& s, Phase phase);

// Dense-level variant of the corruption-free check.
bool is_good_dense(const DenseGraph& d, Phase phase);

// A component all of whose decompositions contain a corrupted box is
// semi-corrupted when some move on it gains at least 8 points and leaves a
// corruption-free-decomposable graph. `component` is an underlying-graph
// component of s.
bool is_semi_corrupted(const GameState& s, VertexMask component);

// Corruption-free decomposability of a single underlying-graph component
// (memoized).
bool component_good0(const GameState& s, VertexMask component);

// Every underlying component intersecting `region` admits a corruption-free
// decomposition.
bool region_good0(const Forest& underlying, VertexMask region, const Colors& colors,
                  const Values& values);

// Same, except that at most one such component may instead be a certified
// semi-corrupted component.
bool region_good_before_dominator(const Forest& underlying, VertexMask region,
                                  const Colors& colors, const Values& values);

enum class SubtreeKind : std::uint8_t { kFix, kStrongFix, kSemiTriplet, kStrongSemiTriplet };

struct SpecialSubtree {
  SubtreeKind kind;
  int root;
  std::vector<Tail> tails;  // the chosen high length-2 tails
  bool b3_leaf = false;     // some chosen tail carries a B3 vertex that is a leaf
};

const char* to_string(SubtreeKind k);

std::vector<SpecialSubtree> find_special_subtrees(const DenseGraph& d);

// Canonical encoding of a colored, valued component; equal strings iff the
// colored trees are isomorphic. Used as the goodness memo key.
std::string canonical_component_key(const Forest& g, VertexMask comp, const Colors& colors,
                                    const Values& values);

void clear_goodness_memo();

}  // namespace domgame

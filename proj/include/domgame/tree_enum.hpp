#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "domgame/forest.hpp"

namespace domgame {

// Canonical free tree: the level sequence of the tree rooted at its center
// (bicentered trees at the lexicographically smaller side), children ordered
// by decreasing subtree sequence.
struct CanonicalTree {
  std::vector<std::int8_t> levels;
  int n = 0;

  Forest decode() const;  // labels 0, 2, ..., 2(n-1)
  std::string to_string() const;
};

// Level sequence of g (one component) in canonical free form.
std::vector<std::int8_t> free_canonical_levels(const Forest& g);

// Streams every isomorphism class of free trees on n vertices exactly once:
// rooted level sequences in decreasing lexicographic order, keeping those
// that equal their own free canonical form.
class TreeEnumerator {
 public:
  explicit TreeEnumerator(int n);
  std::optional<CanonicalTree> next();

 private:
  int n_;
  bool done_ = false;
  std::vector<std::int8_t> seq_;  // current rooted level sequence
  bool first_ = true;

  bool advance_rooted();
};

std::vector<CanonicalTree> trees(int n);

// Isolate-free forests on n vertices up to isomorphism: multisets of trees
// with every part of size at least 2.
std::vector<Forest> forests(int n);

// Stable text id for records: per-component canonical level sequences,
// ordered by (size desc, sequence), joined with '|'.
std::string forest_id(const Forest& g);

}  // namespace domgame

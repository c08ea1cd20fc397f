#include "domgame/tree_enum.hpp"

#include <algorithm>
#include <stdexcept>

namespace domgame {

Forest CanonicalTree::decode() const {
  Forest g;
  for (int i = 0; i < n; ++i) g.add_vertex(2 * i);
  for (int i = 1; i < n; ++i) {
    int parent = -1;
    for (int j = i - 1; j >= 0; --j)
      if (levels[j] == levels[i] - 1) { parent = j; break; }
    g.add_edge(2 * parent, 2 * i);
  }
  return g;
}

std::string CanonicalTree::to_string() const {
  std::string out;
  for (int i = 0; i < n; ++i) {
    if (i) out.push_back('.');
    out += std::to_string(static_cast<int>(levels[i]));
  }
  return out;
}

namespace {

std::vector<std::int8_t> encode_subtree(const Forest& g, int v, int parent) {
  std::vector<std::vector<std::int8_t>> kids;
  for (int u : bits(g.neighbors_mask(v)))
    if (u != parent) kids.push_back(encode_subtree(g, u, v));
  std::sort(kids.begin(), kids.end(), std::greater<>());
  std::vector<std::int8_t> out{0};
  for (const auto& k : kids)
    for (std::int8_t x : k) out.push_back(static_cast<std::int8_t>(x + 1));
  return out;
}

std::vector<int> centers(const Forest& g) {
  VertexMask alive = g.vertices();
  std::array<int, kMaxLabels> deg{};
  for (int v : bits(alive)) deg[v] = g.degree(v);
  while (popcount(alive) > 2) {
    VertexMask leaves = 0;
    for (int v : bits(alive))
      if (deg[v] <= 1) leaves |= bit(v);
    for (int v : bits(leaves))
      for (int u : bits(g.neighbors_mask(v) & alive)) --deg[u];
    alive &= ~leaves;
  }
  return mask_to_vector(alive);
}

}  // namespace

std::vector<std::int8_t> free_canonical_levels(const Forest& g) {
  if (g.empty()) throw std::invalid_argument("free_canonical_levels: empty graph");
  std::vector<int> cs = centers(g);
  std::vector<std::int8_t> best;
  for (int c : cs) {
    auto e = encode_subtree(g, c, -1);
    if (best.empty() || e < best) best = e;
  }
  return best;
}

TreeEnumerator::TreeEnumerator(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("trees: n must be positive");
  seq_.resize(n);
  for (int i = 0; i < n; ++i) seq_[i] = static_cast<std::int8_t>(i);
}

bool TreeEnumerator::advance_rooted() {
  // Beyer-Hedetniemi successor in decreasing lexicographic order: find the
  // last level >= 2, then repeat the block starting at its parent.
  int p = -1;
  for (int i = n_ - 1; i >= 0; --i)
    if (seq_[i] >= 2) { p = i; break; }
  if (p < 0) return false;
  int q = -1;
  for (int i = p - 1; i >= 0; --i)
    if (seq_[i] == seq_[p] - 1) { q = i; break; }
  for (int i = p; i < n_; ++i) seq_[i] = seq_[i - (p - q)];
  return true;
}

std::optional<CanonicalTree> TreeEnumerator::next() {
  while (!done_) {
    if (!first_) {
      if (!advance_rooted()) { done_ = true; break; }
    }
    first_ = false;
    CanonicalTree t{seq_, n_};
    if (n_ == 1) { done_ = true; return t; }
    if (free_canonical_levels(t.decode()) == seq_) return t;
  }
  return std::nullopt;
}

std::vector<CanonicalTree> trees(int n) {
  std::vector<CanonicalTree> out;
  TreeEnumerator e(n);
  while (auto t = e.next()) out.push_back(*t);
  return out;
}

namespace {

void forest_partitions(int n, int max_part, std::vector<int>& parts,
                       std::vector<std::vector<int>>& out) {
  if (n == 0) {
    out.push_back(parts);
    return;
  }
  for (int p = std::min(n, max_part); p >= 2; --p) {
    if (n - p == 1) continue;  // a leftover singleton would be an isolate
    parts.push_back(p);
    forest_partitions(n - p, p, parts, out);
    parts.pop_back();
  }
}

Forest assemble(const std::vector<std::pair<int, int>>& choice,
                const std::vector<std::vector<CanonicalTree>>& pool) {
  Forest g;
  int offset = 0;
  for (auto [size, idx] : choice) {
    Forest t = pool[size][idx].decode();
    for (int v : bits(t.vertices())) g.add_vertex(v + offset);
    for (auto [u, v] : t.edges()) g.add_edge(u + offset, v + offset);
    offset += 2 * size;
  }
  return g;
}

void choose_components(const std::vector<int>& parts, size_t i, int min_idx,
                       const std::vector<std::vector<CanonicalTree>>& pool,
                       std::vector<std::pair<int, int>>& choice, std::vector<Forest>& out) {
  if (i == parts.size()) {
    out.push_back(assemble(choice, pool));
    return;
  }
  int size = parts[i];
  int lo = (i > 0 && parts[i - 1] == size) ? min_idx : 0;
  for (int idx = lo; idx < static_cast<int>(pool[size].size()); ++idx) {
    choice.emplace_back(size, idx);
    choose_components(parts, i + 1, idx, pool, choice, out);
    choice.pop_back();
  }
}

}  // namespace

std::vector<Forest> forests(int n) {
  if (n < 2) throw std::invalid_argument("forests: n must be at least 2");
  std::vector<std::vector<CanonicalTree>> pool(n + 1);
  for (int k = 2; k <= n; ++k) pool[k] = trees(k);

  std::vector<std::vector<int>> partitions;
  std::vector<int> parts;
  forest_partitions(n, n, parts, partitions);

  std::vector<Forest> out;
  std::vector<std::pair<int, int>> choice;
  for (const auto& p : partitions) choose_components(p, 0, 0, pool, choice, out);
  return out;
}

std::string forest_id(const Forest& g) {
  std::vector<std::pair<std::vector<std::int8_t>, int>> comps;
  for (VertexMask comp : components(g)) {
    Forest sub;
    for (int v : bits(comp)) sub.add_vertex(v);
    for (int u : bits(comp))
      for (int v : bits(g.neighbors_mask(u) & comp))
        if (u < v) sub.add_edge(u, v);
    comps.push_back({free_canonical_levels(sub), popcount(comp)});
  }
  std::sort(comps.begin(), comps.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::string out;
  for (size_t i = 0; i < comps.size(); ++i) {
    if (i) out.push_back('|');
    for (size_t j = 0; j < comps[i].first.size(); ++j) {
      if (j) out.push_back('.');
      out += std::to_string(static_cast<int>(comps[i].first[j]));
    }
  }
  return out;
}

}  // namespace domgame

#include "domgame/tree_enum.hpp"

#include <set>

#include "doctest.h"
#include "helpers.hpp"

using namespace domgame;
using namespace domgame::test;

namespace {

// Test-only canonicalization, deliberately different from the level-sequence
// code path: AHU parenthesis strings rooted at the tree center.
std::string ahu(const std::vector<std::vector<int>>& adj, int v, int parent) {
  std::vector<std::string> kids;
  for (int u : adj[v])
    if (u != parent) kids.push_back(ahu(adj, u, v));
  std::sort(kids.begin(), kids.end());
  std::string out = "(";
  for (const auto& k : kids) out += k;
  return out + ")";
}

std::string ahu_canon(const std::vector<std::vector<int>>& adj) {
  int n = static_cast<int>(adj.size());
  std::vector<int> deg(n), order;
  std::vector<bool> dead(n, false);
  for (int i = 0; i < n; ++i) deg[i] = static_cast<int>(adj[i].size());
  int alive = n;
  while (alive > 2) {
    std::vector<int> leaves;
    for (int i = 0; i < n; ++i)
      if (!dead[i] && deg[i] <= 1) leaves.push_back(i);
    for (int l : leaves) {
      dead[l] = true;
      --alive;
      for (int u : adj[l])
        if (!dead[u]) --deg[u];
    }
  }
  std::string best;
  for (int i = 0; i < n; ++i) {
    if (dead[i]) continue;
    std::string e = ahu(adj, i, -1);
    if (best.empty() || e < best) best = e;
  }
  return best;
}

// Decodes a Prufer sequence over vertices 0..n-1.
std::vector<std::vector<int>> prufer_decode(const std::vector<int>& code, int n) {
  std::vector<int> deg(n, 1);
  for (int x : code) ++deg[x];
  std::vector<std::vector<int>> adj(n);
  std::set<int> leaves;
  for (int i = 0; i < n; ++i)
    if (deg[i] == 1) leaves.insert(i);
  std::vector<int> work = code;
  for (int x : work) {
    int leaf = *leaves.begin();
    leaves.erase(leaves.begin());
    adj[leaf].push_back(x);
    adj[x].push_back(leaf);
    if (--deg[x] == 1) leaves.insert(x);
  }
  auto it = leaves.begin();
  int a = *it++;
  int b = *it;
  adj[a].push_back(b);
  adj[b].push_back(a);
  return adj;
}

long prufer_class_count(int n) {
  if (n == 1) return 1;
  if (n == 2) return 1;
  std::set<std::string> classes;
  std::vector<int> code(n - 2, 0);
  for (;;) {
    classes.insert(ahu_canon(prufer_decode(code, n)));
    int i = n - 3;
    while (i >= 0 && code[i] == n - 1) code[i--] = 0;
    if (i < 0) break;
    ++code[i];
  }
  return static_cast<long>(classes.size());
}

}  // namespace

TEST_CASE("free tree class counts match the Prufer-bucketing oracle") {
  const long expected[] = {0, 1, 1, 1, 2, 3, 6, 11, 23};
  for (int n = 1; n <= 8; ++n) {
    CHECK(static_cast<long>(trees(n).size()) == expected[n]);
    CHECK(prufer_class_count(n) == expected[n]);
  }
}

TEST_CASE("known class counts up to ten") {
  const long expected[] = {0, 1, 1, 1, 2, 3, 6, 11, 23, 47, 106};
  for (int n = 1; n <= 10; ++n) CHECK(static_cast<long>(trees(n).size()) == expected[n]);
}

TEST_CASE("small cases by hand") {
  auto t2 = trees(2);
  REQUIRE(t2.size() == 1);
  CHECK(t2[0].decode() == path_graph(2));

  auto t4 = trees(4);
  REQUIRE(t4.size() == 2);
  std::set<std::string> ids;
  for (const auto& t : t4) ids.insert(forest_id(t.decode()));
  CHECK(ids == std::set<std::string>{forest_id(path_graph(4)), forest_id(star_graph(3))});
}

TEST_CASE("trees are pairwise non-isomorphic, connected and acyclic") {
  for (int n = 2; n <= 10; ++n) {
    std::set<std::vector<std::int8_t>> canon;
    for (const CanonicalTree& t : trees(n)) {
      Forest g = t.decode();
      CHECK(g.size() == n);
      CHECK(g.is_acyclic());
      CHECK(components(g).size() == 1);
      CHECK(canon.insert(free_canonical_levels(g)).second);
    }
  }
}

TEST_CASE("forest enumeration") {
  CHECK(forests(2).size() == 1);
  CHECK(forests(4).size() == 3);  // P4, K13, P2+P2
  CHECK(forests(5).size() == 4);  // 3 trees plus P2+P3

  for (int n = 2; n <= 9; ++n) {
    std::set<std::string> ids;
    for (const Forest& f : forests(n)) {
      CHECK(f.size() == n);
      CHECK(f.is_isolate_free());
      CHECK(f.is_acyclic());
      CHECK(ids.insert(forest_id(f)).second);  // no duplicates
    }
  }
}

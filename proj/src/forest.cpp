#include "domgame/forest.hpp"

#include <bit>
#include <stdexcept>

namespace domgame {

int popcount(VertexMask m) { return std::popcount(m); }

int lowest_bit(VertexMask m) { return std::countr_zero(m); }

std::vector<int> mask_to_vector(VertexMask m) {
  std::vector<int> out;
  out.reserve(static_cast<size_t>(popcount(m)));
  for (int v : bits(m)) out.push_back(v);
  return out;
}

int BitRange::iterator::operator*() const { return std::countr_zero(m_); }

BitRange::iterator& BitRange::iterator::operator++() {
  m_ &= m_ - 1;
  return *this;
}

void Forest::check_vertex(int v) const {
  if (v < 0 || v >= kMaxLabels || !has_vertex(v))
    throw std::invalid_argument("unknown vertex label " + std::to_string(v));
}

void Forest::add_vertex(int v) {
  if (v < 0 || v >= kMaxLabels)
    throw std::invalid_argument("vertex label out of range: " + std::to_string(v));
  present_ |= bit(v);
}

void Forest::add_edge(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw std::invalid_argument("self-loop rejected");
  if (has_edge(u, v)) throw std::invalid_argument("parallel edge rejected");
  adj_[u] |= bit(v);
  adj_[v] |= bit(u);
  ++deg_[u];
  ++deg_[v];
}

void Forest::remove_edge(int u, int v) {
  if (!has_edge(u, v)) throw std::invalid_argument("edge not present");
  adj_[u] &= ~bit(v);
  adj_[v] &= ~bit(u);
  --deg_[u];
  --deg_[v];
}

void Forest::remove_vertex(int v) {
  check_vertex(v);
  for (int u : bits(adj_[v])) {
    adj_[u] &= ~bit(v);
    --deg_[u];
  }
  adj_[v] = 0;
  deg_[v] = 0;
  present_ &= ~bit(v);
}

void Forest::remove_vertices(VertexMask m) {
  for (int v : bits(m & present_)) remove_vertex(v);
}

bool Forest::has_edge(int u, int v) const {
  if (u < 0 || u >= kMaxLabels || v < 0 || v >= kMaxLabels) return false;
  return (adj_[u] & bit(v)) != 0;
}

std::vector<std::pair<int, int>> Forest::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u : bits(present_))
    for (int v : bits(adj_[u]))
      if (u < v) out.emplace_back(u, v);
  return out;
}

int Forest::edge_count() const {
  int twice = 0;
  for (int u : bits(present_)) twice += deg_[u];
  return twice / 2;
}

bool Forest::is_acyclic() const {
  // A forest has exactly |V| - #components edges.
  return edge_count() + static_cast<int>(components(*this).size()) == size();
}

bool Forest::is_isolate_free() const {
  for (int v : bits(present_))
    if (deg_[v] == 0) return false;
  return true;
}

bool Forest::is_connected_set(VertexMask m) const {
  if (m == 0) return false;
  if ((m & present_) != m) return false;
  VertexMask seen = bit(lowest_bit(m));
  for (;;) {
    VertexMask grow = seen;
    for (int v : bits(seen)) grow |= adj_[v] & m;
    if (grow == seen) break;
    seen = grow;
  }
  return seen == m;
}

bool Forest::operator==(const Forest& o) const {
  if (present_ != o.present_) return false;
  for (int v : bits(present_))
    if (adj_[v] != o.adj_[v]) return false;
  return true;
}

VertexMask closed_neighborhood(const Forest& g, VertexMask s) {
  if ((s & ~g.vertices()) != 0)
    throw std::invalid_argument("closed_neighborhood: set contains unknown labels");
  VertexMask out = s;
  for (int v : bits(s)) out |= g.neighbors_mask(v);
  return out;
}

std::vector<VertexMask> components(const Forest& g) {
  std::vector<VertexMask> out;
  VertexMask rest = g.vertices();
  while (rest != 0) {
    VertexMask comp = bit(lowest_bit(rest));
    for (;;) {
      VertexMask grow = comp;
      for (int v : bits(comp)) grow |= g.neighbors_mask(v);
      if (grow == comp) break;
      comp = grow;
    }
    out.push_back(comp);
    rest &= ~comp;
  }
  return out;
}

VertexMask component_of(const Forest& g, int v) {
  if (!g.has_vertex(v))
    throw std::invalid_argument("component_of: unknown vertex");
  VertexMask comp = bit(v);
  for (;;) {
    VertexMask grow = comp;
    for (int u : bits(comp)) grow |= g.neighbors_mask(u);
    if (grow == comp) break;
    comp = grow;
  }
  return comp;
}

namespace {

// Walks the pendant path starting at `first` away from `anchor`. Returns the
// path if every interior vertex has degree 2 and it ends in a leaf.
std::vector<int> pendant_path(const Forest& g, int anchor, int first) {
  std::vector<int> path;
  int prev = anchor;
  int cur = first;
  for (;;) {
    path.push_back(cur);
    int d = g.degree(cur);
    if (d == 1) return path;
    if (d != 2) return {};
    int next = lowest_bit(g.neighbors_mask(cur) & ~bit(prev));
    prev = cur;
    cur = next;
  }
}

}  // namespace

std::vector<Tail> subtails_of(const Forest& g, int v) {
  if (!g.has_vertex(v)) throw std::invalid_argument("subtails_of: unknown vertex");
  std::vector<Tail> out;
  for (int u : bits(g.neighbors_mask(v))) {
    std::vector<int> path = pendant_path(g, v, u);
    if (!path.empty())
      out.push_back(Tail{v, std::move(path), TailKind::kSubtail});
  }
  return out;
}

std::vector<Tail> tails_of(const Forest& g, int v) {
  if (!g.has_vertex(v)) throw std::invalid_argument("tails_of: unknown vertex");
  if (g.degree(v) <= 2) return {};
  std::vector<Tail> out = subtails_of(g, v);
  for (Tail& t : out) t.kind = TailKind::kTail;
  return out;
}

VertexMask split_vertices(const Forest& g) {
  VertexMask out = 0;
  for (int v : bits(g.vertices()))
    if (g.degree(v) >= 3 && tails_of(g, v).size() >= 2) out |= bit(v);
  return out;
}

ComponentKind classify_component(const Forest& g, VertexMask c) {
  if (c == 0 || (c & ~g.vertices()) != 0 || !g.is_connected_set(c))
    throw std::invalid_argument("classify_component: not a connected vertex set");
  // Maximality: no edges leaving c.
  for (int v : bits(c))
    if ((g.neighbors_mask(v) & ~c) != 0)
      throw std::invalid_argument("classify_component: set is not maximal");
  for (int v : bits(c))
    if (g.degree(v) > 2) return ComponentKind::kComplex;
  return ComponentKind::kPath;
}

int distance(const Forest& g, int u, int v) {
  if (!g.has_vertex(u) || !g.has_vertex(v))
    throw std::invalid_argument("distance: unknown vertex");
  if (u == v) return 0;
  VertexMask frontier = bit(u);
  VertexMask seen = frontier;
  int d = 0;
  while (frontier != 0) {
    ++d;
    VertexMask next = 0;
    for (int w : bits(frontier)) next |= g.neighbors_mask(w);
    next &= ~seen;
    if ((next & bit(v)) != 0) return d;
    seen |= next;
    frontier = next;
  }
  return -1;
}

}  // namespace domgame

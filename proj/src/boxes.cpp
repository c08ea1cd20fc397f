#include "domgame/boxes.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_map>

namespace domgame {

const char* to_string(BoxType t) {
  switch (t) {
    case BoxType::kRegularSize2: return "R1";
    case BoxType::kRegularHigh: return "R2";
    case BoxType::kRegularC12: return "C12";
    case BoxType::kRegularColored: return "R4";
    case BoxType::kDispensibleD1: return "D1";
    case BoxType::kDispensibleD2: return "D2";
    case BoxType::kHighLeftover: return "HL";
    case BoxType::kCorrupted: return "corrupted";
  }
  return "?";
}

bool is_regular(BoxType t) {
  return t == BoxType::kRegularSize2 || t == BoxType::kRegularHigh ||
         t == BoxType::kRegularC12 || t == BoxType::kRegularColored;
}

int BoxDecomposition::box_of(int v) const {
  for (size_t i = 0; i < boxes.size(); ++i)
    if ((boxes[i].vertices & bit(v)) != 0) return static_cast<int>(i);
  return -1;
}

namespace {

// Induced-subgraph view of a candidate box; degrees and neighbors are
// internal unless noted otherwise.
struct View {
  const DenseGraph& d;
  VertexMask m;

  VertexMask nb(int v) const { return d.graph.neighbors_mask(v) & m; }
  int deg(int v) const { return popcount(nb(v)); }
  bool high(int v) const { return d.values[v] == 3; }
  bool b2(int v) const { return d.colors[v] == Color::kBlue && d.values[v] == 2; }
  bool white(int v) const { return d.colors[v] == Color::kWhite; }
  bool blue(int v) const { return d.colors[v] == Color::kBlue; }
  int size() const { return popcount(m); }

  int b2_count() const {
    int c = 0;
    for (int v : bits(m))
      if (b2(v)) ++c;
    return c;
  }
  bool all_high() const {
    for (int v : bits(m))
      if (!high(v)) return false;
    return true;
  }
};

// Maximal pendant path from v starting toward `first`, or empty when the
// walk hits a branch vertex before a leaf.
std::vector<int> pendant(const View& w, int v, int first) {
  std::vector<int> path;
  int prev = v, cur = first;
  for (;;) {
    path.push_back(cur);
    int deg = w.deg(cur);
    if (deg == 1) return path;
    if (deg != 2) return {};
    int next = lowest_bit(w.nb(cur) & ~bit(prev));
    prev = cur;
    cur = next;
  }
}

std::vector<std::vector<int>> internal_subtails(const View& w, int v) {
  std::vector<std::vector<int>> out;
  for (int u : bits(w.nb(v))) {
    auto p = pendant(w, v, u);
    if (!p.empty()) out.push_back(std::move(p));
  }
  return out;
}

bool all_high_path(const View& w, const std::vector<int>& p) {
  for (int v : p)
    if (!w.high(v)) return false;
  return true;
}

bool all_white_path(const View& w, const std::vector<int>& p) {
  for (int v : p)
    if (!w.white(v)) return false;
  return true;
}

// Root requirement shared by all non-regular boxes: blue, and no internal
// neighbor that is a white leaf.
bool root_ok(const View& w, int r) {
  if ((w.m & bit(r)) == 0 || !w.blue(r)) return false;
  for (int u : bits(w.nb(r)))
    if (w.white(u) && w.deg(u) == 1) return false;
  return true;
}

bool is_d1(const View& w, int r) {
  if (w.size() != 3 || !w.b2(r) || w.deg(r) != 1) return false;
  int mid = lowest_bit(w.nb(r));
  if (w.deg(mid) != 2) return false;
  int far = lowest_bit(w.nb(mid) & ~bit(r));
  return w.deg(far) == 1 && w.high(mid) && w.high(far);
}

bool is_d2(const View& w, int r) {
  if (w.size() != 8 || !w.b2(r) || w.deg(r) != 2) return false;
  for (int h : bits(w.nb(r))) {
    auto tail = pendant(w, r, h);
    if (tail.size() != 2 || !all_high_path(w, tail)) continue;
    int u = lowest_bit(w.nb(r) & ~bit(h));
    VertexMask accounted = bit(r) | bit(tail[0]) | bit(tail[1]) | bit(u);
    if (w.deg(u) == 3) {
      // u carries a high leaf and a pendant B2HH tail besides r.
      std::vector<int> rest = mask_to_vector(w.nb(u) & ~bit(r));
      for (int pick = 0; pick < 2; ++pick) {
        int lambda = rest[pick], lead = rest[1 - pick];
        if (!(w.deg(lambda) == 1 && w.high(lambda))) continue;
        auto t = pendant(w, u, lead);
        if (t.size() != 3 || !w.b2(t[0]) || !w.high(t[1]) || !w.high(t[2])) continue;
        VertexMask full = accounted | bit(lambda) | bit(t[0]) | bit(t[1]) | bit(t[2]);
        if (full == w.m) return true;
      }
    } else if (w.deg(u) == 2) {
      // u leads a pendant HHB2HH subtail.
      auto t = pendant(w, r, u);
      if (t.size() == 5 && w.high(t[0]) && w.high(t[1]) && w.b2(t[2]) && w.high(t[3]) &&
          w.high(t[4])) {
        VertexMask full = bit(r) | bit(tail[0]) | bit(tail[1]);
        for (int x : t) full |= bit(x);
        if (full == w.m) return true;
      }
    }
  }
  return false;
}

// A real-vertex triplet pattern inside the box: some vertex with three or
// more internal all-white length-2 tails of real vertices. Virtual-leaf
// remnants of already collapsed subtrees do not count.
bool has_triplet_pattern(const View& w) {
  for (int v : bits(w.m)) {
    if (w.deg(v) < 3) continue;
    int n = 0;
    for (int u : bits(w.nb(v))) {
      auto p = pendant(w, v, u);
      if (p.size() == 2 && all_white_path(w, p) && !is_virtual_label(p[0]) &&
          !is_virtual_label(p[1]))
        ++n;
    }
    if (n >= 3) return true;
  }
  return false;
}

bool is_high_leftover(const View& w, int r) {
  return w.all_high() && root_ok(w, r) && !has_triplet_pattern(w);
}

bool is_c12_f1(const View& w) {
  for (int v1 : bits(w.m)) {
    if (!w.high(v1) || w.deg(v1) != 4) continue;
    for (int v2 : bits(w.nb(v1))) {
      if (!w.high(v2) || w.deg(v2) != 3) continue;
      // v1: B2W tail plus two high length-2 tails besides v2.
      int b2w = 0, hh = 0;
      VertexMask acc = bit(v1) | bit(v2);
      bool ok = true;
      for (int u : bits(w.nb(v1) & ~bit(v2))) {
        auto p = pendant(w, v1, u);
        if (p.size() != 2) { ok = false; break; }
        if (w.b2(p[0]) && w.white(p[1])) ++b2w;
        else if (w.high(p[0]) && w.high(p[1])) ++hh;
        else { ok = false; break; }
        acc |= bit(p[0]) | bit(p[1]);
      }
      if (!ok || b2w != 1 || hh != 2) continue;
      // v2: a high leaf and a B2HH tail besides v1.
      int leaf = 0, b2hh = 0;
      ok = true;
      for (int u : bits(w.nb(v2) & ~bit(v1))) {
        auto p = pendant(w, v2, u);
        if (p.size() == 1 && w.high(p[0])) ++leaf;
        else if (p.size() == 3 && w.b2(p[0]) && w.high(p[1]) && w.high(p[2])) ++b2hh;
        else { ok = false; break; }
        for (int x : p) acc |= bit(x);
      }
      if (ok && leaf == 1 && b2hh == 1 && acc == w.m) return true;
    }
  }
  return false;
}

bool is_c12_f2(const View& w) {
  for (int s : bits(w.m)) {
    if (!w.high(s) || w.deg(s) != 4) continue;
    int hh = 0, b2w = 0, long5 = 0;
    VertexMask acc = bit(s);
    bool ok = true;
    for (int u : bits(w.nb(s))) {
      auto p = pendant(w, s, u);
      if (p.size() == 2 && w.high(p[0]) && w.high(p[1])) ++hh;
      else if (p.size() == 2 && w.b2(p[0]) && w.white(p[1])) ++b2w;
      else if (p.size() == 5 && w.high(p[0]) && w.high(p[1]) && w.b2(p[2]) && w.high(p[3]) &&
               w.high(p[4])) ++long5;
      else { ok = false; break; }
      for (int x : p) acc |= bit(x);
    }
    if (ok && hh == 2 && b2w == 1 && long5 == 1 && acc == w.m) return true;
  }
  return false;
}

bool is_c12(const View& w) {
  return w.size() == 12 && (is_c12_f1(w) || is_c12_f2(w));
}

// Vertices that own a subtail ending at leaf v: the walk up from v through
// degree-2 vertices, including the first branch vertex (or far end).
std::vector<int> subtail_owners(const View& w, int v) {
  std::vector<int> out;
  int prev = v, cur = lowest_bit(w.nb(v));
  for (;;) {
    out.push_back(cur);
    if (w.deg(cur) != 2) return out;
    int next = lowest_bit(w.nb(cur) & ~bit(prev));
    prev = cur;
    cur = next;
  }
}

bool has_high_subtail_3plus(const View& w, int u) {
  for (const auto& p : internal_subtails(w, u))
    if (p.size() >= 3 && all_high_path(w, p)) return true;
  return false;
}

bool has_white_subtail_1or2(const View& w, int u) {
  for (const auto& p : internal_subtails(w, u))
    if ((p.size() == 1 || p.size() == 2) && all_white_path(w, p)) return true;
  return false;
}

bool has_internal_leaf_neighbor(const View& w, int u) {
  for (int x : bits(w.nb(u)))
    if (w.deg(x) == 1) return true;
  return false;
}

bool has_white_leaf_neighbor(const View& w, int u) {
  for (int x : bits(w.nb(u)))
    if (w.deg(x) == 1 && w.white(x)) return true;
  return false;
}

bool subtail_of_ends_at(const View& w, int owner, int leaf) {
  for (const auto& p : internal_subtails(w, owner))
    if (p.back() == leaf) return true;
  return false;
}

bool satisfies_p1(const View& w, int v) {
  // (a) v is a leaf on a subtail of some u that has a high subtail of
  // length >= 3 and no white subtails of length 1 or 2.
  if (w.deg(v) == 1) {
    for (int u : subtail_owners(w, v))
      if (has_high_subtail_3plus(w, u) && !has_white_subtail_1or2(w, u)) return true;
  }
  // (b) v itself has a high subtail of length >= 3 and no leaf neighbors.
  if (has_high_subtail_3plus(w, v) && !has_internal_leaf_neighbor(w, v)) return true;
  // (c) dispensible shape.
  if (w.deg(v) == 1 && w.size() == 3) return true;
  return false;
}

bool satisfies_p2(const View& w, int v1, int v2) {
  if (w.deg(v1) > w.deg(v2)) std::swap(v1, v2);
  // (a) both are subtail leaves of a common vertex without a white leaf.
  if (w.deg(v1) == 1 && w.deg(v2) == 1) {
    for (int u : bits(w.m)) {
      if (u == v1 || u == v2) continue;
      if (subtail_of_ends_at(w, u, v1) && subtail_of_ends_at(w, u, v2) &&
          !has_white_leaf_neighbor(w, u))
        return true;
    }
  }
  // (b) one is a subtail leaf of the other, which has no leaf neighbors.
  for (auto [x, y] : {std::pair{v1, v2}, std::pair{v2, v1}}) {
    if (w.deg(x) > w.deg(y)) continue;
    if (w.deg(x) == 1 && subtail_of_ends_at(w, y, x) && !has_internal_leaf_neighbor(w, y))
      return true;
  }
  return false;
}

bool p0_holds(const View& w, const TripletAnalysis& a, VertexMask good_parents) {
  for (int v : bits(w.m)) {
    std::vector<std::vector<int>> tails;
    for (int u : bits(w.nb(v))) {
      auto p = pendant(w, v, u);
      if (p.size() == 2 && all_white_path(w, p)) tails.push_back(std::move(p));
    }
    int k = static_cast<int>(tails.size());
    if (k < 3) continue;
    for (int i = 0; i < k; ++i)
      for (int j = i + 1; j < k; ++j)
        for (int l = j + 1; l < k; ++l) {
          bool all_pw = ((a.pw & bit(tails[i][0])) != 0) && ((a.pw & bit(tails[j][0])) != 0) &&
                        ((a.pw & bit(tails[l][0])) != 0);
          if (all_pw) continue;
          bool covered = false;
          for (const auto* t : {&tails[i], &tails[j], &tails[l]})
            for (int x : *t)
              if (x != v && (good_parents & bit(x)) != 0) covered = true;
          if (!covered) return false;
        }
  }
  return true;
}

bool is_regular_colored(const View& w, const TripletAnalysis& a, VertexMask good_parents) {
  if (w.size() < 3) return false;
  std::vector<int> b2s;
  for (int v : bits(w.m))
    if (w.b2(v)) b2s.push_back(v);
  bool shape = false;
  if (b2s.size() == 1) shape = satisfies_p1(w, b2s[0]);
  else if (b2s.size() == 2) shape = satisfies_p2(w, b2s[0], b2s[1]);
  return shape && p0_holds(w, a, good_parents);
}

bool is_regular_high(const View& w, const TripletAnalysis& a, VertexMask good_parents) {
  return w.size() >= 3 && w.all_high() && p0_holds(w, a, good_parents);
}

}  // namespace

bool check_p0(const DenseGraph& d, VertexMask box, VertexMask good_parents) {
  return p0_holds(View{d, box}, d.analysis, good_parents);
}

std::set<BoxType> classify_box(const DenseGraph& d, VertexMask vs, int root) {
  View w{d, vs};
  if (vs == 0 || !d.graph.is_connected_set(vs))
    throw std::invalid_argument("not a box: vertex set is not connected");
  if (w.b2_count() > 2)
    throw std::invalid_argument("not a box: more than two B2 vertices");
  if (root >= 0 && !root_ok(w, root))
    throw std::invalid_argument("not a box: root must be blue with no white leaf neighbor");

  std::set<BoxType> out;
  if (w.size() == 2) out.insert(BoxType::kRegularSize2);
  if (is_c12(w)) out.insert(BoxType::kRegularC12);
  if (is_regular_high(w, d.analysis, 0)) out.insert(BoxType::kRegularHigh);
  if (is_regular_colored(w, d.analysis, 0)) out.insert(BoxType::kRegularColored);
  if (root >= 0) {
    if (is_d1(w, root)) out.insert(BoxType::kDispensibleD1);
    if (is_d2(w, root)) out.insert(BoxType::kDispensibleD2);
    if (is_high_leftover(w, root)) out.insert(BoxType::kHighLeftover);
  }
  if (out.empty()) out.insert(BoxType::kCorrupted);
  return out;
}

namespace {

struct Piece {
  VertexMask mask = 0;
  int parent_piece = -1;   // index within the component
  int root = -1;           // child endpoint of the parent edge
  int parent_vertex = -1;  // parent-side endpoint
  BoxType type = BoxType::kCorrupted;
};

// Pieces of comp after cutting the chosen edges, ordered by minimum label.
std::vector<VertexMask> split_pieces(const DenseGraph& d, VertexMask comp,
                                     const std::vector<std::pair<int, int>>& cut) {
  auto blocked = [&](int u, int v) {
    for (auto [a, b] : cut)
      if ((a == u && b == v) || (a == v && b == u)) return true;
    return false;
  };
  std::vector<VertexMask> pieces;
  VertexMask rest = comp;
  while (rest != 0) {
    int start = lowest_bit(rest);
    VertexMask piece = bit(start);
    std::vector<int> queue{start};
    while (!queue.empty()) {
      int v = queue.back();
      queue.pop_back();
      for (int u : bits(d.graph.neighbors_mask(v) & comp & ~piece)) {
        if (blocked(v, u)) continue;
        piece |= bit(u);
        queue.push_back(u);
      }
    }
    pieces.push_back(piece);
    rest &= ~piece;
  }
  return pieces;
}

// Attempts to type the pieces under the chosen root piece; returns the typed
// pieces or nothing. Budget counts corrupted boxes.
std::optional<std::vector<Piece>> type_pieces(const DenseGraph& d,
                                              const std::vector<VertexMask>& piece_masks,
                                              const std::vector<std::pair<int, int>>& cut,
                                              int root_idx, int budget, VertexMask forbidden) {
  int np = static_cast<int>(piece_masks.size());
  std::vector<Piece> pieces(np);
  for (int i = 0; i < np; ++i) pieces[i].mask = piece_masks[i];

  auto piece_of = [&](int v) {
    for (int i = 0; i < np; ++i)
      if ((piece_masks[i] & bit(v)) != 0) return i;
    return -1;
  };

  // Orient the piece tree away from the root piece.
  std::vector<std::vector<std::pair<int, std::pair<int, int>>>> adj(np);
  for (auto [u, v] : cut) {
    int pu = piece_of(u), pv = piece_of(v);
    adj[pu].push_back({pv, {v, u}});  // at pu: child endpoint in pv is v
    adj[pv].push_back({pu, {u, v}});
  }
  std::vector<int> order{root_idx};
  std::vector<bool> seen(np, false);
  seen[root_idx] = true;
  for (size_t i = 0; i < order.size(); ++i) {
    int p = order[i];
    for (auto& [q, ends] : adj[p]) {
      if (seen[q]) continue;
      seen[q] = true;
      pieces[q].parent_piece = p;
      pieces[q].root = ends.first;
      pieces[q].parent_vertex = ends.second;
      order.push_back(q);
    }
  }

  auto cut_edges_at = [&](int v) {
    int c = 0;
    for (auto [a, b] : cut)
      if (a == v || b == v) ++c;
    return c;
  };

  int corrupted = 0;

  // Children first: their roots are forced.
  for (int i = 0; i < np; ++i) {
    if (i == root_idx) continue;
    Piece& q = pieces[i];
    View w{d, q.mask};
    int r = q.root;
    if ((forbidden & bit(r)) != 0) return std::nullopt;
    if (cut_edges_at(r) != 1) return std::nullopt;
    if (!root_ok(w, r)) return std::nullopt;
    if (popcount(piece_masks[q.parent_piece]) < 3) return std::nullopt;
    // The parent-side endpoint must not be the root of its own piece; root
    // pieces acquire roots only on vertices without cut edges, so only
    // child-piece roots can collide.
    if (q.parent_piece != root_idx && pieces[q.parent_piece].root == q.parent_vertex)
      return std::nullopt;

    if (is_d1(w, r)) q.type = BoxType::kDispensibleD1;
    else if (is_d2(w, r)) q.type = BoxType::kDispensibleD2;
    else if (w.all_high() && !has_triplet_pattern(w)) {
      // Intrinsically a high leftover box; its parent must not be high.
      if (View{d, piece_masks[q.parent_piece]}.all_high()) return std::nullopt;
      q.type = BoxType::kHighLeftover;
    } else {
      if (w.b2_count() > 2) return std::nullopt;
      q.type = BoxType::kCorrupted;
      if (++corrupted > budget) return std::nullopt;
    }
  }

  // Root piece: prefer a regular typing, then a rooted non-corrupted one.
  {
    Piece& q = pieces[root_idx];
    View w{d, q.mask};
    if (w.b2_count() > 2) return std::nullopt;

    VertexMask good_parents = 0;
    for (int i = 0; i < np; ++i) {
      if (i == root_idx || pieces[i].parent_piece != root_idx) continue;
      View cw{d, pieces[i].mask};
      if (cw.deg(pieces[i].root) <= 1) good_parents |= bit(pieces[i].parent_vertex);
    }

    bool typed = false;
    if (w.size() == 2) { q.type = BoxType::kRegularSize2; typed = true; }
    else if (is_c12(w)) { q.type = BoxType::kRegularC12; typed = true; }
    else if (is_regular_high(w, d.analysis, good_parents)) { q.type = BoxType::kRegularHigh; typed = true; }
    else if (is_regular_colored(w, d.analysis, good_parents)) { q.type = BoxType::kRegularColored; typed = true; }

    if (!typed) {
      std::vector<int> roots;
      for (int r : bits(q.mask))
        if (w.blue(r) && cut_edges_at(r) == 0 && (forbidden & bit(r)) == 0 && root_ok(w, r))
          roots.push_back(r);
      for (int r : roots) {
        if (is_d1(w, r)) { q.root = r; q.type = BoxType::kDispensibleD1; typed = true; break; }
        if (is_d2(w, r)) { q.root = r; q.type = BoxType::kDispensibleD2; typed = true; break; }
        if (is_high_leftover(w, r)) { q.root = r; q.type = BoxType::kHighLeftover; typed = true; break; }
      }
      if (!typed && !roots.empty()) {
        q.root = roots.front();
        q.type = BoxType::kCorrupted;
        typed = ++corrupted <= budget;
      }
      if (!typed) return std::nullopt;
    }
  }

  return pieces;
}

BoxDecomposition assemble(const std::vector<Piece>& pieces, int index_offset,
                          BoxDecomposition into) {
  for (const Piece& p : pieces) {
    Box b;
    b.vertices = p.mask;
    b.root = is_regular(p.type) ? -1 : p.root;
    b.type = p.type;
    into.boxes.push_back(b);
    into.parent_box.push_back(p.parent_piece < 0 ? -1 : p.parent_piece + index_offset);
    into.parent_vertex.push_back(p.parent_piece < 0 ? -1 : p.parent_vertex);
    if (p.type == BoxType::kCorrupted) ++into.corrupted_count;
  }
  return into;
}

}  // namespace

std::optional<BoxDecomposition> decompose_component(const DenseGraph& d, VertexMask comp,
                                                    int allow_corrupted,
                                                    VertexMask forbidden_roots) {
  std::vector<std::pair<int, int>> cuttable;
  for (int u : bits(comp))
    for (int v : bits(d.graph.neighbors_mask(u) & comp))
      if (u < v && (d.colors[u] == Color::kBlue || d.colors[v] == Color::kBlue))
        cuttable.emplace_back(u, v);
  std::sort(cuttable.begin(), cuttable.end());
  int K = static_cast<int>(cuttable.size());
  if (K > 22) throw std::runtime_error("decompose_component: too many cut candidates");

  for (int k = 0; k <= K; ++k) {
    // k-subsets of the cuttable edges in lexicographic order.
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    for (;;) {
      std::vector<std::pair<int, int>> cut;
      cut.reserve(k);
      for (int i : idx) cut.push_back(cuttable[i]);

      auto piece_masks = split_pieces(d, comp, cut);
      for (int root_idx = 0; root_idx < static_cast<int>(piece_masks.size()); ++root_idx) {
        auto typed = type_pieces(d, piece_masks, cut, root_idx, allow_corrupted, forbidden_roots);
        if (typed) return assemble(*typed, 0, BoxDecomposition{});
      }

      // next combination
      int i = k - 1;
      while (i >= 0 && idx[i] == K - k + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return std::nullopt;
}

std::optional<BoxDecomposition> find_decomposition(const DenseGraph& d, int allow_corrupted) {
  BoxDecomposition out;
  int budget = allow_corrupted;
  for (VertexMask comp : components(d.graph)) {
    auto part = decompose_component(d, comp, 0);
    if (!part && budget > 0) part = decompose_component(d, comp, budget);
    if (!part) return std::nullopt;
    budget -= part->corrupted_count;
    int offset = static_cast<int>(out.boxes.size());
    for (size_t i = 0; i < part->boxes.size(); ++i) {
      out.boxes.push_back(part->boxes[i]);
      out.parent_box.push_back(part->parent_box[i] < 0 ? -1 : part->parent_box[i] + offset);
      out.parent_vertex.push_back(part->parent_vertex[i]);
    }
    out.corrupted_count += part->corrupted_count;
  }
  return out;
}

bool validate_decomposition(const DenseGraph& d, const BoxDecomposition& dec,
                            int allow_corrupted, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };

  VertexMask all = 0;
  for (const Box& b : dec.boxes) {
    if ((all & b.vertices) != 0) return fail("boxes overlap");
    all |= b.vertices;
  }
  if (all != d.graph.vertices()) return fail("boxes do not cover the graph");
  if (dec.boxes.size() != dec.parent_box.size() || dec.boxes.size() != dec.parent_vertex.size())
    return fail("parent arrays inconsistent");

  int corrupted = 0;
  for (size_t i = 0; i < dec.boxes.size(); ++i) {
    const Box& b = dec.boxes[i];
    View w{d, b.vertices};
    if (!d.graph.is_connected_set(b.vertices)) return fail("box not connected");
    if (w.b2_count() > 2) return fail("box has more than two B2 vertices");

    if (is_regular(b.type)) {
      if (b.root != -1) return fail("regular box carries a root");
      if (dec.parent_box[i] != -1) return fail("regular box has a parent");
    } else {
      if (b.root < 0 || (b.vertices & bit(b.root)) == 0) return fail("missing box root");
      if (!root_ok(w, b.root)) return fail("invalid box root");
    }

    VertexMask good_parents = 0;
    for (size_t j = 0; j < dec.boxes.size(); ++j) {
      if (dec.parent_box[j] != static_cast<int>(i)) continue;
      View cw{d, dec.boxes[j].vertices};
      if (cw.deg(dec.boxes[j].root) <= 1) good_parents |= bit(dec.parent_vertex[j]);
    }

    bool ok = false;
    switch (b.type) {
      case BoxType::kRegularSize2: ok = w.size() == 2; break;
      case BoxType::kRegularC12: ok = is_c12(w); break;
      case BoxType::kRegularHigh: ok = is_regular_high(w, d.analysis, good_parents); break;
      case BoxType::kRegularColored: ok = is_regular_colored(w, d.analysis, good_parents); break;
      case BoxType::kDispensibleD1: ok = is_d1(w, b.root); break;
      case BoxType::kDispensibleD2: ok = is_d2(w, b.root); break;
      case BoxType::kHighLeftover: ok = is_high_leftover(w, b.root); break;
      case BoxType::kCorrupted:
        ok = !is_d1(w, b.root) && !is_d2(w, b.root) && !is_high_leftover(w, b.root);
        ++corrupted;
        break;
    }
    if (!ok) return fail(std::string("box fails its type predicate: ") + to_string(b.type));
  }
  if (corrupted > allow_corrupted) return fail("too many corrupted boxes");

  // A1 per component; A3/A6 from the dense edges; A4/A5 from parenthood.
  for (VertexMask comp : components(d.graph)) {
    int regular = 0;
    for (const Box& b : dec.boxes)
      if ((b.vertices & comp) != 0 && is_regular(b.type)) ++regular;
    if (regular > 1) return fail("component with two regular boxes");
  }

  for (size_t i = 0; i < dec.boxes.size(); ++i) {
    const Box& b = dec.boxes[i];
    if (!is_regular(b.type)) {
      VertexMask outside = d.graph.neighbors_mask(b.root) & ~b.vertices;
      if (popcount(outside) > 1) return fail("root with two external neighbors");
      if (dec.parent_box[i] == -1) {
        if (outside != 0) return fail("root box whose root has an external neighbor");
      } else {
        if (outside != bit(dec.parent_vertex[i])) return fail("root not attached to its parent");
        const Box& pb = dec.boxes[dec.parent_box[i]];
        if ((pb.vertices & bit(dec.parent_vertex[i])) == 0)
          return fail("parent vertex not in parent box");
        if (pb.root == dec.parent_vertex[i]) return fail("parent vertex is a box root");
        if (popcount(pb.vertices) < 3) return fail("parent box smaller than 3");
        if (b.type == BoxType::kHighLeftover && View{d, pb.vertices}.all_high())
          return fail("high parent of a high leftover box");
      }
    }
  }

  // A6: every inter-box edge must be a recorded root-parent edge.
  for (auto [u, v] : d.graph.edges()) {
    int bu = dec.box_of(u), bv = dec.box_of(v);
    if (bu == bv) continue;
    bool ok = (dec.parent_box[bu] == bv && dec.boxes[bu].root == u && dec.parent_vertex[bu] == v) ||
              (dec.parent_box[bv] == bu && dec.boxes[bv].root == v && dec.parent_vertex[bv] == u);
    if (!ok) return fail("external edge not a root-parent edge");
  }
  return true;
}

bool is_good_dense(const DenseGraph& d, Phase phase) {
  int allow = phase == Phase::kStallerToMove ? 0 : 1;
  return find_decomposition(d, allow).has_value();
}

// ---------------------------------------------------------------------------
// Canonical colored component key and the goodness memo.

namespace {

char vertex_tag(const Colors& colors, const Values& values, int v) {
  if (is_virtual_label(v)) return 'v';
  if (colors[v] == Color::kWhite) return 'w';
  return values[v] == 3 ? '3' : '2';
}

std::string encode_rooted(const Forest& g, VertexMask comp, const Colors& colors,
                          const Values& values, int v, int parent) {
  std::vector<std::string> kids;
  for (int u : bits(g.neighbors_mask(v) & comp))
    if (u != parent) kids.push_back(encode_rooted(g, comp, colors, values, u, v));
  std::sort(kids.begin(), kids.end());
  std::string out;
  out.push_back(vertex_tag(colors, values, v));
  out.push_back('(');
  for (const auto& k : kids) out += k;
  out.push_back(')');
  return out;
}

std::vector<int> tree_centers(const Forest& g, VertexMask comp) {
  VertexMask alive = comp;
  std::array<int, kMaxLabels> deg{};
  for (int v : bits(comp)) deg[v] = popcount(g.neighbors_mask(v) & comp);
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

std::string canonical_component_key(const Forest& g, VertexMask comp, const Colors& colors,
                                    const Values& values) {
  std::vector<int> centers = tree_centers(g, comp);
  std::string best;
  for (int c : centers) {
    std::string e = encode_rooted(g, comp, colors, values, c, -1);
    if (best.empty() || e < best) best = e;
  }
  return best;
}

namespace {

struct GoodnessEntry {
  bool good0_known = false;
  bool good0 = false;
  bool good1_known = false;
  bool good1 = false;  // decomposable with at most one corrupted box
  bool semi_known = false;
  bool semi = false;   // an 8-point repair to a corruption-free graph exists
};

thread_local std::unordered_map<std::string, GoodnessEntry> g_goodness_memo;

// Component-local game state; legal within-component play depends only on
// the underlying structure and colors/values (white vertices keep their
// original neighborhoods, and dropped blue-blue edges never affect colors).
GameState make_substate(const Forest& underlying, VertexMask comp, const Colors& colors,
                        const Values& values) {
  GameState s;
  Forest sub;
  for (int v : bits(comp)) sub.add_vertex(v);
  for (int u : bits(comp))
    for (int v : bits(underlying.neighbors_mask(u) & comp))
      if (u < v) sub.add_edge(u, v);
  s.original = sub;
  s.underlying = sub;
  s.color = colors;
  s.value = values;
  return s;
}

DenseGraph dense_of_component(const Forest& underlying, VertexMask comp, const Colors& colors,
                              const Values& values) {
  GameState sub = make_substate(underlying, comp, colors, values);
  return densify(sub.underlying, sub.color, sub.value);
}

bool component_good0_raw(const Forest& underlying, VertexMask comp, const Colors& colors,
                         const Values& values) {
  std::string key = canonical_component_key(underlying, comp, colors, values);
  auto& entry = g_goodness_memo[key];
  if (entry.good0_known) return entry.good0;
  DenseGraph d = dense_of_component(underlying, comp, colors, values);
  auto dec = find_decomposition(d, 0);
  std::string why;
  if (dec && !validate_decomposition(d, *dec, 0, &why))
    throw std::logic_error("decomposition failed independent validation: " + why);
  auto& e2 = g_goodness_memo[key];  // the recursion above may rehash
  e2.good0_known = true;
  e2.good0 = dec.has_value();
  return e2.good0;
}

bool component_semi_raw(const Forest& underlying, VertexMask comp, const Colors& colors,
                        const Values& values);

bool successor_pieces_good0(const MoveCandidate& c, VertexMask region) {
  for (VertexMask piece : components(c.new_underlying)) {
    if ((piece & region) == 0) continue;
    if (!component_good0_raw(c.new_underlying, piece, c.new_colors, c.new_values)) return false;
  }
  return true;
}

bool component_good1_raw(const Forest& underlying, VertexMask comp, const Colors& colors,
                         const Values& values) {
  std::string key = canonical_component_key(underlying, comp, colors, values);
  {
    auto& entry = g_goodness_memo[key];
    if (entry.good1_known) return entry.good1;
  }
  DenseGraph d = dense_of_component(underlying, comp, colors, values);
  auto dec = find_decomposition(d, 1);
  std::string why;
  if (dec && !validate_decomposition(d, *dec, 1, &why))
    throw std::logic_error("decomposition failed independent validation: " + why);
  auto& entry = g_goodness_memo[key];
  entry.good1_known = true;
  entry.good1 = dec.has_value();
  return entry.good1;
}

bool component_semi_raw(const Forest& underlying, VertexMask comp, const Colors& colors,
                        const Values& values) {
  std::string key = canonical_component_key(underlying, comp, colors, values);
  {
    auto& entry = g_goodness_memo[key];
    if (entry.semi_known) return entry.semi;
  }

  bool semi = false;
  GameState sub = make_substate(underlying, comp, colors, values);
  for (int v : bits(comp)) {
    for (const MoveCandidate& c : candidate_moves(sub, v)) {
      if (c.gain < 8) break;  // candidates are sorted by descending gain
      if (successor_pieces_good0(c, comp)) { semi = true; break; }
    }
    if (semi) break;
  }
  auto& entry = g_goodness_memo[key];
  entry.semi_known = true;
  entry.semi = semi;
  return entry.semi;
}

}  // namespace

void clear_goodness_memo() { g_goodness_memo.clear(); }

bool component_good0(const GameState& s, VertexMask component) {
  return component_good0_raw(s.underlying, component, s.color, s.value);
}

bool region_good0(const Forest& underlying, VertexMask region, const Colors& colors,
                  const Values& values) {
  for (VertexMask comp : components(underlying)) {
    if ((comp & region) == 0) continue;
    if (!component_good0_raw(underlying, comp, colors, values)) return false;
  }
  return true;
}

bool region_good_before_dominator(const Forest& underlying, VertexMask region,
                                  const Colors& colors, const Values& values) {
  int bad = 0;
  VertexMask bad_comp = 0;
  for (VertexMask comp : components(underlying)) {
    if ((comp & region) == 0) continue;
    if (component_good0_raw(underlying, comp, colors, values)) continue;
    if (++bad > 1) return false;
    bad_comp = comp;
  }
  if (bad == 0) return true;
  return component_good1_raw(underlying, bad_comp, colors, values) &&
         component_semi_raw(underlying, bad_comp, colors, values);
}

bool is_semi_corrupted(const GameState& s, VertexMask component) {
  return component_semi_raw(s.underlying, component, s.color, s.value);
}

bool is_good(const GameState& s, Phase phase) {
  int bad = 0;
  VertexMask bad_comp = 0;
  for (VertexMask comp : components(s.underlying)) {
    if (component_good0(s, comp)) continue;
    ++bad;
    bad_comp = comp;
  }
  if (bad == 0) return true;
  if (phase == Phase::kStallerToMove || bad > 1) return false;
  return component_good1_raw(s.underlying, bad_comp, s.color, s.value) &&
         is_semi_corrupted(s, bad_comp);
}

// ---------------------------------------------------------------------------
// Special subtrees.

const char* to_string(SubtreeKind k) {
  switch (k) {
    case SubtreeKind::kFix: return "fix";
    case SubtreeKind::kStrongFix: return "strong-fix";
    case SubtreeKind::kSemiTriplet: return "semi-triplet";
    case SubtreeKind::kStrongSemiTriplet: return "strong-semi-triplet";
  }
  return "?";
}

namespace {

// High length-2 pendant tails of u in the dense graph, lead label order.
std::vector<Tail> high_tails2(const DenseGraph& d, int u) {
  std::vector<Tail> out;
  View w{d, component_of(d.graph, u)};
  for (int x : bits(d.graph.neighbors_mask(u))) {
    auto p = pendant(w, u, x);
    if (p.size() == 2 && d.values[p[0]] == 3 && d.values[p[1]] == 3)
      out.push_back(Tail{u, {p[0], p[1]}, TailKind::kSubtail});
  }
  return out;
}

bool decomposition_avoiding_roots(const DenseGraph& d, int u, VertexMask forbidden) {
  VertexMask comp = component_of(d.graph, u);
  return decompose_component(d, comp, 1, forbidden).has_value();
}

// Strength condition: at most one white neighbor outside the chosen subtree,
// and that neighbor is not the lead of a white tail of length 1 or 2.
bool strength_holds(const DenseGraph& d, int u, VertexMask subtree_neighbors) {
  View w{d, component_of(d.graph, u)};
  std::vector<int> extra_whites;
  for (int x : bits(d.graph.neighbors_mask(u) & ~subtree_neighbors))
    if (d.colors[x] == Color::kWhite) extra_whites.push_back(x);
  if (extra_whites.size() > 1) return false;
  if (extra_whites.empty()) return true;
  int x = extra_whites[0];
  auto p = pendant(w, u, x);
  if (p.size() == 1 && d.colors[p[0]] == Color::kWhite) return false;
  if (p.size() == 2 && all_white_path(w, p)) return false;
  return true;
}

bool tail_has_b3_leaf(const DenseGraph& d, const Tail& t) {
  int leaf = t.path.back();
  return d.colors[leaf] == Color::kBlue && d.values[leaf] == 3 &&
         d.graph.degree(leaf) == 1;
}

}  // namespace

std::vector<SpecialSubtree> find_special_subtrees(const DenseGraph& d) {
  std::vector<SpecialSubtree> out;
  for (int u : bits(d.graph.vertices())) {
    std::vector<Tail> tails = high_tails2(d, u);
    int k = static_cast<int>(tails.size());

    // Fix vertex: a B3 leaf neighbor plus two protected high length-2 tails.
    if (d.colors[u] == Color::kWhite) {
      std::vector<int> b3_leaves;
      for (int x : bits(d.graph.neighbors_mask(u)))
        if (d.graph.degree(x) == 1 && d.colors[x] == Color::kBlue && d.values[x] == 3)
          b3_leaves.push_back(x);
      if (!b3_leaves.empty() && k >= 2) {
        bool found = false, strong = false;
        std::vector<Tail> chosen;
        for (int i = 0; i < k && !(found && strong); ++i) {
          for (int j = i + 1; j < k && !(found && strong); ++j) {
            VertexMask tail_verts = bit(tails[i].path[0]) | bit(tails[i].path[1]) |
                                    bit(tails[j].path[0]) | bit(tails[j].path[1]);
            if (!decomposition_avoiding_roots(d, u, tail_verts)) continue;
            for (int lam : b3_leaves) {
              bool st = strength_holds(d, u, bit(lam) | bit(tails[i].lead()) | bit(tails[j].lead()));
              if (!found || (st && !strong)) {
                chosen = {tails[i], tails[j]};
                strong = st;
              }
              found = true;
              if (strong) break;
            }
          }
        }
        if (found) {
          SpecialSubtree s;
          s.kind = strong ? SubtreeKind::kStrongFix : SubtreeKind::kFix;
          s.root = u;
          s.tails = chosen;
          s.b3_leaf = true;
          out.push_back(std::move(s));
        }
      }
    }

    // Semi-triplet vertex: high split vertex with three protected high
    // length-2 tails that is not a triplet vertex.
    if (d.values[u] == 3 && k >= 3 && (d.analysis.tt & bit(u)) == 0) {
      bool found = false, strong = false, b3 = false;
      std::vector<Tail> chosen;
      for (int i = 0; i < k; ++i)
        for (int j = i + 1; j < k; ++j)
          for (int l = j + 1; l < k; ++l) {
            VertexMask tail_verts = 0;
            for (const Tail* t : {&tails[i], &tails[j], &tails[l]})
              tail_verts |= bit(t->path[0]) | bit(t->path[1]);
            if (!decomposition_avoiding_roots(d, u, tail_verts)) continue;
            bool st = strength_holds(
                d, u, bit(tails[i].lead()) | bit(tails[j].lead()) | bit(tails[l].lead()));
            bool has_b3 = tail_has_b3_leaf(d, tails[i]) || tail_has_b3_leaf(d, tails[j]) ||
                          tail_has_b3_leaf(d, tails[l]);
            if (!found || (st && !strong) || (has_b3 && !b3 && st == strong)) {
              chosen = {tails[i], tails[j], tails[l]};
              strong = st;
              b3 = has_b3;
            }
            found = true;
          }
      if (found) {
        SpecialSubtree s;
        s.kind = strong ? SubtreeKind::kStrongSemiTriplet : SubtreeKind::kSemiTriplet;
        s.root = u;
        s.tails = chosen;
        s.b3_leaf = b3;
        out.push_back(std::move(s));
      }
    }
  }
  return out;
}

}  // namespace domgame

#include "domgame/oracle.hpp"

#include <stdexcept>
#include <unordered_map>
#include <vector>

namespace domgame {

namespace {

struct OracleContext {
  int n = 0;
  std::uint32_t full = 0;
  std::vector<std::uint32_t> closed;  // compact closed neighborhoods
  std::unordered_map<std::uint64_t, std::int16_t>* memo = nullptr;
};

OracleContext make_context(const Forest& g, int cap) {
  if (!g.is_isolate_free())
    throw std::invalid_argument("gamma: forest must be isolate-free");
  std::vector<int> labels = mask_to_vector(g.vertices());
  int n = static_cast<int>(labels.size());
  if (n > cap) throw std::invalid_argument("gamma: forest exceeds the oracle capacity");
  std::vector<int> index(kMaxLabels, -1);
  for (int i = 0; i < n; ++i) index[labels[i]] = i;
  OracleContext ctx;
  ctx.n = n;
  ctx.full = n == 32 ? 0xffffffffu : (1u << n) - 1;
  ctx.closed.resize(n);
  for (int i = 0; i < n; ++i) {
    std::uint32_t m = 1u << i;
    for (int u : bits(g.neighbors_mask(labels[i]))) m |= 1u << index[u];
    ctx.closed[i] = m;
  }
  return ctx;
}

int solve(const OracleContext& ctx, std::uint32_t dominated, int mover, int depth) {
  if (dominated == ctx.full) return 0;
  if (depth > ctx.n) throw std::logic_error("gamma: depth cap exceeded");
  std::uint64_t key = (static_cast<std::uint64_t>(dominated) << 1) | mover;
  if (ctx.memo) {
    auto it = ctx.memo->find(key);
    if (it != ctx.memo->end()) return it->second;
  }
  int best = mover == 0 ? ctx.n + 1 : -1;
  for (int v = 0; v < ctx.n; ++v) {
    if ((ctx.closed[v] & ~dominated) == 0) continue;  // illegal: nothing new
    int sub = 1 + solve(ctx, dominated | ctx.closed[v], 1 - mover, depth + 1);
    if (mover == 0) best = std::min(best, sub);
    else best = std::max(best, sub);
  }
  if (ctx.memo) (*ctx.memo)[key] = static_cast<std::int16_t>(best);
  return best;
}

}  // namespace

int gamma_from(const Forest& g, VertexMask dominated, Player mover, int cap) {
  OracleContext ctx = make_context(g, cap);
  std::unordered_map<std::uint64_t, std::int16_t> memo;
  ctx.memo = &memo;
  std::vector<int> labels = mask_to_vector(g.vertices());
  std::uint32_t compact = 0;
  for (size_t i = 0; i < labels.size(); ++i)
    if ((dominated & bit(labels[i])) != 0) compact |= 1u << i;
  return solve(ctx, compact, mover == Player::kDominator ? 0 : 1, 0);
}

int gamma(const Forest& g, Variant variant, int cap) {
  OracleContext ctx = make_context(g, cap);
  std::unordered_map<std::uint64_t, std::int16_t> memo;
  ctx.memo = &memo;
  return solve(ctx, 0, variant == Variant::kDominatorStart ? 0 : 1, 0);
}

int gamma_unmemoized(const Forest& g, Variant variant, int cap) {
  OracleContext ctx = make_context(g, cap);
  return solve(ctx, 0, variant == Variant::kDominatorStart ? 0 : 1, 0);
}

bool verify_bound(const Forest& g, Variant variant, int cap) {
  return gamma(g, variant, cap) <= t_max(g.size(), variant);
}

}  // namespace domgame

#include "qspread/search.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <mutex>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qspread {

namespace {

constexpr std::uint64_t kMaxVectors = std::uint64_t(1) << 20;
constexpr std::uint64_t kMaxSubspaces = std::uint64_t(1) << 20;

struct Bits {
  std::vector<std::uint64_t> w;
  explicit Bits(size_t n = 0) : w((n + 63) / 64, 0) {}
  void set(size_t i) { w[i >> 6] |= std::uint64_t(1) << (i & 63); }
  void clear(size_t i) { w[i >> 6] &= ~(std::uint64_t(1) << (i & 63)); }
  bool intersects(const Bits& o) const {
    for (size_t i = 0; i < w.size(); ++i)
      if (w[i] & o.w[i]) return true;
    return false;
  }
  void operator|=(const Bits& o) {
    for (size_t i = 0; i < w.size(); ++i) w[i] |= o.w[i];
  }
  void andnot(const Bits& o) {
    for (size_t i = 0; i < w.size(); ++i) w[i] &= ~o.w[i];
  }
  // least position in [0, n) not set; n if all set
  size_t first_clear(size_t n) const {
    for (size_t wi = 0; wi < w.size(); ++wi) {
      const std::uint64_t inv = ~w[wi];
      if (!inv) continue;
      const size_t i = wi * 64 + size_t(std::countr_zero(inv));
      return i < n ? i : n;
    }
    return n;
  }
};

struct Instance {
  std::vector<Subspace> subs;          // all of G_q(n, k), canonical order
  std::vector<Bits> covers;            // per subspace: nonzero-vector set
  std::vector<std::vector<std::uint32_t>> by_vector;  // vector -> subspaces
  size_t nvec = 0;
  std::uint64_t spread_size = 0;
};

struct Budget {
  std::atomic<std::uint64_t> nodes{0};
  std::atomic<bool> truncated{false};
  std::uint64_t limit = 0;

  // true while within budget; flips truncated once the limit is crossed
  bool tick() {
    if (truncated.load(std::memory_order_relaxed)) return false;
    if (nodes.fetch_add(1, std::memory_order_relaxed) + 1 > limit) {
      truncated.store(true, std::memory_order_relaxed);
      return false;
    }
    return true;
  }
};

// phase 1: all spreads, as member lists of subspace indices
void enumerate_spreads(const Instance& inst, Budget& budget, Bits& cover,
                       std::vector<std::uint32_t>& cur,
                       std::vector<std::vector<std::uint32_t>>& out) {
  if (!budget.tick()) return;
  const size_t p = cover.first_clear(inst.nvec);
  if (p == inst.nvec) {
    out.push_back(cur);
    return;
  }
  for (const std::uint32_t si : inst.by_vector[p]) {
    if (inst.covers[si].intersects(cover)) continue;
    cover |= inst.covers[si];
    cur.push_back(si);
    enumerate_spreads(inst, budget, cover, cur, out);
    cover.andnot(inst.covers[si]);
    cur.pop_back();
    if (budget.truncated.load(std::memory_order_relaxed)) return;
  }
}

struct PackingShared {
  std::atomic<unsigned> best{0};
  std::vector<std::uint32_t> witness;  // spread indices, guarded by mu
  std::mutex mu;
};

// phase 2: maximum set packing by branch and bound on the least subspace
// that is neither used by a chosen spread nor skipped
struct Packer {
  const std::vector<Bits>* member_masks;  // per spread: subspace-index set
  const std::vector<std::vector<std::uint32_t>>* by_subspace;
  size_t nsub = 0;
  std::uint64_t spread_size = 0;
  Budget* budget;
  PackingShared* shared;

  Bits dead;  // used or skipped subspaces
  std::uint64_t free_count = 0;
  std::vector<std::uint32_t> chosen;

  void offer_current() {
    const unsigned cur = unsigned(chosen.size());
    if (cur <= shared->best.load(std::memory_order_relaxed)) return;
    const std::lock_guard<std::mutex> lock(shared->mu);
    if (cur > shared->best.load(std::memory_order_relaxed)) {
      shared->best.store(cur, std::memory_order_relaxed);
      shared->witness = chosen;
    }
  }

  void dfs() {
    if (!budget->tick()) return;
    offer_current();
    // bound: every further spread consumes spread_size free subspaces
    if (unsigned(chosen.size()) + free_count / spread_size <=
        shared->best.load(std::memory_order_relaxed))
      return;
    const size_t i = dead.first_clear(nsub);
    if (i == nsub) return;
    for (const std::uint32_t s : (*by_subspace)[i]) {
      const Bits& mask = (*member_masks)[s];
      if (mask.intersects(dead)) continue;
      dead |= mask;
      free_count -= spread_size;
      chosen.push_back(s);
      dfs();
      chosen.pop_back();
      free_count += spread_size;
      dead.andnot(mask);
      if (budget->truncated.load(std::memory_order_relaxed)) return;
    }
    dead.set(i);
    --free_count;
    dfs();
    ++free_count;
    dead.clear(i);
  }
};

}  // namespace

SearchResult exhaustive_max_family(const Gf& gf, unsigned n, unsigned k,
                                   std::uint64_t node_budget, int threads) {
  if (k < 1 || n < k)
    throw std::invalid_argument("exhaustive_max_family: need 1 <= k <= n");
  const VecCtx ctx(gf, n);
  if (ctx.packed_bound() > kMaxVectors)
    throw std::invalid_argument(
        "exhaustive_max_family: instance exceeds the per-vector "
        "bookkeeping limit");

  SearchResult res;
  res.exact = true;
  if (n % k != 0) return res;  // no spread exists: exact 0

  // instance tables
  Instance inst;
  const std::uint64_t total = gaussian_binomial(gf.q(), n, k);
  if (total > kMaxSubspaces)
    throw std::invalid_argument(
        "exhaustive_max_family: Grassmannian too large for search");
  GrassmannianRange range(ctx, k);
  inst.subs.reserve(size_t(total));
  for (std::uint64_t i = 0; i < total; ++i) inst.subs.push_back(range.at(i));

  std::vector<std::uint32_t> pos(size_t(ctx.packed_bound()), 0);
  std::vector<Row> vecs;
  const Subspace full = head_axis(ctx, n);
  for_each_vector(ctx, full, [&](Row v) {
    if (v != 0) vecs.push_back(v);
  });
  std::sort(vecs.begin(), vecs.end());
  inst.nvec = vecs.size();
  for (size_t i = 0; i < vecs.size(); ++i) pos[size_t(vecs[i])] = i;

  inst.covers.reserve(inst.subs.size());
  inst.by_vector.assign(inst.nvec, {});
  for (std::uint32_t si = 0; si < inst.subs.size(); ++si) {
    Bits b(inst.nvec);
    for_each_vector(ctx, inst.subs[si], [&](Row v) {
      if (v == 0) return;
      b.set(pos[size_t(v)]);
      inst.by_vector[pos[size_t(v)]].push_back(si);
    });
    inst.covers.push_back(std::move(b));
  }
  std::uint64_t qk = 1;
  for (unsigned i = 0; i < k; ++i) qk *= gf.q();
  inst.spread_size = inst.nvec / (qk - 1);

  Budget budget;
  budget.limit = node_budget;

  // phase 1
  std::vector<std::vector<std::uint32_t>> spreads;
  {
    Bits cover(inst.nvec);
    std::vector<std::uint32_t> cur;
    enumerate_spreads(inst, budget, cover, cur, spreads);
  }
  res.spread_count = spreads.size();
  if (spreads.empty()) {
    res.nodes = budget.nodes.load();
    res.exact = !budget.truncated.load();
    return res;
  }

  // phase 2 tables
  const size_t nsub = inst.subs.size();
  std::vector<Bits> member_masks;
  member_masks.reserve(spreads.size());
  std::vector<std::vector<std::uint32_t>> by_subspace(nsub);
  for (std::uint32_t s = 0; s < spreads.size(); ++s) {
    Bits b(nsub);
    for (const std::uint32_t si : spreads[s]) {
      b.set(si);
      by_subspace[si].push_back(s);
    }
    member_masks.push_back(std::move(b));
  }

  PackingShared shared;
  const auto make_packer = [&] {
    Packer p;
    p.member_masks = &member_masks;
    p.by_subspace = &by_subspace;
    p.nsub = nsub;
    p.spread_size = spreads[0].size();
    p.budget = &budget;
    p.shared = &shared;
    p.dead = Bits(nsub);
    p.free_count = nsub;
    return p;
  };

#ifdef _OPENMP
  const bool parallel = threads != 1;
#else
  const bool parallel = false;
#endif
  if (!parallel) {
    Packer p = make_packer();
    p.dfs();
  } else {
#ifdef _OPENMP
    // root branches: the spreads through subspace 0, plus skipping it
    const std::vector<std::uint32_t>& root = by_subspace[0];
    const int T = threads <= 0 ? omp_get_max_threads() : threads;
#pragma omp parallel for schedule(dynamic, 1) num_threads(T)
    for (size_t b = 0; b <= root.size(); ++b) {
      Packer p = make_packer();
      if (!budget.tick()) continue;
      if (b < root.size()) {
        const Bits& mask = member_masks[root[b]];
        p.dead |= mask;
        p.free_count -= p.spread_size;
        p.chosen.push_back(root[b]);
      } else {
        p.dead.set(0);
        --p.free_count;
      }
      p.dfs();
    }
#endif
  }

  res.best = shared.best.load();
  res.nodes = budget.nodes.load();
  res.exact = !budget.truncated.load();
  res.witness.reserve(shared.witness.size());
  for (const std::uint32_t s : shared.witness) {
    std::vector<Subspace> members;
    members.reserve(spreads[s].size());
    for (const std::uint32_t si : spreads[s]) members.push_back(inst.subs[si]);
    res.witness.push_back(std::move(members));
  }
  return res;
}

}  // namespace qspread

#include "qspread/kernels.hpp"

#include <algorithm>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace qspread {

int resolve_threads(int threads) {
#ifdef _OPENMP
  return threads <= 0 ? omp_get_max_threads() : threads;
#else
  (void)threads;
  return 1;
#endif
}

namespace {

// rank of the union of two RREF bases; forward elimination on a fixed-size
// scratch buffer, no allocation
unsigned stacked_rank(const VecCtx& ctx, const Subspace& a, const Subspace& b) {
  Row buf[64];
  unsigned m = 0;
  for (Row r : a.rows) buf[m++] = r;
  for (Row r : b.rows) buf[m++] = r;
  const Gf& gf = ctx.gf();
  unsigned rank = 0;
  for (unsigned col = 0; col < ctx.n() && rank < m; ++col) {
    unsigned sel = m;
    for (unsigned r = rank; r < m; ++r)
      if (ctx.get(buf[r], col)) { sel = r; break; }
    if (sel == m) continue;
    std::swap(buf[rank], buf[sel]);
    const GfElem c = ctx.get(buf[rank], col);
    if (c != 1) buf[rank] = ctx.scale(buf[rank], gf.inv(c));
    for (unsigned r = rank + 1; r < m; ++r) {
      const GfElem d = ctx.get(buf[r], col);
      if (d) buf[r] = ctx.add_scaled(buf[r], buf[rank], gf.neg(d));
    }
    ++rank;
  }
  return rank;
}

unsigned pair_distance(const VecCtx& ctx, const Subspace& a, const Subspace& b) {
  return 2 * stacked_rank(ctx, a, b) - a.k - b.k;
}

void check_cover_preconditions(const VecCtx& ctx,
                               std::span<const Subspace> members) {
  if (ctx.packed_bound() > kMaxCoverBound)
    throw std::invalid_argument("cover_counts: packed index space too large");
  if (members.size() > 60000)
    throw std::invalid_argument("cover_counts: too many members");
}

}  // namespace

std::vector<std::uint16_t> cover_counts_serial(const VecCtx& ctx,
                                               std::span<const Subspace> members) {
  check_cover_preconditions(ctx, members);
  std::vector<std::uint16_t> counts(ctx.packed_bound(), 0);
  for (const Subspace& s : members)
    for_each_vector(ctx, s, [&](Row v) { ++counts[v]; });
  counts[0] = 0;
  return counts;
}

std::vector<std::uint16_t> cover_counts(const VecCtx& ctx,
                                        std::span<const Subspace> members,
                                        int threads) {
  check_cover_preconditions(ctx, members);
  const int T = resolve_threads(threads);
#ifdef _OPENMP
  // per-thread tables; cap memory by falling back to the reference path
  if (T > 1 && ctx.packed_bound() <= (std::uint64_t(1) << 22)) {
    const std::uint64_t bound = ctx.packed_bound();
    std::vector<std::uint16_t> counts(bound, 0);
#pragma omp parallel num_threads(T)
    {
      std::vector<std::uint16_t> local(bound, 0);
#pragma omp for schedule(dynamic, 16) nowait
      for (std::int64_t i = 0; i < std::int64_t(members.size()); ++i)
        for_each_vector(ctx, members[size_t(i)], [&](Row v) { ++local[v]; });
#pragma omp critical
      for (std::uint64_t v = 0; v < bound; ++v) counts[v] += local[v];
    }
    counts[0] = 0;
    return counts;
  }
#endif
  (void)T;
  return cover_counts_serial(ctx, members);
}

DistanceScan min_pairwise_distance_serial(const VecCtx& ctx,
                                          std::span<const Subspace> members) {
  DistanceScan best;
  const std::uint64_t m = members.size();
  for (std::uint64_t i = 0; i < m; ++i)
    for (std::uint64_t j = i + 1; j < m; ++j) {
      const unsigned d = pair_distance(ctx, members[i], members[j]);
      if (d < best.min_distance) best = {d, i, j};
    }
  return best;
}

DistanceScan min_pairwise_distance(const VecCtx& ctx,
                                   std::span<const Subspace> members,
                                   int threads) {
  const int T = resolve_threads(threads);
#ifdef _OPENMP
  if (T > 1 && members.size() > 2) {
    DistanceScan best;
    const std::int64_t m = std::int64_t(members.size());
#pragma omp parallel num_threads(T)
    {
      DistanceScan local;
#pragma omp for schedule(dynamic, 4) nowait
      for (std::int64_t i = 0; i < m; ++i)
        for (std::int64_t j = i + 1; j < m; ++j) {
          const unsigned d =
              pair_distance(ctx, members[size_t(i)], members[size_t(j)]);
          const auto cand = std::tuple{d, std::uint64_t(i), std::uint64_t(j)};
          if (cand < std::tuple{local.min_distance, local.i, local.j})
            local = {d, std::uint64_t(i), std::uint64_t(j)};
        }
#pragma omp critical
      if (std::tuple{local.min_distance, local.i, local.j} <
          std::tuple{best.min_distance, best.i, best.j})
        best = local;
    }
    return best;
  }
#endif
  (void)T;
  return min_pairwise_distance_serial(ctx, members);
}

namespace {

std::vector<std::uint64_t> census_range(const VecCtx& ctx,
                                        const GrassmannianRange& g,
                                        const Subspace& u, unsigned slots,
                                        std::uint64_t lo, std::uint64_t hi) {
  std::vector<std::uint64_t> counts(slots, 0);
  for (std::uint64_t i = lo; i < hi; ++i) {
    const Subspace y = g.at(i);
    ++counts[intersect(ctx, y, u).k];
  }
  return counts;
}

}  // namespace

std::vector<std::uint64_t> tail_dim_census_serial(const VecCtx& ctx, unsigned m,
                                                  unsigned k) {
  const GrassmannianRange g(ctx, m);
  const Subspace u = tail_axis(ctx, k);
  const unsigned slots = std::min<unsigned>(m, ctx.n() - k) + 1;
  return census_range(ctx, g, u, slots, 0, g.size());
}

std::vector<std::uint64_t> tail_dim_census(const VecCtx& ctx, unsigned m,
                                           unsigned k, int threads) {
  const int T = resolve_threads(threads);
#ifdef _OPENMP
  if (T > 1) {
    const GrassmannianRange g(ctx, m);
    const Subspace u = tail_axis(ctx, k);
    const unsigned slots = std::min<unsigned>(m, ctx.n() - k) + 1;
    std::vector<std::uint64_t> counts(slots, 0);
    const std::uint64_t total = g.size();
#pragma omp parallel num_threads(T)
    {
      std::vector<std::uint64_t> local(slots, 0);
#pragma omp for schedule(dynamic, 256) nowait
      for (std::int64_t i = 0; i < std::int64_t(total); ++i)
        ++local[intersect(ctx, g.at(std::uint64_t(i)), u).k];
#pragma omp critical
      for (unsigned s = 0; s < slots; ++s) counts[s] += local[s];
    }
    return counts;
  }
#endif
  (void)T;
  return tail_dim_census_serial(ctx, m, k);
}

}  // namespace qspread

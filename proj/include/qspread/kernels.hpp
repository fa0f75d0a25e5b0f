// Exhaustive verification kernels over packed subspaces.
//
// Every kernel comes in two variants: a plain serial reference and an
// OpenMP-parallel version.  The parallel versions reduce with order-free
// operations (sums, lexicographic minima), so for any thread count they
// return bit-identical results to the serial reference; the reference is
// kept for tests and for the benchmark comparing the two.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qspread/linalg.hpp"

namespace qspread {

// Threads actually used: n <= 0 picks the OpenMP default (1 when built
// without OpenMP).
int resolve_threads(int threads);

// Largest packed-index table the kernels will allocate (per thread).
inline constexpr std::uint64_t kMaxCoverBound = std::uint64_t(1) << 26;

// counts[v] = number of members whose vector set contains packed vector v;
// counts[0] is left at 0.  Throws std::invalid_argument when the packed
// bound exceeds kMaxCoverBound.
std::vector<std::uint16_t> cover_counts_serial(const VecCtx& ctx,
                                               std::span<const Subspace> members);
std::vector<std::uint16_t> cover_counts(const VecCtx& ctx,
                                        std::span<const Subspace> members,
                                        int threads = 0);

struct DistanceScan {
  unsigned min_distance = ~0u;      // ~0u when fewer than two members
  std::uint64_t i = 0, j = 0;       // smallest witness pair, i < j
};

// Minimum pairwise subspace distance over all member pairs.  The witness is
// the lexicographically smallest (distance, i, j) triple.
DistanceScan min_pairwise_distance_serial(const VecCtx& ctx,
                                          std::span<const Subspace> members);
DistanceScan min_pairwise_distance(const VecCtx& ctx,
                                   std::span<const Subspace> members,
                                   int threads = 0);

// Counts of dim(Y ∩ U) for Y over the whole Grassmannian G_q(n, m), with
// U = tail_axis(ctx, k); slot d of the result counts subspaces with
// intersection dimension d.  Computed from an explicit intersection per
// subspace, sharded over the enumeration range.
std::vector<std::uint64_t> tail_dim_census_serial(const VecCtx& ctx, unsigned m,
                                                  unsigned k);
std::vector<std::uint64_t> tail_dim_census(const VecCtx& ctx, unsigned m,
                                           unsigned k, int threads = 0);

}  // namespace qspread

#include "qspread/std_design.hpp"

#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "qspread/kernels.hpp"

namespace qspread {

namespace {

std::uint64_t pow_u64(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::vector<Row> normalized_heads(const VecCtx& half) {
  std::vector<Row> reps;
  const Subspace full = head_axis(half, half.n());
  for_each_vector(half, full, [&](Row v) {
    if (v != 0 && half.normalize_point(v) == v) reps.push_back(v);
  });
  return reps;
}

[[noreturn]] void fail(const std::string& msg) { throw std::logic_error(msg); }

}  // namespace

std::uint64_t transversal_count(std::uint64_t q, unsigned k, unsigned m,
                                unsigned t) {
  const std::uint64_t shapes = gaussian_binomial(q, k, t);
  const std::uint64_t tails = pow_u64(q, m * t);
  if (tails != 0 && shapes > ~std::uint64_t(0) / tails)
    throw std::overflow_error("transversal_count");
  return shapes * tails;
}

TransversalDesign build_design(const Gf& gf, unsigned k, unsigned m,
                               unsigned t, int threads) {
  if (t < 1 || t > k || k > m)
    throw std::invalid_argument("build_design: need 1 <= t <= k <= m");
  const LiftedCode code(gf, k, m, k - t + 1);
  const ParallelClasses pc = parallel_classes(code, threads);

  TransversalDesign d;
  d.k = k;
  d.m = m;
  d.t = t;
  d.group_reps = normalized_heads(VecCtx(gf, k));
  d.class_count = pc.class_count;
  d.class_size = pc.class_size;
  d.blocks.reserve(size_t(code.size()));
  for (const auto& cls : pc.classes)
    d.blocks.insert(d.blocks.end(), cls.begin(), cls.end());
  verify_design(gf, d, threads);
  return d;
}

void verify_design(const Gf& gf, const TransversalDesign& d, int threads) {
  const unsigned k = d.k, m = d.m, t = d.t;
  const unsigned n = k + m;
  const std::uint64_t q = gf.q();
  const VecCtx ctx(gf, n);
  const VecCtx half(gf, k);

  // points and groups: (q^k-1)/(q-1) normalized representatives
  const auto want_reps = normalized_heads(half);
  if (d.group_reps.size() != (pow_u64(q, k) - 1) / (q - 1))
    fail("design groups: wrong count");
  if (std::unordered_set<Row>(d.group_reps.begin(), d.group_reps.end()) !=
      std::unordered_set<Row>(want_reps.begin(), want_reps.end()))
    fail("design groups: not the normalized head representatives");

  // block collection shape and the parallel-class layout
  // the code has t free coefficients, each ranging over q^m values
  if (d.blocks.size() != pow_u64(q, m * t)) fail("design blocks: wrong count");
  if (d.class_size != pow_u64(q, m) ||
      d.class_count * d.class_size != d.blocks.size())
    fail("design blocks: classes do not tile the block list");

  // axiom 3: blocks live on the points (they avoid the tail axis)
  const Subspace tail = tail_axis(ctx, k);
  for (const Subspace& b : d.blocks) {
    if (b.n != n || b.k != k) fail("design blocks: not a k-subspace of F^n");
    if (intersect_dim(ctx, b, tail) != 0)
      fail("design blocks: block meets the tail axis");
  }

  // axiom 4: each block meets each group in exactly one point
  std::unordered_map<Row, unsigned> head_count;
  for (const Subspace& b : d.blocks) {
    head_count.clear();
    for (Row v : enumerate_vectors(ctx, b)) ++head_count[ctx.head(v, k)];
    for (Row rep : d.group_reps) {
      const auto it = head_count.find(rep);
      if (it == head_count.end() || it->second != 1)
        fail("design axiom 4: a block misses a group or meets it twice");
    }
  }

  // axiom 5: every transversal t-subspace lies in exactly one block
  const std::uint64_t want_transversal = transversal_count(q, k, m, t);
  if (t == k) {
    // the t-subspaces are exactly the candidate blocks themselves
    std::unordered_set<Subspace, SubspaceHash> block_set(d.blocks.begin(),
                                                         d.blocks.end());
    if (block_set.size() != d.blocks.size())
      fail("design axiom 5: a transversal subspace is in two blocks");
    const VecCtx rowctx(gf, m);
    std::vector<Row> all_tails;
    const Subspace tails_full = head_axis(rowctx, m);
    for_each_vector(rowctx, tails_full, [&](Row v) { all_tails.push_back(v); });
    std::vector<Row> a_rows(k);
    std::vector<size_t> idx(k, 0);
    std::uint64_t seen = 0;
    // odometer over the k tail rows of [I | A]
    for (;;) {
      for (unsigned i = 0; i < k; ++i) a_rows[i] = all_tails[idx[i]];
      ++seen;
      if (!block_set.count(lift(ctx, a_rows, k)))
        fail("design axiom 5: a transversal subspace is in no block");
      unsigned i = 0;
      for (; i < k; ++i) {
        if (++idx[i] < all_tails.size()) break;
        idx[i] = 0;
      }
      if (i == k) break;
    }
    if (seen != want_transversal)
      fail("design axiom 5: transversal enumeration is off");
  } else {
    const VecCtx rowctx(gf, m);
    std::vector<Row> all_tails;
    const Subspace tails_full = head_axis(rowctx, m);
    for_each_vector(rowctx, tails_full, [&](Row v) { all_tails.push_back(v); });
    GrassmannianRange heads(half, t);
    std::uint64_t seen = 0;
    for (std::uint64_t hidx = 0; hidx < heads.size(); ++hidx) {
      const Subspace h = heads.at(hidx);
      std::vector<size_t> idx(t, 0);
      Subspace y;
      y.n = std::uint16_t(n);
      y.k = std::uint16_t(t);
      y.pivots = h.pivots;
      y.rows.resize(t);
      for (;;) {
        for (unsigned i = 0; i < t; ++i)
          y.rows[i] = ctx.concat(h.rows[i], all_tails[idx[i]], k);
        ++seen;
        unsigned hits = 0;
        for (const Subspace& b : d.blocks) {
          bool inside = true;
          for (Row r : y.rows)
            if (!contains(ctx, b, r)) {
              inside = false;
              break;
            }
          if (inside && ++hits > 1) break;
        }
        if (hits != 1)
          fail("design axiom 5: a transversal subspace is in " +
               std::to_string(hits) + " blocks");
        unsigned i = 0;
        for (; i < t; ++i) {
          if (++idx[i] < all_tails.size()) break;
          idx[i] = 0;
        }
        if (i == t) break;
      }
    }
    if (seen != want_transversal)
      fail("design axiom 5: transversal enumeration is off");
  }

  // resolvability: each class covers every point column exactly once
  const Subspace full = head_axis(ctx, n);
  for (std::uint64_t c = 0; c < d.class_count; ++c) {
    const std::span<const Subspace> cls(d.blocks.data() + c * d.class_size,
                                        size_t(d.class_size));
    const auto counts = cover_counts(ctx, cls, threads);
    for_each_vector(ctx, full, [&](Row v) {
      if (v == 0) return;
      const std::uint16_t want = ctx.head(v, k) != 0 ? 1 : 0;
      if (counts[v] != want)
        fail("design resolvability: class " + std::to_string(c) +
             " covers " + ctx.to_string(v) + " " + std::to_string(counts[v]) +
             " times");
    });
  }
}

TransversalParallelism transversal_parallelism(const Gf& gf, unsigned n,
                                               unsigned k, int threads) {
  if (n < 2 * k)
    throw std::invalid_argument("transversal_parallelism: need n >= 2k");
  const TransversalDesign d = build_design(gf, k, n - k, k, threads);
  TransversalParallelism p;
  p.n = n;
  p.k = k;
  p.class_count = d.class_count;
  p.class_size = d.class_size;
  p.spreads.reserve(size_t(d.class_count));
  for (std::uint64_t c = 0; c < d.class_count; ++c)
    p.spreads.emplace_back(d.blocks.begin() + c * d.class_size,
                           d.blocks.begin() + (c + 1) * d.class_size);
  return p;
}

Subspace embed_suffix(const VecCtx& big, const VecCtx& small,
                      const Subspace& s, unsigned k) {
  if (!big.gf().same_field(small.gf()) || big.n() != small.n() + k)
    throw std::invalid_argument("embed_suffix: mismatched contexts");
  Subspace out;
  out.n = std::uint16_t(big.n());
  out.k = s.k;
  out.pivots = s.pivots << k;
  out.rows.reserve(s.rows.size());
  for (Row r : s.rows) out.rows.push_back(r << (k * big.bits()));
  return out;
}

SpreadFamily extend_family(const Gf& gf, unsigned n, const SpreadFamily& inner,
                           int threads) {
  const unsigned k = inner.k;
  if (inner.n != n - k)
    throw std::invalid_argument("extend_family: inner family must live in "
                                "F^(n-k)");
  const TransversalParallelism par = transversal_parallelism(gf, n, k, threads);
  if (inner.spreads.size() > par.class_count)
    throw std::invalid_argument("extend_family: not enough parallel classes");

  const VecCtx big(gf, n);
  const VecCtx small(gf, n - k);
  SpreadFamily fam;
  fam.q = gf.q();
  fam.n = n;
  fam.k = k;
  fam.spreads.reserve(inner.spreads.size());
  for (size_t i = 0; i < inner.spreads.size(); ++i) {
    std::vector<Subspace> spread = par.spreads[i];
    for (const Subspace& m : inner.spreads[i])
      spread.push_back(embed_suffix(big, small, m, k));
    require_spread(big, spread, k, threads, "extended spread");
    fam.spreads.push_back(std::move(spread));
  }
  require_family_disjoint(big, fam.spreads);
  return fam;
}

SpreadFamily build_family(const Gf& gf, unsigned n, unsigned k, int threads) {
  if (k < 1 || n < k || n % k != 0)
    throw std::invalid_argument("build_family: need k >= 1 and k | n");
  VecCtx ctx(gf, n);  // validates representability of the ambient space

  if (k == n) {
    SpreadFamily fam;
    fam.q = gf.q();
    fam.n = n;
    fam.k = k;
    fam.spreads.push_back({head_axis(ctx, n)});
    require_spread(ctx, fam.spreads[0], k, threads, "whole-space spread");
    return fam;
  }
  if (k == 1) {
    SpreadFamily fam;
    fam.q = gf.q();
    fam.n = n;
    fam.k = 1;
    GrassmannianRange range(ctx, 1);
    std::vector<Subspace> all;
    all.reserve(size_t(range.size()));
    for (std::uint64_t i = 0; i < range.size(); ++i) all.push_back(range.at(i));
    require_spread(ctx, all, 1, threads, "point spread");
    fam.spreads.push_back(std::move(all));
    return fam;
  }
  if (n == 2 * k) return build_family_2k(gf, k, threads);
  const SpreadFamily inner = build_family(gf, n - k, k, threads);
  return extend_family(gf, n, inner, threads);
}

}  // namespace qspread

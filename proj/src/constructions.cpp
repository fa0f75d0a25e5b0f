#include "qspread/constructions.hpp"

#include <bit>
#include <stdexcept>
#include <string>
#include <unordered_set>

#include "qspread/kernels.hpp"

namespace qspread {

namespace {

std::string member_string(const VecCtx& ctx, const Subspace& s) {
  std::string out = "[";
  for (size_t i = 0; i < s.rows.size(); ++i) {
    if (i) out += ' ';
    out += ctx.to_string(s.rows[i]);
  }
  return out + "]";
}

std::uint64_t pow_u64(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

// spread size (q^n - 1) / (q^k - 1)
std::uint64_t spread_size(std::uint64_t q, unsigned n, unsigned k) {
  return (pow_u64(q, n) - 1) / (pow_u64(q, k) - 1);
}

Subspace head_projection(const VecCtx& half, const VecCtx& ctx,
                         const Subspace& y, unsigned k) {
  std::vector<Row> heads;
  heads.reserve(y.rows.size());
  for (Row r : y.rows) heads.push_back(ctx.head(r, k));
  return span_of(half, heads);
}

// number of projective points of a spread member on the head axis,
// computed from an explicit intersection
unsigned head_axis_dim(const VecCtx& ctx, const Subspace& y, unsigned k) {
  return intersect_dim(ctx, y, head_axis(ctx, k));
}

// smallest parallel-class index t >= 1 in which every member meets the head
// axis in dimension <= 1, with exactly `target` members meeting it in
// dimension exactly 1
std::uint64_t select_base_class(const VecCtx& ctx, const ParallelClasses& pc,
                                unsigned k, std::uint64_t target) {
  for (std::uint64_t t = 1; t < pc.class_count; ++t) {
    std::uint64_t ones = 0;
    bool ok = true;
    for (const Subspace& m : pc.classes[t]) {
      const unsigned d = head_axis_dim(ctx, m, k);
      if (d > 1) {
        ok = false;
        break;
      }
      ones += d;
    }
    if (ok && ones == target) return t;
  }
  throw std::logic_error("select_base_class: no parallel class qualifies");
}

using SubspaceSet = std::unordered_set<Subspace, SubspaceHash>;

}  // namespace

void require_family_disjoint(const VecCtx& ctx,
                             std::span<const std::vector<Subspace>> spreads) {
  SubspaceSet seen;
  for (size_t s = 0; s < spreads.size(); ++s)
    for (const Subspace& m : spreads[s])
      if (!seen.insert(m).second)
        throw std::logic_error("family: spread " + std::to_string(s) +
                               " repeats member " + member_string(ctx, m));
}

SubspaceType classify(const Subspace& y, unsigned k) {
  if (y.n != 2 * k) throw std::invalid_argument("classify: need n = 2k");
  const unsigned d =
      unsigned(std::popcount(y.pivots >> k));  // tail-column pivots
  if (d == y.k) return SubspaceType::C;        // contained in the tail axis
  if (d == 0) return SubspaceType::A;
  if (d == 1) return SubspaceType::B;
  return SubspaceType::Other;
}

TypeCensus census_of(std::span<const Subspace> members, unsigned k) {
  TypeCensus c;
  for (const Subspace& m : members) {
    switch (classify(m, k)) {
      case SubspaceType::A: ++c.a; break;
      case SubspaceType::B: ++c.b; break;
      case SubspaceType::C: ++c.c; break;
      case SubspaceType::Other: ++c.other; break;
    }
  }
  return c;
}

TypeCensus count_types(const Gf& gf, unsigned k, int threads) {
  VecCtx ctx(gf, 2 * k);
  const auto slots = tail_dim_census(ctx, k, k, threads);
  TypeCensus c;
  c.a = slots[0];
  c.c = slots[k];
  if (k > 1) c.b = slots[1];
  for (unsigned d = 2; d < k; ++d) c.other += slots[d];
  return c;
}

void require_spread(const VecCtx& ctx, std::span<const Subspace> members,
                    unsigned k, int threads, const char* what) {
  const std::string who(what);
  const std::uint64_t want = spread_size(ctx.gf().q(), ctx.n(), k);
  if (members.size() != want)
    throw std::logic_error(who + ": " + std::to_string(members.size()) +
                           " members, a spread has " + std::to_string(want));
  for (const Subspace& m : members)
    if (m.n != ctx.n() || m.k != k)
      throw std::logic_error(who + ": member " + member_string(ctx, m) +
                             " is not a " + std::to_string(k) + "-subspace");

  const auto counts = cover_counts(ctx, members, threads);
  const Subspace full = head_axis(ctx, ctx.n());
  for_each_vector(ctx, full, [&](Row v) {
    if (v == 0) return;
    if (counts[v] != 1)
      throw std::logic_error(who + ": vector " + ctx.to_string(v) +
                             " covered " + std::to_string(counts[v]) +
                             " times");
  });
  if (members.size() > 1) {
    const DistanceScan scan = min_pairwise_distance(ctx, members, threads);
    if (scan.min_distance != 2 * k)
      throw std::logic_error(who + ": members " + std::to_string(scan.i) +
                             " and " + std::to_string(scan.j) +
                             " at distance " +
                             std::to_string(scan.min_distance));
  }
}

BaseSpread build_base_spread(const Gf& gf, unsigned k, int threads) {
  if (k < 2)
    throw std::invalid_argument("build_base_spread: need k >= 2");
  const LiftedCode code(gf, k, k, k - 1);
  const ParallelClasses pc = parallel_classes(code, threads);
  const VecCtx& ctx = code.ambient();
  const std::uint64_t q = gf.q();
  const std::uint64_t target = (pow_u64(q, k) - 1) / (q - 1);

  BaseSpread out;
  out.k = k;
  out.class_index = select_base_class(ctx, pc, k, target);
  out.members = pc.classes[out.class_index];
  out.members.push_back(tail_axis(ctx, k));
  require_spread(ctx, out.members, k, threads, "base spread");
  return out;
}

std::vector<Subspace> reverse_spread(const VecCtx& ctx,
                                     std::span<const Subspace> spread) {
  std::vector<Subspace> out;
  out.reserve(spread.size());
  for (const Subspace& m : spread) out.push_back(reverse_halves(ctx, m));
  return out;
}

std::optional<unsigned> diagonal_exponent(const VecCtx& ctx,
                                          const Tower& tower,
                                          const Subspace& y, unsigned k) {
  if (y.n != 2 * k || tower.m() != k || !ctx.gf().same_field(tower.base()))
    throw std::invalid_argument("diagonal_exponent: mismatched dimensions");
  if (y.k != k || y.pivots != (std::uint64_t(1) << k) - 1) return std::nullopt;
  const Gf& big = tower.big();
  const VecCtx half(ctx.gf(), k);
  GfElem g0 = 0;
  for (unsigned i = 0; i < k; ++i) {
    const auto digits = half.coords(ctx.tail(y.rows[i], k));
    const GfElem gi = tower.compose(digits);
    if (i == 0) {
      if (gi == 0) return std::nullopt;
      g0 = gi;
    } else if (gi != big.mul(g0, tower.basis_power(i))) {
      return std::nullopt;
    }
  }
  return big.log(g0);
}

DiagonalScan scan_diagonals(const VecCtx& ctx, const Tower& tower,
                            std::span<const Subspace> members, unsigned k) {
  DiagonalScan scan;
  for (size_t i = 0; i < members.size(); ++i) {
    const auto j = diagonal_exponent(ctx, tower, members[i], k);
    if (!j) continue;
    if (scan.count == 0) {
      scan.first = i;
      scan.j = *j;
    }
    ++scan.count;
  }
  return scan;
}

ShearResult build_s0(const VecCtx& ctx, const Tower& tower,
                     std::span<const Subspace> rev_base, unsigned k,
                     int threads) {
  const Gf& gf = ctx.gf();
  if (gf.q() != 2)
    throw std::invalid_argument("build_s0: the shear family needs q = 2");
  if (ctx.n() != 2 * k || tower.m() != k)
    throw std::invalid_argument("build_s0: mismatched dimensions");
  const std::uint64_t two_k = std::uint64_t(1) << k;

  const TypeCensus rev_census = census_of(rev_base, k);
  if (rev_census != TypeCensus{2, two_k - 1, 0, 0})
    throw std::logic_error("build_s0: reversed base spread census is not "
                           "2 Type A + (2^k - 1) Type B");

  const bool square = scan_diagonals(ctx, tower, rev_base, k).count > 0;
  const Gf& big = tower.big();
  const VecCtx half(gf, k);

  // shear a single vector: (x, y) -> (x, y + x) or (x, y + x^2)
  const auto shear = [&](Row v) {
    const Row h = ctx.head(v, k);
    Row add = h;
    if (square) {
      const GfElem z = tower.compose(half.coords(h));
      std::vector<GfElem> digits(k);
      tower.decompose(big.mul(z, z), digits);
      add = half.from_coords(digits);
    }
    return ctx.concat(h, half.add(ctx.tail(v, k), add), k);
  };

  ShearResult out;
  out.used_square_shear = square;
  out.members.reserve(rev_base.size());
  for (const Subspace& m : rev_base) {
    std::vector<Row> rows;
    rows.reserve(m.rows.size());
    for (Row r : m.rows) rows.push_back(shear(r));
    Subspace img = span_of(ctx, rows);
    // the member-wise image is again a k-subspace and the shear maps the
    // member onto it vector by vector
    if (img.k != k)
      throw std::logic_error("build_s0: sheared member lost dimension");
    for (Row v : enumerate_vectors(ctx, m))
      if (!contains(ctx, img, shear(v)))
        throw std::logic_error("build_s0: shear image misses " +
                               ctx.to_string(shear(v)));
    out.members.push_back(std::move(img));
  }

  require_spread(ctx, out.members, k, threads, "sheared spread");
  if (census_of(out.members, k) != rev_census)
    throw std::logic_error("build_s0: census changed under the shear");
  const Subspace axis = head_axis(ctx, k);
  for (const Subspace& m : out.members)
    if (m == axis)
      throw std::logic_error("build_s0: sheared spread contains the head axis");
  if (scan_diagonals(ctx, tower, out.members, k).count > 1)
    throw std::logic_error("build_s0: more than one diagonal member");

  // Type B members project onto pairwise distinct head hyperplanes; with
  // 2^k - 1 of them, every hyperplane of F_2^k occurs exactly once
  SubspaceSet hyperplanes;
  for (const Subspace& m : out.members) {
    if (classify(m, k) != SubspaceType::B) continue;
    const Subspace h = head_projection(half, ctx, m, k);
    if (h.k != k - 1)
      throw std::logic_error("build_s0: Type B head projection is not a "
                             "hyperplane");
    if (!hyperplanes.insert(h).second)
      throw std::logic_error("build_s0: two Type B members share the head "
                             "hyperplane " + member_string(half, h));
  }
  if (hyperplanes.size() != two_k - 1)
    throw std::logic_error("build_s0: expected 2^k - 1 distinct hyperplanes");
  return out;
}

std::vector<Subspace> scale_spread(const VecCtx& ctx, const Tower& tower,
                                   std::span<const Subspace> spread,
                                   GfElem beta, unsigned k, int threads) {
  std::vector<Subspace> out;
  out.reserve(spread.size());
  for (const Subspace& m : spread)
    out.push_back(scale_half(ctx, m, tower, beta, Half::tail, k));
  if (census_of(out, k) != census_of(spread, k))
    throw std::logic_error("scale_spread: tail scaling changed the census");
  require_spread(ctx, out, k, threads, "scaled spread");
  return out;
}

SpreadFamily build_family_2k(const Gf& gf, unsigned k, int threads) {
  if (k == 0) throw std::invalid_argument("build_family_2k: need k >= 1");
  SpreadFamily fam;
  fam.q = gf.q();
  fam.n = 2 * k;
  fam.k = k;
  VecCtx ctx(gf, 2 * k);

  if (k == 1) {
    // G_q(2,1) is itself the unique spread
    GrassmannianRange range(ctx, 1);
    std::vector<Subspace> all;
    all.reserve(size_t(range.size()));
    for (std::uint64_t i = 0; i < range.size(); ++i) all.push_back(range.at(i));
    require_spread(ctx, all, 1, threads, "line spread");
    fam.spreads.push_back(std::move(all));
    return fam;
  }

  if (gf.q() == 2) {
    const Tower tower(gf, k);
    const BaseSpread base = build_base_spread(gf, k, threads);
    const auto rev = reverse_spread(ctx, base.members);
    require_spread(ctx, rev, k, threads, "reversed base spread");
    const ShearResult s0 = build_s0(ctx, tower, rev, k, threads);
    fam.spreads.push_back(s0.members);
    const std::uint64_t count = (std::uint64_t(1) << k) - 1;
    for (std::uint64_t i = 1; i < count; ++i)
      fam.spreads.push_back(scale_spread(ctx, tower, s0.members,
                                         tower.big().exp(std::int64_t(i)), k,
                                         threads));
    require_family_disjoint(ctx, fam.spreads);
    return fam;
  }

  // q > 2: the reversed base spread plus one untouched parallel class
  const LiftedCode code(gf, k, k, k - 1);
  const ParallelClasses pc = parallel_classes(code, threads);
  const std::uint64_t q = gf.q();
  const std::uint64_t target = (pow_u64(q, k) - 1) / (q - 1);
  const std::uint64_t t = select_base_class(ctx, pc, k, target);

  std::vector<Subspace> base = pc.classes[t];
  base.push_back(tail_axis(ctx, k));
  require_spread(ctx, base, k, threads, "base spread");

  const auto rev = reverse_spread(ctx, base);
  require_spread(ctx, rev, k, threads, "reversed base spread");
  if (census_of(rev, k) != TypeCensus{pow_u64(q, k) + 1 - target, target, 0, 0})
    throw std::logic_error("build_family_2k: reversed spread census is off");

  SubspaceSet rev_set(rev.begin(), rev.end());
  for (std::uint64_t u = 0; u < pc.class_count; ++u) {
    std::vector<Subspace> cand = pc.classes[u];
    cand.push_back(tail_axis(ctx, k));
    bool clean = true;
    for (const Subspace& m : cand)
      if (rev_set.count(m)) {
        clean = false;
        break;
      }
    if (!clean) continue;
    require_spread(ctx, cand, k, threads, "second spread");
    if (census_of(cand, k) != TypeCensus{pow_u64(q, k), 0, 1, 0})
      throw std::logic_error("build_family_2k: second spread census is off");
    fam.spreads.push_back(rev);
    fam.spreads.push_back(std::move(cand));
    require_family_disjoint(ctx, fam.spreads);
    return fam;
  }
  throw std::logic_error("build_family_2k: no parallel class avoids the "
                         "reversed spread");
}

}  // namespace qspread

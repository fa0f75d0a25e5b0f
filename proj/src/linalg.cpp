#include "qspread/linalg.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace qspread {

VecCtx::VecCtx(const Gf& gf, unsigned n) : gf_(&gf), n_(n) {
  if (n == 0) throw std::invalid_argument("VecCtx: n must be positive");
  bits_ = unsigned(std::bit_width(std::uint32_t(gf.q() - 1)));
  if (n_ * bits_ > 63)
    throw std::invalid_argument("VecCtx: vector length out of packed range");
  digit_mask_ = (Row(1) << bits_) - 1;
}

Row VecCtx::from_coords(std::span<const GfElem> c) const {
  if (c.size() != n_) throw std::invalid_argument("from_coords: size != n");
  Row v = 0;
  for (unsigned i = 0; i < n_; ++i) {
    if (c[i] >= gf_->q()) throw std::invalid_argument("from_coords: digit >= q");
    v |= Row(c[i]) << (i * bits_);
  }
  return v;
}

std::vector<GfElem> VecCtx::coords(Row v) const {
  std::vector<GfElem> c(n_);
  for (unsigned i = 0; i < n_; ++i) c[i] = get(v, i);
  return c;
}

Row VecCtx::normalize_point(Row v) const {
  if (v == 0) return 0;
  for (unsigned i = 0; i < n_; ++i) {
    const GfElem c = get(v, i);
    if (c) return c == 1 ? v : scale(v, gf_->inv(c));
  }
  return 0;
}

std::string VecCtx::to_string(Row v) const {
  std::string s;
  const bool wide = gf_->q() > 10;
  for (unsigned i = 0; i < n_; ++i) {
    if (wide && i) s += ':';
    s += std::to_string(get(v, i));
  }
  return s;
}

bool lex_less(const VecCtx& ctx, const Subspace& a, const Subspace& b) {
  if (a.k != b.k) return a.k < b.k;
  for (unsigned r = 0; r < a.k; ++r)
    for (unsigned i = 0; i < ctx.n(); ++i) {
      const GfElem da = ctx.get(a.rows[r], i), db = ctx.get(b.rows[r], i);
      if (da != db) return da < db;
    }
  return false;
}

RrefResult rref(const VecCtx& ctx, std::vector<Row>& rows) {
  const Gf& gf = ctx.gf();
  RrefResult res;
  for (unsigned col = 0; col < ctx.n() && res.rank < rows.size(); ++col) {
    unsigned sel = unsigned(rows.size());
    for (unsigned r = res.rank; r < rows.size(); ++r)
      if (ctx.get(rows[r], col)) { sel = r; break; }
    if (sel == rows.size()) continue;
    std::swap(rows[res.rank], rows[sel]);
    const GfElem c = ctx.get(rows[res.rank], col);
    if (c != 1) rows[res.rank] = ctx.scale(rows[res.rank], gf.inv(c));
    for (unsigned r = 0; r < rows.size(); ++r) {
      if (r == res.rank) continue;
      const GfElem d = ctx.get(rows[r], col);
      if (d) rows[r] = ctx.add_scaled(rows[r], rows[res.rank], gf.neg(d));
    }
    res.pivots |= std::uint64_t(1) << col;
    ++res.rank;
  }
  rows.resize(res.rank);
  return res;
}

Subspace span_of(const VecCtx& ctx, std::span<const Row> gens) {
  std::vector<Row> rows(gens.begin(), gens.end());
  const RrefResult res = rref(ctx, rows);
  Subspace s;
  s.n = std::uint16_t(ctx.n());
  s.k = std::uint16_t(res.rank);
  s.pivots = res.pivots;
  s.rows = std::move(rows);
  return s;
}

unsigned rank_of(const VecCtx& ctx, std::span<const Row> rows) {
  std::vector<Row> copy(rows.begin(), rows.end());
  return rref(ctx, copy).rank;
}

bool contains(const VecCtx& ctx, const Subspace& s, Row v) {
  const Gf& gf = ctx.gf();
  // reduce against each basis row at its pivot column
  std::uint64_t piv = s.pivots;
  for (unsigned r = 0; r < s.k; ++r) {
    const unsigned col = unsigned(std::countr_zero(piv));
    piv &= piv - 1;
    const GfElem c = ctx.get(v, col);
    if (c) v = ctx.add_scaled(v, s.rows[r], gf.neg(c));
  }
  return v == 0;
}

unsigned intersect_dim(const VecCtx& ctx, const Subspace& a, const Subspace& b) {
  std::vector<Row> stack;
  stack.reserve(a.k + b.k);
  stack.insert(stack.end(), a.rows.begin(), a.rows.end());
  stack.insert(stack.end(), b.rows.begin(), b.rows.end());
  const unsigned r = rref(ctx, stack).rank;
  return a.k + b.k - r;
}

Subspace intersect(const VecCtx& ctx, const Subspace& a, const Subspace& b) {
  // Zassenhaus on [[A A], [B 0]]: rows with zero head span the intersection.
  const VecCtx wide(ctx.gf(), 2 * ctx.n());
  std::vector<Row> stack;
  stack.reserve(a.k + b.k);
  const unsigned shift = ctx.n() * ctx.bits();
  for (Row r : a.rows) stack.push_back(r | (r << shift));
  for (Row r : b.rows) stack.push_back(r);
  rref(wide, stack);
  std::vector<Row> gens;
  for (Row r : stack)
    if (wide.head(r, ctx.n()) == 0) gens.push_back(wide.tail(r, ctx.n()));
  return span_of(ctx, gens);
}

Subspace subspace_sum(const VecCtx& ctx, const Subspace& a, const Subspace& b) {
  std::vector<Row> gens;
  gens.reserve(a.k + b.k);
  gens.insert(gens.end(), a.rows.begin(), a.rows.end());
  gens.insert(gens.end(), b.rows.begin(), b.rows.end());
  return span_of(ctx, gens);
}

unsigned subspace_distance(const VecCtx& ctx, const Subspace& a,
                           const Subspace& b) {
  return a.k + b.k - 2 * intersect_dim(ctx, a, b);
}

std::vector<Row> enumerate_vectors(const VecCtx& ctx, const Subspace& s) {
  std::vector<Row> out;
  out.reserve(size_t(1) << std::min<unsigned>(20, s.k * ctx.bits()));
  for_each_vector(ctx, s, [&](Row v) { out.push_back(v); });
  return out;
}

Subspace tail_axis(const VecCtx& ctx, unsigned k) {
  Subspace s;
  s.n = std::uint16_t(ctx.n());
  s.k = std::uint16_t(ctx.n() - k);
  for (unsigned i = k; i < ctx.n(); ++i) {
    s.rows.push_back(ctx.unit(i));
    s.pivots |= std::uint64_t(1) << i;
  }
  return s;
}

Subspace head_axis(const VecCtx& ctx, unsigned k) {
  Subspace s;
  s.n = std::uint16_t(ctx.n());
  s.k = std::uint16_t(k);
  for (unsigned i = 0; i < k; ++i) {
    s.rows.push_back(ctx.unit(i));
    s.pivots |= std::uint64_t(1) << i;
  }
  return s;
}

Subspace reverse_halves(const VecCtx& ctx, const Subspace& s) {
  if (ctx.n() % 2 != 0 || s.n != ctx.n())
    throw std::invalid_argument("reverse_halves: ambient dimension must be 2k");
  const unsigned k = ctx.n() / 2;
  std::vector<Row> gens;
  gens.reserve(s.k);
  for (Row r : s.rows) gens.push_back(ctx.swap_halves(r, k));
  return span_of(ctx, gens);
}

Subspace scale_half(const VecCtx& ctx, const Subspace& s, const Tower& tower,
                    GfElem beta, Half half, unsigned k) {
  const unsigned m = half == Half::head ? k : ctx.n() - k;
  if (!tower.base().same_field(ctx.gf()))
    throw std::invalid_argument("scale_half: tower base field mismatch");
  if (tower.m() != m)
    throw std::invalid_argument("scale_half: tower degree != half length");
  if (beta == 0 || beta >= tower.big().q())
    throw std::invalid_argument("scale_half: beta not a unit");
  std::vector<GfElem> dig(m);
  std::vector<Row> gens;
  gens.reserve(s.k);
  for (Row r : s.rows) {
    const Row part = half == Half::head ? ctx.head(r, k) : ctx.tail(r, k);
    for (unsigned i = 0; i < m; ++i)
      dig[i] = GfElem((part >> (i * ctx.bits())) & ((Row(1) << ctx.bits()) - 1));
    const GfElem z = tower.big().mul(tower.compose(dig), beta);
    tower.decompose(z, dig);
    Row mapped = 0;
    for (unsigned i = 0; i < m; ++i) mapped |= Row(dig[i]) << (i * ctx.bits());
    gens.push_back(half == Half::head ? ctx.concat(mapped, ctx.tail(r, k), k)
                                      : ctx.concat(ctx.head(r, k), mapped, k));
  }
  return span_of(ctx, gens);
}

std::uint64_t gaussian_binomial(std::uint64_t q, unsigned n, unsigned k) {
  if (k > n) return 0;
  if (k == 0 || k == n) return 1;
  __int128 b = 1;
  // qbin(n, i+1) = qbin(n, i) * (q^(n-i) - 1) / (q^(i+1) - 1), exact at each step
  auto qpow = [q](unsigned e) {
    __int128 r = 1;
    while (e--) r *= q;
    return r;
  };
  for (unsigned i = 0; i < k; ++i) {
    b = b * (qpow(n - i) - 1) / (qpow(i + 1) - 1);
    if (b > __int128(UINT64_MAX))
      throw std::overflow_error("gaussian_binomial: value exceeds 64 bits");
  }
  return std::uint64_t(b);
}

GrassmannianRange::GrassmannianRange(const VecCtx& ctx, unsigned k)
    : ctx_(&ctx), k_(k) {
  const unsigned n = ctx.n();
  offsets_.push_back(0);
  if (k > n) { total_ = 0; return; }
  if (k == 0) {
    pivot_sets_.push_back(0);
    offsets_.push_back(1);
    total_ = 1;
    return;
  }
  const std::uint64_t q = ctx.gf().q();
  std::vector<unsigned> comb(k);
  for (unsigned i = 0; i < k; ++i) comb[i] = i;
  for (;;) {
    std::uint64_t mask = 0;
    unsigned free_cells = 0;
    for (unsigned i = 0; i < k; ++i) {
      mask |= std::uint64_t(1) << comb[i];
      for (unsigned j = comb[i] + 1; j < n; ++j)
        if (std::find(comb.begin(), comb.end(), j) == comb.end()) ++free_cells;
    }
    std::uint64_t count = 1;
    for (unsigned i = 0; i < free_cells; ++i) count *= q;
    pivot_sets_.push_back(mask);
    offsets_.push_back(offsets_.back() + count);
    // next k-combination of {0..n-1} in lex order
    int t = int(k) - 1;
    while (t >= 0 && comb[t] == n - k + t) --t;
    if (t < 0) break;
    ++comb[t];
    for (unsigned i = unsigned(t) + 1; i < k; ++i) comb[i] = comb[i - 1] + 1;
  }
  total_ = offsets_.back();
  if (total_ != gaussian_binomial(q, n, k))
    throw std::logic_error("GrassmannianRange: block counts disagree");
}

Subspace GrassmannianRange::at(std::uint64_t idx) const {
  if (idx >= total_) throw std::out_of_range("GrassmannianRange::at");
  const auto it = std::upper_bound(offsets_.begin(), offsets_.end(), idx);
  const size_t block = size_t(it - offsets_.begin()) - 1;
  std::uint64_t local = idx - offsets_[block];
  const std::uint64_t pivots = pivot_sets_[block];
  const unsigned n = ctx_->n();
  const std::uint64_t q = ctx_->gf().q();

  std::vector<unsigned> pcols;
  for (unsigned j = 0; j < n; ++j)
    if (pivots >> j & 1) pcols.push_back(j);

  Subspace s;
  s.n = std::uint16_t(n);
  s.k = std::uint16_t(k_);
  s.pivots = pivots;
  s.rows.assign(k_, 0);
  for (unsigned i = 0; i < k_; ++i) s.rows[i] = ctx_->unit(pcols[i]);
  // free entries row-major, little-endian digits of the local index
  for (unsigned i = 0; i < k_; ++i)
    for (unsigned j = pcols[i] + 1; j < n; ++j) {
      if (pivots >> j & 1) continue;
      s.rows[i] = ctx_->set(s.rows[i], j, GfElem(local % q));
      local /= q;
    }
  return s;
}

}  // namespace qspread

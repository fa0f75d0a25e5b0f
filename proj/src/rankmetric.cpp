#include "qspread/rankmetric.hpp"

#include <stdexcept>
#include <string>

namespace qspread {

unsigned mrd_dim_exponent(unsigned k, unsigned l, unsigned delta) {
  if (delta < 1 || delta > std::min(k, l))
    throw std::invalid_argument("mrd_dim_exponent: need 1 <= delta <= min(k,l)");
  return std::min(k * (l - delta + 1), l * (k - delta + 1));
}

unsigned rank_distance(const VecCtx& rowctx, std::span<const Row> a,
                       std::span<const Row> b) {
  if (a.size() != b.size())
    throw std::invalid_argument("rank_distance: row counts differ");
  std::vector<Row> diff(a.size());
  for (size_t i = 0; i < a.size(); ++i) diff[i] = rowctx.sub(a[i], b[i]);
  return rank_of(rowctx, diff);
}

GabidulinCode::GabidulinCode(const Gf& gf, unsigned k, unsigned l,
                             unsigned delta)
    : gf_(&gf),
      k_(k),
      l_(l),
      delta_(delta),
      kappa_(k - delta + 1),
      tower_(gf, l),
      rowctx_(gf, l) {
  if (k < 1 || k > l)
    throw std::invalid_argument("GabidulinCode: need 1 <= k <= l");
  if (delta < 1 || delta > k)
    throw std::invalid_argument("GabidulinCode: need 1 <= delta <= k");
  const std::uint64_t Q = tower_.big().q();
  size_ = 1;
  for (unsigned j = 0; j < kappa_; ++j) {
    if (size_ > (std::uint64_t(1) << 40) / Q)
      throw std::invalid_argument("GabidulinCode: code too large");
    size_ *= Q;
  }
  // minimum nonzero codeword rank equals delta (linearity makes this the
  // minimum rank distance); exhaustive at enumerable sizes
  if (size_ <= (std::uint64_t(1) << 20)) {
    unsigned min_rank = ~0u;
    for (std::uint64_t c = 1; c < size_; ++c) {
      const auto m = matrix_at(c);
      min_rank = std::min(min_rank, rank_of(rowctx_, m));
    }
    if (min_rank != delta_)
      throw std::logic_error("GabidulinCode: min rank " +
                             std::to_string(min_rank) + " != delta " +
                             std::to_string(delta_));
  }
}

std::vector<GfElem> GabidulinCode::coefficients_of(std::uint64_t c) const {
  const std::uint64_t Q = tower_.big().q();
  std::vector<GfElem> coeffs(kappa_);
  for (unsigned j = 0; j < kappa_; ++j) {
    coeffs[j] = GfElem(c % Q);
    c /= Q;
  }
  return coeffs;
}

std::uint64_t GabidulinCode::index_of(std::span<const GfElem> coeffs) const {
  if (coeffs.size() != kappa_)
    throw std::invalid_argument("index_of: coefficient count != kappa");
  const std::uint64_t Q = tower_.big().q();
  std::uint64_t c = 0;
  for (size_t j = coeffs.size(); j-- > 0;) {
    if (coeffs[j] >= Q) throw std::invalid_argument("index_of: bad coefficient");
    c = c * Q + coeffs[j];
  }
  return c;
}

std::vector<Row> GabidulinCode::matrix_at(std::uint64_t c) const {
  if (c >= size_) throw std::out_of_range("GabidulinCode::matrix_at");
  const Gf& big = tower_.big();
  const auto coeffs = coefficients_of(c);
  std::vector<Row> rows(k_, 0);
  std::vector<GfElem> dig(l_);
  for (unsigned i = 0; i < k_; ++i) {
    const GfElem z = tower_.basis_power(i);
    GfElem val = 0;
    for (unsigned j = 0; j < kappa_; ++j)
      val = big.add(val, big.mul(coeffs[j], big.frobenius(z, gf_->e() * j)));
    tower_.decompose(val, dig);
    Row r = 0;
    for (unsigned t = 0; t < l_; ++t) r |= Row(dig[t]) << (t * rowctx_.bits());
    rows[i] = r;
  }
  return rows;
}

Subspace lift(const VecCtx& ambient, std::span<const Row> a_rows, unsigned k) {
  if (a_rows.size() != k)
    throw std::invalid_argument("lift: matrix must have k rows");
  if (ambient.n() <= k)
    throw std::invalid_argument("lift: ambient dimension must exceed k");
  Subspace s;
  s.n = std::uint16_t(ambient.n());
  s.k = std::uint16_t(k);
  s.pivots = (std::uint64_t(1) << k) - 1;
  s.rows.reserve(k);
  const VecCtx headctx(ambient.gf(), k);
  for (unsigned i = 0; i < k; ++i)
    s.rows.push_back(ambient.concat(headctx.unit(i), a_rows[i], k));
  return s;
}

LiftedCode::LiftedCode(const Gf& gf, unsigned k, unsigned l, unsigned delta,
                       bool verify_pairwise)
    : code_(gf, k, l, delta), ctx_(gf, k + l) {
  if (verify_pairwise && size() <= kMaxPairwiseVerify) {
    const auto members = all();
    const DistanceScan scan = min_pairwise_distance_serial(ctx_, members);
    if (members.size() > 1 && scan.min_distance != 2 * delta)
      throw std::logic_error(
          "LiftedCode: min subspace distance " +
          std::to_string(scan.min_distance) + " != " + std::to_string(2 * delta) +
          " (pair " + std::to_string(scan.i) + "," + std::to_string(scan.j) + ")");
    pairwise_verified_ = true;
  }
}

Subspace LiftedCode::at(std::uint64_t idx) const {
  const auto rows = code_.matrix_at(idx);
  return lift(ctx_, rows, code_.k());
}

std::vector<Subspace> LiftedCode::all() const {
  std::vector<Subspace> out;
  out.reserve(size_t(size()));
  for (std::uint64_t c = 0; c < size(); ++c) out.push_back(at(c));
  return out;
}

ParallelClasses parallel_classes(const LiftedCode& code, int threads) {
  const std::uint64_t Q = code.code().tower().big().q();
  if (code.size() > (std::uint64_t(1) << 20))
    throw std::invalid_argument("parallel_classes: code too large");
  ParallelClasses pc;
  pc.class_size = Q;
  pc.class_count = code.size() / Q;
  const VecCtx& ctx = code.ambient();
  const unsigned k = code.k();
  pc.classes.reserve(size_t(pc.class_count));
  for (std::uint64_t t = 0; t < pc.class_count; ++t) {
    std::vector<Subspace> cls;
    cls.reserve(size_t(Q));
    for (std::uint64_t c = t * Q; c < (t + 1) * Q; ++c)
      cls.push_back(code.at(c));

    // exact cover of the vectors with nonzero head
    const auto counts = cover_counts(ctx, cls, threads);
    const Subspace full = head_axis(ctx, code.n());
    for_each_vector(ctx, full, [&](Row v) {
      if (v == 0) return;
      const std::uint16_t want = ctx.head(v, k) != 0 ? 1 : 0;
      if (counts[v] != want)
        throw std::logic_error("parallel_classes: class " + std::to_string(t) +
                               " covers " + ctx.to_string(v) + " " +
                               std::to_string(counts[v]) + " times");
    });
    // pairwise trivial intersections within the class
    if (cls.size() > 1) {
      const DistanceScan scan = min_pairwise_distance(ctx, cls, threads);
      if (scan.min_distance != 2 * k)
        throw std::logic_error("parallel_classes: class " + std::to_string(t) +
                               " has members at distance " +
                               std::to_string(scan.min_distance));
    }
    pc.classes.push_back(std::move(cls));
  }
  return pc;
}

}  // namespace qspread

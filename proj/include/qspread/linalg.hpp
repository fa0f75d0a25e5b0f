// Packed linear algebra over GF(q), q = p^e.
//
// A length-n row vector is packed into a uint64_t with a fixed number of bits
// per coordinate (bit_width(q-1)); coordinate 0 sits in the lowest bits.  For
// p = 2 vector addition is a single XOR.  Subspaces are kept in reduced row
// echelon form with pivot columns ascending, which makes the representation
// canonical: two subspaces are equal iff their Subspace values are equal.
#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "qspread/gf.hpp"

namespace qspread {

using Row = std::uint64_t;

class VecCtx {
 public:
  // Throws std::invalid_argument if n * bits-per-digit exceeds 63.
  VecCtx(const Gf& gf, unsigned n);

  const Gf& gf() const { return *gf_; }
  unsigned n() const { return n_; }
  unsigned bits() const { return bits_; }
  // Exclusive upper bound of packed values; usable as a direct-index array
  // size for per-vector bookkeeping.
  std::uint64_t packed_bound() const { return Row(1) << (n_ * bits_); }

  GfElem get(Row v, unsigned i) const {
    return GfElem((v >> (i * bits_)) & digit_mask_);
  }
  Row set(Row v, unsigned i, GfElem c) const {
    const unsigned s = i * bits_;
    return (v & ~(digit_mask_ << s)) | (Row(c) << s);
  }

  Row add(Row a, Row b) const {
    if (gf_->p() == 2) return a ^ b;
    Row out = 0;
    for (unsigned i = 0; i < n_; ++i)
      out |= Row(gf_->add(get(a, i), get(b, i))) << (i * bits_);
    return out;
  }
  Row neg(Row a) const {
    if (gf_->p() == 2) return a;
    Row out = 0;
    for (unsigned i = 0; i < n_; ++i)
      out |= Row(gf_->neg(get(a, i))) << (i * bits_);
    return out;
  }
  Row sub(Row a, Row b) const { return add(a, neg(b)); }
  Row scale(Row a, GfElem c) const {
    if (c == 0) return 0;
    if (c == 1) return a;
    Row out = 0;
    for (unsigned i = 0; i < n_; ++i)
      out |= Row(gf_->mul(get(a, i), c)) << (i * bits_);
    return out;
  }
  // a + c*b
  Row add_scaled(Row a, Row b, GfElem c) const {
    if (gf_->q() == 2) return c ? a ^ b : a;
    return add(a, scale(b, c));
  }

  Row from_coords(std::span<const GfElem> c) const;
  std::vector<GfElem> coords(Row v) const;
  Row unit(unsigned i) const { return set(0, i, 1); }

  // -- halves; k is the length of the head --------------------------------
  Row head(Row v, unsigned k) const { return v & ((Row(1) << (k * bits_)) - 1); }
  Row tail(Row v, unsigned k) const { return v >> (k * bits_); }
  Row concat(Row head, Row tail, unsigned k) const {
    return head | (tail << (k * bits_));
  }
  Row swap_halves(Row v, unsigned k) const {
    return concat(tail(v, k), head(v, k), n_ - k);
  }

  // v scaled so its first nonzero coordinate is 1; 0 stays 0.
  Row normalize_point(Row v) const;
  // Normalized head of v (packed k digits); 0 marks vectors whose head is 0.
  Row group_of(Row v, unsigned k) const { return normalize_point(head(v, k)); }

  std::string to_string(Row v) const;  // digit string, coordinate 0 first

 private:
  const Gf* gf_;
  unsigned n_, bits_;
  Row digit_mask_;
};

struct Subspace {
  std::uint16_t n = 0, k = 0;
  std::uint64_t pivots = 0;   // bitmask of pivot columns
  std::vector<Row> rows;      // RREF basis, pivot columns ascending

  bool operator==(const Subspace&) const = default;
};

struct SubspaceHash {
  size_t operator()(const Subspace& s) const {
    std::uint64_t h = 1469598103934665603ull ^ s.k;
    for (Row r : s.rows) {
      h ^= r;
      h *= 1099511628211ull;
    }
    return size_t(h);
  }
};

// Digit-lexicographic row-major order on the RREF matrices; a deterministic
// total order on equal-dimensional subspaces.
bool lex_less(const VecCtx& ctx, const Subspace& a, const Subspace& b);

struct RrefResult {
  unsigned rank = 0;
  std::uint64_t pivots = 0;
};

// In-place reduction; rows is truncated to the rank.
RrefResult rref(const VecCtx& ctx, std::vector<Row>& rows);

Subspace span_of(const VecCtx& ctx, std::span<const Row> gens);
unsigned rank_of(const VecCtx& ctx, std::span<const Row> rows);

bool contains(const VecCtx& ctx, const Subspace& s, Row v);
unsigned intersect_dim(const VecCtx& ctx, const Subspace& a, const Subspace& b);
// Basis of the intersection (Zassenhaus); requires 2n digits to fit a row.
Subspace intersect(const VecCtx& ctx, const Subspace& a, const Subspace& b);
Subspace subspace_sum(const VecCtx& ctx, const Subspace& a, const Subspace& b);
// d_S(A, B) = dim A + dim B - 2*dim(intersection)
unsigned subspace_distance(const VecCtx& ctx, const Subspace& a, const Subspace& b);

// All q^k vectors of s (zero first), mixed-radix order over the basis.
std::vector<Row> enumerate_vectors(const VecCtx& ctx, const Subspace& s);

template <class F>
void for_each_vector(const VecCtx& ctx, const Subspace& s, F&& f) {
  const Gf& gf = ctx.gf();
  const GfElem q = GfElem(gf.q());
  // digit labels are field elements; stepping a digit adds the difference of
  // consecutive labels (always 1 in a prime field) times the basis row
  std::vector<GfElem> d(s.k, 0);
  Row cur = 0;
  f(cur);
  for (;;) {
    unsigned i = 0;
    for (; i < s.k; ++i) {
      const GfElem old = d[i];
      const GfElem now = old + 1 == q ? 0 : old + 1;
      d[i] = now;
      const GfElem delta = gf.sub(now, old);
      cur = ctx.add(cur, ctx.scale(s.rows[i], delta));
      if (now != 0) break;
    }
    if (i == s.k) return;
    f(cur);
  }
}

// U = span{e_k, ..., e_{n-1}} and its complement span{e_0, ..., e_{k-1}}.
Subspace tail_axis(const VecCtx& ctx, unsigned k);
Subspace head_axis(const VecCtx& ctx, unsigned k);

// Basis-wise half swap; requires n = 2k.
Subspace reverse_halves(const VecCtx& ctx, const Subspace& s);

enum class Half { head, tail };

// Multiplies the chosen half of every vector by beta through the F_q-linear
// identification of F_q^m with F_{q^m} given by the tower.  beta must be a
// nonzero element of tower.big().
Subspace scale_half(const VecCtx& ctx, const Subspace& s, const Tower& tower,
                    GfElem beta, Half half, unsigned k);

// Exact Gaussian binomial [n choose k]_q; throws std::overflow_error if the
// value does not fit in 64 bits.
std::uint64_t gaussian_binomial(std::uint64_t q, unsigned n, unsigned k);

// G_q(n, k) in a fixed order: pivot-column sets lexicographically, then free
// entries in row-major mixed-radix order.  at(i) is a pure function of i, so
// ranges can be sharded across workers.
class GrassmannianRange {
 public:
  GrassmannianRange(const VecCtx& ctx, unsigned k);

  std::uint64_t size() const { return total_; }
  Subspace at(std::uint64_t idx) const;

 private:
  const VecCtx* ctx_;
  unsigned k_;
  std::vector<std::uint64_t> pivot_sets_;  // bitmasks, lex order
  std::vector<std::uint64_t> offsets_;     // prefix sums, size()+1 entries
  std::uint64_t total_ = 0;
};

}  // namespace qspread

// Finite field arithmetic GF(p^e) with integer-encoded elements.
//
// An element with coefficient vector (c_0, ..., c_{e-1}) over F_p in the
// polynomial basis {1, x, ..., x^{e-1}} is encoded as the integer
// sum c_i * p^i, so encodings range over [0, p^e).  Multiplication runs on
// log/exp tables anchored at a primitive element; construction verifies the
// modulus is irreducible and the chosen generator actually has full order.
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace qspread {

using GfElem = std::uint32_t;

// Largest supported field order.  Table-based arithmetic: q^1 memory, not q^2.
inline constexpr std::uint64_t kMaxFieldOrder = 1u << 16;

bool is_prime(std::uint64_t n);

// Built-in modulus for GF(p^e): the smallest-encoding monic irreducible of
// degree e over F_p whose residue class of x is primitive.  Falls back to a
// deterministic search for (p, e) outside the built-in table.
// Coefficients low-to-high, length e+1, monic.
std::vector<unsigned> default_modulus(unsigned p, unsigned e);

class Gf {
 public:
  // Uses default_modulus(p, e).
  Gf(unsigned p, unsigned e);
  // Explicit modulus: monic, degree e, coefficients low-to-high mod p.
  // Throws std::invalid_argument if p is not prime, the modulus is malformed
  // or reducible, or p^e exceeds kMaxFieldOrder.
  Gf(unsigned p, unsigned e, std::vector<unsigned> modulus);

  unsigned p() const { return p_; }
  unsigned e() const { return e_; }
  std::uint32_t q() const { return q_; }
  // Smallest primitive element in encoding order.
  GfElem alpha() const { return alpha_; }
  const std::vector<unsigned>& modulus() const { return modulus_; }

  bool same_field(const Gf& other) const {
    return p_ == other.p_ && e_ == other.e_ && modulus_ == other.modulus_;
  }

  GfElem add(GfElem a, GfElem b) const;
  GfElem neg(GfElem a) const;
  GfElem sub(GfElem a, GfElem b) const { return add(a, neg(b)); }
  GfElem mul(GfElem a, GfElem b) const {
    if (a == 0 || b == 0) return 0;
    return exp_[(log_[a] + log_[b]) % (q_ - 1)];
  }
  GfElem inv(GfElem a) const;              // throws std::domain_error on 0
  GfElem div(GfElem a, GfElem b) const { return mul(a, inv(b)); }
  GfElem pow(GfElem a, std::int64_t n) const;
  // a^(p^i); the i-fold Frobenius, additive and F_p-linear.
  GfElem frobenius(GfElem a, unsigned i) const;

  // Schoolbook multiply + modulus reduction; independent of the log/exp
  // tables.  Kept as the reference path the tables are checked against.
  GfElem mul_poly(GfElem a, GfElem b) const;

  // Coefficient of x^i in the encoding of a.
  unsigned digit(GfElem a, unsigned i) const;
  GfElem from_digits(std::span<const unsigned> c) const;

  // alpha^j for j in [0, q-1); log of a nonzero element.
  GfElem exp(std::uint32_t j) const { return exp_[j % (q_ - 1)]; }
  std::uint32_t log(GfElem a) const;       // throws std::domain_error on 0

  std::string to_string(GfElem a) const;    // polynomial-form rendering

 private:
  void build_tables();

  unsigned p_ = 0, e_ = 0;
  std::uint32_t q_ = 0;
  std::vector<unsigned> modulus_;
  GfElem alpha_ = 0;
  std::vector<GfElem> exp_;                 // exp_[j] = alpha^j, size q-1
  std::vector<std::uint32_t> log_;          // inverse of exp_, log_[0] unused
};

// F_{q^m} as an m-dimensional space over F_q = GF(p^e), realised inside
// GF(p^{e*m}).  Tuples over F_q correspond to coordinates in the basis
// {1, B, ..., B^{m-1}} with B the big field's primitive element; the
// embedding F_q -> F_{q^m} sends the base generator to a fixed root of the
// base modulus.  For prime q this makes compose() plain radix-q packing.
class Tower {
 public:
  Tower(const Gf& base, unsigned m);

  const Gf& base() const { return *base_; }
  const Gf& big() const { return big_; }
  unsigned m() const { return m_; }

  GfElem embed(GfElem a) const { return embed_[a]; }
  GfElem compose(std::span<const GfElem> c) const;
  void decompose(GfElem z, std::span<GfElem> out) const;
  GfElem basis_power(unsigned i) const { return pow_b_[i]; }

 private:
  const Gf* base_;
  Gf big_;
  unsigned m_;
  std::vector<GfElem> embed_;               // size q
  std::vector<GfElem> pow_b_;               // B^0..B^{m-1}
  std::vector<GfElem> comp_;                // tuple index (radix q) -> big elem
  std::vector<std::uint32_t> decomp_;       // big elem -> tuple index
};

}  // namespace qspread

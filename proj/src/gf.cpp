#include "qspread/gf.hpp"

#include <algorithm>
#include <stdexcept>

namespace qspread {

namespace {

// --- polynomial helpers over F_p, coefficients low-to-high -----------------

using Poly = std::vector<unsigned>;

void poly_trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, unsigned p) {
  if (a.empty() || b.empty()) return {};
  Poly r(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = (r[i + j] + a[i] * b[j]) % p;
  }
  return r;
}

Poly poly_mod(Poly a, const Poly& f, unsigned p) {
  poly_trim(a);
  const size_t df = f.size() - 1;
  while (a.size() > df) {
    const unsigned c = a.back();
    const size_t shift = a.size() - 1 - df;
    if (c) {
      // subtract c * f * x^shift; f is monic
      for (size_t i = 0; i < f.size(); ++i)
        a[shift + i] = (a[shift + i] + (p - 1) * c % p * f[i]) % p;
    }
    a.pop_back();
    poly_trim(a);
  }
  return a;
}

Poly poly_powmod_x(std::uint64_t n, const Poly& f, unsigned p) {
  Poly r{1};
  Poly base = poly_mod({0, 1}, f, p);
  while (n) {
    if (n & 1) r = poly_mod(poly_mul(r, base, p), f, p);
    base = poly_mod(poly_mul(base, base, p), f, p);
    n >>= 1;
  }
  return r;
}

bool poly_irreducible(const Poly& f, unsigned p) {
  const size_t e = f.size() - 1;
  if (e == 0) return false;
  if (e == 1) return true;
  // trial division by every monic polynomial of degree 1..e/2
  for (size_t d = 1; d <= e / 2; ++d) {
    std::uint64_t count = 1;
    for (size_t i = 0; i < d; ++i) count *= p;
    for (std::uint64_t v = 0; v < count; ++v) {
      Poly g(d + 1, 0);
      std::uint64_t t = v;
      for (size_t i = 0; i < d; ++i) { g[i] = unsigned(t % p); t /= p; }
      g[d] = 1;
      if (poly_mod(f, g, p).empty()) return false;
    }
  }
  return true;
}

std::vector<std::uint64_t> prime_factors(std::uint64_t n) {
  std::vector<std::uint64_t> fs;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) {
      fs.push_back(d);
      while (n % d == 0) n /= d;
    }
  }
  if (n > 1) fs.push_back(n);
  return fs;
}

bool x_is_primitive(const Poly& f, unsigned p) {
  size_t e = f.size() - 1;
  std::uint64_t q = 1;
  for (size_t i = 0; i < e; ++i) q *= p;
  if (q == 2) return true;
  for (std::uint64_t r : prime_factors(q - 1)) {
    if (poly_powmod_x((q - 1) / r, f, p) == Poly{1}) return false;
  }
  return poly_powmod_x(q - 1, f, p) == Poly{1};
}

struct TableEntry {
  unsigned p, e;
  std::vector<unsigned> modulus;
};

// Smallest-encoding primitive polynomials; see default_modulus().
const TableEntry kModulusTable[] = {
    {2, 1, {1, 1}},
    {2, 2, {1, 1, 1}},
    {2, 3, {1, 1, 0, 1}},
    {2, 4, {1, 1, 0, 0, 1}},
    {2, 5, {1, 0, 1, 0, 0, 1}},
    {2, 6, {1, 1, 0, 0, 0, 0, 1}},
    {2, 7, {1, 1, 0, 0, 0, 0, 0, 1}},
    {2, 8, {1, 0, 1, 1, 1, 0, 0, 0, 1}},
    {2, 9, {1, 0, 0, 0, 1, 0, 0, 0, 0, 1}},
    {2, 10, {1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1}},
    {2, 11, {1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {2, 12, {1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1}},
    {2, 13, {1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {2, 14, {1, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {2, 15, {1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {2, 16, {1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1}},
    {3, 1, {1, 1}},
    {3, 2, {2, 1, 1}},
    {3, 3, {1, 2, 0, 1}},
    {3, 4, {2, 1, 0, 0, 1}},
    {3, 5, {1, 2, 0, 0, 0, 1}},
    {3, 6, {2, 1, 0, 0, 0, 0, 1}},
    {3, 7, {1, 2, 1, 0, 0, 0, 0, 1}},
    {3, 8, {2, 0, 0, 1, 0, 0, 0, 0, 1}},
    {3, 9, {1, 0, 1, 2, 0, 0, 0, 0, 0, 1}},
    {3, 10, {2, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1}},
    {5, 1, {3, 1}},
    {5, 2, {2, 1, 1}},
    {5, 3, {2, 3, 0, 1}},
    {5, 4, {2, 2, 1, 0, 1}},
    {5, 5, {2, 4, 0, 0, 0, 1}},
    {5, 6, {2, 1, 0, 0, 0, 0, 1}},
    {7, 1, {4, 1}},
    {7, 2, {3, 1, 1}},
    {7, 3, {2, 3, 0, 1}},
    {7, 4, {5, 3, 1, 0, 1}},
    {7, 5, {4, 1, 0, 0, 0, 1}},
    {11, 1, {9, 1}},
    {11, 2, {7, 1, 1}},
    {11, 3, {4, 1, 0, 1}},
    {11, 4, {2, 1, 0, 0, 1}},
    {13, 1, {11, 1}},
    {13, 2, {2, 1, 1}},
    {13, 3, {6, 1, 0, 1}},
    {13, 4, {2, 1, 1, 0, 1}},
};

std::uint64_t ipow(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

std::vector<unsigned> default_modulus(unsigned p, unsigned e) {
  if (!is_prime(p)) throw std::invalid_argument("default_modulus: p not prime");
  if (e == 0 || ipow(p, e) > kMaxFieldOrder)
    throw std::invalid_argument("default_modulus: p^e out of range");
  for (const auto& entry : kModulusTable)
    if (entry.p == p && entry.e == e) return entry.modulus;
  if (e == 1) {
    // x - g with g the smallest primitive root mod p
    for (unsigned g = 1; g < p; ++g) {
      bool ok = true;
      for (std::uint64_t r : prime_factors(p - 1)) {
        std::uint64_t acc = 1, base = g, n = (p - 1) / r;
        while (n) {
          if (n & 1) acc = acc * base % p;
          base = base * base % p;
          n >>= 1;
        }
        if (acc == 1) { ok = false; break; }
      }
      if (ok) return {(p - g) % p, 1};
    }
    throw std::logic_error("default_modulus: no primitive root");
  }
  // deterministic search: smallest-encoding monic primitive polynomial
  const std::uint64_t count = ipow(p, e);
  for (std::uint64_t v = 0; v < count; ++v) {
    Poly f(e + 1, 0);
    std::uint64_t t = v;
    for (unsigned i = 0; i < e; ++i) { f[i] = unsigned(t % p); t /= p; }
    f[e] = 1;
    if (f[0] == 0) continue;
    if (poly_irreducible(f, p) && x_is_primitive(f, p)) return f;
  }
  throw std::logic_error("default_modulus: search exhausted");
}

Gf::Gf(unsigned p, unsigned e) : Gf(p, e, default_modulus(p, e)) {}

Gf::Gf(unsigned p, unsigned e, std::vector<unsigned> modulus)
    : p_(p), e_(e), modulus_(std::move(modulus)) {
  if (!is_prime(p_)) throw std::invalid_argument("Gf: p not prime");
  if (e_ == 0) throw std::invalid_argument("Gf: e must be positive");
  const std::uint64_t q = ipow(p_, e_);
  if (q > kMaxFieldOrder) throw std::invalid_argument("Gf: p^e too large");
  q_ = std::uint32_t(q);
  if (modulus_.size() != e_ + 1 || modulus_[e_] != 1)
    throw std::invalid_argument("Gf: modulus must be monic of degree e");
  for (unsigned c : modulus_)
    if (c >= p_) throw std::invalid_argument("Gf: modulus coefficient >= p");
  Poly f(modulus_.begin(), modulus_.end());
  if (!poly_irreducible(f, p_))
    throw std::invalid_argument("Gf: modulus is reducible");
  build_tables();
}

GfElem Gf::mul_poly(GfElem a, GfElem b) const {
  Poly pa(e_), pb(e_);
  for (unsigned i = 0; i < e_; ++i) {
    pa[i] = digit(a, i);
    pb[i] = digit(b, i);
  }
  Poly f(modulus_.begin(), modulus_.end());
  Poly r = poly_mod(poly_mul(pa, pb, p_), f, p_);
  GfElem out = 0;
  for (size_t i = r.size(); i-- > 0;) out = out * p_ + r[i];
  return out;
}

void Gf::build_tables() {
  // order of a = q-1 checked against the prime factorisation of q-1
  const auto factors = prime_factors(q_ - 1);
  auto powe = [this](GfElem a, std::uint64_t n) {
    GfElem r = 1, base = a;
    while (n) {
      if (n & 1) r = mul_poly(r, base);
      base = mul_poly(base, base);
      n >>= 1;
    }
    return r;
  };
  alpha_ = 0;
  for (GfElem a = 1; a < q_; ++a) {
    bool primitive = powe(a, q_ - 1) == 1;
    for (std::uint64_t r : factors)
      if (primitive && powe(a, (q_ - 1) / r) == 1) primitive = false;
    if (primitive) { alpha_ = a; break; }
  }
  if (alpha_ == 0) throw std::logic_error("Gf: no primitive element");

  exp_.assign(q_ - 1, 0);
  log_.assign(q_, 0);
  std::vector<bool> seen(q_, false);
  GfElem cur = 1;
  for (std::uint32_t j = 0; j < q_ - 1; ++j) {
    if (cur == 0 || seen[cur])
      throw std::logic_error("Gf: generator has short order");
    seen[cur] = true;
    exp_[j] = cur;
    log_[cur] = j;
    cur = mul_poly(cur, alpha_);
  }
  if (cur != 1) throw std::logic_error("Gf: generator order mismatch");
}

GfElem Gf::add(GfElem a, GfElem b) const {
  if (p_ == 2) return a ^ b;
  if (e_ == 1) return (a + b) % p_;
  GfElem out = 0, scale = 1;
  for (unsigned i = 0; i < e_; ++i) {
    out += (digit(a, i) + digit(b, i)) % p_ * scale;
    scale *= p_;
  }
  return out;
}

GfElem Gf::neg(GfElem a) const {
  if (p_ == 2) return a;
  if (e_ == 1) return (p_ - a) % p_;
  GfElem out = 0, scale = 1;
  for (unsigned i = 0; i < e_; ++i) {
    out += (p_ - digit(a, i)) % p_ * scale;
    scale *= p_;
  }
  return out;
}

GfElem Gf::inv(GfElem a) const {
  if (a == 0) throw std::domain_error("Gf::inv: zero has no inverse");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

GfElem Gf::pow(GfElem a, std::int64_t n) const {
  if (a == 0) {
    if (n == 0) return 1;
    if (n < 0) throw std::domain_error("Gf::pow: negative power of zero");
    return 0;
  }
  const std::int64_t m = q_ - 1;
  std::int64_t r = (std::int64_t(log_[a]) * (n % m)) % m;
  if (r < 0) r += m;
  return exp_[r];
}

GfElem Gf::frobenius(GfElem a, unsigned i) const {
  if (a == 0) return 0;
  std::uint64_t f = 1;
  const std::uint64_t m = q_ - 1;
  for (unsigned j = 0; j < i; ++j) f = f * p_ % m;
  return exp_[std::uint64_t(log_[a]) * f % m];
}

unsigned Gf::digit(GfElem a, unsigned i) const {
  for (unsigned j = 0; j < i; ++j) a /= p_;
  return a % p_;
}

GfElem Gf::from_digits(std::span<const unsigned> c) const {
  if (c.size() != e_) throw std::invalid_argument("Gf::from_digits: size != e");
  GfElem out = 0;
  for (size_t i = c.size(); i-- > 0;) {
    if (c[i] >= p_) throw std::invalid_argument("Gf::from_digits: digit >= p");
    out = out * p_ + c[i];
  }
  return out;
}

std::uint32_t Gf::log(GfElem a) const {
  if (a == 0) throw std::domain_error("Gf::log: log of zero");
  return log_[a];
}

std::string Gf::to_string(GfElem a) const {
  if (e_ == 1 || a == 0) return std::to_string(a);
  std::string s;
  for (unsigned i = e_; i-- > 0;) {
    unsigned c = digit(a, i);
    if (!c) continue;
    if (!s.empty()) s += "+";
    if (c > 1 || i == 0) s += std::to_string(c);
    if (i >= 1) s += (c > 1 ? "*x" : "x");
    if (i > 1) s += "^" + std::to_string(i);
  }
  return s;
}

namespace {

Gf make_tower_field(const Gf& base, unsigned m) {
  if (m == 0) throw std::invalid_argument("Tower: m must be positive");
  std::uint64_t qm = 1;
  for (unsigned i = 0; i < m; ++i) {
    qm *= base.q();
    if (qm > kMaxFieldOrder) throw std::invalid_argument("Tower: q^m too large");
  }
  return Gf(base.p(), base.e() * m);
}

}  // namespace

Tower::Tower(const Gf& base, unsigned m)
    : base_(&base), big_(make_tower_field(base, m)), m_(m) {
  const std::uint64_t qm = big_.q();

  // root of the base modulus inside the big field, smallest encoding
  GfElem root = 0;
  bool found = false;
  for (GfElem z = 0; z < big_.q() && !found; ++z) {
    GfElem acc = 0, zp = 1;
    for (unsigned i = 0; i <= base.e(); ++i) {
      acc = big_.add(acc, big_.mul(base.modulus()[i] % base.p(), zp));
      zp = big_.mul(zp, z);
    }
    if (acc == 0) { root = z; found = true; }
  }
  if (!found) throw std::logic_error("Tower: base modulus has no root");

  embed_.assign(base.q(), 0);
  for (GfElem a = 0; a < base.q(); ++a) {
    GfElem acc = 0, rp = 1;
    for (unsigned i = 0; i < base.e(); ++i) {
      acc = big_.add(acc, big_.mul(base.digit(a, i), rp));
      rp = big_.mul(rp, root);
    }
    embed_[a] = acc;
  }
  // ring-hom sanity on the embedding
  const GfElem cap = GfElem(std::min<std::uint32_t>(base.q(), 64));
  for (GfElem a = 0; a < cap; ++a)
    for (GfElem b = 0; b < cap; ++b) {
      if (embed_[base.mul(a, b)] != big_.mul(embed_[a], embed_[b]) ||
          embed_[base.add(a, b)] != big_.add(embed_[a], embed_[b]))
        throw std::logic_error("Tower: embedding is not a homomorphism");
    }

  pow_b_.assign(m, 1);
  for (unsigned i = 1; i < m; ++i) pow_b_[i] = big_.mul(pow_b_[i - 1], big_.alpha());

  comp_.assign(qm, 0);
  decomp_.assign(big_.q(), std::uint32_t(-1));
  for (std::uint64_t t = 0; t < qm; ++t) {
    GfElem acc = 0;
    std::uint64_t v = t;
    for (unsigned i = 0; i < m; ++i) {
      acc = big_.add(acc, big_.mul(embed_[GfElem(v % base.q())], pow_b_[i]));
      v /= base.q();
    }
    comp_[t] = acc;
    if (decomp_[acc] != std::uint32_t(-1))
      throw std::logic_error("Tower: basis powers are dependent");
    decomp_[acc] = std::uint32_t(t);
  }
}

GfElem Tower::compose(std::span<const GfElem> c) const {
  if (c.size() != m_) throw std::invalid_argument("Tower::compose: size != m");
  std::uint64_t t = 0;
  for (size_t i = c.size(); i-- > 0;) {
    if (c[i] >= base_->q())
      throw std::invalid_argument("Tower::compose: digit >= q");
    t = t * base_->q() + c[i];
  }
  return comp_[t];
}

void Tower::decompose(GfElem z, std::span<GfElem> out) const {
  if (out.size() != m_) throw std::invalid_argument("Tower::decompose: size != m");
  if (z >= big_.q()) throw std::invalid_argument("Tower::decompose: bad element");
  std::uint64_t t = decomp_[z];
  for (unsigned i = 0; i < m_; ++i) {
    out[i] = GfElem(t % base_->q());
    t /= base_->q();
  }
}

}  // namespace qspread

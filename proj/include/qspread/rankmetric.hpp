// Rank-metric codes and subspace lifting.
//
// A Gabidulin code here is the set of k x l matrices over F_q (k <= l) whose
// rows are the values f(1), f(B), ..., f(B^{k-1}) of a linearized polynomial
//   f(x) = sum_{j < kappa} f_j x^(q^j),   kappa = k - delta + 1,
// written in F_q-coordinates over the basis {1, B, ..., B^{l-1}} of F_{q^l},
// B primitive.  The code is F_q-linear of dimension l*kappa, meets the
// rank-metric dimension bound with equality, and has minimum rank distance
// exactly delta.
//
// lift(A) = rowspace[I_k | A] embeds a k x l matrix as a k-dim subspace of
// F_q^(k+l) meeting the tail axis trivially; subspace distance doubles rank
// distance, so a lifted code is a constant-dimension subspace code.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qspread/gf.hpp"
#include "qspread/kernels.hpp"
#include "qspread/linalg.hpp"

namespace qspread {

// min{k(l - delta + 1), l(k - delta + 1)}: the exponent m such that a
// rank-distance-delta code of k x l matrices has at most q^m codewords.
unsigned mrd_dim_exponent(unsigned k, unsigned l, unsigned delta);

// rank of A - B for packed k x l matrices
unsigned rank_distance(const VecCtx& rowctx, std::span<const Row> a,
                       std::span<const Row> b);

class GabidulinCode {
 public:
  // Throws std::invalid_argument unless 1 <= delta <= k <= l and the code is
  // small enough to enumerate.  Construction verifies the minimum nonzero
  // codeword rank is exactly delta (exhaustive; the code is linear).
  GabidulinCode(const Gf& gf, unsigned k, unsigned l, unsigned delta);

  const Gf& gf() const { return *gf_; }
  const VecCtx& row_ctx() const { return rowctx_; }
  const Tower& tower() const { return tower_; }
  unsigned k() const { return k_; }
  unsigned l() const { return l_; }
  unsigned delta() const { return delta_; }
  unsigned kappa() const { return kappa_; }

  std::uint64_t size() const { return size_; }
  // Codeword c has coefficients f_j = digit j of c in radix q^l.
  std::vector<Row> matrix_at(std::uint64_t c) const;
  std::vector<GfElem> coefficients_of(std::uint64_t c) const;
  std::uint64_t index_of(std::span<const GfElem> coeffs) const;

 private:
  const Gf* gf_;
  unsigned k_, l_, delta_, kappa_;
  Tower tower_;
  VecCtx rowctx_;
  std::uint64_t size_;
};

// rowspace[I_k | A]; a_rows are packed length-l rows, ambient has n = k + l.
Subspace lift(const VecCtx& ambient, std::span<const Row> a_rows, unsigned k);

// Lift of an entire Gabidulin code: an (n, q^((n-k)(k-delta+1)), 2*delta, k)_q
// constant-dimension code with n = k + l, subspaces indexed like codewords.
class LiftedCode {
 public:
  // verify_pairwise: exhaustively confirm the minimum pairwise subspace
  // distance equals 2*delta (skipped above kMaxPairwiseVerify members).
  LiftedCode(const Gf& gf, unsigned k, unsigned l, unsigned delta,
             bool verify_pairwise = true);

  static constexpr std::uint64_t kMaxPairwiseVerify = 1 << 13;

  const GabidulinCode& code() const { return code_; }
  const VecCtx& ambient() const { return ctx_; }
  unsigned n() const { return ctx_.n(); }
  unsigned k() const { return code_.k(); }
  unsigned delta() const { return code_.delta(); }
  std::uint64_t size() const { return code_.size(); }
  Subspace at(std::uint64_t idx) const;
  std::vector<Subspace> all() const;
  bool pairwise_verified() const { return pairwise_verified_; }

 private:
  GabidulinCode code_;
  VecCtx ctx_;
  bool pairwise_verified_ = false;
};

// Partition of a lifted code into parallel classes: class t collects the
// codewords whose coefficient tail (f_1, ..., f_{kappa-1}) has radix-q^l
// index t, i.e. the cosets of the delta' = k subcode {f_0 x}.  Each class
// has q^l members that cover every vector with nonzero head exactly once
// and are pairwise at distance 2k; both properties are verified here by
// exhaustive per-class checks.
struct ParallelClasses {
  std::uint64_t class_count = 0;
  std::uint64_t class_size = 0;
  std::vector<std::vector<Subspace>> classes;
};

ParallelClasses parallel_classes(const LiftedCode& code, int threads = 1);

}  // namespace qspread

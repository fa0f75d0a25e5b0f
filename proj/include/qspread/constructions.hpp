// Disjoint spreads in G_q(2k, k).
//
// A spread of F_q^n by k-dimensional subspaces exists iff k | n and has
// (q^n - 1)/(q^k - 1) members.  The builders here produce pairwise disjoint
// spreads (no common member) for n = 2k:
//   - q = 2: a family of 2^k - 1 disjoint spreads,
//   - q > 2: a pair of disjoint spreads.
// Every intermediate object is checked at construction time against the
// combinatorial property that justifies the next step (exact covers, type
// censuses, structure of the members), so a returned family is correct by
// exhaustive verification, not by trust in the algebra.
//
// Type of a k-subspace Y relative to the tail axis U = span{e_k..e_{2k-1}},
// with d = dim(Y ∩ U):  A: d = 0 (Y is a lifted matrix, covers every nonzero
// head exactly once);  B: d = 1 (exactly one projective point of U);
// C: d = k (Y = U);  Other: anything else (possible in G_q(2k,k) at k >= 3,
// but never inside the spreads built here).
#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "qspread/gf.hpp"
#include "qspread/linalg.hpp"
#include "qspread/rankmetric.hpp"

namespace qspread {

enum class SubspaceType : unsigned char { A, B, C, Other };

struct TypeCensus {
  std::uint64_t a = 0, b = 0, c = 0, other = 0;
  bool operator==(const TypeCensus&) const = default;
};

// Classification from the RREF pivot mask: dim(Y ∩ U) equals the number of
// pivot columns in the tail half.  y.n must equal 2k.
SubspaceType classify(const Subspace& y, unsigned k);

TypeCensus census_of(std::span<const Subspace> members, unsigned k);

// Census of the whole Grassmannian G_q(2k, k), computed with the explicit
// intersection kernel rather than the pivot-mask shortcut.
TypeCensus count_types(const Gf& gf, unsigned k, int threads = 0);

// Throws std::logic_error (with the first counterexample) unless `members`
// is a spread: (q^n - 1)/(q^k - 1) subspaces of dimension k covering every
// nonzero vector exactly once, pairwise intersecting trivially.
void require_spread(const VecCtx& ctx, std::span<const Subspace> members,
                    unsigned k, int threads, const char* what);

// Throws std::logic_error if any subspace appears in two of the spreads (or
// twice in one); pairwise member-disjointness is exactly what makes a family
// of spreads a partial parallelism.
void require_family_disjoint(const VecCtx& ctx,
                             std::span<const std::vector<Subspace>> spreads);

// One parallel class of the delta = k-1 lifted code, plus the tail axis:
// a spread in which every member except the axis meets the head axis in
// dimension <= 1, with exactly (q^k-1)/(q-1) members meeting it in
// dimension exactly 1.  The smallest class index with this property is
// chosen (class 0 is excluded: it contains the head axis itself).
struct BaseSpread {
  std::vector<Subspace> members;  // class members in codeword order; axis last
  std::uint64_t class_index = 0;
  unsigned k = 0;
};
BaseSpread build_base_spread(const Gf& gf, unsigned k, int threads = 1);

// Member-wise half swap (x,y) -> (y,x).
std::vector<Subspace> reverse_spread(const VecCtx& ctx,
                                     std::span<const Subspace> spread);

// j such that y = {(x, a^j x) : x in F_{q^k}} written over the tower basis,
// where a is the primitive element of tower.big(); nullopt if y is not of
// that form.
std::optional<unsigned> diagonal_exponent(const VecCtx& ctx, const Tower& tower,
                                          const Subspace& y, unsigned k);

struct DiagonalScan {
  std::uint64_t count = 0;   // members of diagonal form
  std::size_t first = 0;     // index of the first one
  unsigned j = 0;            // its exponent
};
DiagonalScan scan_diagonals(const VecCtx& ctx, const Tower& tower,
                            std::span<const Subspace> members, unsigned k);

// q = 2 only.  Applies the shear (x, y) -> (x, y + x) to every member of the
// reversed base spread, or (x, y) -> (x, y + x^2) when the reversed spread
// already contains a diagonal (x^2 through the tower identification; both
// maps are F_2-linear bijections of F_2^{2k}).  The result is verified to be
// a spread of 2 Type A + (2^k - 1) Type B members, none of them the head
// axis, at most one of them a diagonal, in which the Type B members project
// onto 2^k - 1 pairwise distinct head hyperplanes.
struct ShearResult {
  std::vector<Subspace> members;
  bool used_square_shear = false;  // true when a diagonal forced (x, y + x^2)
};
ShearResult build_s0(const VecCtx& ctx, const Tower& tower,
                     std::span<const Subspace> rev_base, unsigned k,
                     int threads = 1);

// Member-wise tail scaling by beta != 0; verified to preserve the type
// census and to remain a spread.
std::vector<Subspace> scale_spread(const VecCtx& ctx, const Tower& tower,
                                   std::span<const Subspace> spread,
                                   GfElem beta, unsigned k, int threads = 1);

struct SpreadFamily {
  unsigned q = 0, n = 0, k = 0;
  std::vector<std::vector<Subspace>> spreads;
};

// Pairwise disjoint spreads in G_q(2k, k): 2^k - 1 of them for q = 2, two
// for q > 2, and the single spread G_q(2, 1) for k = 1.  Every spread is
// verified exhaustively and the family is verified member-disjoint.
SpreadFamily build_family_2k(const Gf& gf, unsigned k, int threads = 1);

}  // namespace qspread

// Subspace transversal designs and the recursive spread-family construction.
//
// Points: the vectors of F_q^(k+m) whose head (first k coordinates) is a
// normalized nonzero vector (first nonzero coordinate 1).  Groups: the
// (q^k-1)/(q-1) fibres of the head map over those representatives, each of
// size q^m.  Blocks: the lifted codewords of a rank-metric code with minimum
// rank distance delta = k - t + 1.  The five design axioms hold:
//   1-2. points and groups partition as stated,
//   3.   blocks meet the tail axis trivially,
//   4.   each block meets each group in exactly one point,
//   5.   every transversal t-subspace (RREF pivots all inside the first k
//        columns) is contained in exactly one block,
// and the blocks resolve into parallel classes, each an exact cover of the
// nonzero-head vectors.  verify() checks all of that exhaustively.
//
// With t = k (delta = 1) the classes form q^(m(k-1)) pairwise disjoint
// spreads of the vectors outside the tail axis, and every transversal
// k-subspace lies in exactly one class: a parallelism of the transversal
// part of the Grassmannian.  Gluing class i onto a spread of the tail axis
// F_q^m (suffix-embedded) turns M disjoint spreads of F_q^(n-k) into M
// disjoint spreads of F_q^n, which drives build_family down to the n = 2k
// and n = k base cases.
#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "qspread/constructions.hpp"
#include "qspread/gf.hpp"
#include "qspread/linalg.hpp"
#include "qspread/rankmetric.hpp"

namespace qspread {

struct TransversalDesign {
  unsigned k = 0;  // block dimension
  unsigned m = 0;  // groups have q^m points; ambient n = k + m
  unsigned t = 0;  // strength: transversal t-subspaces determine blocks
  std::vector<Row> group_reps;   // normalized heads, k-digit rows
  std::vector<Subspace> blocks;  // codeword order
  std::uint64_t class_count = 0, class_size = 0;  // parallel class c is
                                                  // blocks[c*size .. +size)
};

// Blocks from the lifted code with delta = k - t + 1 (requires
// 1 <= t <= k <= m); verified with verify_design before returning.
TransversalDesign build_design(const Gf& gf, unsigned k, unsigned m,
                               unsigned t, int threads = 1);

// Exhaustively checks the five axioms and resolvability; throws
// std::logic_error naming the violated property and a witness.
void verify_design(const Gf& gf, const TransversalDesign& d, int threads = 1);

// number of transversal t-subspaces: [k choose t]_q * q^(m t)
std::uint64_t transversal_count(std::uint64_t q, unsigned k, unsigned m,
                                unsigned t);

// The strength-k design's classes as spreads of the nonzero-head vectors:
// pairwise disjoint, each an exact cover, and every transversal k-subspace
// lies in exactly one of them (all verified).
struct TransversalParallelism {
  unsigned n = 0, k = 0;
  std::uint64_t class_count = 0, class_size = 0;
  std::vector<std::vector<Subspace>> spreads;
};
TransversalParallelism transversal_parallelism(const Gf& gf, unsigned n,
                                               unsigned k, int threads = 1);

// Suffix embedding G_q(n-k, k) -> G_q(n, k): prepend k zero coordinates.
Subspace embed_suffix(const VecCtx& big, const VecCtx& small,
                      const Subspace& s, unsigned k);

// Turns M disjoint spreads of F_q^(n-k) into M disjoint spreads of F_q^n by
// gluing parallelism class i onto the suffix-embedded inner spread i.
SpreadFamily extend_family(const Gf& gf, unsigned n, const SpreadFamily& inner,
                           int threads = 1);

// Pairwise disjoint spread family in G_q(n, k) for any k | n:
//   k = n: the single whole-space spread;     k = 1: the point spread;
//   n = 2k: the dedicated two-half builders;  n > 2k: recurse on n - k.
// Yields 2^k - 1 spreads for q = 2 and two spreads for q > 2 (n > k > 1).
SpreadFamily build_family(const Gf& gf, unsigned n, unsigned k,
                          int threads = 1);

}  // namespace qspread

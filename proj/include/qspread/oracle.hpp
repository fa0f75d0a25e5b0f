// Independent brute-force verification oracles.
//
// Every function here re-derives the claimed property from the raw subspace
// data using only the packed linear-algebra primitives (enumeration, Gaussian
// elimination, explicit intersections) — never the construction modules'
// intermediate state, pivot-mask shortcuts, or cached censuses.  Failures are
// reported, not thrown, and every FAIL carries the first concrete
// counterexample (an offending vector or a pair of subspaces).
#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "qspread/linalg.hpp"
#include "qspread/std_design.hpp"

namespace qspread {

struct CheckResult {
  std::string name;
  bool pass = true;
  std::string witness;  // first counterexample; empty exactly when pass
  double seconds = 0.0;
};

struct Report {
  std::vector<CheckResult> checks;

  bool pass() const;
  const CheckResult* first_failure() const;  // nullptr when all pass
  void merge(Report other);
  // "PASS (N checks, T s)" or "FAIL <name>: <witness>"
  std::string summary() const;
};

// Spread oracle: size (q^n-1)/(q^k-1), canonical k-dimensional members,
// pairwise trivial intersections (explicit Zassenhaus intersection per
// pair), and exact cover of the nonzero vectors by per-vector counting.
Report check_spread(const VecCtx& ctx, std::span<const Subspace> members,
                    unsigned k, int threads = 0);

// No subspace appears in two of the spreads (or twice in one).
Report check_family_disjoint(const VecCtx& ctx,
                             std::span<const std::vector<Subspace>> spreads);

// check_spread on every spread, then pairwise disjointness.
Report check_family(const VecCtx& ctx,
                    std::span<const std::vector<Subspace>> spreads, unsigned k,
                    int threads = 0);

// Census over dim(Y ∩ U), U the tail axis of F^2k: a = trivial meet,
// b = one-dimensional meet, c = Y = U, other = anything else.  Each bucket
// is computed from an explicit intersection.
struct OracleCensus {
  std::uint64_t a = 0, b = 0, c = 0, other = 0;
  bool operator==(const OracleCensus&) const = default;
};
OracleCensus census_by_intersection(const VecCtx& ctx,
                                    std::span<const Subspace> members,
                                    unsigned k);

// Structure of the one-dimensional-meet members over GF(2): such a member
// holds exactly one nonzero tail-axis vector (0,z); its nonzero head values
// form a (k-1)-dimensional subspace of F_2^k, each attained by exactly two
// member vectors whose tails differ by z.  Members meeting U otherwise are
// ignored.
Report check_type_b_structure(const VecCtx& ctx,
                              std::span<const Subspace> members, unsigned k);

// The one-dimensional-meet members project to pairwise distinct
// (k-1)-dimensional head subspaces (hyperplanes of F_q^k).
Report check_type_b_hyperplanes(const VecCtx& ctx,
                                std::span<const Subspace> members, unsigned k);

// Design oracle: group structure, block shape, the tail-trivial /
// groups-once / transversal-once axioms, and resolvability.  The
// transversal-once axiom is checked from the block side (enumerating each
// block's t-dimensional transversal subspaces and counting multiplicities),
// a deliberately different route than the builder's space-side sweep.
Report check_design(const VecCtx& ctx, const TransversalDesign& d,
                    int threads = 0);

// Strength-k classes as a parallelism of the transversal part of the
// Grassmannian: every member transversal, each class an exact cover of the
// nonzero-head vectors, classes pairwise disjoint, and together containing
// every transversal k-subspace exactly once.
Report check_transversal_parallelism(
    const VecCtx& ctx, std::span<const std::vector<Subspace>> classes,
    unsigned k, int threads = 0);

}  // namespace qspread

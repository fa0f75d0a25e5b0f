// Exact small-case search: how many pairwise disjoint spreads does
// G_q(n, k) really admit?
//
// Phase 1 enumerates every spread by depth-first extension on the least
// uncovered vector (each spread is produced exactly once because its member
// covering the current least vector is unique).  Phase 2 finds a maximum
// set packing of those spreads — no two chosen spreads sharing a subspace —
// by branch and bound on the least unresolved subspace, with the bound
// chosen + floor(free subspaces / spread size).
//
// The search is deterministic and single-threaded by default.  With
// threads != 1 the phase-2 root branches run in parallel; a completed
// (exact) search reports the same optimum either way, since both compute
// the true maximum.  If the node budget runs out the result is a lower
// bound, flagged by exact = false.
#pragma once

#include <cstdint>
#include <vector>

#include "qspread/gf.hpp"
#include "qspread/linalg.hpp"

namespace qspread {

struct SearchResult {
  std::uint64_t spread_count = 0;  // spreads enumerated in phase 1
  unsigned best = 0;               // largest pairwise-disjoint family found
  bool exact = false;              // both phases finished within the budget
  std::uint64_t nodes = 0;         // search-tree nodes visited (both phases)
  std::vector<std::vector<Subspace>> witness;  // a family of size best
};

// If k does not divide n no spread exists and the result is an exact 0.
// Throws std::invalid_argument when the instance exceeds desk scale (the
// per-vector bookkeeping or Grassmannian enumeration limits).
SearchResult exhaustive_max_family(const Gf& gf, unsigned n, unsigned k,
                                   std::uint64_t node_budget = 10'000'000,
                                   int threads = 1);

}  // namespace qspread

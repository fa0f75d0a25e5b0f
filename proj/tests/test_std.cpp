#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <unordered_set>
#include <vector>

#include "qspread/constructions.hpp"
#include "qspread/kernels.hpp"
#include "qspread/linalg.hpp"
#include "qspread/std_design.hpp"

using namespace qspread;

namespace {

std::set<std::string> member_strings(const VecCtx& ctx,
                                     const std::vector<Subspace>& spread) {
  std::set<std::string> out;
  for (const Subspace& s : spread) {
    std::string m;
    for (Row r : s.rows) {
      if (!m.empty()) m += '/';
      m += ctx.to_string(r);
    }
    out.insert(m);
  }
  return out;
}

std::uint64_t pow_u64(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

}  // namespace

TEST_CASE("transversal subspace counts") {
  CHECK(transversal_count(2, 2, 2, 2) == 16);      // [2 2]_2 * 2^4
  CHECK(transversal_count(2, 2, 2, 1) == 12);      // 3 * 4
  CHECK(transversal_count(2, 3, 3, 2) == 448);     // 7 * 64
  CHECK(transversal_count(2, 3, 3, 3) == 512);     // 1 * 2^9
  CHECK(transversal_count(3, 2, 2, 1) == 36);      // 4 * 9
  CHECK(transversal_count(2, 2, 4, 2) == 256);     // 1 * 2^8
}

TEST_CASE("strength k design over GF(2), k = m = 2") {
  const Gf gf(2, 1);
  const TransversalDesign d = build_design(gf, 2, 2, 2);
  CHECK(d.blocks.size() == 16);
  CHECK(d.class_count == 4);
  CHECK(d.class_size == 4);
  const VecCtx half(gf, 2);
  std::vector<std::string> reps;
  for (Row r : d.group_reps) reps.push_back(half.to_string(r));
  std::sort(reps.begin(), reps.end());
  CHECK(reps == std::vector<std::string>{"01", "10", "11"});
  // blocks are pairwise distinct, all 2^4 lifts of 2x2 binary matrices
  std::unordered_set<Subspace, SubspaceHash> uniq(d.blocks.begin(),
                                                  d.blocks.end());
  CHECK(uniq.size() == 16);
}

TEST_CASE("strength 3 design over GF(2), k = m = 3") {
  const Gf gf(2, 1);
  const TransversalDesign d = build_design(gf, 3, 3, 3);
  CHECK(d.blocks.size() == 512);
  CHECK(d.class_count == 64);
  CHECK(d.class_size == 8);
  CHECK(d.group_reps.size() == 7);
}

TEST_CASE("strength 2 design with delta = 2 over GF(2)") {
  const Gf gf(2, 1);
  const TransversalDesign d = build_design(gf, 3, 3, 2);
  CHECK(d.blocks.size() == 64);
  CHECK(d.class_count == 8);
  CHECK(d.class_size == 8);
  CHECK(transversal_count(2, 3, 3, 2) == 448);
}

TEST_CASE("design over GF(3)") {
  const Gf gf(3, 1);
  const TransversalDesign d = build_design(gf, 2, 2, 2);
  CHECK(d.blocks.size() == 81);
  CHECK(d.class_count == 9);
  CHECK(d.class_size == 9);
  CHECK(d.group_reps.size() == 4);
}

TEST_CASE("design verification rejects bad input") {
  const Gf gf(2, 1);
  TransversalDesign d = build_design(gf, 2, 2, 2);

  SUBCASE("deleted block changes the block count") {
    d.blocks.pop_back();
    CHECK_THROWS_WITH_AS(verify_design(gf, d),
                         doctest::Contains("wrong count"), std::logic_error);
  }
  SUBCASE("duplicated block violates the exactly-one axiom") {
    d.blocks[3] = d.blocks[2];  // same count, one lift missing + one doubled
    CHECK_THROWS_WITH_AS(verify_design(gf, d), doctest::Contains("axiom 5"),
                         std::logic_error);
  }
  SUBCASE("cross-class swap breaks only resolvability") {
    std::swap(d.blocks[0], d.blocks[4]);  // block set unchanged
    CHECK_THROWS_WITH_AS(verify_design(gf, d),
                         doctest::Contains("resolvability"), std::logic_error);
  }
  SUBCASE("tampered group representatives are caught") {
    d.group_reps.pop_back();
    CHECK_THROWS_AS(verify_design(gf, d), std::logic_error);
  }
  SUBCASE("parameter bounds") {
    CHECK_THROWS_AS(build_design(gf, 2, 1, 2), std::invalid_argument);
    CHECK_THROWS_AS(build_design(gf, 2, 2, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_design(gf, 2, 2, 3), std::invalid_argument);
  }
}

TEST_CASE("transversal parallelism over GF(2), n = 4") {
  const Gf gf(2, 1);
  const TransversalParallelism p = transversal_parallelism(gf, 4, 2);
  CHECK(p.class_count == 4);
  CHECK(p.class_size == 4);
  REQUIRE(p.spreads.size() == 4);
  const VecCtx ctx(gf, 4);
  // each class covers the 12 nonzero-head vectors exactly once
  for (const auto& spread : p.spreads) {
    const auto counts = cover_counts(ctx, spread);
    std::uint64_t covered = 0;
    const Subspace full = head_axis(ctx, 4);
    for_each_vector(ctx, full, [&](Row v) {
      if (v == 0) return;
      const unsigned want = ctx.head(v, 2) != 0 ? 1 : 0;
      CHECK(counts[v] == want);
      covered += counts[v];
    });
    CHECK(covered == 12);
  }
  // classes are pairwise disjoint and every transversal 2-subspace (all
  // [I|A] lifts) appears in exactly one class
  std::unordered_set<Subspace, SubspaceHash> all;
  for (const auto& spread : p.spreads)
    for (const Subspace& s : spread) CHECK(all.insert(s).second);
  CHECK(all.size() == 16);
}

TEST_CASE("transversal parallelism over GF(2), n = 6") {
  const Gf gf(2, 1);
  const TransversalParallelism p = transversal_parallelism(gf, 6, 2);
  CHECK(p.class_count == 16);
  CHECK(p.class_size == 16);
  CHECK(transversal_count(2, 2, 4, 2) == 256);
}

TEST_CASE("transversal parallelism over GF(3), n = 4") {
  const Gf gf(3, 1);
  const TransversalParallelism p = transversal_parallelism(gf, 4, 2);
  CHECK(p.class_count == 9);
  CHECK(p.class_size == 9);
}

TEST_CASE("suffix embedding prepends zero coordinates") {
  const Gf gf(2, 1);
  const VecCtx big(gf, 6), small(gf, 4);
  const std::vector<Row> gens{small.unit(0), small.unit(2)};
  Subspace s = span_of(small, gens);
  const Subspace e = embed_suffix(big, small, s, 2);
  CHECK(e.n == 6);
  CHECK(e.k == 2);
  for (size_t i = 0; i < e.rows.size(); ++i) {
    const std::string es = big.to_string(e.rows[i]);
    CHECK(es == "00" + small.to_string(s.rows[i]));
  }
  CHECK(e.pivots == (s.pivots << 2));
  const VecCtx wrong(gf, 5);
  CHECK_THROWS_AS(embed_suffix(wrong, small, s, 2), std::invalid_argument);
}

TEST_CASE("recursive family in G_2(6, 2)") {
  const Gf gf(2, 1);
  const SpreadFamily fam = build_family(gf, 6, 2);
  CHECK(fam.q == 2);
  CHECK(fam.n == 6);
  CHECK(fam.k == 2);
  REQUIRE(fam.spreads.size() == 3);
  const VecCtx ctx(gf, 6);
  for (const auto& spread : fam.spreads) {
    CHECK(spread.size() == 21);
    require_spread(ctx, spread, 2, 1, "family member");
  }
  require_family_disjoint(ctx, fam.spreads);

  // the recursion glues parallelism class i onto inner spread i: the
  // embedded copy of the inner family's members must be present verbatim
  const SpreadFamily inner = build_family(gf, 4, 2);
  REQUIRE(inner.spreads.size() == 3);
  const VecCtx small(gf, 4);
  for (size_t i = 0; i < 3; ++i) {
    CHECK(inner.spreads[i].size() == 5);
    const auto outer = member_strings(ctx, fam.spreads[i]);
    for (const Subspace& m : inner.spreads[i]) {
      const Subspace e = embed_suffix(ctx, small, m, 2);
      std::string key;
      for (Row r : e.rows) {
        if (!key.empty()) key += '/';
        key += ctx.to_string(r);
      }
      CHECK(outer.count(key) == 1);
    }
  }
}

TEST_CASE("recursive family in G_2(8, 2)") {
  const Gf gf(2, 1);
  const SpreadFamily fam = build_family(gf, 8, 2);
  REQUIRE(fam.spreads.size() == 3);
  for (const auto& spread : fam.spreads) CHECK(spread.size() == 85);
  const VecCtx ctx(gf, 8);
  require_family_disjoint(ctx, fam.spreads);
}

TEST_CASE("recursive family in G_3(6, 2)") {
  const Gf gf(3, 1);
  const SpreadFamily fam = build_family(gf, 6, 2);
  REQUIRE(fam.spreads.size() == 2);
  for (const auto& spread : fam.spreads) CHECK(spread.size() == 91);
}

TEST_CASE("base cases of the family recursion") {
  const Gf gf2(2, 1);
  SUBCASE("k = n: the whole space") {
    const SpreadFamily fam = build_family(gf2, 3, 3);
    REQUIRE(fam.spreads.size() == 1);
    REQUIRE(fam.spreads[0].size() == 1);
    const VecCtx ctx(gf2, 3);
    CHECK(fam.spreads[0][0] == head_axis(ctx, 3));
  }
  SUBCASE("k = 1: all the points") {
    const SpreadFamily fam = build_family(gf2, 6, 1);
    REQUIRE(fam.spreads.size() == 1);
    CHECK(fam.spreads[0].size() == 63);
    const Gf gf3(3, 1);
    const SpreadFamily f3 = build_family(gf3, 2, 1);
    CHECK(f3.spreads[0].size() == 4);
  }
  SUBCASE("invalid parameters") {
    CHECK_THROWS_AS(build_family(gf2, 6, 0), std::invalid_argument);
    CHECK_THROWS_AS(build_family(gf2, 6, 4), std::invalid_argument);
  }
}

TEST_CASE("family sizes match the construction guarantees") {
  // q = 2, n = 2k: 2^k - 1 spreads; q > 2, n = 2k: 2 spreads; the
  // recursion preserves the count (it is capped by the class count
  // q^{(n-k)(k-1)} >= the inner family size, so no truncation happens)
  const Gf gf2(2, 1);
  CHECK(build_family(gf2, 4, 2).spreads.size() == 3);
  CHECK(build_family(gf2, 6, 3).spreads.size() == 7);
  CHECK(build_family(gf2, 6, 2).spreads.size() == 3);
  const Gf gf4(2, 2);
  const SpreadFamily f4 = build_family(gf4, 4, 2);
  CHECK(f4.spreads.size() == 2);
  for (const auto& spread : f4.spreads)
    CHECK(spread.size() == pow_u64(4, 2) + 1);
}

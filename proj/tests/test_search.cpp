#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <vector>

#include "qspread/constructions.hpp"
#include "qspread/linalg.hpp"
#include "qspread/oracle.hpp"
#include "qspread/search.hpp"

using namespace qspread;

namespace {

// independent cross-check: plain subset search over the spread list in
// index order, no bounding, subspace-sharing conflicts only
struct BruteForce {
  std::vector<std::vector<std::uint32_t>> spreads;  // member subspace indices
  unsigned best = 0;

  bool compatible(const std::vector<bool>& used,
                  const std::vector<std::uint32_t>& s) const {
    for (std::uint32_t i : s)
      if (used[i]) return false;
    return true;
  }
  void run(size_t next, std::vector<bool>& used, unsigned count) {
    if (count > best) best = count;
    for (size_t s = next; s < spreads.size(); ++s) {
      if (!compatible(used, spreads[s])) continue;
      for (std::uint32_t i : spreads[s]) used[i] = true;
      run(s + 1, used, count + 1);
      for (std::uint32_t i : spreads[s]) used[i] = false;
    }
  }
};

// re-enumerate the spreads of G_q(n,k) the slow way for the cross-check
std::vector<std::vector<std::uint32_t>> all_spreads_brute(const Gf& gf,
                                                          unsigned n,
                                                          unsigned k) {
  const VecCtx ctx(gf, n);
  GrassmannianRange range(ctx, k);
  std::vector<Subspace> subs;
  for (std::uint64_t i = 0; i < range.size(); ++i) subs.push_back(range.at(i));

  std::vector<std::vector<Row>> vectors(subs.size());
  for (size_t i = 0; i < subs.size(); ++i) {
    for (Row v : enumerate_vectors(ctx, subs[i]))
      if (v != 0) vectors[i].push_back(v);
  }
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur;
  std::vector<std::uint16_t> covered(size_t(ctx.packed_bound()), 0);
  std::uint64_t remaining = 0;
  const Subspace full = head_axis(ctx, n);
  std::vector<Row> all;
  for_each_vector(ctx, full, [&](Row v) {
    if (v != 0) ++remaining, all.push_back(v);
  });

  // extend by any subspace covering the least uncovered vector
  auto rec = [&](auto&& self) -> void {
    if (remaining == 0) {
      out.push_back(cur);
      return;
    }
    Row least = 0;
    for (Row v : all)
      if (!covered[size_t(v)]) {
        least = v;
        break;
      }
    for (std::uint32_t i = 0; i < subs.size(); ++i) {
      bool has = false, clash = false;
      for (Row v : vectors[i]) {
        if (v == least) has = true;
        if (covered[size_t(v)]) clash = true;
      }
      if (!has || clash) continue;
      for (Row v : vectors[i]) covered[size_t(v)] = 1;
      remaining -= vectors[i].size();
      cur.push_back(i);
      self(self);
      cur.pop_back();
      remaining += vectors[i].size();
      for (Row v : vectors[i]) covered[size_t(v)] = 0;
    }
  };
  rec(rec);
  return out;
}

}  // namespace

TEST_CASE("every spread of G_2(4,2) is found and the optimum is 7") {
  const Gf gf(2, 1);
  const SearchResult res = exhaustive_max_family(gf, 4, 2);
  CHECK(res.exact);
  CHECK(res.spread_count == 56);
  CHECK(res.best == 7);
  REQUIRE(res.witness.size() == 7);

  // the witness is a genuine family of 7 pairwise disjoint spreads — a
  // full parallelism: 7 * 5 = 35 = |G_2(4,2)|
  const VecCtx ctx(gf, 4);
  CHECK(check_family(ctx, res.witness, 2).pass());

  // the constructive family (3 spreads) is strictly below the optimum
  const SpreadFamily fam = build_family_2k(gf, 2);
  CHECK(fam.spreads.size() == 3);
  CHECK(res.best > fam.spreads.size());
}

TEST_CASE("branch-and-bound matches the plain subset search") {
  const Gf gf(2, 1);
  const auto spreads = all_spreads_brute(gf, 4, 2);
  CHECK(spreads.size() == 56);
  BruteForce bf;
  bf.spreads = spreads;
  std::vector<bool> used(35, false);
  bf.run(0, used, 0);
  CHECK(bf.best == 7);
  CHECK(exhaustive_max_family(gf, 4, 2).best == bf.best);
}

TEST_CASE("tiny and degenerate instances") {
  const Gf gf(2, 1);
  SUBCASE("G_2(2,1): the unique point spread") {
    const SearchResult res = exhaustive_max_family(gf, 2, 1);
    CHECK(res.exact);
    CHECK(res.spread_count == 1);
    CHECK(res.best == 1);
    REQUIRE(res.witness.size() == 1);
    CHECK(res.witness[0].size() == 3);
  }
  SUBCASE("k = n: one spread, one member") {
    const SearchResult res = exhaustive_max_family(gf, 3, 3);
    CHECK(res.exact);
    CHECK(res.spread_count == 1);
    CHECK(res.best == 1);
  }
  SUBCASE("k does not divide n: exact zero") {
    const SearchResult res = exhaustive_max_family(gf, 3, 2);
    CHECK(res.exact);
    CHECK(res.spread_count == 0);
    CHECK(res.best == 0);
    CHECK(res.witness.empty());
  }
  SUBCASE("GF(3) points") {
    const Gf gf3(3, 1);
    const SearchResult res = exhaustive_max_family(gf3, 2, 1);
    CHECK(res.exact);
    CHECK(res.best == 1);
    CHECK(res.witness[0].size() == 4);
  }
  SUBCASE("parameter validation") {
    CHECK_THROWS_AS(exhaustive_max_family(gf, 0, 0), std::invalid_argument);
  }
}

TEST_CASE("budget exhaustion degrades to a labeled bound") {
  const Gf gf(2, 1);
  const SearchResult res = exhaustive_max_family(gf, 4, 2, 40);
  CHECK(!res.exact);
  CHECK(res.nodes <= 41);  // one node may tip over the limit
  CHECK(res.best <= 7);
  // whatever was found must still be a valid disjoint family
  if (!res.witness.empty()) {
    const VecCtx ctx(gf, 4);
    CHECK(check_family_disjoint(ctx, res.witness).pass());
    for (const auto& spread : res.witness)
      CHECK(check_spread(ctx, spread, 2).pass());
  }
}

TEST_CASE("parallel search agrees with the serial optimum") {
  const Gf gf(2, 1);
  const SearchResult serial = exhaustive_max_family(gf, 4, 2, 10'000'000, 1);
  const SearchResult par = exhaustive_max_family(gf, 4, 2, 10'000'000, 4);
  CHECK(serial.exact);
  CHECK(par.exact);
  CHECK(par.best == serial.best);
  CHECK(par.spread_count == serial.spread_count);
  const VecCtx ctx(gf, 4);
  CHECK(check_family(ctx, par.witness, 2).pass());
}

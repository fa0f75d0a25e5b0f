// Disjoint-spread constructions in G_q(2k, k) and their verified structure.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <set>
#include <string>
#include <vector>

#include "doctest.h"
#include "qspread/constructions.hpp"
#include "qspread/kernels.hpp"

using namespace qspread;

namespace {

Subspace from_strings(const VecCtx& ctx, std::initializer_list<const char*> gens) {
  std::vector<Row> rows;
  for (const char* g : gens) {
    std::vector<GfElem> c;
    for (const char* p = g; *p; ++p) c.push_back(GfElem(*p - '0'));
    rows.push_back(ctx.from_coords(c));
  }
  return span_of(ctx, rows);
}

std::set<std::string> member_set(const VecCtx& ctx, const Subspace& s) {
  std::set<std::string> out;
  for (Row v : enumerate_vectors(ctx, s)) out.insert(ctx.to_string(v));
  return out;
}

std::set<std::set<std::string>> spread_sets(const VecCtx& ctx,
                                            std::span<const Subspace> spread) {
  std::set<std::set<std::string>> out;
  for (const Subspace& m : spread) out.insert(member_set(ctx, m));
  return out;
}

// classification recomputed from an explicit intersection, ignoring pivots
SubspaceType classify_explicit(const VecCtx& ctx, const Subspace& y, unsigned k) {
  const unsigned d = intersect_dim(ctx, y, tail_axis(ctx, k));
  if (d == y.k) return SubspaceType::C;
  if (d == 0) return SubspaceType::A;
  if (d == 1) return SubspaceType::B;
  return SubspaceType::Other;
}

}  // namespace

TEST_CASE("classification relative to the tail axis") {
  Gf gf(2, 1);
  VecCtx ctx(gf, 4);
  CHECK(classify(head_axis(ctx, 2), 2) == SubspaceType::A);
  CHECK(classify(tail_axis(ctx, 2), 2) == SubspaceType::C);
  const Subspace b = from_strings(ctx, {"0001", "0110"});
  CHECK(classify(b, 2) == SubspaceType::B);
  CHECK_THROWS_AS(classify(b, 3), std::invalid_argument);

  // pivot-mask classification agrees with explicit intersections on all of
  // G_2(6,3), where every type including Other occurs
  VecCtx ctx6(gf, 6);
  GrassmannianRange range(ctx6, 3);
  bool saw_other = false;
  for (std::uint64_t i = 0; i < range.size(); ++i) {
    const Subspace y = range.at(i);
    const SubspaceType t = classify(y, 3);
    REQUIRE(t == classify_explicit(ctx6, y, 3));
    saw_other = saw_other || t == SubspaceType::Other;
  }
  CHECK(saw_other);
}

TEST_CASE("whole-Grassmannian type censuses") {
  Gf gf2(2, 1);
  CHECK(count_types(gf2, 2) == TypeCensus{16, 18, 1, 0});
  CHECK(count_types(gf2, 3) == TypeCensus{512, 784, 1, 98});

  Gf gf3(3, 1);
  const TypeCensus c3 = count_types(gf3, 2);
  CHECK(c3.c == 1);
  CHECK(c3.a == 81);  // q^(k*k) lifted matrices
  CHECK(c3.a + c3.b + c3.c + c3.other == gaussian_binomial(3, 4, 2));

  Gf gf4(2, 2);
  const TypeCensus c4 = count_types(gf4, 2);
  CHECK(c4.c == 1);
  CHECK(c4.a == 256);
  CHECK(c4.a + c4.b + c4.c + c4.other == gaussian_binomial(4, 4, 2));
}

TEST_CASE("require_spread accepts spreads and rejects near-spreads") {
  Gf gf(2, 1);
  VecCtx ctx(gf, 4);
  // the four diagonals-and-axes spread of G_2(4,2) built by hand
  std::vector<Subspace> spread = {
      from_strings(ctx, {"1000", "0100"}),  // head axis
      from_strings(ctx, {"0010", "0001"}),  // tail axis
      from_strings(ctx, {"1010", "0101"}),  // (x, x)
      from_strings(ctx, {"1001", "0111"}),  // (x, ax)
      from_strings(ctx, {"1011", "0110"}),  // (x, a^2 x)
  };
  CHECK_NOTHROW(require_spread(ctx, spread, 2, 1, "hand spread"));

  auto broken = spread;
  broken.pop_back();
  CHECK_THROWS_AS(require_spread(ctx, broken, 2, 1, "short"), std::logic_error);
  broken = spread;
  broken[1] = broken[0];
  CHECK_THROWS_AS(require_spread(ctx, broken, 2, 1, "dup"), std::logic_error);
  broken = spread;
  broken[2] = from_strings(ctx, {"1000", "0101"});  // meets the head axis
  CHECK_THROWS_AS(require_spread(ctx, broken, 2, 1, "overlap"), std::logic_error);
}

TEST_CASE("base spread: one parallel class plus the tail axis") {
  Gf gf(2, 1);
  const BaseSpread base = build_base_spread(gf, 2);
  VecCtx ctx(gf, 4);
  CHECK(base.members.size() == 5);
  CHECK(base.class_index == 1);
  // first class member is the pure-square polynomial x -> x^2
  CHECK(member_set(ctx, base.members[0]) ==
        std::set<std::string>{"0000", "1010", "0111", "1101"});
  CHECK(census_of(base.members, 2) == TypeCensus{4, 0, 1, 0});
  // exactly (q^k-1)/(q-1) class members touch the head axis, in dim 1
  std::uint64_t ones = 0;
  for (size_t i = 0; i + 1 < base.members.size(); ++i) {
    const unsigned d = intersect_dim(ctx, base.members[i], head_axis(ctx, 2));
    REQUIRE(d <= 1);
    ones += d;
  }
  CHECK(ones == 3);

  const BaseSpread base3 = build_base_spread(gf, 3);
  CHECK(base3.members.size() == 9);
  CHECK(census_of(base3.members, 3) == TypeCensus{8, 0, 1, 0});

  Gf gf3(3, 1);
  const BaseSpread baseq3 = build_base_spread(gf3, 2);
  CHECK(baseq3.members.size() == 10);
  CHECK(baseq3.class_index == 1);
  CHECK(census_of(baseq3.members, 2) == TypeCensus{9, 0, 1, 0});

  CHECK_THROWS_AS(build_base_spread(gf, 1), std::invalid_argument);
}

TEST_CASE("reversal swaps the halves and the census") {
  Gf gf(2, 1);
  VecCtx ctx(gf, 4);
  const BaseSpread base = build_base_spread(gf, 2);
  const auto rev = reverse_spread(ctx, base.members);
  CHECK(census_of(rev, 2) == TypeCensus{2, 3, 0, 0});
  CHECK_NOTHROW(require_spread(ctx, rev, 2, 1, "reversed"));
  // involution
  const auto back = reverse_spread(ctx, rev);
  CHECK(spread_sets(ctx, back) == spread_sets(ctx, base.members));
  // the tail axis reverses onto the head axis
  const Subspace axis = head_axis(ctx, 2);
  CHECK(std::count(rev.begin(), rev.end(), axis) == 1);
}

TEST_CASE("diagonal members are recognized with their exponent") {
  Gf gf(2, 1);
  VecCtx ctx(gf, 6);
  Tower tower(gf, 3);
  const Gf& big = tower.big();
  const VecCtx half(gf, 3);
  for (unsigned j = 0; j + 1 < big.q(); ++j) {
    std::vector<Row> rows;
    std::vector<GfElem> digits(3);
    for (unsigned i = 0; i < 3; ++i) {
      tower.decompose(big.mul(big.exp(j), tower.basis_power(i)), digits);
      rows.push_back(ctx.concat(half.unit(i), half.from_coords(digits), 3));
    }
    const Subspace diag = span_of(ctx, rows);
    REQUIRE(diagonal_exponent(ctx, tower, diag, 3) == j);
  }
  CHECK(diagonal_exponent(ctx, tower, head_axis(ctx, 3), 3) == std::nullopt);
  CHECK(diagonal_exponent(ctx, tower, tail_axis(ctx, 3), 3) == std::nullopt);

  VecCtx ctx4(gf, 4);
  Tower tower2(gf, 2);
  CHECK(diagonal_exponent(ctx4, tower2, from_strings(ctx4, {"0001", "0110"}),
                          2) == std::nullopt);
  CHECK(diagonal_exponent(ctx4, tower2, from_strings(ctx4, {"1011", "0110"}),
                          2) == 2);  // (x, a^2 x)
}

TEST_CASE("shear step: frozen 4-dimensional result") {
  Gf gf(2, 1);
  VecCtx ctx(gf, 4);
  Tower tower(gf, 2);
  const BaseSpread base = build_base_spread(gf, 2);
  const auto rev = reverse_spread(ctx, base.members);
  const ShearResult s0 = build_s0(ctx, tower, rev, 2);
  CHECK(!s0.used_square_shear);  // no diagonal arises from this pipeline
  CHECK(s0.members.size() == 5);
  CHECK(census_of(s0.members, 2) == TypeCensus{2, 3, 0, 0});

  const std::set<std::set<std::string>> frozen = {
      {"0000", "1010", "0101", "1111"},  // the diagonal (x, x)
      {"0000", "1000", "0110", "1110"},
      {"0000", "0010", "1001", "1011"},
      {"0000", "0001", "1100", "1101"},
      {"0000", "0011", "0100", "0111"},
  };
  CHECK(spread_sets(ctx, s0.members) == frozen);

  const DiagonalScan scan = scan_diagonals(ctx, tower, s0.members, 2);
  CHECK(scan.count == 1);
  CHECK(scan.j == 0);
}

TEST_CASE("shear step: square shear on a spread that contains a diagonal") {
  Gf gf(2, 1);
  VecCtx ctx(gf, 4);
  Tower tower(gf, 2);
  const std::vector<Subspace> fixture = {
      from_strings(ctx, {"1000", "0100"}),  // head axis
      from_strings(ctx, {"1010", "0101"}),  // diagonal (x, x)
      from_strings(ctx, {"0001", "0110"}),
      from_strings(ctx, {"0010", "1001"}),
      from_strings(ctx, {"0011", "1101"}),
  };
  CHECK_NOTHROW(require_spread(ctx, fixture, 2, 1, "fixture"));
  CHECK(census_of(fixture, 2) == TypeCensus{2, 3, 0, 0});
  const DiagonalScan pre = scan_diagonals(ctx, tower, fixture, 2);
  CHECK(pre.count == 1);
  CHECK(pre.j == 0);
  CHECK(pre.first == 1);

  const ShearResult s0 = build_s0(ctx, tower, fixture, 2);
  CHECK(s0.used_square_shear);
  // the head axis shears onto (x, x^2)
  const std::set<std::string> square_image = {"0000", "1010", "0111", "1101"};
  CHECK(spread_sets(ctx, s0.members).count(square_image) == 1);
  CHECK(scan_diagonals(ctx, tower, s0.members, 2).count == 0);
}

TEST_CASE("tail scaling maps spreads to disjoint spreads") {
  Gf gf(2, 1);
  VecCtx ctx(gf, 4);
  Tower tower(gf, 2);
  const BaseSpread base = build_base_spread(gf, 2);
  const auto rev = reverse_spread(ctx, base.members);
  const ShearResult s0 = build_s0(ctx, tower, rev, 2);
  const auto s1 = scale_spread(ctx, tower, s0.members, tower.big().exp(1), 2);
  CHECK(census_of(s1, 2) == census_of(s0.members, 2));
  // the diagonal (x, x) scales onto (x, ax)
  const DiagonalScan scan = scan_diagonals(ctx, tower, s1, 2);
  CHECK(scan.count == 1);
  CHECK(scan.j == 1);
  // member-disjoint from s0
  const auto a = spread_sets(ctx, s0.members);
  const auto b = spread_sets(ctx, s1);
  for (const auto& m : b) CHECK(a.count(m) == 0);
  CHECK_THROWS_AS(scale_spread(ctx, tower, s0.members, 0, 2),
                  std::invalid_argument);
}

TEST_CASE("family of 2^k - 1 disjoint spreads for q = 2") {
  Gf gf(2, 1);
  for (unsigned k : {2u, 3u}) {
    const SpreadFamily fam = build_family_2k(gf, k);
    CHECK(fam.q == 2);
    CHECK(fam.n == 2 * k);
    CHECK(fam.spreads.size() == (std::uint64_t(1) << k) - 1);
    VecCtx ctx(gf, 2 * k);
    std::set<std::set<std::string>> all;
    for (const auto& s : fam.spreads) {
      CHECK(s.size() == (std::uint64_t(1) << k) + 1);
      CHECK(census_of(s, k) ==
            TypeCensus{2, (std::uint64_t(1) << k) - 1, 0, 0});
      for (const auto& m : spread_sets(ctx, s)) all.insert(m);
    }
    // pairwise disjoint: every member distinct across the family
    CHECK(all.size() == fam.spreads.size() * fam.spreads[0].size());
  }
}

TEST_CASE("pair of disjoint spreads for q > 2") {
  Gf gf3(3, 1);
  const SpreadFamily f3 = build_family_2k(gf3, 2);
  CHECK(f3.spreads.size() == 2);
  CHECK(f3.spreads[0].size() == 10);
  CHECK(f3.spreads[1].size() == 10);
  CHECK(census_of(f3.spreads[0], 2) == TypeCensus{6, 4, 0, 0});
  CHECK(census_of(f3.spreads[1], 2) == TypeCensus{9, 0, 1, 0});
  VecCtx ctx3(gf3, 4);
  const auto a = spread_sets(ctx3, f3.spreads[0]);
  for (const auto& m : spread_sets(ctx3, f3.spreads[1])) CHECK(a.count(m) == 0);

  Gf gf4(2, 2);
  const SpreadFamily f4 = build_family_2k(gf4, 2);
  CHECK(f4.spreads.size() == 2);
  CHECK(f4.spreads[0].size() == 17);
  CHECK(f4.spreads[1].size() == 17);
  CHECK(census_of(f4.spreads[0], 2) == TypeCensus{12, 5, 0, 0});
  CHECK(census_of(f4.spreads[1], 2) == TypeCensus{16, 0, 1, 0});
}

TEST_CASE("k = 1 families are the unique line spread") {
  Gf gf2(2, 1);
  const SpreadFamily f2 = build_family_2k(gf2, 1);
  CHECK(f2.spreads.size() == 1);
  CHECK(f2.spreads[0].size() == 3);

  Gf gf3(3, 1);
  const SpreadFamily f3 = build_family_2k(gf3, 1);
  CHECK(f3.spreads.size() == 1);
  CHECK(f3.spreads[0].size() == 4);

  CHECK_THROWS_AS(build_family_2k(gf2, 0), std::invalid_argument);
}

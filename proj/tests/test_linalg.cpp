#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "qspread/linalg.hpp"

#include <algorithm>
#include <array>
#include <random>
#include <set>

using namespace qspread;

namespace {

Row rowbits(const VecCtx& ctx, std::initializer_list<unsigned> digits) {
  std::vector<GfElem> c(digits.begin(), digits.end());
  return ctx.from_coords(c);
}

Subspace span(const VecCtx& ctx, std::initializer_list<Row> gens) {
  std::vector<Row> g(gens.begin(), gens.end());
  return span_of(ctx, g);
}

}  // namespace

TEST_CASE("packed vector round-trip and arithmetic") {
  for (auto [p, e] : {std::pair{2u, 1u}, {3u, 1u}, {2u, 2u}, {5u, 1u}}) {
    Gf gf(p, e);
    VecCtx ctx(gf, 5);
    std::mt19937 rng(7);
    for (int t = 0; t < 200; ++t) {
      std::vector<GfElem> c(5);
      for (auto& x : c) x = GfElem(rng() % gf.q());
      Row v = ctx.from_coords(c);
      CHECK(ctx.coords(v) == c);
      for (unsigned i = 0; i < 5; ++i) CHECK(ctx.get(v, i) == c[i]);
      Row w = ctx.set(v, 2, 1);
      CHECK(ctx.get(w, 2) == 1);
      // add/scale agree with the field, coordinatewise
      std::vector<GfElem> d(5);
      for (auto& x : d) x = GfElem(rng() % gf.q());
      Row u = ctx.add(v, ctx.from_coords(d));
      for (unsigned i = 0; i < 5; ++i)
        CHECK(ctx.get(u, i) == gf.add(c[i], d[i]));
      GfElem s = GfElem(rng() % gf.q());
      Row sv = ctx.scale(v, s);
      for (unsigned i = 0; i < 5; ++i)
        CHECK(ctx.get(sv, i) == gf.mul(c[i], s));
    }
  }
}

TEST_CASE("rref canonicalises: identity, zero, and known rank") {
  Gf gf(2, 1);
  VecCtx ctx(gf, 3);
  std::vector<Row> id = {rowbits(ctx, {1, 0, 0}), rowbits(ctx, {0, 1, 0}),
                         rowbits(ctx, {0, 0, 1})};
  auto idc = id;
  auto r = rref(ctx, idc);
  CHECK(r.rank == 3);
  CHECK(idc == id);

  std::vector<Row> zero = {0, 0};
  CHECK(rref(ctx, zero).rank == 0);
  CHECK(zero.empty());

  // rows 110, 011, 001 have rank 3
  std::vector<Row> a = {rowbits(ctx, {1, 1, 0}), rowbits(ctx, {0, 1, 1}),
                        rowbits(ctx, {0, 0, 1})};
  CHECK(rref(ctx, a).rank == 3);
}

TEST_CASE("canonical form is basis independent") {
  for (auto [p, n, k] : {std::tuple{2u, 6u, 3u}, {3u, 4u, 2u}}) {
    Gf gf(p, 1);
    VecCtx ctx(gf, n);
    GrassmannianRange g(ctx, k);
    std::mt19937 rng(11);
    for (int t = 0; t < 50; ++t) {
      Subspace s = g.at(rng() % g.size());
      // random invertible recombination of the basis
      std::vector<Row> gens = s.rows;
      for (int step = 0; step < 20; ++step) {
        unsigned i = rng() % k, j = rng() % k;
        if (i == j) {
          GfElem c = GfElem(1 + rng() % (gf.q() - 1));
          gens[i] = ctx.scale(gens[i], c);
        } else {
          gens[i] = ctx.add_scaled(gens[i], gens[j], GfElem(rng() % gf.q()));
        }
      }
      std::shuffle(gens.begin(), gens.end(), rng);
      CHECK(span_of(ctx, gens) == s);
    }
  }
}

TEST_CASE("gaussian binomials match known values") {
  CHECK(gaussian_binomial(2, 4, 2) == 35);
  CHECK(gaussian_binomial(2, 6, 3) == 1395);
  CHECK(gaussian_binomial(2, 6, 2) == 651);
  CHECK(gaussian_binomial(3, 4, 2) == 130);
  CHECK(gaussian_binomial(2, 2, 1) == 3);
  CHECK(gaussian_binomial(5, 4, 4) == 1);
  CHECK(gaussian_binomial(2, 3, 4) == 0);
  CHECK_THROWS_AS(gaussian_binomial(13, 40, 20), std::overflow_error);
}

TEST_CASE("grassmannian enumeration: size, uniqueness, validity") {
  for (auto [p, n, k] : {std::tuple{2u, 4u, 2u}, {2u, 6u, 3u}, {3u, 4u, 2u},
                         {2u, 5u, 1u}, {2u, 4u, 4u}, {2u, 4u, 0u}}) {
    Gf gf(p, 1);
    VecCtx ctx(gf, n);
    GrassmannianRange g(ctx, k);
    CHECK(g.size() == gaussian_binomial(p, n, k));
    std::set<std::vector<Row>> seen;
    for (std::uint64_t i = 0; i < g.size(); ++i) {
      Subspace s = g.at(i);
      CHECK(s.k == k);
      // already canonical: re-reduction changes nothing
      CHECK(span_of(ctx, s.rows) == s);
      CHECK(seen.insert(s.rows).second);
    }
  }
}

TEST_CASE("containment and vector enumeration") {
  Gf gf(2, 1);
  VecCtx ctx(gf, 6);
  GrassmannianRange g(ctx, 3);
  std::mt19937 rng(3);
  for (int t = 0; t < 30; ++t) {
    Subspace s = g.at(rng() % g.size());
    auto vecs = enumerate_vectors(ctx, s);
    CHECK(vecs.size() == 8);
    CHECK(vecs[0] == 0);
    std::set<Row> vs(vecs.begin(), vecs.end());
    CHECK(vs.size() == 8);  // no repeats
    for (Row v : vecs) CHECK(contains(ctx, s, v));
    // closure under addition
    for (Row v : vecs)
      for (Row w : vecs) CHECK(vs.count(ctx.add(v, w)));
    // non-members are rejected
    unsigned outside = 0;
    for (Row v = 0; v < ctx.packed_bound(); ++v)
      if (!vs.count(v)) {
        CHECK(!contains(ctx, s, v));
        ++outside;
      }
    CHECK(outside == 64 - 8);
  }
}

TEST_CASE("vector enumeration over non-prime fields walks all scalars") {
  // q = p^e has scalars that are not sums of 1; the odometer must scale
  for (auto [p, e, n, k] : {std::array<unsigned, 4>{2, 2, 4, 2},
                            std::array<unsigned, 4>{3, 2, 2, 1},
                            std::array<unsigned, 4>{2, 3, 2, 2}}) {
    Gf gf(p, e);
    VecCtx ctx(gf, n);
    GrassmannianRange g(ctx, k);
    std::uint64_t want = 1;
    for (unsigned i = 0; i < k; ++i) want *= gf.q();
    for (std::uint64_t idx = 0; idx < g.size(); idx += 5) {
      const Subspace s = g.at(idx);
      const auto vecs = enumerate_vectors(ctx, s);
      const std::set<Row> vs(vecs.begin(), vecs.end());
      REQUIRE(vs.size() == want);  // distinct, so all scalar combinations
      for (Row v : vecs) REQUIRE(contains(ctx, s, v));
      // closed under every scalar
      for (GfElem c = 0; c < gf.q(); ++c)
        REQUIRE(vs.count(ctx.scale(vecs[1], c)) == 1);
    }
  }
}

TEST_CASE("intersection, sum, and the modular law") {
  for (auto [p, n, k] : {std::tuple{2u, 6u, 3u}, {3u, 4u, 2u}}) {
    Gf gf(p, 1);
    VecCtx ctx(gf, n);
    GrassmannianRange g(ctx, k);
    std::mt19937 rng(17);
    for (int t = 0; t < 100; ++t) {
      Subspace a = g.at(rng() % g.size());
      Subspace b = g.at(rng() % g.size());
      Subspace cap = intersect(ctx, a, b);
      Subspace cup = subspace_sum(ctx, a, b);
      CHECK(cap.k == intersect_dim(ctx, a, b));
      CHECK(a.k + b.k == cap.k + cup.k);  // modular law on dimensions
      for (Row v : enumerate_vectors(ctx, cap)) {
        CHECK(contains(ctx, a, v));
        CHECK(contains(ctx, b, v));
      }
      // intersection is the largest common subspace
      for (Row v : enumerate_vectors(ctx, a))
        if (contains(ctx, b, v)) CHECK(contains(ctx, cap, v));
    }
  }
}

TEST_CASE("subspace distance: metric axioms on G_2(4,2)") {
  Gf gf(2, 1);
  VecCtx ctx(gf, 4);
  GrassmannianRange g(ctx, 2);
  const auto N = g.size();
  REQUIRE(N == 35);
  std::vector<Subspace> all;
  for (std::uint64_t i = 0; i < N; ++i) all.push_back(g.at(i));
  for (std::uint64_t i = 0; i < N; ++i)
    for (std::uint64_t j = 0; j < N; ++j) {
      unsigned d = subspace_distance(ctx, all[i], all[j]);
      CHECK(d == subspace_distance(ctx, all[j], all[i]));
      CHECK((d == 0) == (i == j));
      CHECK(d % 2 == 0);  // equal dimensions force even distance
      CHECK(d <= 4);
    }
  // triangle inequality, all 35^3 triples
  for (std::uint64_t i = 0; i < N; ++i)
    for (std::uint64_t j = 0; j < N; ++j) {
      unsigned dij = subspace_distance(ctx, all[i], all[j]);
      for (std::uint64_t l = 0; l < N; ++l)
        CHECK(dij <= subspace_distance(ctx, all[i], all[l]) +
                         subspace_distance(ctx, all[l], all[j]));
    }
}

TEST_CASE("halves: split, concat, swap") {
  Gf gf(3, 1);
  VecCtx ctx(gf, 6);
  Row v = rowbits(ctx, {1, 2, 0, 2, 1, 0});
  CHECK(ctx.to_string(v) == "120210");
  Row h = ctx.head(v, 3), t = ctx.tail(v, 3);
  CHECK(ctx.concat(h, t, 3) == v);
  Row s = ctx.swap_halves(v, 3);
  CHECK(ctx.to_string(s) == "210120");
  CHECK(ctx.swap_halves(s, 3) == v);
}

TEST_CASE("group labels: normalized head projections") {
  Gf gf2(2, 1);
  VecCtx c2(gf2, 6);
  CHECK(c2.group_of(rowbits(c2, {0, 0, 0, 1, 0, 1}), 3) == 0);
  CHECK(c2.group_of(rowbits(c2, {1, 1, 0, 1, 0, 1}), 3) ==
        rowbits(VecCtx(gf2, 3), {1, 1, 0}));

  Gf gf3(3, 1);
  VecCtx c3(gf3, 4);
  // head (2,0) normalizes to (1,0)
  Row v = rowbits(c3, {2, 0, 1, 2});
  VecCtx h3(gf3, 2);
  CHECK(c3.group_of(v, 2) == rowbits(h3, {1, 0}));
  // scalar multiples share a label
  CHECK(c3.group_of(c3.scale(v, 2), 2) == c3.group_of(v, 2));
}

TEST_CASE("axes and reverse") {
  Gf gf(2, 1);
  VecCtx ctx(gf, 6);
  Subspace u = tail_axis(ctx, 3);
  CHECK(u.k == 3);
  for (Row v : enumerate_vectors(ctx, u)) CHECK(ctx.head(v, 3) == 0);
  Subspace h = head_axis(ctx, 3);
  CHECK(reverse_halves(ctx, u) == h);
  CHECK(reverse_halves(ctx, h) == u);
  // reverse is an involution on random subspaces
  GrassmannianRange g(ctx, 3);
  std::mt19937 rng(5);
  for (int t = 0; t < 40; ++t) {
    Subspace s = g.at(rng() % g.size());
    Subspace r = reverse_halves(ctx, s);
    CHECK(reverse_halves(ctx, r) == s);
    // vector sets correspond under the swap
    auto sv = enumerate_vectors(ctx, s);
    std::set<Row> rv;
    for (Row v : enumerate_vectors(ctx, r)) rv.insert(v);
    for (Row v : sv) CHECK(rv.count(ctx.swap_halves(v, 3)));
  }
}

TEST_CASE("scale_half: identity, diagonal image, group invariance") {
  Gf gf(2, 1);
  VecCtx ctx(gf, 4);
  Tower tw(gf, 2);
  const GfElem alpha = tw.big().alpha();

  // diagonal {(x,x)}
  Subspace diag = span(ctx, {rowbits(ctx, {1, 0, 1, 0}), rowbits(ctx, {0, 1, 0, 1})});
  CHECK(scale_half(ctx, diag, tw, 1, Half::tail, 2) == diag);

  Subspace im = scale_half(ctx, diag, tw, alpha, Half::tail, 2);
  // image is {(x, alpha*x)}: check vector-wise through the tower
  for (Row v : enumerate_vectors(ctx, diag)) {
    std::vector<GfElem> d = {ctx.get(v, 2), ctx.get(v, 3)};
    GfElem y = tw.big().mul(tw.compose(d), alpha);
    tw.decompose(y, d);
    Row w = ctx.concat(ctx.head(v, 2), Row(d[0]) | Row(d[1]) << 1, 2);
    CHECK(contains(ctx, im, w));
  }

  // scaling the tail fixes the tail axis and preserves dimension
  Subspace u = tail_axis(ctx, 2);
  CHECK(scale_half(ctx, u, tw, alpha, Half::tail, 2) == u);

  CHECK_THROWS_AS(scale_half(ctx, diag, tw, 0, Half::tail, 2),
                  std::invalid_argument);
}

TEST_CASE("lex order is total and strict on G_2(4,2)") {
  Gf gf(2, 1);
  VecCtx ctx(gf, 4);
  GrassmannianRange g(ctx, 2);
  std::vector<Subspace> all;
  for (std::uint64_t i = 0; i < g.size(); ++i) all.push_back(g.at(i));
  std::sort(all.begin(), all.end(),
            [&](const Subspace& a, const Subspace& b) { return lex_less(ctx, a, b); });
  for (size_t i = 0; i + 1 < all.size(); ++i) {
    CHECK(lex_less(ctx, all[i], all[i + 1]));
    CHECK(!lex_less(ctx, all[i + 1], all[i]));
    CHECK(!(all[i] == all[i + 1]));
  }
}

TEST_CASE("context guards") {
  Gf gf9(3, 2);
  CHECK_THROWS_AS(VecCtx(gf9, 16), std::invalid_argument);  // 16*4 bits > 63
  VecCtx ok(gf9, 8);
  CHECK(ok.bits() == 4);
}

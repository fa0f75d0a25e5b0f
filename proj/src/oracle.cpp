#include "qspread/oracle.hpp"

#include <chrono>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

#include "qspread/kernels.hpp"

namespace qspread {

namespace {

using Clock = std::chrono::steady_clock;

double elapsed(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::uint64_t pow_u64(std::uint64_t b, unsigned e) {
  std::uint64_t r = 1;
  while (e--) r *= b;
  return r;
}

std::string matrix_string(const VecCtx& ctx, const Subspace& s) {
  std::string out;
  for (Row r : s.rows) {
    if (!out.empty()) out += '/';
    out += ctx.to_string(r);
  }
  return out.empty() ? "(empty)" : out;
}

// runs body(result); body fills pass/witness; name and timing added here
template <class F>
CheckResult timed_check(const std::string& name, F&& body) {
  CheckResult r;
  r.name = name;
  const auto t0 = Clock::now();
  body(r);
  r.seconds = elapsed(t0);
  return r;
}

bool is_canonical(const VecCtx& ctx, const Subspace& s, unsigned k) {
  if (s.n != ctx.n() || s.k != k || s.rows.size() != k) return false;
  std::vector<Row> rows = s.rows;
  const RrefResult rr = rref(ctx, rows);
  return rr.rank == k && rr.pivots == s.pivots && rows == s.rows;
}

}  // namespace

bool Report::pass() const {
  for (const CheckResult& c : checks)
    if (!c.pass) return false;
  return true;
}

const CheckResult* Report::first_failure() const {
  for (const CheckResult& c : checks)
    if (!c.pass) return &c;
  return nullptr;
}

void Report::merge(Report other) {
  checks.insert(checks.end(), std::make_move_iterator(other.checks.begin()),
                std::make_move_iterator(other.checks.end()));
}

std::string Report::summary() const {
  if (const CheckResult* f = first_failure())
    return "FAIL " + f->name + ": " + f->witness;
  double total = 0.0;
  for (const CheckResult& c : checks) total += c.seconds;
  return "PASS (" + std::to_string(checks.size()) + " checks, " +
         std::to_string(total) + " s)";
}

Report check_spread(const VecCtx& ctx, std::span<const Subspace> members,
                    unsigned k, int threads) {
  Report rep;
  const std::uint64_t q = ctx.gf().q();
  const unsigned n = ctx.n();

  rep.checks.push_back(timed_check("spread-size", [&](CheckResult& r) {
    const std::uint64_t want = (pow_u64(q, n) - 1) / (pow_u64(q, k) - 1);
    if (members.size() != want) {
      r.pass = false;
      r.witness = std::to_string(members.size()) + " members, expected " +
                  std::to_string(want);
    }
  }));

  rep.checks.push_back(timed_check("member-shape", [&](CheckResult& r) {
    for (size_t i = 0; i < members.size(); ++i)
      if (!is_canonical(ctx, members[i], k)) {
        r.pass = false;
        r.witness = "member " + std::to_string(i) + " = " +
                    matrix_string(ctx, members[i]) +
                    " is not a canonical k-dimensional subspace";
        return;
      }
  }));
  if (!rep.pass()) return rep;  // later checks assume well-formed members

  rep.checks.push_back(
      timed_check("pairwise-trivial-intersection", [&](CheckResult& r) {
        for (size_t i = 0; i + 1 < members.size(); ++i)
          for (size_t j = i + 1; j < members.size(); ++j) {
            const unsigned d = intersect_dim(ctx, members[i], members[j]);
            if (d != 0) {
              r.pass = false;
              r.witness = "members " + std::to_string(i) + " and " +
                          std::to_string(j) + " (" +
                          matrix_string(ctx, members[i]) + ", " +
                          matrix_string(ctx, members[j]) +
                          ") intersect in dimension " + std::to_string(d);
              return;
            }
          }
      }));

  rep.checks.push_back(timed_check("exact-cover", [&](CheckResult& r) {
    const auto counts = cover_counts(ctx, members, threads);
    const Subspace full = head_axis(ctx, n);
    for_each_vector(ctx, full, [&](Row v) {
      if (v == 0 || !r.pass) return;
      if (counts[v] != 1) {
        r.pass = false;
        r.witness = "vector " + ctx.to_string(v) + " covered " +
                    std::to_string(counts[v]) + " times";
      }
    });
  }));
  return rep;
}

Report check_family_disjoint(const VecCtx& ctx,
                             std::span<const std::vector<Subspace>> spreads) {
  Report rep;
  rep.checks.push_back(timed_check("family-disjoint", [&](CheckResult& r) {
    std::unordered_map<Subspace, std::pair<size_t, size_t>, SubspaceHash> seen;
    for (size_t i = 0; i < spreads.size(); ++i)
      for (size_t j = 0; j < spreads[i].size(); ++j) {
        const auto [it, fresh] =
            seen.emplace(spreads[i][j], std::make_pair(i, j));
        if (!fresh) {
          r.pass = false;
          r.witness = "subspace " + matrix_string(ctx, spreads[i][j]) +
                      " appears in spread " + std::to_string(it->second.first) +
                      " (member " + std::to_string(it->second.second) +
                      ") and spread " + std::to_string(i) + " (member " +
                      std::to_string(j) + ")";
          return;
        }
      }
  }));
  return rep;
}

Report check_family(const VecCtx& ctx,
                    std::span<const std::vector<Subspace>> spreads, unsigned k,
                    int threads) {
  Report rep;
  for (size_t i = 0; i < spreads.size(); ++i) {
    Report one = check_spread(ctx, spreads[i], k, threads);
    for (CheckResult& c : one.checks)
      c.name = "spread[" + std::to_string(i) + "]." + c.name;
    rep.merge(std::move(one));
  }
  rep.merge(check_family_disjoint(ctx, spreads));
  return rep;
}

OracleCensus census_by_intersection(const VecCtx& ctx,
                                    std::span<const Subspace> members,
                                    unsigned k) {
  if (ctx.n() != 2 * k)
    throw std::invalid_argument("census_by_intersection: need n = 2k");
  const Subspace u = tail_axis(ctx, k);
  OracleCensus c;
  for (const Subspace& m : members) {
    const unsigned d = intersect_dim(ctx, m, u);
    if (d == 0)
      ++c.a;
    else if (d == m.k && m.k == k)
      ++c.c;
    else if (d == 1)
      ++c.b;
    else
      ++c.other;
  }
  return c;
}

Report check_type_b_structure(const VecCtx& ctx,
                              std::span<const Subspace> members, unsigned k) {
  if (ctx.gf().q() != 2)
    throw std::invalid_argument("check_type_b_structure: GF(2) only");
  if (ctx.n() != 2 * k)
    throw std::invalid_argument("check_type_b_structure: need n = 2k");
  Report rep;
  rep.checks.push_back(timed_check("type-b-structure", [&](CheckResult& r) {
    const Subspace u = tail_axis(ctx, k);
    const VecCtx halfctx(ctx.gf(), k);
    for (size_t i = 0; i < members.size(); ++i) {
      const Subspace meet = intersect(ctx, members[i], u);
      if (meet.k != 1) continue;  // not a one-dimensional-meet member
      const Row z = ctx.tail(meet.rows[0], k);  // (0, z) spans the meet
      const auto fail = [&](const std::string& what) {
        r.pass = false;
        r.witness = "member " + std::to_string(i) + " (" +
                    matrix_string(ctx, members[i]) + "): " + what;
      };
      // bucket the member's vectors by head value
      std::unordered_map<Row, std::vector<Row>> tails_by_head;
      for (Row v : enumerate_vectors(ctx, members[i]))
        tails_by_head[ctx.head(v, k)].push_back(ctx.tail(v, k));
      std::vector<Row> heads;
      for (const auto& [h, tails] : tails_by_head) {
        if (tails.size() != 2)
          return fail("head " + std::to_string(h) + " attained " +
                      std::to_string(tails.size()) + " times, expected 2");
        if (h == 0) continue;
        heads.push_back(h);
        if (halfctx.add(tails[0], tails[1]) != z)
          return fail("tails over a nonzero head do not differ by the "
                      "tail-axis vector");
      }
      if (rank_of(halfctx, heads) != k - 1 ||
          heads.size() != (std::uint64_t(1) << (k - 1)) - 1)
        return fail("nonzero heads do not form a (k-1)-dimensional subspace");
    }
  }));
  return rep;
}

Report check_type_b_hyperplanes(const VecCtx& ctx,
                                std::span<const Subspace> members, unsigned k) {
  if (ctx.n() != 2 * k)
    throw std::invalid_argument("check_type_b_hyperplanes: need n = 2k");
  Report rep;
  rep.checks.push_back(timed_check("type-b-hyperplanes", [&](CheckResult& r) {
    const Subspace u = tail_axis(ctx, k);
    const VecCtx half(ctx.gf(), k);
    std::unordered_map<Subspace, size_t, SubspaceHash> seen;
    for (size_t i = 0; i < members.size(); ++i) {
      if (intersect_dim(ctx, members[i], u) != 1) continue;
      std::vector<Row> heads;
      for (Row v : enumerate_vectors(ctx, members[i]))
        heads.push_back(ctx.head(v, k));
      const Subspace proj = span_of(half, heads);
      if (proj.k != k - 1) {
        r.pass = false;
        r.witness = "member " + std::to_string(i) +
                    " projects to a head subspace of dimension " +
                    std::to_string(proj.k) + ", expected " +
                    std::to_string(k - 1);
        return;
      }
      const auto [it, fresh] = seen.emplace(proj, i);
      if (!fresh) {
        r.pass = false;
        r.witness = "members " + std::to_string(it->second) + " and " +
                    std::to_string(i) + " share the head hyperplane " +
                    matrix_string(half, proj);
        return;
      }
    }
  }));
  return rep;
}

Report check_design(const VecCtx& ctx, const TransversalDesign& d,
                    int threads) {
  Report rep;
  const unsigned k = d.k, m = d.m, t = d.t;
  const unsigned n = k + m;
  const std::uint64_t q = ctx.gf().q();
  if (ctx.n() != n)
    throw std::invalid_argument("check_design: context does not match k + m");
  const VecCtx half(ctx.gf(), k);

  rep.checks.push_back(timed_check("group-structure", [&](CheckResult& r) {
    std::unordered_set<Row> want;
    const Subspace all = head_axis(half, k);
    for_each_vector(half, all, [&](Row v) {
      if (v != 0 && half.normalize_point(v) == v) want.insert(v);
    });
    if (d.group_reps.size() != want.size() ||
        std::unordered_set<Row>(d.group_reps.begin(), d.group_reps.end()) !=
            want) {
      r.pass = false;
      r.witness = std::to_string(d.group_reps.size()) +
                  " group representatives, expected the " +
                  std::to_string(want.size()) + " normalized nonzero heads";
    }
  }));

  rep.checks.push_back(timed_check("block-shape", [&](CheckResult& r) {
    if (d.blocks.size() != pow_u64(q, m * t) || d.class_size != pow_u64(q, m) ||
        d.class_count * d.class_size != d.blocks.size()) {
      r.pass = false;
      r.witness = std::to_string(d.blocks.size()) + " blocks in " +
                  std::to_string(d.class_count) + " classes of " +
                  std::to_string(d.class_size) + ", expected " +
                  std::to_string(pow_u64(q, m * t)) + " in classes of " +
                  std::to_string(pow_u64(q, m));
      return;
    }
    for (size_t i = 0; i < d.blocks.size(); ++i)
      if (!is_canonical(ctx, d.blocks[i], k)) {
        r.pass = false;
        r.witness = "block " + std::to_string(i) +
                    " is not a canonical k-dimensional subspace";
        return;
      }
  }));
  if (!rep.pass()) return rep;

  rep.checks.push_back(timed_check("axiom-tail-trivial", [&](CheckResult& r) {
    const Subspace u = tail_axis(ctx, k);
    for (size_t i = 0; i < d.blocks.size(); ++i) {
      const unsigned dim = intersect_dim(ctx, d.blocks[i], u);
      if (dim != 0) {
        r.pass = false;
        r.witness = "block " + std::to_string(i) + " (" +
                    matrix_string(ctx, d.blocks[i]) +
                    ") meets the tail axis in dimension " +
                    std::to_string(dim);
        return;
      }
    }
  }));

  rep.checks.push_back(timed_check("axiom-groups-once", [&](CheckResult& r) {
    std::unordered_map<Row, unsigned> by_head;
    for (size_t i = 0; i < d.blocks.size(); ++i) {
      by_head.clear();
      for (Row v : enumerate_vectors(ctx, d.blocks[i]))
        ++by_head[ctx.head(v, k)];
      for (Row rep_head : d.group_reps) {
        const auto it = by_head.find(rep_head);
        const unsigned got = it == by_head.end() ? 0 : it->second;
        if (got != 1) {
          r.pass = false;
          r.witness = "block " + std::to_string(i) + " meets group " +
                      half.to_string(rep_head) + " in " + std::to_string(got) +
                      " points";
          return;
        }
      }
    }
  }));

  rep.checks.push_back(
      timed_check("axiom-transversal-once", [&](CheckResult& r) {
        // block-side route: collect every t-dimensional transversal
        // subspace of every block and count multiplicities
        std::unordered_map<Subspace, size_t, SubspaceHash> found;
        GrassmannianRange shapes(half, t);
        std::vector<Row> rows(t);
        for (size_t bi = 0; bi < d.blocks.size(); ++bi) {
          const Subspace& b = d.blocks[bi];
          for (std::uint64_t si = 0; si < shapes.size(); ++si) {
            const Subspace coeff = shapes.at(si);
            for (unsigned i = 0; i < t; ++i) {
              Row acc = 0;
              for (unsigned j = 0; j < k; ++j)
                acc = ctx.add_scaled(acc, b.rows[j], half.get(coeff.rows[i], j));
              rows[i] = acc;
            }
            const Subspace y = span_of(ctx, rows);
            if (y.pivots >> k) continue;  // not transversal
            const auto [it, fresh] = found.emplace(y, bi);
            if (!fresh && it->second != bi) {
              // same subspace from two different blocks
              r.pass = false;
              r.witness = "transversal subspace " + matrix_string(ctx, y) +
                          " lies in blocks " + std::to_string(it->second) +
                          " and " + std::to_string(bi);
              return;
            }
          }
        }
        const std::uint64_t want = transversal_count(q, k, m, t);
        if (found.size() != want) {
          r.pass = false;
          r.witness = std::to_string(found.size()) +
                      " transversal subspaces lie in a block, expected all " +
                      std::to_string(want);
        }
      }));

  rep.checks.push_back(timed_check("resolvability", [&](CheckResult& r) {
    const Subspace full = head_axis(ctx, n);
    for (std::uint64_t c = 0; c < d.class_count && r.pass; ++c) {
      const std::span<const Subspace> cls(d.blocks.data() + c * d.class_size,
                                          size_t(d.class_size));
      const auto counts = cover_counts(ctx, cls, threads);
      for_each_vector(ctx, full, [&](Row v) {
        if (v == 0 || !r.pass) return;
        const std::uint16_t want = ctx.head(v, k) != 0 ? 1 : 0;
        if (counts[v] != want) {
          r.pass = false;
          r.witness = "class " + std::to_string(c) + " covers vector " +
                      ctx.to_string(v) + " " + std::to_string(counts[v]) +
                      " times, expected " + std::to_string(want);
        }
      });
    }
  }));
  return rep;
}

Report check_transversal_parallelism(
    const VecCtx& ctx, std::span<const std::vector<Subspace>> classes,
    unsigned k, int threads) {
  Report rep;
  const unsigned n = ctx.n();
  const unsigned m = n - k;
  const std::uint64_t q = ctx.gf().q();

  rep.checks.push_back(timed_check("class-shape", [&](CheckResult& r) {
    const std::uint64_t want_classes = pow_u64(q, std::uint64_t(m) * (k - 1));
    const std::uint64_t want_size = pow_u64(q, m);
    if (classes.size() != want_classes) {
      r.pass = false;
      r.witness = std::to_string(classes.size()) + " classes, expected " +
                  std::to_string(want_classes);
      return;
    }
    for (size_t i = 0; i < classes.size(); ++i)
      if (classes[i].size() != want_size) {
        r.pass = false;
        r.witness = "class " + std::to_string(i) + " has " +
                    std::to_string(classes[i].size()) +
                    " members, expected " + std::to_string(want_size);
        return;
      }
  }));
  if (!rep.pass()) return rep;

  rep.checks.push_back(timed_check("members-transversal", [&](CheckResult& r) {
    const Subspace u = tail_axis(ctx, k);
    for (size_t i = 0; i < classes.size(); ++i)
      for (size_t j = 0; j < classes[i].size(); ++j) {
        const Subspace& s = classes[i][j];
        if (!is_canonical(ctx, s, k) || intersect_dim(ctx, s, u) != 0) {
          r.pass = false;
          r.witness = "class " + std::to_string(i) + " member " +
                      std::to_string(j) + " (" + matrix_string(ctx, s) +
                      ") is not a transversal k-subspace";
          return;
        }
      }
  }));

  rep.checks.push_back(timed_check("class-covers", [&](CheckResult& r) {
    const Subspace full = head_axis(ctx, n);
    for (size_t i = 0; i < classes.size() && r.pass; ++i) {
      const auto counts = cover_counts(ctx, classes[i], threads);
      for_each_vector(ctx, full, [&](Row v) {
        if (v == 0 || !r.pass) return;
        const std::uint16_t want = ctx.head(v, k) != 0 ? 1 : 0;
        if (counts[v] != want) {
          r.pass = false;
          r.witness = "class " + std::to_string(i) + " covers vector " +
                      ctx.to_string(v) + " " + std::to_string(counts[v]) +
                      " times, expected " + std::to_string(want);
        }
      });
    }
  }));

  rep.checks.push_back(
      timed_check("all-transversal-subspaces", [&](CheckResult& r) {
        // distinct members, q^{mk} in total = every transversal k-subspace
        std::unordered_set<Subspace, SubspaceHash> all;
        for (const auto& cls : classes)
          for (const Subspace& s : cls)
            if (!all.insert(s).second) {
              r.pass = false;
              r.witness = "subspace " + matrix_string(ctx, s) +
                          " appears in two classes";
              return;
            }
        const std::uint64_t want = pow_u64(q, std::uint64_t(m) * k);
        if (all.size() != want) {
          r.pass = false;
          r.witness = std::to_string(all.size()) +
                      " distinct members, expected " + std::to_string(want);
        }
      }));
  return rep;
}

}  // namespace qspread

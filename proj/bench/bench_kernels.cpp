// Benchmark: serial reference kernels versus their OpenMP versions.
//
// Each kernel is run once serially and once with the requested thread count;
// the results must be bit-identical (the parallel reductions are order-free),
// and the wall times plus speedup are reported.  Exit status is nonzero if
// any pair of results disagrees.
#include <chrono>
#include <cstdint>
#include <iomanip>
#include <iostream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qspread/gf.hpp"
#include "qspread/kernels.hpp"
#include "qspread/linalg.hpp"
#include "qspread/rankmetric.hpp"
#include "qspread/std_design.hpp"

namespace {

using namespace qspread;
using Clock = std::chrono::steady_clock;

int mismatches = 0;

template <typename F>
auto timed(double& secs, F&& f) {
  f();  // untimed warmup so neither mode benefits from a cold cache
  const auto t0 = Clock::now();
  auto result = f();
  secs = std::chrono::duration<double>(Clock::now() - t0).count();
  return result;
}

void report(const std::string& name, double serial_s, double parallel_s,
            bool identical) {
  std::cout << std::left << std::setw(44) << name << std::right << std::fixed
            << std::setprecision(3) << std::setw(9) << serial_s << "s"
            << std::setw(9) << parallel_s << "s   x" << std::setprecision(2)
            << (parallel_s > 0 ? serial_s / parallel_s : 0.0) << "  "
            << (identical ? "identical" : "MISMATCH") << "\n";
  if (!identical) ++mismatches;
}

}  // namespace

int main(int argc, char** argv) {
  int threads = 0;  // 0 = OpenMP default
  if (argc > 1) threads = std::stoi(argv[1]);
  const int used = resolve_threads(threads);
  std::cout << "kernel benchmark: serial reference vs " << used
            << " thread(s)\n";
#ifndef _OPENMP
  std::cout << "(built without OpenMP: the parallel entry points fall back "
               "to the serial path)\n";
#endif
  std::cout << std::left << std::setw(44) << "kernel" << std::right
            << std::setw(10) << "serial" << std::setw(10) << "parallel"
            << "\n";

  const Gf gf(2, 1);

  {
    // Intersection-dimension census over all of G_2(8,4): 200787 subspaces,
    // one explicit intersection with the tail axis each.
    const VecCtx ctx(gf, 8);
    double ts = 0, tp = 0;
    const auto serial =
        timed(ts, [&] { return tail_dim_census_serial(ctx, 4, 4); });
    const auto parallel =
        timed(tp, [&] { return tail_dim_census(ctx, 4, 4, threads); });
    report("tail_dim_census  G_2(8,4) vs 4-dim axis", ts, tp,
           serial == parallel);
  }

  {
    // Pairwise subspace distance over a 1024-codeword lifted code in
    // G_2(10,5): ~524k pairs, each an explicit rank computation.
    const LiftedCode code(gf, 5, 5, 4);
    const auto members = code.all();
    const VecCtx& ctx = code.ambient();
    double ts = 0, tp = 0;
    const auto serial = timed(
        ts, [&] { return min_pairwise_distance_serial(ctx, members); });
    const auto parallel = timed(
        tp, [&] { return min_pairwise_distance(ctx, members, threads); });
    const bool same = serial.min_distance == parallel.min_distance &&
                      serial.i == parallel.i && serial.j == parallel.j;
    report("min_pairwise_distance  1024 words, n=10", ts, tp, same);
    std::cout << "    (minimum " << serial.min_distance << " at pair ("
              << serial.i << ", " << serial.j << "))\n";
  }

  {
    // Per-vector cover counts for a 32768-codeword lifted code in
    // G_2(10,5): each member enumerates its 32 vectors; repeated to get a
    // readable wall time.
    const LiftedCode code(gf, 5, 5, 3);
    const auto members = code.all();
    const VecCtx& ctx = code.ambient();
    constexpr int kReps = 25;
    double ts = 0, tp = 0;
    const auto serial = timed(ts, [&] {
      std::vector<std::uint16_t> last;
      for (int r = 0; r < kReps; ++r) last = cover_counts_serial(ctx, members);
      return last;
    });
    const auto parallel = timed(tp, [&] {
      std::vector<std::uint16_t> last;
      for (int r = 0; r < kReps; ++r)
        last = cover_counts(ctx, members, threads);
      return last;
    });
    report("cover_counts  32768 words, n=10 (25 reps)", ts, tp,
           serial == parallel);
  }

  if (mismatches) {
    std::cout << mismatches << " kernel(s) disagreed between modes\n";
    return 1;
  }
  std::cout << "all kernels agree between serial and parallel modes\n";
  return 0;
}

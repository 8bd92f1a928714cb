// Serial vs OpenMP timings for the prime-sum sweep and the fiber audit.
//   bench_parallel [max_x] [fibers]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <functional>

#include "cheval/fixtures.hpp"
#include "cheval/heights.hpp"
#include "cheval/verify.hpp"

using namespace cheval;

namespace {

double seconds(const std::function<void()>& body) {
  auto t0 = std::chrono::steady_clock::now();
  body();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  long max_x = argc > 1 ? std::atol(argv[1]) : 10000000;
  int fibers = argc > 2 ? std::atoi(argv[2]) : 40;
  int threads = omp_get_max_threads();
  std::printf("threads: %d\n", threads);

  PrimeSumSweep s, p;
  double ts = seconds([&] { s = prime_sum_sweep_serial(max_x); });
  double tp = seconds([&] { p = prime_sum_sweep_parallel(max_x); });
  std::printf("prime-sum sweep to %ld: serial %.3f s, parallel %.3f s, speedup %.2f, violations %ld/%ld\n", max_x, ts,
              tp, ts / tp, s.violations, p.violations);

  CheckedCovering c = validate_covering(fixtures::descent_covering());
  auto sample = sample_points(fibers, 50, std::nullopt, 5);
  std::vector<FiberReport> rs, rp;
  double fs = seconds([&] { rs = cw_empirical_check_serial(c, sample); });
  double fp = seconds([&] { rp = cw_empirical_check(c, sample, threads); });
  long held = 0;
  for (auto& r : rp) held += r.skipped || r.holds(kPartialTolerance);
  std::printf("fiber audit of %d points on the descent covering: serial %.3f s, parallel %.3f s, speedup %.2f, "
              "%ld/%zu hold\n",
              fibers, fs, fp, fs / fp, held, rp.size());
  return 0;
}

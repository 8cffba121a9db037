// Compares the OpenMP kernels against their serial references on the same
// inputs, checking that the results agree exactly.

#include <omp.h>

#include <cstdio>
#include <string>

#include "wilber/bounds.hpp"
#include "wilber/sequences.hpp"

using namespace wilber;

namespace {

template <class F>
double best_of(int reps, F&& f) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const double t0 = omp_get_wtime();
    f();
    best = std::min(best, omp_get_wtime() - t0);
  }
  return best;
}

void row(const char* kernel, const std::string& input, double serial_s,
         double parallel_s, bool match) {
  std::printf("%-8s %-24s %10.4f %10.4f %8.2fx   %s\n", kernel, input.c_str(),
              serial_s, parallel_s, serial_s / parallel_s, match ? "ok" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  int funnel_n = 1024, funnel_m = 6000;
  int alt_n = 160, alt_m = 800;
  int reps = 3;
  for (int i = 1; i + 1 < argc; i += 2) {
    const std::string flag = argv[i];
    const int v = std::atoi(argv[i + 1]);
    if (flag == "--funnel-n") funnel_n = v;
    else if (flag == "--funnel-m") funnel_m = v;
    else if (flag == "--alt-n") alt_n = v;
    else if (flag == "--alt-m") alt_m = v;
    else if (flag == "--reps") reps = v;
    else {
      std::fprintf(stderr, "unknown flag %s\n", flag.c_str());
      return 1;
    }
  }

  std::printf("threads: %d\n", omp_get_max_threads());
  std::printf("%-8s %-24s %10s %10s %9s\n", "kernel", "input", "serial", "parallel",
              "speedup");

  {
    const PointSet P =
        geometric_view(gen_random(funnel_n, std::size_t(funnel_m), 1));
    long long vs = 0, vp = 0;
    const double ts = best_of(reps, [&] { vs = funnel_bound_serial(P); });
    const double tp = best_of(reps, [&] { vp = funnel_bound(P); });
    row("funnel", "random n=" + std::to_string(funnel_n) +
                      " m=" + std::to_string(funnel_m),
        ts, tp, vs == vp);
  }
  {
    const PointSet P = geometric_view(gen_random(alt_n, std::size_t(alt_m), 2));
    AltExactResult rs, rp;
    const double ts = best_of(reps, [&] { rs = alt_exact_serial(P); });
    const double tp = best_of(reps, [&] { rp = alt_exact(P); });
    row("alt", "random n=" + std::to_string(alt_n) + " m=" + std::to_string(alt_m),
        ts, tp, rs.value == rp.value);
  }
  return 0;
}

// Serial reference vs OpenMP kernels: wall time and agreement of outputs.
//
//   capcond_bench [N] [workers]

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "capcond/experiments.hpp"

using namespace capcond;

namespace {

template <class F>
double seconds(F&& body) {
  const auto start = std::chrono::steady_clock::now();
  body();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

bool same(const std::vector<SampleRecord>& a, const std::vector<SampleRecord>& b) {
  if (a.size() != b.size()) {
    return false;
  }
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].cls != b[i].cls || a[i].rho != b[i].rho || a[i].cond != b[i].cond) {
      return false;
    }
  }
  return true;
}

void line(const char* kernel, std::uint64_t N, double serial, double parallel, bool agree) {
  std::printf("%-22s N=%-8llu serial %8.3fs  parallel %8.3fs  speedup %5.2fx  outputs %s\n",
              kernel, static_cast<unsigned long long>(N), serial, parallel, serial / parallel,
              agree ? "identical" : "DIFFER");
}

} // namespace

int main(int argc, char** argv) {
  const std::uint64_t N = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20000;
  const int workers = argc > 2 ? std::atoi(argv[2]) : omp_get_max_threads();
  std::printf("workers %d (machine reports %d)\n", workers, omp_get_num_procs());
  bool ok = true;

  ExperimentConfig cfg;
  for (double beta : {0.0, 1.0}) {
    cfg.beta = beta;
    const InstanceSampler sampler(make_centers(cfg), cfg.params());
    std::vector<SampleRecord> s, p;
    const double ts = seconds([&] { s = draw_records(sampler, 1, N, Execution::Serial); });
    const double tp =
        seconds([&] { p = draw_records(sampler, 1, N, Execution::Parallel, workers); });
    const bool agree = same(s, p);
    ok = ok && agree;
    line(beta == 0.0 ? "draw_records beta=0" : "draw_records beta=1", N, ts, tp, agree);
  }

  for (int k : {4, 8}) {
    std::vector<std::uint8_t> s, p;
    const std::uint64_t n = 4 * N;
    const double ts = seconds([&] { s = wendel_flags(k, 2, 7, n, Execution::Serial); });
    const double tp =
        seconds([&] { p = wendel_flags(k, 2, 7, n, Execution::Parallel, workers); });
    ok = ok && s == p;
    line(("wendel_flags k=" + std::to_string(k)).c_str(), n, ts, tp, s == p);
  }
  return ok ? 0 : 1;
}

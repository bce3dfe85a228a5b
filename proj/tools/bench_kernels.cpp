// Compares the OpenMP kernels against their serial twins on identical inputs:
// wall time, speedup, and agreement of results.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "modalagg/covering.hpp"
#include "modalagg/oracle.hpp"
#include "modalagg/residue.hpp"
#include "modalagg/sweeps.hpp"

namespace {

using Clock = std::chrono::steady_clock;

double ms_since(Clock::time_point start) {
  return std::chrono::duration<double, std::milli>(Clock::now() - start).count();
}

void report(const char* name, double serial_ms, double parallel_ms, bool equal) {
  std::printf("%-28s %10.1f ms %10.1f ms %7.2fx  %s\n", name, serial_ms, parallel_ms,
              parallel_ms > 0 ? serial_ms / parallel_ms : 0.0, equal ? "match" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
  using namespace modalagg;

  std::uint32_t sweep_rmax = 9;
  if (argc > 1) {
    char* end = nullptr;
    const unsigned long value = std::strtoul(argv[1], &end, 10);
    if (end == argv[1] || *end != '\0' || value < 4 || value > 16) {
      std::fprintf(stderr, "usage: %s [sweep_rmax in 4..16]\n", argv[0]);
      return 2;
    }
    sweep_rmax = static_cast<std::uint32_t>(value);
  }

#ifdef _OPENMP
  std::printf("OpenMP enabled, max threads = %d\n", omp_get_max_threads());
#else
  std::printf("OpenMP disabled; both columns run serially\n");
#endif
  std::printf("%-28s %13s %13s %8s\n", "kernel", "serial", "parallel", "speedup");

  {
    auto t0 = Clock::now();
    const auto s = sweeps::absorption_sweep_serial(4, sweep_rmax, 3);
    const double serial_ms = ms_since(t0);
    t0 = Clock::now();
    const auto p = sweeps::absorption_sweep(4, sweep_rmax, 3);
    const double parallel_ms = ms_since(t0);
    report("absorption_sweep", serial_ms, parallel_ms,
           s.cases == p.cases && s.mismatches == p.mismatches);
  }

  {
    auto t0 = Clock::now();
    const auto s = sweeps::oneside_sweep_serial(4, sweep_rmax, 3);
    const double serial_ms = ms_since(t0);
    t0 = Clock::now();
    const auto p = sweeps::oneside_sweep(4, sweep_rmax, 3);
    const double parallel_ms = ms_since(t0);
    report("oneside_sweep", serial_ms, parallel_ms,
           s.cases == p.cases && s.mismatches == p.mismatches);
  }

  {
    const auto spec = FrameSpec::make(FrameKind::Frame2, 18, 5, {0, 1, 4, 5});
    const std::uint32_t r = spec.r();
    bool equal = true;
    double serial_ms = 0.0;
    double parallel_ms = 0.0;
    for (std::uint32_t mask = 0; mask < 512; ++mask) {
      std::vector<std::int64_t> plus, minus;
      for (std::uint32_t w = 0; w < r; ++w) {
        if (mask & (1u << (w % 9))) {
          ((w & 1) ? plus : minus).push_back(w);
        }
      }
      const JudgmentPair jp(ResidueSet::from_members(r, plus),
                            ResidueSet::from_members(r, minus));
      auto t0 = Clock::now();
      const bool s = oracle::brute_consistent_serial(jp, spec);
      serial_ms += ms_since(t0);
      t0 = Clock::now();
      const bool p = oracle::brute_consistent(jp, spec);
      parallel_ms += ms_since(t0);
      equal = equal && s == p;
    }
    report("brute_consistent x512", serial_ms, parallel_ms, equal);
  }

  {
    const auto spec = FrameSpec::make(FrameKind::Frame2, 14, 3, {0, 1, 2, 3});
    auto t0 = Clock::now();
    const auto s = oracle::enumerate_rational_sets_serial(spec);
    const double serial_ms = ms_since(t0);
    t0 = Clock::now();
    const auto p = oracle::enumerate_rational_sets(spec);
    const double parallel_ms = ms_since(t0);
    report("enumerate_rational_sets", serial_ms, parallel_ms, s == p);
  }

  return 0;
}

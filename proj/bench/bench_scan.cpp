// Timing harness: the same grid scan through the serial and the parallel
// kernel, with a byte-equality check on the exports.
//
// Usage: qgt_bench [--quick]

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "qgt/scan.hpp"

namespace {

double run_timed(qgt::ScanConfig cfg, qgt::Execution exec, std::string* csv) {
  cfg.exec = exec;
  const auto start = std::chrono::steady_clock::now();
  const qgt::ScanResult r = qgt::run_scan(cfg);
  const double ms = std::chrono::duration<double, std::milli>(
                        std::chrono::steady_clock::now() - start)
                        .count();
  *csv = qgt::to_csv(r);
  return ms;
}

}  // namespace

int main(int argc, char** argv) {
  const bool quick = argc > 1 && std::strcmp(argv[1], "--quick") == 0;

  qgt::ScanConfig cfg;
  cfg.proto = {0.9, 2.0, 1.0};
  cfg.k_points = quick ? 101 : 401;
  cfg.t_max = 20.0;
  cfg.t_points = quick ? 51 : 201;

#ifdef _OPENMP
  std::printf("workers: %d\n", omp_get_max_threads());
#else
  std::printf("workers: 1 (built without OpenMP)\n");
#endif
  std::printf("grid: %d x %d, %zu components\n", cfg.k_points, cfg.t_points,
              cfg.components.size());

  std::string serial_csv, parallel_csv;
  const double serial_ms = run_timed(cfg, qgt::Execution::serial, &serial_csv);
  const double parallel_ms =
      run_timed(cfg, qgt::Execution::parallel, &parallel_csv);

  std::printf("serial:   %8.2f ms\n", serial_ms);
  std::printf("parallel: %8.2f ms  (speedup %.2fx)\n", parallel_ms,
              serial_ms / parallel_ms);

  if (serial_csv != parallel_csv) {
    std::printf("FAIL: serial and parallel exports differ\n");
    return 1;
  }
  std::printf("exports byte-identical\n");
  return 0;
}

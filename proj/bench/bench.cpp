// Compares the serial reference paths against the OpenMP ones: table
// construction and a theorem-mode sweep. The sweep comparison also checks
// that both produce the same bytes, since the parallel path is only
// worthwhile if it is a drop-in replacement.

#include <omp.h>

#include <chrono>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>

#include "klhc/klbase.hpp"
#include "klhc/sweep.hpp"

using namespace klhc;

namespace {

template <class F>
double run_ms(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

void row(const std::string& name, double serial, double parallel) {
  std::cout << std::left << std::setw(22) << name << std::right << std::fixed
            << std::setprecision(1) << std::setw(10) << serial << " ms"
            << std::setw(10) << parallel << " ms" << std::setw(9)
            << std::setprecision(2) << serial / parallel << "x\n";
}

}  // namespace

int main() {
  const int jobs = omp_get_max_threads();
  std::cout << "workers: " << jobs << "\n\n";
  std::cout << std::left << std::setw(22) << "kernel" << std::right
            << std::setw(13) << "serial" << std::setw(13) << "parallel"
            << std::setw(10) << "speedup\n";

  for (int n : {5, 6}) {
    double ts = run_ms([&] {
      KLTable t(n);
      t.precompute_all(1);
    });
    double tp = run_ms([&] {
      KLTable t(n);
      t.precompute_all(jobs);
    });
    row("kl-table n=" + std::to_string(n), ts, tp);
  }

  SweepConfig cfg;
  cfg.n = 5;
  cfg.mode = "theorem";
  cfg.deterministic = true;
  std::ostringstream serial_out, parallel_out;
  cfg.jobs = 1;
  double ts = run_ms([&] { run_sweep(cfg, serial_out); });
  cfg.jobs = jobs;
  double tp = run_ms([&] { run_sweep(cfg, parallel_out); });
  row("theorem-sweep n=5", ts, tp);

  const bool same = serial_out.str() == parallel_out.str();
  std::cout << "\nsweep outputs identical: " << (same ? "yes" : "NO") << "\n";
  return same ? 0 : 1;
}

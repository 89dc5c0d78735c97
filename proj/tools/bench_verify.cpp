// Batch-verification benchmark: the same workload through the serial
// reference loop and the OpenMP loop, with a result comparison.

#include <chrono>
#include <iostream>
#include <vector>

#include "stardyn/gen.hpp"
#include "stardyn/verify.hpp"

using namespace stardyn;

namespace {

double run_ms(const std::vector<PartialMap>& maps, const std::vector<StarEndomorphism>& endos,
              const VerifyOptions& opt, par::Mode mode, std::vector<SuiteReport>& map_out,
              std::vector<SuiteReport>& endo_out) {
  auto t0 = std::chrono::steady_clock::now();
  map_out = verify_map_batch(maps, opt, mode);
  endo_out = verify_endo_batch(endos, opt, mode);
  auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double, std::milli>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  int n_maps = 32, n_endos = 8;
  if (argc > 1) n_maps = std::atoi(argv[1]);
  if (argc > 2) n_endos = std::atoi(argv[2]);

  gen::Rng rng(20240601);
  std::vector<PartialMap> maps;
  for (int i = 0; i < n_maps; ++i) maps.push_back(gen::random_partial_map(rng, 6));
  std::vector<StarEndomorphism> endos;
  for (int i = 0; i < n_endos; ++i) endos.push_back(gen::random_multimatrix_endo(rng, 3, 3));

  VerifyOptions opt;
  opt.tower_levels = 3;
  opt.spectral_depth = 3;
  opt.rep_depth = 3;

  std::vector<SuiteReport> maps_serial, endos_serial, maps_omp, endos_omp;
  double serial_ms = run_ms(maps, endos, opt, par::Mode::serial, maps_serial, endos_serial);
  double omp_ms = run_ms(maps, endos, opt, par::Mode::openmp, maps_omp, endos_omp);

  bool identical = maps_serial == maps_omp && endos_serial == endos_omp;
  bool all_ok = true;
  for (const SuiteReport& r : maps_serial) all_ok &= r.ok();
  for (const SuiteReport& r : endos_serial) all_ok &= r.ok();

  std::cout << "systems: " << n_maps << " partial maps + " << n_endos << " multimatrix\n";
  std::cout << "serial : " << serial_ms << " ms\n";
  std::cout << "openmp : " << omp_ms << " ms  (" << par::worker_count(par::Mode::openmp)
            << " workers)\n";
  std::cout << "speedup: " << (omp_ms > 0 ? serial_ms / omp_ms : 0.0) << "x\n";
  std::cout << "results identical: " << (identical ? "yes" : "NO") << "\n";
  std::cout << "all checks passed: " << (all_ok ? "yes" : "NO") << "\n";
  return identical && all_ok ? 0 : 1;
}

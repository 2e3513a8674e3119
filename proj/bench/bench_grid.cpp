// serial vs OpenMP grid evaluation of the builders; results must agree bit for bit

#include <chrono>
#include <cstdio>
#include <cstring>
#include <string>
#include <vector>

#include <algorithm>
#include <cstdlib>

#include "hspinor/bessel_repr.hpp"
#include "hspinor/dirac.hpp"
#include "hspinor/parallel.hpp"
#include "hspinor/scalar.hpp"

using namespace hspinor;

namespace {

template <class F>
double seconds(F&& f, int reps) {
  const auto t0 = std::chrono::steady_clock::now();
  for (int i = 0; i < reps; ++i) f();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

bool same(const std::vector<Complex>& a, const std::vector<Complex>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(Complex)) == 0;
}

template <class F>
bool run(const char* name, const std::vector<double>& grid, F f, int reps) {
  std::vector<Complex> s, p;
  const double ts = seconds([&] { s = map_grid_serial(grid, f); }, reps);
  const double tp = seconds([&] { p = map_grid(grid, f); }, reps);
  const bool ok = same(s, p);
  std::printf("%-26s %6zu pts  serial %9.4f s  omp %9.4f s  speedup %5.2f  %s\n", name, grid.size(), ts, tp,
              ts / tp, ok ? "identical" : "MISMATCH");
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  int reps = 3;
  if (argc > 1) reps = std::max(1, std::atoi(argv[1]));
  std::printf("threads: %d\n", max_threads());

  const dirac::WaveParams w{};
  const scalar::ScalarParams sp{};
  const auto g = dirac::standard_grid(w);
  const double z0 = scalar::critical_point(sp);
  bool ok = true;

  ok &= run("dirac type I (Kummer)", g, [&](double z) { return dirac::build_solution(dirac::SolutionType::I, w, z).f[0].v; }, reps);
  ok &= run("scalar f5 (Psi, binary128)", linspace(z0 - 6.0, z0 + 2.0, 512),
            [&](double z) { return scalar::scalar_solution(scalar::Variant::F5, sp, z).v; }, reps);
  const bessel_repr::Row hankel{bessel_repr::Representation::Hankel, dirac::SolutionType::I};
  ok &= run("hankel I phi-pair", bessel_repr::interior_grid(w, 512),
            [&](double z) { return bessel_repr::build_bessel_solution(hankel, w, z).phi1.v; }, reps);
  return ok ? 0 : 1;
}

#pragma once

// Grid evaluation helpers. Every kernel is a pure function of its arguments,
// so grid points are independent; map_grid splits them over OpenMP threads,
// map_grid_serial is the reference the tests and the benchmark compare to.

#include <cmath>
#include <cstddef>
#include <limits>
#include <exception>
#include <type_traits>
#include <utility>
#include <vector>

#include "hspinor/types.hpp"

namespace hspinor {

template <class F>
auto map_grid_serial(const std::vector<double>& grid, F&& f) {
  using R = std::decay_t<decltype(f(grid[0]))>;
  std::vector<R> out;
  out.reserve(grid.size());
  for (double z : grid) out.push_back(f(z));
  return out;
}

template <class F>
auto map_grid(const std::vector<double>& grid, F&& f) {
  using R = std::decay_t<decltype(f(grid[0]))>;
  const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(grid.size());
  std::vector<R> out(grid.size());
  std::exception_ptr first_error;
  // exceptions must not cross the parallel region; keep the first, rethrow after
#pragma omp parallel for schedule(dynamic, 8)
  for (std::ptrdiff_t i = 0; i < n; ++i) {
    try {
      out[i] = f(grid[i]);
    } catch (...) {
#pragma omp critical(hspinor_map_grid_error)
      if (!first_error) first_error = std::current_exception();
    }
  }
  if (first_error) std::rethrow_exception(first_error);
  return out;
}

// residual lines at each grid point -> report; the reduction is done
// serially in grid order so the argmax is deterministic
template <class F>
ResidualReport max_residual(std::string check, const std::vector<double>& grid, double tol, F&& rel_residual_at) {
  const auto r = map_grid(grid, std::forward<F>(rel_residual_at));
  ResidualReport rep;
  rep.check = std::move(check);
  rep.grid = grid;
  rep.tolerance_used = tol;
  for (std::size_t i = 0; i < r.size(); ++i) {
    // a NaN residual is a failure, not something to skip
    const double v = std::isnan(r[i]) ? std::numeric_limits<double>::infinity() : r[i];
    if (v > rep.max_rel_residual) {
      rep.max_rel_residual = v;
      rep.argmax_z = grid[i];
    }
  }
  return rep;
}

int max_threads();

}  // namespace hspinor

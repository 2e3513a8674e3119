#include <cmath>

#include "common/fd.hpp"
#include "doctest.h"
#include "hspinor/oracle.hpp"
#include "hspinor/weyl.hpp"

using namespace hspinor;
using namespace hspinor::weyl;
using dirac::SolutionType;

namespace {
const SolutionType both[] = {SolutionType::I, SolutionType::II};
}

TEST_CASE("Weyl system residuals") {
  for (int s : {-1, +1}) {
    for (auto [k1, k2] : {std::pair{1.0, 2.0}, std::pair{3.0, 4.0}}) {
      const WeylParams p{3.0, k1, k2, s};
      for (auto t : both) {
        CAPTURE(s);
        CAPTURE(k1);
        CHECK(weyl_system_residual(t, p, standard_grid(p, 2048)).max_rel_residual < 1e-8);
        CHECK(weyl_system_residual(t, p, linspace(-6.0, 1.0, 701)).max_rel_residual < 1e-8);
      }
    }
  }
}

TEST_CASE("Weyl lines are the Dirac pair at p = sign eps") {
  const WeylParams p{3.0, 1.0, 2.0, -1};
  for (double z : linspace(-4.0, 1.0, 26)) {
    const auto h = build_weyl(SolutionType::I, p, z);
    const auto w = weyl_lines(p, z, h.h1, h.h2);
    const auto d = dirac::first_order_lines(-3.0, 1.0, 2.0, z, h.h1, h.h2);
    for (int i = 0; i < 2; ++i) CHECK(std::abs(w[i].r - d[i].r) <= 1e-12 * w[i].scale);
  }
}

TEST_CASE("small-mass agreement with the Dirac builder") {
  for (int s : {-1, +1}) {
    const WeylParams p{3.0, 1.0, 2.0, s};
    const auto grid = standard_grid(p, 401);
    for (auto t : both) {
      const double tiny = dirac_agreement(t, p, 1e-6, grid);
      CHECK(tiny < 1e-10);
      // the gap closes with the mass
      CHECK(dirac_agreement(t, p, 1e-2, grid) > tiny);
    }
  }
}

TEST_CASE("perturbed factor is detected") {
  const WeylParams p{3.0, 1.0, 2.0, -1};
  dirac::BuildOptions o;
  o.m_plus_scale = 1.01;
  CHECK(weyl_system_residual(SolutionType::I, p, standard_grid(p, 401), o).max_rel_residual > 1e-3);
  o = {};
  o.m_minus_scale = 1.01;
  CHECK(weyl_system_residual(SolutionType::II, p, standard_grid(p, 401), o).max_rel_residual > 1e-3);
}

TEST_CASE("a stale mass does not reach the Weyl builder") {
  const auto a = WeylParams::from_wave({3.0, 1.0, 2.0, 2.0, -1});
  const auto b = WeylParams::from_wave({3.0, 1.0, 2.0, 0.0, -1});
  for (double z : linspace(-3.0, 1.0, 9)) {
    const auto x = build_weyl(SolutionType::I, a, z), y = build_weyl(SolutionType::I, b, z);
    CHECK(x.h1.v == y.h1.v);
    CHECK(x.h2.d1 == y.h2.d1);
  }
  CHECK(a.p() == -3.0);
}

TEST_CASE("finite-difference residual and independence") {
  const WeylParams p{3.0, 1.0, 2.0, -1};
  dirac::WaveParams w{3.0, 1.0, 2.0, 0.0, -1};
  const auto sys = oracle::make_system(SystemId::Weyl, w);
  CHECK(sys.prm.p == -3.0);
  for (auto t : both) {
    const auto r = oracle::residual_norm(
        sys,
        [&](double z) {
          const auto h = build_weyl(t, p, z);
          return std::vector<Jet>{h.h1, h.h2};
        },
        standard_grid(p), oracle::Derivatives::FiniteDifference);
    CHECK(r.max_rel_residual < 1e-6);
  }
  const double zt = std::log(p.epsilon / std::hypot(p.k1, p.k2));
  const auto ind = dirac::independence(p.p(), p.k1, p.k2, linspace(zt - 6.0, zt, 601));
  CHECK(ind.min_normalized_det > 1e-3);
  CHECK(ind.det_drift < 1e-10);
}

TEST_CASE("parameter errors") {
  CHECK_THROWS_AS(build_weyl(SolutionType::I, {0.0, 1.0, 2.0, -1}, 0.0), ParameterError);
  CHECK_THROWS_AS(build_weyl(SolutionType::I, {3.0, 0.0, 0.0, -1}, 0.0), ParameterError);
  CHECK_THROWS_AS(build_weyl(SolutionType::I, {3.0, 1.0, 2.0, 2}, 0.0), ParameterError);
}

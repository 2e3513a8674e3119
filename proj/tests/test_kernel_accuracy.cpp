// binary64 kernel against the extended-precision oracle

#include "common/kernel_paths.hpp"
#include "doctest.h"

using namespace hspinor;
using kpaths::D;

TEST_CASE("spot values") {
  CHECK(ext::rel_diff<D>(sf::gamma_complex({1.0, 2.0}), ext::gamma<D>(ext::to_ext<D>(Complex(1.0, 2.0)))) < 1e-13);
  CHECK(ext::rel_diff<D>(sf::gamma_complex({0.0, 8.0}), ext::gamma<D>(ext::to_ext<D>(Complex(0.0, 8.0)))) < 1e-12);
  const Complex a(0.5, -2.0), c(1.0, -4.0);
  CHECK(ext::rel_diff<D>(sf::kummer_phi({a, c, 3.0}),
                         ext::kummer_phi<D>(ext::to_ext<D>(a), ext::to_ext<D>(c), ext::to_ext<D>(Complex(3.0)))) < 1e-12);
  const Complex nu(-0.5, 4.0);
  CHECK(ext::rel_diff<D>(sf::bessel_j({nu, Complex(0.0, 4.0)}),
                         ext::bessel_j<D>(ext::to_ext<D>(nu), ext::to_ext<D>(Complex(0.0, 4.0)))) < 1e-10);
  CHECK(ext::rel_diff<D>(sf::neumann_n({nu, Complex(0.0, 2.0)}),
                         ext::neumann_n<D>(ext::to_ext<D>(nu), ext::to_ext<D>(Complex(0.0, 2.0)))) < 1e-10);
}

TEST_CASE("builder paths") {
  const auto r = kpaths::run_paths(24);
  for (const auto* w : {&r.phi, &r.psi, &r.j, &r.h1, &r.h2, &r.n}) {
    CAPTURE(w->where);
    CHECK(w->evaluations > 0);
    CHECK(w->err < 1e-10);
  }
}

TEST_CASE("series/asymptotic seams") {
  kpaths::Report r;
  kpaths::run_seams(r);
  for (const auto* w : {&r.seam_phi, &r.seam_psi, &r.seam_bessel}) {
    CAPTURE(w->where);
    CHECK(w->evaluations > 0);
    CHECK(w->err < 1e-8);
  }
}

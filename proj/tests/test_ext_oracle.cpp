// Self-tests of the extended-precision oracle against closed forms. Nothing
// here touches the kernel.

#include "doctest.h"
#include "ext/ext_oracle.hpp"

namespace {

constexpr unsigned D = 160;
using X = ext::Cx<D>;
using R = ext::Real<D>;

X cx(double re, double im = 0.0) { return X(R(re), R(im)); }
double rel(const X& a, const X& b) { return static_cast<double>(ext::mag<D>(a - b) / ext::mag<D>(b)); }
const R pi = boost::math::constants::pi<R>();

}  // namespace

TEST_CASE("gamma") {
  CHECK(rel(ext::gamma<D>(cx(1.0)), cx(1.0)) < 1e-120);
  CHECK(rel(ext::gamma<D>(cx(0.5)), X(sqrt(pi))) < 1e-120);
  CHECK(rel(ext::gamma<D>(cx(5.0)), cx(24.0)) < 1e-120);
  // Gamma(1 + 2i) = 2i Gamma(2i)
  CHECK(rel(ext::gamma<D>(cx(1.0, 2.0)), cx(0.0, 2.0) * ext::gamma<D>(cx(0.0, 2.0))) < 1e-120);
  const X z = cx(0.3, 0.7);
  CHECK(rel(ext::gamma<D>(z) * ext::gamma<D>(cx(1.0) - z), X(pi) / sin(X(pi) * z)) < 1e-120);
}

TEST_CASE("Kummer Phi") {
  const X a = cx(0.5, -2.0), y = cx(3.0);
  CHECK(rel(ext::kummer_phi<D>(a, a, y), exp(y)) < 1e-120);
  CHECK(rel(ext::kummer_phi<D>(cx(1.0), cx(2.0), y), (exp(y) - R(1)) / y) < 1e-120);
  CHECK(rel(ext::kummer_phi<D>(cx(0.0, 4.0), cx(0.0, 8.0), cx(0.0)), cx(1.0)) == 0.0);
}

TEST_CASE("Tricomi Psi") {
  // Psi(a, a + 1, y) = y^{-a}; nudge c off the integer difference
  const X a = cx(0.5, -2.0), y = cx(2.0);
  const X c = a + R(1) + R("1e-40");
  CHECK(rel(ext::tricomi_psi_connection<D>(a, c, y), exp(-a * log(y))) < 1e-35);
  // connection and asymptotic overlap at y = 60
  const X c2 = cx(1.0, -4.0);
  CHECK(rel(ext::tricomi_psi_asymptotic<D>(a, c2, cx(60.0)), ext::tricomi_psi_connection<D>(a, c2, cx(60.0))) < 1e-20);
  CHECK(rel(ext::tricomi_psi<D>(a, c2, cx(150.0)), exp(-a * log(cx(150.0)))) < 0.2);
}

TEST_CASE("cylinder functions") {
  const X x = cx(3.0), half = cx(0.5);
  const X s = sqrt(cx(2.0) / (X(pi) * x));
  CHECK(rel(ext::bessel_j<D>(half, x), s * sin(x)) < 1e-120);
  CHECK(rel(ext::hankel_h1<D>(half, x), cx(0.0, -1.0) * s * exp(cx(0.0, 1.0) * x)) < 1e-100);
  CHECK(rel(ext::hankel_h2<D>(half, x), cx(0.0, 1.0) * s * exp(cx(0.0, -1.0) * x)) < 1e-100);
  CHECK(rel(ext::neumann_n<D>(half, x), -s * cos(x)) < 1e-100);
  // d/dx of s sin x; integer orders hit the poles of the series' 1/Gamma
  auto J = [](const X& n, const X& z) { return ext::bessel_j<D>(n, z); };
  CHECK(rel(ext::cylinder_derivative<D>(J, half, x), s * cos(x) - s * sin(x) / (R(2) * x)) < 1e-120);
  // Wronskian J_nu J_{1-nu} + J_{-nu} J_{nu-1} = 2 sin(nu pi)/(pi x), complex order, x = 5i
  const X nu = cx(-0.5, 4.0), xi = cx(0.0, 5.0);
  const X w = J(nu, xi) * J(cx(1.0) - nu, xi) + J(-nu, xi) * J(nu - R(1), xi);
  CHECK(rel(w, cx(2.0) * sin(nu * X(pi)) / (X(pi) * xi)) < 1e-100);
}

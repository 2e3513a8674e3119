#include <cmath>
#include <sstream>

#include "hspinor/geometry.hpp"

namespace hspinor::geometry {

namespace {

void check_finite(const QuasiCartesian& p) {
  if (!std::isfinite(p.x) || !std::isfinite(p.y) || !std::isfinite(p.z))
    throw ParameterError("quasi-cartesian point has a non-finite component");
  // e^{+-z} and (x^2+y^2) e^{-z} must stay inside binary64
  if (std::abs(p.z) > 700.0) {
    std::ostringstream os;
    os << "e^{+-z} overflows binary64 at z = " << p.z;
    throw NumericalError(ErrorKind::Overflow, os.str());
  }
}

}  // namespace

HyperboloidPoint to_hyperboloid(const QuasiCartesian& p) {
  check_finite(p);
  using L = long double;
  const L em = std::exp(-L(p.z)), ep = std::exp(L(p.z));
  const L r2 = L(p.x) * p.x + L(p.y) * p.y;
  HyperboloidPoint u;
  u.u1 = double(p.x * em);
  u.u2 = double(p.y * em);
  u.u3 = double(((ep - em) + r2 * em) / 2);
  u.u0 = double(((ep + em) + r2 * em) / 2);
  if (!std::isfinite(u.u0)) throw NumericalError(ErrorKind::Overflow, "hyperboloid coordinates overflow binary64");
  return u;
}

PoincarePoint to_poincare(const QuasiCartesian& p) {
  check_finite(p);
  using L = long double;
  const L r2 = L(p.x) * p.x + L(p.y) * p.y;
  const L e2 = std::exp(2 * L(p.z));
  const L d = r2 + e2 + 1;
  if (!std::isfinite(double(d))) throw NumericalError(ErrorKind::Overflow, "Poincare denominator overflows binary64");
  return {double(2 * L(p.x) / d), double(2 * L(p.y) / d), double((r2 + e2 - 1) / d)};
}

QuasiCartesian from_poincare(const PoincarePoint& q) {
  using L = long double;
  const L n2 = L(q.q1) * q.q1 + L(q.q2) * q.q2 + L(q.q3) * q.q3;
  if (!(n2 < 1)) throw ParameterError("Poincare point is not inside the unit ball");
  if (!(q.q3 < 1.0 - boundary_margin)) {
    std::ostringstream os;
    os << "inverse map singular at q3 = " << q.q3 << " (boundary point)";
    throw NumericalError(ErrorKind::Boundary, os.str());
  }
  const L w = 1 - L(q.q3);
  // e^{2z} = (1 - |q|^2) / (1 - q3)^2; on the axis this is (1+q3)/(1-q3)
  const L ez = std::sqrt(1 - n2) / w;
  return {double(q.q1 / w), double(q.q2 / w), double(std::log(ez))};
}

double hyperboloid_invariant(const HyperboloidPoint& u) {
  using L = long double;
  return double(L(u.u0) * u.u0 - L(u.u1) * u.u1 - L(u.u2) * u.u2 - L(u.u3) * u.u3);
}

}  // namespace hspinor::geometry

#pragma once

// Quasi-cartesian (horospherical) coordinates on H3 with curvature radius 1,
// the hyperboloid u0^2 - u^2 = 1 and the Poincare ball.

#include "hspinor/types.hpp"

namespace hspinor::geometry {

struct QuasiCartesian {
  double x = 0, y = 0, z = 0;
};

struct HyperboloidPoint {
  double u0 = 1, u1 = 0, u2 = 0, u3 = 0;
};

struct PoincarePoint {
  double q1 = 0, q2 = 0, q3 = 0;
};

HyperboloidPoint to_hyperboloid(const QuasiCartesian& p);
PoincarePoint to_poincare(const QuasiCartesian& p);
// needs |q| < 1 and q3 < 1 - 1e-12
QuasiCartesian from_poincare(const PoincarePoint& q);

// u0^2 - u1^2 - u2^2 - u3^2, accumulated in long double
double hyperboloid_invariant(const HyperboloidPoint& u);

inline constexpr double boundary_margin = 1e-12;

}  // namespace hspinor::geometry

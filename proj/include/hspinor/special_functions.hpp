#pragma once

// Complex gamma, Kummer Phi, Tricomi Psi and cylinder functions of complex
// order. Public interface is binary64; the few cancelling combinations are
// evaluated internally in binary128 (see kummer.cpp, bessel.cpp).

#include "hspinor/types.hpp"

namespace hspinor::sf {

struct KummerParams {
  Complex a, c, y;
};

struct BesselParams {
  Complex nu, x;
};

// value and derivatives with respect to the function's own argument
struct ArgJet {
  Complex value, d1, d2;
};

inline constexpr double kummer_switch_radius = 40.0;
inline constexpr double bessel_switch_radius = 25.0;
inline constexpr double pole_tolerance = 1e-12;

Complex gamma_complex(Complex z);
// log Gamma on a branch continuous along the paths we use; exp() of it is Gamma
Complex log_gamma_complex(Complex z);
// 1/Gamma(z), zero at the poles
Complex rgamma_complex(Complex z);

Complex kummer_phi(const KummerParams& p);
Complex kummer_phi_series(const KummerParams& p);
Complex kummer_phi_asymptotic(const KummerParams& p);
// Phi, Phi', Phi'' through the contiguous functions Phi(a+1,c+1), Phi(a+2,c+2)
ArgJet kummer_phi_jet(const KummerParams& p);

Complex tricomi_psi(const KummerParams& p);
Complex tricomi_psi_connection(const KummerParams& p);  // binary128 Kummer connection
Complex tricomi_psi_asymptotic(const KummerParams& p);
// Psi' = -a Psi(a+1,c+1), Psi'' = a(a+1) Psi(a+2,c+2)
ArgJet tricomi_psi_jet(const KummerParams& p);

// y G'' + (c - y) G' - a G for a jet in y; scale gets the largest term
Complex kummer_ode_residual(const KummerParams& p, const ArgJet& g, double* scale = nullptr);

// c1 Phi(a,2a,y) + w c2 y^{1-2a} Phi(1-a,2-2a,y), c1 = G(1-2a)/G(1-a),
// c2 = G(2a-1)/G(a), summed in binary128 (w = 1 gives Psi(a,2a,y))
Complex kummer_connection_sum(Complex a, Complex y, Complex w);

// Psi(a,c,y) = 1/G(a) int_0^inf e^{-yt} t^{a-1} (1+t)^{c-a-1} dt along a ray
// chosen for arg y; needs Re a > 0. Independent of the series machinery.
Complex tricomi_psi_integral(const KummerParams& p);

enum class Cylinder { J, H1, H2, N };

// value, d/dx, d2/dx2 of the cylinder function of order nu at x
ArgJet cylinder_jet(Cylinder kind, const BesselParams& p);

Complex bessel_j(const BesselParams& p);
Complex hankel_h1(const BesselParams& p);
Complex hankel_h2(const BesselParams& p);
Complex neumann_n(const BesselParams& p);

// raw branches, exposed for the seam calibration tests
ArgJet bessel_j_series(const BesselParams& p);
ArgJet hankel_asymptotic(Cylinder kind, const BesselParams& p);

}  // namespace hspinor::sf

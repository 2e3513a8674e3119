#pragma once

// Massless two-component waves:
//   (D - 1 + i eps) h1 + e^z (i k1 + k2) h2 = 0
//   (D - 1 - i eps) h2 - e^z (i k1 - k2) h1 = 0
// i.e. the Dirac pair with p = -eps. The opposite sign (p = +eps) is the
// mirrored system and is available through `sign`.

#include <vector>

#include "hspinor/dirac.hpp"
#include "hspinor/types.hpp"

namespace hspinor::weyl {

struct WeylParams {
  double epsilon = 3.0;
  double k1 = 1.0, k2 = 2.0;
  int sign = -1;  // p = sign * eps

  double p() const { return sign * epsilon; }
  Complex a() const { return {0.0, p()}; }
  Complex c() const { return 2.0 * a(); }
  void validate() const;

  // drops the mass: only eps, k1, k2 (and the sign) survive
  static WeylParams from_wave(const dirac::WaveParams& w);
};

struct WeylPair {
  Jet h1, h2;
};

WeylPair build_weyl(dirac::SolutionType t, const WeylParams& p, double z, const dirac::BuildOptions& o = {});

// the two lines, written out independently of the Dirac operator
std::array<dirac::Line, 2> weyl_lines(const WeylParams& p, double z, const Jet& h1, const Jet& h2);

ResidualReport weyl_system_residual(dirac::SolutionType t, const WeylParams& p, const std::vector<double>& grid,
                                    const dirac::BuildOptions& o = {}, double tol = 1e-8);

// max over the grid of the component-wise relative difference to the Dirac
// builder at small mass (p = sign sqrt(eps^2 - m^2) -> sign eps)
double dirac_agreement(dirac::SolutionType t, const WeylParams& p, double mass, const std::vector<double>& grid);

// [z_turn - 6, z_turn + 2] with |k| e^{z_turn} = eps
std::vector<double> standard_grid(const WeylParams& p, int n = 8192);

}  // namespace hspinor::weyl

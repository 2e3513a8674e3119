#pragma once

// Spin-0 quasi-plane waves: f'' - 2f' + (eps - k^2 e^{2z}) f = 0, f = e^z phi,
// solved by f = y^{a+1/2} e^{-y/2} Y(y), y = 2|k| e^z, a = 1/2 - i sqrt(eps-1).

#include <cmath>
#include <optional>
#include <utility>
#include <string_view>
#include <vector>

#include "hspinor/types.hpp"

namespace hspinor::scalar {

struct ScalarParams {
  double epsilon = 5.0;
  double k1 = 3.0, k2 = 4.0;

  double kperp2() const { return k1 * k1 + k2 * k2; }
  double kperp() const { return std::sqrt(kperp2()); }
  double kappa() const { return std::sqrt(epsilon - 1.0); }
  Complex a() const { return {0.5, -kappa()}; }
  double y_of(double z) const { return 2.0 * kperp() * std::exp(z); }

  // eps > 1 always; k != 0 unless axial
  void validate(bool need_k = true) const;
};

enum class Variant { F1, F2, F5, F7 };
std::string_view to_string(Variant v);
Variant variant_from_string(std::string_view s);
// F7 grows like e^{+y/2} past the barrier; kept for coverage, flagged in reports
inline bool unphysical_growth(Variant v) { return v == Variant::F7; }

double potential(double z, const ScalarParams& p);

// f and its z-derivatives
Jet scalar_solution(Variant v, const ScalarParams& p, double z);
// phi = e^{-z} f
Jet scalar_phi(Variant v, const ScalarParams& p, double z);

// k = 0: f = e^{(1 +- i kappa) z}, phi = e^{+- i kappa z}
Jet axial_scalar(const ScalarParams& p, int sign, double z);
Jet axial_phi(const ScalarParams& p, int sign, double z);

// equation residuals at one point; *scale receives the largest term magnitude
Complex schrodinger_residual(const ScalarParams& p, double z, const Jet& f, double* scale = nullptr);
Complex phi_residual(const ScalarParams& p, double z, const Jet& phi, double* scale = nullptr);

ResidualReport ode_residual(Variant v, const ScalarParams& p, const std::vector<double>& z_grid, double tol = 1e-8);
ResidualReport phi_ode_residual(Variant v, const ScalarParams& p, const std::vector<double>& z_grid,
                                double tol = 1e-8);

struct ConnectionCheck {
  ResidualReport f5;            // f5 = c1 f1 + c2 f2
  ResidualReport f7_printed;    // f7 = c1 f1 - c2 f2 as usually quoted
  ResidualReport f7_corrected;  // f7 = c1 f1 - e^{-2 pi i a} c2 f2 (principal branch)
};
// left sides come from the integral representation of Psi, right sides from
// the Phi basis; both are evaluated independently
ConnectionCheck kummer_connection_check(const ScalarParams& p, const std::vector<double>& z_grid,
                                        double tol = 1e-9);

struct Reflection {
  double R = 0.0;
  // amplitudes of e^{-i kappa z} and e^{+i kappa z} in phi5 as z -> -inf (needs k)
  std::optional<Complex> m_minus, m_plus;
};
Reflection reflection_coefficient(double epsilon, std::optional<std::pair<double, double>> k = std::nullopt);

double critical_point(const ScalarParams& p);
// z0 in length units; eps = 2 M E rho^2 / hbar^2, k = K rho
double critical_point_dimensional(double E, double M, double rho, double K1, double K2, double hbar);

// profile default [z0 - 8, z0 + 4], 512 points
std::vector<double> default_grid(const ScalarParams& p, int n = 512);

}  // namespace hspinor::scalar

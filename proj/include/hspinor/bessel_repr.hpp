#pragma once

// Cylinder-function form of the Dirac pair. With
//   phi1 = e^{-z} sqrt(k2 - i k1) f1,  phi2 = e^{-z} sqrt(k2 + i k1) f2,
// Z = |k| e^z and x = iZ the pair becomes
//   (D - ip) phi1 + Z phi2 = 0,  (D + ip) phi2 + Z phi1 = 0,
// and phi = sqrt(x) F with F1 of order nu = ip - 1/2, F2 of order nu + 1.
// p is the signed p of the Dirac module (helicity * sqrt(eps^2 - m^2)).

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "hspinor/dirac.hpp"
#include "hspinor/special_functions.hpp"
#include "hspinor/types.hpp"

namespace hspinor::bessel_repr {

enum class Representation { Bessel, Hankel, Neumann };
std::string_view to_string(Representation r);
Representation representation_from_string(std::string_view s);

struct Row {
  Representation rep;
  dirac::SolutionType type;
};
inline constexpr Row all_rows[] = {
    {Representation::Bessel, dirac::SolutionType::I},  {Representation::Bessel, dirac::SolutionType::II},
    {Representation::Hankel, dirac::SolutionType::I},  {Representation::Hankel, dirac::SolutionType::II},
    {Representation::Neumann, dirac::SolutionType::I}, {Representation::Neumann, dirac::SolutionType::II}};
std::string row_name(const Row& r);

// F2 sign: the one consistent with the phi system, or the published one
enum class PairingSigns { Consistent, AsPrinted };

Complex order(const dirac::WaveParams& w);  // nu = ip - 1/2

struct PhiPair {
  Jet phi1, phi2;
};

PhiPair to_phi_variables(const Jet& f1, const Jet& f2, double k1, double k2, double z);
dirac::Pair from_phi_variables(const PhiPair& phi, double k1, double k2, double z);

// the pair's cylinder functions in x, with their orders
struct CylinderPair {
  sf::ArgJet F1, F2;
  Complex mu1, mu2;
  Complex x;
};
CylinderPair cylinder_pair(const Row& r, const dirac::WaveParams& w, double z, PairingSigns s = PairingSigns::Consistent);

PhiPair build_bessel_solution(const Row& r, const dirac::WaveParams& w, double z,
                              PairingSigns s = PairingSigns::Consistent);

// the phi system in z (identical to the x form since x d/dx = d/dz)
std::array<dirac::Line, 2> phi_system_lines(double p, double kperp, double z, const Jet& phi1, const Jet& phi2);
// F'' + F'/x + (1 - mu^2/x^2) F
dirac::Line bessel_equation_line(Complex mu, Complex x, const sf::ArgJet& F);

ResidualReport phi_system_residual(const Row& r, const dirac::WaveParams& w, const std::vector<double>& grid,
                                   PairingSigns s = PairingSigns::Consistent, double tol = 1e-8);
ResidualReport bessel_equation_residual(const Row& r, const dirac::WaveParams& w, const std::vector<double>& grid,
                                        double tol = 1e-9);
// a Dirac (section 4) solution mapped to phi-variables, in the phi system
ResidualReport transformed_dirac_residual(dirac::SolutionType t, const dirac::WaveParams& w,
                                          const std::vector<double>& grid, double tol = 1e-8);

struct RecurrenceCheck {
  ResidualReport consistent;  // (x d/dx - nu) F1 = +ix F2, (x d/dx + nu + 1) F2 = +ix F1
  ResidualReport printed;     // the same lines with -ix (must fail)
};
RecurrenceCheck recurrence_pairing_check(const Row& r, const dirac::WaveParams& w, const std::vector<double>& grid,
                                         double tol = 1e-9);

// Hankel I + Hankel II = 2 Bessel I, componentwise
ResidualReport hankel_sum_check(const dirac::WaveParams& w, const std::vector<double>& grid, double tol = 1e-9);
// Bessel I at -p equals i (phi2, phi1) of Bessel II at p
ResidualReport helicity_flip_check(const dirac::WaveParams& w, const std::vector<double>& grid, double tol = 1e-10);

struct ReflectionIdentity {
  ResidualReport printed;   // H1_{-nu} = e^{i nu pi} H2_nu
  ResidualReport standard;  // H1_{-nu} = e^{i nu pi} H1_nu
};
ReflectionIdentity hankel_reflection_check(const dirac::WaveParams& w, const std::vector<double>& grid,
                                           double tol = 1e-9);

struct ComponentClass {
  double wavenumber = 0.0;   // d arg(phi)/dz at z_minus
  double slope = 0.0;        // d ln|phi|/dz at z_minus
  double large_slope = 0.0;  // d ln|phi|/dX at z_plus
  std::string small_label, large_label;
  std::string expected_small, expected_large;
  bool matches() const { return small_label == expected_small && large_label == expected_large; }
};
struct TableRow {
  Row row;
  std::array<ComponentClass, 2> comp;
  bool matches() const { return comp[0].matches() && comp[1].matches(); }
};
struct Table {
  double p = 0.0;
  double z_minus = 0.0, z_plus = 0.0;
  int window_points = 0;
  std::vector<TableRow> rows;
  bool all_match() const;
  // exactly one row (Hankel I) decays like e^{-X} in both components
  bool hankel_unique_decay() const;
};
// labels are written with P = |p|: "e^{-ipz}" is wavenumber -P, "0" a
// subdominant component (envelope slope +1); the expected column is the
// published table (helicity -1) or its wavenumber-mirrored form (helicity +1)
double default_z_minus(const dirac::WaveParams& w);
double default_z_plus(const dirac::WaveParams& w);
Table asymptotic_table(const dirac::WaveParams& w, double z_minus, double z_plus, int window_points = 33);

struct CrossCheck {
  Row row;
  double fit_residual = 0.0;       // max weighted |phi - (alpha u + beta v)| / |phi|
  double coefficient_drift = 0.0;  // max change of (alpha, beta) between the two half-grids
  Complex alpha, beta;
};
CrossCheck cross_representation_check(const Row& r, const dirac::WaveParams& w, const std::vector<double>& grid);
// [z_turn - 3, z_turn + 0.5]
std::vector<double> interior_grid(const dirac::WaveParams& w, int n = 400);

}  // namespace hspinor::bessel_repr

#pragma once

// Spin-1/2 quasi-plane waves on H3. After separation the Dirac system reduces
// to the coupled pair
//   (D - 1 - ip) f1 + e^z (i k1 + k2) f2 = 0
//   (D - 1 + ip) f2 - e^z (i k1 - k2) f1 = 0,      D = d/dz,
// with f3 = r f1, f4 = r f2, r = (eps - p)/m, p = +-sqrt(eps^2 - m^2).
// Type I/II are the two Kummer solutions, y = 2|k| e^z, a = ip.

#include <array>
#include <optional>
#include <string_view>
#include <vector>

#include "hspinor/types.hpp"

namespace hspinor::dirac {

struct WaveParams {
  double epsilon = 5.0;
  double k1 = 3.0, k2 = 4.0;
  double m = 3.0;
  int helicity = +1;

  double p() const;
  double kperp() const;
  Complex a() const { return {0.0, p()}; }
  // e^{i alpha} = (k2 + i k1)/|k|
  Complex alpha_phase() const;
  double y_of(double z) const;
  // |p| = |k| e^{z_turn}
  double z_turn() const;
  // (eps - p)/m computed without cancellation
  double ratio() const;

  // eps^2 > m^2, helicity +-1, finite; need_k: k != 0; need_mass: m > 0
  void validate(bool need_k = true, bool need_mass = true) const;
};

enum class SolutionType { I, II };
std::string_view to_string(SolutionType t);
SolutionType type_from_string(std::string_view s);

// the relative factors as published, or the ones that satisfy the coupled
// system (the published ones do not; see README)
enum class FactorConvention { Validated, AsPrinted };

struct BuildOptions {
  FactorConvention factors = FactorConvention::Validated;
  Complex m_plus_scale = 1.0;   // multiplies M+ (test-of-test perturbations)
  Complex m_minus_scale = 1.0;  // multiplies M-
};

// M+ (type I) and M- (type II) for given a = ip and e^{i alpha}
Complex m_plus(Complex a, Complex ea, FactorConvention c);
Complex m_minus(Complex a, Complex ea, FactorConvention c);

struct Pair {
  Jet f1, f2;
};

// the two-component core for an arbitrary real p (used by Weyl with p = -eps
// and by the Pauli check with p = sqrt(2mE))
Pair build_pair(SolutionType t, double p, double k1, double k2, double z, const BuildOptions& o = {});

struct SpinorSample {
  double z = 0.0;
  std::array<Jet, 4> f;
};

SpinorSample build_solution(SolutionType t, const WaveParams& w, double z, const BuildOptions& o = {});

enum class AxialBranch { C1, C2 };
// k = 0: C1 -> (1, 0, r, 0) e^z e^{ipz}, C2 -> (0, 1, 0, r) e^z e^{-ipz}; m = 0 allowed
SpinorSample axial_solution(const WaveParams& w, AxialBranch b, double z);

// residual lines; each returns the line value and writes the largest term magnitude
struct Line {
  Complex r;
  double scale;
};
std::array<Line, 2> first_order_lines(double p, double k1, double k2, double z, const Jet& f1, const Jet& f2);
std::array<Line, 4> separated_lines(const WaveParams& w, double z, const SpinorSample& s);
std::array<Line, 4> helicity_lines(const WaveParams& w, double p, double z, const SpinorSample& s);
// f'' - 3 f' + (p^2 + i p + 2 - Z^2) f, Z = |k| e^z; the f2 equation is this with p -> -p
Line second_order_line(double p, double kperp, double z, const Jet& f);

ResidualReport separated_system_residual(SolutionType t, const WaveParams& w, const std::vector<double>& grid,
                                         const BuildOptions& o = {}, double tol = 1e-8);
// p_claimed defaults to w.p(); pass -w.p() to see that the state is not a -p eigenstate
ResidualReport helicity_residual(SolutionType t, const WaveParams& w, const std::vector<double>& grid,
                                 std::optional<double> p_claimed = std::nullopt, const BuildOptions& o = {},
                                 double tol = 1e-8);
ResidualReport first_order_residual(SolutionType t, const WaveParams& w, const std::vector<double>& grid,
                                    const BuildOptions& o = {}, double tol = 1e-8);
// which = 1: f1 in its equation; 2: f2 in the p -> -p equation;
// swap_p: plug f1 into the f2 equation (and vice versa), which must fail
ResidualReport second_order_residual(int which, SolutionType t, const WaveParams& w, const std::vector<double>& grid,
                                     bool swap_p = false, double tol = 1e-8);
// f1 <-> f2, p -> -p (with k1 -> -k1) maps solutions to solutions
ResidualReport symmetry_residual(SolutionType t, const WaveParams& w, const std::vector<double>& grid,
                                 double tol = 1e-8);
// max |f3/f1 - r|, |f4/f2 - r| relative to |r| where |f1|,|f2| > 1e-10
ResidualReport ratio_invariant(SolutionType t, const WaveParams& w, const std::vector<double>& grid,
                               double tol = 1e-12);

struct Independence {
  double min_normalized_det = 0.0;  // |W| / (|f1I f2II| + |f1II f2I|)
  double det_drift = 0.0;           // spread of W e^{-2z} relative to its mean
};
Independence independence(double p, double k1, double k2, const std::vector<double>& grid);

// flat-space reference, k3 = sqrt(eps^2 - m^2 - k1^2 - k2^2)
struct FlatWave {
  double k3 = 0.0;
  Complex f2_over_f1;  // -(+-i k3 - i p)/(i k1 + k2)
  int branch = +1;     // e^{+- i k3 z}
};
FlatWave flat_space_solution(const WaveParams& w, int branch);
// residual of the flat system for f1 = e^{+-ik3 z}, f2 = ratio f1
double flat_space_residual(const WaveParams& w, const FlatWave& fw, double z);

// flat limit: z = x3/R, eps = E R, m = M R, k = P R (c = hbar = 1)
struct FlatLimitConfig {
  double E = 5.0, M = 3.0, P1 = 0.03, P2 = 0.04;
  int helicity = +1;
  std::vector<double> radii{10.0, 50.0, 250.0};
  double x3_min = -1.0, x3_max = 1.0;
  int points = 201;
};
struct FlatLimitRow {
  double R = 0.0;
  SolutionType type = SolutionType::I;
  double p0 = 0.0;           // signed expected wavenumber (+p0 type I, -p0 type II, times helicity)
  double k3 = 0.0;           // flat-space k3 (same sign)
  double max_dev_p0 = 0.0;   // max |k_loc - p0| / |p0|
  double max_dev_k3 = 0.0;   // max |k_loc - k3| / |k3|
  bool capped = false;       // 2 R K_perp past the kernel range; row skipped
};
std::vector<FlatLimitRow> flat_limit_study(const FlatLimitConfig& c);

// nonrelativistic reduction: eps = m + E
struct PauliCheck {
  ResidualReport large_small_system;    // four first-order equations for f, F, g, G (exact p)
  ResidualReport elimination_exact;     // small components from (E + 2m): exact
  ResidualReport elimination_2m;        // small components with 2m in place of E + 2m: O(E/m)
  ResidualReport second_order_pauli;    // second-order pair for p = sqrt(2mE), analytic derivatives
  ResidualReport identity;              // the commutator identity, from jets
  double small_large_ratio = 0.0;       // max |g|/|f| on the grid
  double p_over_2m = 0.0;
  double p_gap = 0.0;                   // (sqrt((E+m)^2 - m^2) - sqrt(2mE)) / sqrt(2mE)
  double gap_bound = 0.0;               // E/(4m)
};
PauliCheck pauli_reduction_check(double m, double E, double k1, double k2, int helicity,
                                 const std::vector<double>& grid);

// [z_turn - 6, z_turn + 2]
std::vector<double> standard_grid(const WaveParams& w, int n = 8192);

}  // namespace hspinor::dirac

#pragma once

// Independent numerics for checking the closed forms: an adaptive
// Dormand-Prince 5(4) integrator with dense output, finite-difference
// residuals, and closed-form vs integration comparison.
//
// Every system is integrated as a first-order complex system. The right-hand
// sides are written here from the equations; the residual side calls the
// owning module's operator, so the two can be checked against each other.

#include <functional>
#include <vector>

#include "hspinor/dirac.hpp"
#include "hspinor/types.hpp"

namespace hspinor::oracle {

using State = std::vector<Complex>;

// coefficients for one system; which fields are read depends on the id
struct SystemParams {
  double epsilon = 5.0;
  double k1 = 3.0, k2 = 4.0;
  double p = 4.0;          // Dirac/Weyl/phi: the signed p (Weyl: p = sign * eps)
  Complex a = 0.0, c = 0.0;  // Kummer
  Complex nu = 0.0;          // Bessel
  double kperp() const;
};

struct System {
  SystemId id;
  SystemParams prm;

  int dimension() const { return 2; }
  bool second_order() const;
  // independent variable: z, except y (Kummer) and X = |x| (Bessel, x = iX)
  State rhs(double t, const State& s) const;
  // fastest local oscillation rate (radians per unit t)
  double oscillation_rate(double t) const;
  // relative residual from the owning module's operator; comps are the
  // solution components as jets in t (second-order systems: one component)
  double residual_at(double t, const std::vector<Jet>& comps) const;
};

// parameters derived from a wave: scalar uses (eps, k), Dirac p, Weyl
// p = helicity * eps (helicity -1 is the published substitution), Kummer
// a = ip, c = 2a, Bessel nu = ip - 1/2
System make_system(SystemId id, const dirac::WaveParams& w);

struct Tolerances {
  double rtol = 1e-12;
  double atol = 1e-14;
  long max_steps = 2000000;
};

class Trajectory {
 public:
  double t_start() const { return t0_; }
  double t_end() const { return t1_; }
  const State& final_state() const { return final_; }
  long steps() const { return long(seg_.size()); }
  State operator()(double t) const;

 private:
  friend Trajectory integrate(const System&, double, double, const State&, const Tolerances&);
  struct Segment {
    double t, h;
    State r[5];
  };
  double t0_ = 0.0, t1_ = 0.0;
  State final_;
  std::vector<Segment> seg_;
};

Trajectory integrate(const System& sys, double t_start, double t_end, const State& y0, const Tolerances& tol = {});

enum class Derivatives { Analytic, FiniteDifference };

// component jets at t (values only are used in FiniteDifference mode)
using Sampler = std::function<std::vector<Jet>(double)>;

ResidualReport residual_norm(const System& sys, const Sampler& f, const std::vector<double>& grid, Derivatives mode,
                             double tol = 1e-6);

using StateSampler = std::function<State(double)>;
double compare(const StateSampler& closed_form, const Trajectory& tr, const std::vector<double>& grid);

// closed-form reference for each system (the dominant solution, see README)
struct Reference {
  System sys;
  double t_start = 0.0, t_end = 0.0;  // seed point and end of the run
  StateSampler state;                 // closed-form state
  Sampler jets;                       // closed-form component jets
  std::string label;
};
Reference reference(SystemId id, const dirac::WaveParams& w);

struct RunResult {
  SystemId id;
  std::string label;
  double deviation = 0.0;  // compare() over the run grid
  long steps = 0;
};
// seed at t_start from the closed form, integrate, compare on n points
RunResult closed_form_run(SystemId id, const dirac::WaveParams& w, int n = 200);

// |y(t0) - back(forward(y(t0)))| / |y(t0)|
double round_trip_error(const System& sys, double t0, double t1, const State& y0, const Tolerances& tol = {});

}  // namespace hspinor::oracle

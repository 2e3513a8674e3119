#include <cmath>
#include <random>

#include "doctest.h"
#include "hspinor/oracle.hpp"
#include "hspinor/scalar.hpp"
#include "hspinor/special_functions.hpp"

using namespace hspinor;
using namespace hspinor::oracle;

namespace {

const dirac::WaveParams base{5.0, 3.0, 4.0, 3.0, +1};

System scalar_k0(double eps) {
  System s{SystemId::ScalarSchrodinger, {}};
  s.prm.epsilon = eps;
  s.prm.k1 = 0.0;
  s.prm.k2 = 0.0;
  return s;
}

// f'' - 2f' + eps f = 0: f = e^{(1 + i kappa) z}
State exp_state(double eps, double z) {
  const Complex r(1.0, std::sqrt(eps - 1.0));
  const Complex f = std::exp(r * z);
  return {f, r * f};
}

// scalar f1 jets for FD checks
Sampler scalar_f1(const scalar::ScalarParams& p) {
  return [p](double z) { return std::vector<Jet>{scalar::scalar_solution(scalar::Variant::F1, p, z)}; };
}

System scalar_sys(const scalar::ScalarParams& p) {
  System s{SystemId::ScalarSchrodinger, {}};
  s.prm.epsilon = p.epsilon;
  s.prm.k1 = p.k1;
  s.prm.k2 = p.k2;
  return s;
}

}  // namespace

TEST_CASE("integrator: k = 0 exponential") {
  const auto sys = scalar_k0(5.0);
  const auto tr = integrate(sys, -5.0, 0.0, exp_state(5.0, -5.0));
  CHECK(compare([](double z) { return exp_state(5.0, z); }, tr, linspace(-5.0, 0.0, 101)) < 1e-10);
  const State end = exp_state(5.0, 0.0);
  CHECK(std::abs(tr.final_state()[0] - end[0]) < 1e-10);
  CHECK(tr.t_start() == -5.0);
  CHECK(tr.t_end() == 0.0);
}

TEST_CASE("integrator: Dirac pair seeded at z = -6") {
  const auto ref = reference(SystemId::DiracFirstOrder, base);
  const auto tr = integrate(ref.sys, -6.0, base.z_turn() + 2.0, ref.state(-6.0));
  CHECK(compare(ref.state, tr, linspace(-6.0, base.z_turn() + 2.0, 200)) < 1e-6);
}

TEST_CASE("integrator: Kummer ODE from the series at y = 0.1") {
  const auto sys = make_system(SystemId::KummerOde, base);
  const Complex a = sys.prm.a, c = sys.prm.c;
  CHECK(std::abs(a - Complex(0.0, 4.0)) == 0.0);
  const auto j = sf::kummer_phi_jet({a, c, 0.1});
  const auto tr = integrate(sys, 0.1, 10.0, {j.value, j.d1});
  CHECK(std::abs(tr.final_state()[0] - sf::kummer_phi({a, c, 10.0})) < 1e-8 * std::abs(sf::kummer_phi({a, c, 10.0})));
}

TEST_CASE("residual_norm") {
  const scalar::ScalarParams p{5.0, 3.0, 4.0};
  const auto sys = scalar_sys(p);
  CHECK(residual_norm(sys, scalar_f1(p), linspace(-5.0, 0.0, 101), Derivatives::Analytic).max_rel_residual < 1e-10);
  const double coarse = residual_norm(sys, scalar_f1(p), linspace(-5.0, 0.0, 512), Derivatives::FiniteDifference)
                            .max_rel_residual;
  CHECK(coarse < 1e-6);
  // fourth order: halving h gains about 16
  const double c1 = residual_norm(sys, scalar_f1(p), linspace(-5.0, 0.0, 129), Derivatives::FiniteDifference)
                        .max_rel_residual;
  const double c2 = residual_norm(sys, scalar_f1(p), linspace(-5.0, 0.0, 257), Derivatives::FiniteDifference)
                        .max_rel_residual;
  CHECK(c1 / c2 >= 8.0);
  // noisy samples are not solutions
  std::mt19937_64 rng(5);
  std::normal_distribution<double> n(0.0, 1e-3);
  const Sampler noisy = [&](double z) {
    auto j = scalar::scalar_solution(scalar::Variant::F1, p, z);
    j.v *= 1.0 + n(rng);
    return std::vector<Jet>{j};
  };
  // draws must be reproducible regardless of threading: sample serially
  std::vector<Jet> cache;
  const auto g = linspace(-5.0, 0.0, 512);
  for (double z : g) cache.push_back(noisy(z)[0]);
  const Sampler fixed = [&](double z) {
    const auto i = std::size_t(std::lround((z + 5.0) / 5.0 * 511.0));
    return std::vector<Jet>{cache[i]};
  };
  CHECK(residual_norm(sys, fixed, g, Derivatives::FiniteDifference).max_rel_residual > 1e-1);
  CHECK_THROWS_AS(residual_norm(sys, scalar_f1(p), linspace(-5.0, 4.0, 20), Derivatives::FiniteDifference),
                  NumericalError);
  CHECK_THROWS_AS(residual_norm(sys, scalar_f1(p), {0.0, 0.1, 0.3, 0.4, 0.5}, Derivatives::FiniteDifference),
                  ParameterError);
}

TEST_CASE("compare") {
  const auto ref = reference(SystemId::DiracFirstOrder, base);
  const auto tr = integrate(ref.sys, ref.t_start, ref.t_end, ref.state(ref.t_start));
  const auto grid = linspace(ref.t_start, ref.t_end, 100);
  CHECK(compare([&](double t) { return tr(t); }, tr, grid) == 0.0);
  const StateSampler other = [](double z) {
    const auto p = dirac::build_pair(dirac::SolutionType::II, base.p(), base.k1, base.k2, z);
    return State{p.f1.v, p.f2.v};
  };
  CHECK(compare(other, tr, grid) > 0.1);
}

TEST_CASE("closed forms against integration, every system") {
  for (int h : {+1, -1}) {
    dirac::WaveParams w = base;
    w.helicity = h;
    for (auto id : all_systems) {
      const auto r = closed_form_run(id, w);
      CAPTURE(to_string(id));
      CAPTURE(h);
      CHECK(r.deviation < 1e-6);
      CHECK(r.steps > 0);
      // the reference's analytic jets satisfy the owning module's operator
      const auto ref = reference(id, w);
      CHECK(residual_norm(ref.sys, ref.jets, linspace(ref.t_start, ref.t_end, 64), Derivatives::Analytic)
                .max_rel_residual < 1e-8);
    }
  }
}

TEST_CASE("time symmetry") {
  for (auto id : all_systems) {
    const auto ref = reference(id, base);
    // the first six units of each run; y and X runs map [z_turn - 6, z_turn]
    const double t0 = ref.t_start;
    double t1 = t0 + 6.0;
    if (id == SystemId::KummerOde) t1 = base.y_of(base.z_turn());
    if (id == SystemId::BesselOde) t1 = base.kperp() * std::exp(base.z_turn());
    CAPTURE(to_string(id));
    CHECK(round_trip_error(ref.sys, t0, t1, ref.state(t0)) < 1e-9);
  }
}

TEST_CASE("rhs agrees with the module operators") {
  std::mt19937_64 rng(3);
  for (auto id : all_systems) {
    const auto ref = reference(id, base);
    std::uniform_real_distribution<double> u(ref.t_start, ref.t_end);
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) {
      const double t = u(rng);
      const State s = ref.state(t);
      const State d = ref.sys.rhs(t, s);
      std::vector<Jet> comps;
      if (ref.sys.second_order()) {
        comps.push_back({s[0], d[0], d[1]});
      } else {
        // first-order systems read values and first derivatives only
        comps.push_back({s[0], d[0], 0.0});
        comps.push_back({s[1], d[1], 0.0});
      }
      worst = std::max(worst, ref.sys.residual_at(t, comps));
    }
    CAPTURE(to_string(id));
    CHECK(worst < 1e-14);
  }
}

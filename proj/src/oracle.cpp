#include <algorithm>
#include <cmath>
#include <sstream>

#include "hspinor/bessel_repr.hpp"
#include "hspinor/oracle.hpp"
#include "hspinor/parallel.hpp"
#include "hspinor/scalar.hpp"
#include "hspinor/special_functions.hpp"
#include "hspinor/weyl.hpp"

namespace hspinor::oracle {

namespace {

constexpr double two_pi = 6.283185307179586476925286766559;

// Dormand-Prince 5(4)
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561, a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247, a64 = 49.0 / 176,
                 a65 = -5103.0 / 18656;
constexpr double a71 = 35.0 / 384, a73 = 500.0 / 1113, a74 = 125.0 / 192, a75 = -2187.0 / 6784, a76 = 11.0 / 84;
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920, e5 = -17253.0 / 339200, e6 = 22.0 / 525,
                 e7 = -1.0 / 40;
// dense output (Hairer & Wanner)
constexpr double d1 = -12715105075.0 / 11282082432, d3 = 87487479700.0 / 32700410799,
                 d4 = -10690763975.0 / 1880347072, d5 = 701980252875.0 / 199316789632,
                 d6 = -1453857185.0 / 822651844, d7 = 69997945.0 / 29380423;

State axpy(const State& y, double h, std::initializer_list<std::pair<double, const State*>> terms) {
  State out = y;
  for (std::size_t i = 0; i < y.size(); ++i) {
    Complex s = 0.0;
    for (const auto& [c, k] : terms) s += c * (*k)[i];
    out[i] += h * s;
  }
  return out;
}

Jet to_jet(const sf::ArgJet& g) { return {g.value, g.d1, g.d2}; }

}  // namespace

double SystemParams::kperp() const { return std::hypot(k1, k2); }

bool System::second_order() const {
  switch (id) {
    case SystemId::DiracFirstOrder:
    case SystemId::Weyl:
    case SystemId::PhiSystem: return false;
    default: return true;
  }
}

State System::rhs(double t, const State& s) const {
  const double K2 = prm.k1 * prm.k1 + prm.k2 * prm.k2;
  const double p = prm.p;
  switch (id) {
    case SystemId::ScalarSchrodinger: {
      // f'' = 2 f' - (eps - K^2 e^{2z}) f
      const double w = prm.epsilon - K2 * std::exp(2.0 * t);
      return {s[1], 2.0 * s[1] - w * s[0]};
    }
    case SystemId::ScalarPhi: {
      const double w = prm.epsilon - 1.0 - K2 * std::exp(2.0 * t);
      return {s[1], -w * s[0]};
    }
    case SystemId::DiracFirstOrder:
    case SystemId::Weyl: {
      const double e = std::exp(t);
      const Complex up = Complex(prm.k2, prm.k1), dn = Complex(-prm.k2, prm.k1);
      return {(1.0 + I * p) * s[0] - e * up * s[1], (1.0 - I * p) * s[1] + e * dn * s[0]};
    }
    case SystemId::DiracSecondOrder: {
      const Complex q = Complex(p * p + 2.0 - K2 * std::exp(2.0 * t), p);
      return {s[1], 3.0 * s[1] - q * s[0]};
    }
    case SystemId::PhiSystem: {
      const double Z = std::sqrt(K2) * std::exp(t);
      return {I * p * s[0] - Z * s[1], -I * p * s[1] - Z * s[0]};
    }
    case SystemId::KummerOde:
      return {s[1], ((t - prm.c) * s[1] + prm.a * s[0]) / t};
    case SystemId::BesselOde:
      // F(iX): F_XX = -F_X / X + (1 + nu^2 / X^2) F
      return {s[1], -s[1] / t + (1.0 + prm.nu * prm.nu / (t * t)) * s[0]};
  }
  return s;
}

double System::oscillation_rate(double t) const {
  switch (id) {
    case SystemId::ScalarSchrodinger:
    case SystemId::ScalarPhi: return std::sqrt(std::max(prm.epsilon - 1.0, 1.0));
    case SystemId::KummerOde: return std::abs(prm.c.imag()) / std::abs(t) + 1.0;
    case SystemId::BesselOde: return std::abs(prm.nu) / std::abs(t) + 1.0;
    default: return std::max(std::abs(prm.p), 1.0);
  }
}

double System::residual_at(double t, const std::vector<Jet>& c) const {
  auto rel2 = [](const std::array<dirac::Line, 2>& l) {
    return std::max(relative_residual(l[0].r, {l[0].scale}), relative_residual(l[1].r, {l[1].scale}));
  };
  switch (id) {
    case SystemId::ScalarSchrodinger: {
      double s = 0;
      const Complex r = scalar::schrodinger_residual({prm.epsilon, prm.k1, prm.k2}, t, c[0], &s);
      return relative_residual(r, {s});
    }
    case SystemId::ScalarPhi: {
      double s = 0;
      const Complex r = scalar::phi_residual({prm.epsilon, prm.k1, prm.k2}, t, c[0], &s);
      return relative_residual(r, {s});
    }
    case SystemId::DiracFirstOrder: return rel2(dirac::first_order_lines(prm.p, prm.k1, prm.k2, t, c[0], c[1]));
    case SystemId::DiracSecondOrder: {
      const auto l = dirac::second_order_line(prm.p, prm.kperp(), t, c[0]);
      return relative_residual(l.r, {l.scale});
    }
    case SystemId::Weyl: {
      const weyl::WeylParams wp{std::abs(prm.p), prm.k1, prm.k2, prm.p < 0 ? -1 : 1};
      return rel2(weyl::weyl_lines(wp, t, c[0], c[1]));
    }
    case SystemId::PhiSystem: return rel2(bessel_repr::phi_system_lines(prm.p, prm.kperp(), t, c[0], c[1]));
    case SystemId::KummerOde: {
      double s = 0;
      const Complex r = sf::kummer_ode_residual({prm.a, prm.c, t}, {c[0].v, c[0].d1, c[0].d2}, &s);
      return relative_residual(r, {s});
    }
    case SystemId::BesselOde: {
      // back to x = iX: F_x = -i F_X, F_xx = -F_XX
      const auto l = bessel_repr::bessel_equation_line(prm.nu, Complex(0.0, t), {c[0].v, -I * c[0].d1, -c[0].d2});
      return relative_residual(l.r, {l.scale});
    }
  }
  return 0.0;
}

System make_system(SystemId id, const dirac::WaveParams& w) {
  System s{id, {}};
  s.prm.epsilon = w.epsilon;
  s.prm.k1 = w.k1;
  s.prm.k2 = w.k2;
  switch (id) {
    case SystemId::ScalarSchrodinger:
    case SystemId::ScalarPhi: break;
    case SystemId::Weyl: s.prm.p = w.helicity * w.epsilon; break;
    default: s.prm.p = w.p(); break;
  }
  s.prm.a = Complex(0.0, w.p());
  s.prm.c = 2.0 * s.prm.a;
  s.prm.nu = Complex(-0.5, w.p());
  return s;
}

State Trajectory::operator()(double t) const {
  const double lo = std::min(t0_, t1_), hi = std::max(t0_, t1_);
  const double slack = 1e-12 * std::max(1.0, std::abs(hi - lo));
  if (t < lo - slack || t > hi + slack) {
    std::ostringstream os;
    os << "dense output requested at t = " << t << " outside [" << lo << ", " << hi << "]";
    throw ParameterError(os.str());
  }
  // segments are ordered along the direction of integration
  const bool fwd = t1_ >= t0_;
  auto it = std::partition_point(seg_.begin(), seg_.end(),
                                 [&](const Segment& s) { return fwd ? s.t + s.h < t : s.t + s.h > t; });
  if (it == seg_.end()) it = seg_.end() - 1;
  const Segment& s = *it;
  const double th = (t - s.t) / s.h, th1 = 1.0 - th;
  State y(s.r[0].size());
  for (std::size_t i = 0; i < y.size(); ++i)
    y[i] = s.r[0][i] + th * (s.r[1][i] + th1 * (s.r[2][i] + th * (s.r[3][i] + th1 * s.r[4][i])));
  return y;
}

Trajectory integrate(const System& sys, double t_start, double t_end, const State& y0, const Tolerances& tol) {
  if (int(y0.size()) != sys.dimension()) throw ParameterError("initial state has the wrong dimension");
  if (t_start == t_end) throw ParameterError("empty integration interval");
  Trajectory tr;
  tr.t0_ = t_start;
  tr.t1_ = t_end;
  const double dir = t_end > t_start ? 1.0 : -1.0;
  const double span = std::abs(t_end - t_start);
  double t = t_start;
  State y = y0;
  State k1 = sys.rhs(t, y);
  double h = dir * std::min(span, 1e-3 / sys.oscillation_rate(t));
  double err_prev = 1e-4;
  long steps = 0;
  while (dir * (t_end - t) > 0.0) {
    if (++steps > tol.max_steps) {
      std::ostringstream os;
      os << "integration exceeded " << tol.max_steps << " steps at z = " << t;
      throw NumericalError(ErrorKind::StepUnderflow, os.str());
    }
    if (dir * (t + h - t_end) > 0.0) h = t_end - t;
    if (std::abs(h) < 1e-14 * std::max(1.0, std::abs(t))) {
      std::ostringstream os;
      os << "step size underflow at z = " << t;
      throw NumericalError(ErrorKind::StepUnderflow, os.str());
    }
    const State k2 = sys.rhs(t + c2 * h, axpy(y, h, {{a21, &k1}}));
    const State k3 = sys.rhs(t + c3 * h, axpy(y, h, {{a31, &k1}, {a32, &k2}}));
    const State k4 = sys.rhs(t + c4 * h, axpy(y, h, {{a41, &k1}, {a42, &k2}, {a43, &k3}}));
    const State k5 = sys.rhs(t + c5 * h, axpy(y, h, {{a51, &k1}, {a52, &k2}, {a53, &k3}, {a54, &k4}}));
    const State k6 = sys.rhs(t + h, axpy(y, h, {{a61, &k1}, {a62, &k2}, {a63, &k3}, {a64, &k4}, {a65, &k5}}));
    const State yn = axpy(y, h, {{a71, &k1}, {a73, &k3}, {a74, &k4}, {a75, &k5}, {a76, &k6}});
    const State k7 = sys.rhs(t + h, yn);
    double err = 0.0;
    for (std::size_t i = 0; i < y.size(); ++i) {
      const Complex e = h * (e1 * k1[i] + e3 * k3[i] + e4 * k4[i] + e5 * k5[i] + e6 * k6[i] + e7 * k7[i]);
      const double sc = tol.atol + tol.rtol * std::max(std::abs(y[i]), std::abs(yn[i]));
      err = std::max(err, std::abs(e) / sc);
    }
    if (!std::isfinite(err)) {
      h *= 0.2;
      continue;
    }
    if (err <= 1.0) {
      Trajectory::Segment s{t, h, {}};
      s.r[0] = y;
      s.r[1].resize(y.size());
      s.r[2].resize(y.size());
      s.r[3].resize(y.size());
      s.r[4].resize(y.size());
      for (std::size_t i = 0; i < y.size(); ++i) {
        const Complex dy = yn[i] - y[i];
        s.r[1][i] = dy;
        s.r[2][i] = h * k1[i] - dy;
        s.r[3][i] = dy - h * k7[i] - s.r[2][i];
        s.r[4][i] = h * (d1 * k1[i] + d3 * k3[i] + d4 * k4[i] + d5 * k5[i] + d6 * k6[i] + d7 * k7[i]);
      }
      tr.seg_.push_back(std::move(s));
      t += h;
      y = yn;
      k1 = k7;
      // PI step control
      const double fac = 0.9 * std::pow(std::max(err, 1e-10), -0.7 / 5) * std::pow(err_prev, 0.4 / 5);
      h *= std::clamp(fac, 0.2, 5.0);
      err_prev = std::max(err, 1e-4);
    } else {
      h *= std::max(0.2, 0.9 * std::pow(err, -0.2));
    }
  }
  tr.final_ = y;
  return tr;
}

ResidualReport residual_norm(const System& sys, const Sampler& f, const std::vector<double>& grid, Derivatives mode,
                             double tol) {
  std::ostringstream name;
  name << to_string(sys.id) << (mode == Derivatives::Analytic ? " (analytic derivatives)" : " (finite differences)");
  if (mode == Derivatives::Analytic) {
    auto rep = max_residual(name.str(), grid, tol, [&](double t) { return sys.residual_at(t, f(t)); });
    rep.system = sys.id;
    return rep;
  }
  if (grid.size() < 5) throw ParameterError("finite differences need at least 5 grid points");
  const double h = (grid.back() - grid.front()) / double(grid.size() - 1);
  for (std::size_t i = 1; i < grid.size(); ++i) {
    if (std::abs(grid[i] - grid[i - 1] - h) > 1e-6 * std::abs(h))
      throw ParameterError("finite differences need a uniform grid");
  }
  for (double t : grid) {
    if (std::abs(h) * sys.oscillation_rate(t) > two_pi / 16.0) {
      std::ostringstream os;
      os << "grid under-resolved at t = " << t << ": fewer than 16 points per wavelength";
      throw NumericalError(ErrorKind::UnderResolved, os.str());
    }
  }
  const auto vals = map_grid(grid, f);
  const std::size_t nc = vals[0].size();
  std::vector<double> inner(grid.begin() + 2, grid.end() - 2);
  std::vector<std::vector<Jet>> jets(inner.size(), std::vector<Jet>(nc));
  for (std::size_t i = 2; i + 2 < grid.size(); ++i) {
    for (std::size_t c = 0; c < nc; ++c) {
      const Complex fm2 = vals[i - 2][c].v, fm1 = vals[i - 1][c].v, f0 = vals[i][c].v, fp1 = vals[i + 1][c].v,
                    fp2 = vals[i + 2][c].v;
      jets[i - 2][c] = {f0, (-fp2 + 8.0 * fp1 - 8.0 * fm1 + fm2) / (12.0 * h),
                        (-fp2 + 16.0 * fp1 - 30.0 * f0 + 16.0 * fm1 - fm2) / (12.0 * h * h)};
    }
  }
  ResidualReport rep;
  rep.check = name.str();
  rep.system = sys.id;
  rep.grid = inner;
  rep.tolerance_used = tol;
  for (std::size_t i = 0; i < inner.size(); ++i) {
    double r = sys.residual_at(inner[i], jets[i]);
    if (std::isnan(r)) r = INFINITY;
    if (r > rep.max_rel_residual) {
      rep.max_rel_residual = r;
      rep.argmax_z = inner[i];
    }
  }
  return rep;
}

double compare(const StateSampler& closed_form, const Trajectory& tr, const std::vector<double>& grid) {
  const auto dev = map_grid(grid, [&](double t) {
    const State a = closed_form(t), b = tr(t);
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]) / std::max(std::abs(a[i]), 1e-13));
    return d;
  });
  return *std::max_element(dev.begin(), dev.end());
}

Reference reference(SystemId id, const dirac::WaveParams& w) {
  Reference r{make_system(id, w), 0.0, 0.0, {}, {}, ""};
  const auto type = dirac::SolutionType::I;
  auto two = [](const Jet& f) { return State{f.v, f.d1}; };
  switch (id) {
    case SystemId::ScalarSchrodinger:
    case SystemId::ScalarPhi: {
      const scalar::ScalarParams sp{w.epsilon, w.k1, w.k2};
      const double z0 = scalar::critical_point(sp);
      r.t_start = z0 - 6.0;
      r.t_end = z0 + 2.0;
      const bool phi = id == SystemId::ScalarPhi;
      r.label = phi ? "scalar phi f1" : "scalar f1";
      r.jets = [sp, phi](double z) {
        return std::vector<Jet>{phi ? scalar::scalar_phi(scalar::Variant::F1, sp, z)
                                    : scalar::scalar_solution(scalar::Variant::F1, sp, z)};
      };
      break;
    }
    case SystemId::DiracFirstOrder:
    case SystemId::DiracSecondOrder: {
      w.validate();
      r.t_start = w.z_turn() - 6.0;
      r.t_end = w.z_turn() + 2.0;
      const bool first = id == SystemId::DiracFirstOrder;
      r.label = first ? "Dirac type I (f1, f2)" : "Dirac type I f1";
      r.jets = [w, first, type](double z) {
        const auto pr = dirac::build_pair(type, w.p(), w.k1, w.k2, z);
        return first ? std::vector<Jet>{pr.f1, pr.f2} : std::vector<Jet>{pr.f1};
      };
      break;
    }
    case SystemId::Weyl: {
      const auto wp = weyl::WeylParams::from_wave(w);
      const auto g = weyl::standard_grid(wp, 2);
      r.t_start = g.front();
      r.t_end = g.back();
      r.label = "Weyl type I";
      r.jets = [wp, type](double z) {
        const auto h = weyl::build_weyl(type, wp, z);
        return std::vector<Jet>{h.h1, h.h2};
      };
      break;
    }
    case SystemId::PhiSystem: {
      w.validate(true, false);
      r.t_start = w.z_turn() - 6.0;
      r.t_end = w.z_turn() + 2.0;
      r.label = "phi pair, Bessel I";
      r.jets = [w](double z) {
        const auto ph = bessel_repr::build_bessel_solution({bessel_repr::Representation::Bessel, type}, w, z);
        return std::vector<Jet>{ph.phi1, ph.phi2};
      };
      break;
    }
    case SystemId::KummerOde: {
      w.validate(true, false);
      r.t_start = w.y_of(w.z_turn() - 6.0);
      r.t_end = w.y_of(w.z_turn() + 2.0);
      r.label = "Phi(ip, 2ip, y)";
      const Complex a = r.sys.prm.a, c = r.sys.prm.c;
      r.jets = [a, c](double y) { return std::vector<Jet>{to_jet(sf::kummer_phi_jet({a, c, y}))}; };
      break;
    }
    case SystemId::BesselOde: {
      w.validate(true, false);
      r.t_start = w.kperp() * std::exp(w.z_turn() - 6.0);
      r.t_end = w.kperp() * std::exp(w.z_turn() + 2.0);
      r.label = "J_nu(iX)";
      const Complex nu = r.sys.prm.nu;
      r.jets = [nu](double X) {
        const auto g = sf::cylinder_jet(sf::Cylinder::J, {nu, Complex(0.0, X)});
        // d/dX = i d/dx
        return std::vector<Jet>{{g.value, I * g.d1, -g.d2}};
      };
      break;
    }
  }
  const bool second = r.sys.second_order();
  const Sampler jets = r.jets;
  r.state = [jets, second, two](double t) {
    const auto j = jets(t);
    return second ? two(j[0]) : State{j[0].v, j[1].v};
  };
  return r;
}

RunResult closed_form_run(SystemId id, const dirac::WaveParams& w, int n) {
  const Reference ref = reference(id, w);
  const Trajectory tr = integrate(ref.sys, ref.t_start, ref.t_end, ref.state(ref.t_start));
  RunResult out{id, ref.label, 0.0, tr.steps()};
  out.deviation = compare(ref.state, tr, linspace(ref.t_start, ref.t_end, n));
  return out;
}

double round_trip_error(const System& sys, double t0, double t1, const State& y0, const Tolerances& tol) {
  const auto fwd = integrate(sys, t0, t1, y0, tol);
  const auto back = integrate(sys, t1, t0, fwd.final_state(), tol);
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < y0.size(); ++i) {
    num = std::max(num, std::abs(back.final_state()[i] - y0[i]));
    den = std::max(den, std::abs(y0[i]));
  }
  return num / den;
}

}  // namespace hspinor::oracle

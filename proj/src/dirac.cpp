#include <algorithm>
#include <cmath>
#include <sstream>

#include "hspinor/dirac.hpp"
#include "hspinor/parallel.hpp"
#include "hspinor/special_functions.hpp"
#include "zjet.hpp"

namespace hspinor::dirac {

using detail::arg_to_z;
using detail::power_exp;

namespace {

// e^z f as a jet
Jet ez(double z, const Jet& f) { return detail::exp_jet(1.0, z) * f; }

// D - 1 - s applied to f: value only
Complex shifted(const Jet& f, Complex s) { return f.d1 - (1.0 + s) * f.v; }

double mag(Complex c) { return std::abs(c); }

double max_rel(std::initializer_list<Line> lines) {
  double m = 0.0;
  for (const auto& l : lines) m = std::max(m, relative_residual(l.r, {l.scale}));
  return m;
}

template <std::size_t N>
double max_rel(const std::array<Line, N>& lines) {
  double m = 0.0;
  for (const auto& l : lines) m = std::max(m, relative_residual(l.r, {l.scale}));
  return m;
}

void check_finite(const Jet& j) {
  if (!detail::finite(j)) throw NumericalError(ErrorKind::Overflow, "Dirac solution overflows binary64");
}

}  // namespace

double WaveParams::p() const { return helicity * std::sqrt(epsilon * epsilon - m * m); }
double WaveParams::kperp() const { return std::hypot(k1, k2); }
Complex WaveParams::alpha_phase() const { return Complex(k2, k1) / kperp(); }
double WaveParams::y_of(double z) const { return 2.0 * kperp() * std::exp(z); }
double WaveParams::z_turn() const { return std::log(std::abs(p()) / kperp()); }

double WaveParams::ratio() const {
  const double pp = p();
  // the two forms agree; pick the one without cancellation
  if (std::abs(epsilon + pp) >= std::abs(epsilon - pp)) return m / (epsilon + pp);
  return (epsilon - pp) / m;
}

void WaveParams::validate(bool need_k, bool need_mass) const {
  if (!std::isfinite(epsilon) || !std::isfinite(k1) || !std::isfinite(k2) || !std::isfinite(m))
    throw ParameterError("wave parameters must be finite");
  if (helicity != 1 && helicity != -1) throw ParameterError("helicity must be +1 or -1");
  if (m < 0.0) throw ParameterError("mass must be non-negative");
  if (!(epsilon * epsilon > m * m)) {
    std::ostringstream os;
    os << "eps^2 = " << epsilon * epsilon << " must exceed m^2 = " << m * m << " (propagating regime)";
    throw ParameterError(os.str());
  }
  if (need_mass && m == 0.0) throw ParameterError("m = 0: the massless case is handled by the Weyl builder");
  if (need_k && kperp() == 0.0) throw ParameterError("k1 = k2 = 0: use the axial solution");
}

std::string_view to_string(SolutionType t) { return t == SolutionType::I ? "I" : "II"; }

SolutionType type_from_string(std::string_view s) {
  if (s == "I" || s == "i" || s == "1") return SolutionType::I;
  if (s == "II" || s == "ii" || s == "2") return SolutionType::II;
  throw ParameterError("unknown solution type '" + std::string(s) + "' (I, II)");
}

Complex m_plus(Complex a, Complex ea, FactorConvention c) {
  if (c == FactorConvention::AsPrinted) return 2.0 * ea * (1.0 + 2.0 * a);
  return -2.0 * ea * (1.0 + 2.0 * a);
}

Complex m_minus(Complex a, Complex ea, FactorConvention c) {
  if (c == FactorConvention::AsPrinted) return 2.0 / ea * (1.0 - 2.0 * a);
  return -ea / (2.0 * (1.0 - 2.0 * a));
}

Pair build_pair(SolutionType t, double p, double k1, double k2, double z, const BuildOptions& o) {
  const double kk = std::hypot(k1, k2);
  if (kk == 0.0) throw ParameterError("k1 = k2 = 0: use the axial solution");
  const Complex ea = Complex(k2, k1) / kk;
  const Complex a(0.0, p);
  const double y = 2.0 * kk * std::exp(z);
  Pair out;
  if (t == SolutionType::I) {
    const Complex mp = m_plus(a, ea, o.factors) * o.m_plus_scale;
    out.f1 = mp * (power_exp(1.0 + a, -1.0, y) * arg_to_z(sf::kummer_phi_jet({a, 2.0 * a, y}), y));
    out.f2 = power_exp(2.0 + a, -1.0, y) * arg_to_z(sf::kummer_phi_jet({a + 1.0, 2.0 * a + 2.0, y}), y);
  } else {
    const Complex mm = m_minus(a, ea, o.factors) * o.m_minus_scale;
    out.f1 = mm * (power_exp(2.0 - a, -1.0, y) * arg_to_z(sf::kummer_phi_jet({1.0 - a, 2.0 - 2.0 * a, y}), y));
    out.f2 = power_exp(1.0 - a, -1.0, y) * arg_to_z(sf::kummer_phi_jet({-a, -2.0 * a, y}), y);
  }
  check_finite(out.f1);
  check_finite(out.f2);
  return out;
}

SpinorSample build_solution(SolutionType t, const WaveParams& w, double z, const BuildOptions& o) {
  w.validate(true, true);
  const Pair pr = build_pair(t, w.p(), w.k1, w.k2, z, o);
  const double r = w.ratio();
  return {z, {pr.f1, pr.f2, r * pr.f1, r * pr.f2}};
}

SpinorSample axial_solution(const WaveParams& w, AxialBranch b, double z) {
  w.validate(false, false);
  if (w.kperp() != 0.0) throw ParameterError("axial solution needs k1 = k2 = 0");
  const double r = w.ratio();
  const double p = w.p();
  SpinorSample s{z, {}};
  if (b == AxialBranch::C1) {
    s.f[0] = detail::exp_jet(Complex(1.0, p), z);
    s.f[2] = r * s.f[0];
  } else {
    s.f[1] = detail::exp_jet(Complex(1.0, -p), z);
    s.f[3] = r * s.f[1];
  }
  return s;
}

std::array<Line, 2> first_order_lines(double p, double k1, double k2, double z, const Jet& f1, const Jet& f2) {
  const double e = std::exp(z);
  const Complex c1(k2, k1), c2(-k2, k1);  // i k1 + k2, i k1 - k2
  const Complex u1 = e * c1 * f2.v, u2 = e * c2 * f1.v;
  return {Line{shifted(f1, I * p) + u1, std::max({mag(f1.d1), mag(f1.v) * std::hypot(1.0, p), mag(u1)})},
          Line{shifted(f2, -I * p) - u2, std::max({mag(f2.d1), mag(f2.v) * std::hypot(1.0, p), mag(u2)})}};
}

std::array<Line, 4> separated_lines(const WaveParams& w, double z, const SpinorSample& s) {
  const double e = std::exp(z);
  const double eps = w.epsilon, m = w.m, k1 = w.k1, k2 = w.k2;
  const auto& f = s.f;
  auto dm1 = [](const Jet& j) { return j.d1 - j.v; };
  std::array<Line, 4> out;
  {
    const Complex t1 = -I * eps * f[2].v, t2 = -I * k1 * e * f[3].v, t3 = -k2 * e * f[3].v, t4 = -dm1(f[2]),
                  t5 = I * m * f[0].v;
    out[0] = {t1 + t2 + t3 + t4 + t5, std::max({mag(t1), mag(t2), mag(t3), mag(f[2].d1), mag(f[2].v), mag(t5)})};
  }
  {
    const Complex t1 = -I * eps * f[3].v, t2 = -I * k1 * e * f[2].v, t3 = k2 * e * f[2].v, t4 = dm1(f[3]),
                  t5 = I * m * f[1].v;
    out[1] = {t1 + t2 + t3 + t4 + t5, std::max({mag(t1), mag(t2), mag(t3), mag(f[3].d1), mag(f[3].v), mag(t5)})};
  }
  {
    const Complex t1 = -I * eps * f[0].v, t2 = I * k1 * e * f[1].v, t3 = k2 * e * f[1].v, t4 = dm1(f[0]),
                  t5 = I * m * f[2].v;
    out[2] = {t1 + t2 + t3 + t4 + t5, std::max({mag(t1), mag(t2), mag(t3), mag(f[0].d1), mag(f[0].v), mag(t5)})};
  }
  {
    const Complex t1 = -I * eps * f[1].v, t2 = I * k1 * e * f[0].v, t3 = -k2 * e * f[0].v, t4 = -dm1(f[1]),
                  t5 = I * m * f[3].v;
    out[3] = {t1 + t2 + t3 + t4 + t5, std::max({mag(t1), mag(t2), mag(t3), mag(f[1].d1), mag(f[1].v), mag(t5)})};
  }
  return out;
}

std::array<Line, 4> helicity_lines(const WaveParams& w, double p, double z, const SpinorSample& s) {
  const double e = std::exp(z);
  const Complex up(w.k1, -w.k2), dn(w.k1, w.k2);  // k1 - i k2, k1 + i k2
  auto pair = [&](const Jet& g1, const Jet& g2, Line* out) {
    const Complex a1 = e * up * g2.v, b1 = -I * (g1.d1 - g1.v), c1 = -p * g1.v;
    const Complex a2 = e * dn * g1.v, b2 = I * (g2.d1 - g2.v), c2 = -p * g2.v;
    out[0] = {a1 + b1 + c1, std::max({mag(a1), mag(g1.d1), mag(g1.v), mag(c1)})};
    out[1] = {a2 + b2 + c2, std::max({mag(a2), mag(g2.d1), mag(g2.v), mag(c2)})};
  };
  std::array<Line, 4> out;
  pair(s.f[0], s.f[1], &out[0]);
  pair(s.f[2], s.f[3], &out[2]);
  return out;
}

Line second_order_line(double p, double kperp, double z, const Jet& f) {
  const double Z2 = kperp * kperp * std::exp(2.0 * z);
  const Complex c(p * p + 2.0, p);
  const Complex r = f.d2 - 3.0 * f.d1 + (c - Z2) * f.v;
  return {r, std::max({mag(f.d2), 3.0 * mag(f.d1), mag(c) * mag(f.v), Z2 * mag(f.v)})};
}

ResidualReport separated_system_residual(SolutionType t, const WaveParams& w, const std::vector<double>& grid,
                                         const BuildOptions& o, double tol) {
  w.validate();
  auto rep = max_residual("Dirac separated system, type " + std::string(to_string(t)), grid, tol, [&](double z) {
    return max_rel(separated_lines(w, z, build_solution(t, w, z, o)));
  });
  return rep;
}

ResidualReport helicity_residual(SolutionType t, const WaveParams& w, const std::vector<double>& grid,
                                 std::optional<double> p_claimed, const BuildOptions& o, double tol) {
  w.validate();
  const double p = p_claimed.value_or(w.p());
  std::ostringstream name;
  name << "helicity eigen-equation (p = " << p << "), type " << to_string(t);
  return max_residual(name.str(), grid, tol, [&](double z) {
    return max_rel(helicity_lines(w, p, z, build_solution(t, w, z, o)));
  });
}

ResidualReport first_order_residual(SolutionType t, const WaveParams& w, const std::vector<double>& grid,
                                    const BuildOptions& o, double tol) {
  w.validate();
  auto rep = max_residual("Dirac coupled pair, type " + std::string(to_string(t)), grid, tol, [&](double z) {
    const Pair pr = build_pair(t, w.p(), w.k1, w.k2, z, o);
    return max_rel(first_order_lines(w.p(), w.k1, w.k2, z, pr.f1, pr.f2));
  });
  rep.system = SystemId::DiracFirstOrder;
  return rep;
}

ResidualReport second_order_residual(int which, SolutionType t, const WaveParams& w, const std::vector<double>& grid,
                                     bool swap_p, double tol) {
  w.validate();
  if (which != 1 && which != 2) throw ParameterError("component must be 1 or 2");
  // f1 obeys the equation with p, f2 the one with -p
  const double p_eq = ((which == 1) != swap_p) ? w.p() : -w.p();
  std::ostringstream name;
  name << "second-order equation for f" << which << " (p -> " << p_eq << "), type " << to_string(t);
  auto rep = max_residual(name.str(), grid, tol, [&](double z) {
    const Pair pr = build_pair(t, w.p(), w.k1, w.k2, z);
    const Line l = second_order_line(p_eq, w.kperp(), z, which == 1 ? pr.f1 : pr.f2);
    return relative_residual(l.r, {l.scale});
  });
  rep.system = SystemId::DiracSecondOrder;
  return rep;
}

ResidualReport symmetry_residual(SolutionType t, const WaveParams& w, const std::vector<double>& grid, double tol) {
  w.validate();
  return max_residual("swap symmetry f1 <-> f2, p -> -p, k1 -> -k1", grid, tol, [&](double z) {
    const Pair pr = build_pair(t, w.p(), w.k1, w.k2, z);
    return max_rel(first_order_lines(-w.p(), -w.k1, w.k2, z, pr.f2, pr.f1));
  });
}

ResidualReport ratio_invariant(SolutionType t, const WaveParams& w, const std::vector<double>& grid, double tol) {
  w.validate();
  const double r = w.ratio();
  const double r_alt = (w.epsilon - w.p()) / w.m;
  return max_residual("ratio f3/f1 = f4/f2 = (eps - p)/m", grid, tol, [&](double z) {
    const auto s = build_solution(t, w, z);
    double worst = std::abs(r - r_alt) / std::abs(r);
    for (int c : {0, 1}) {
      if (std::abs(s.f[c].v) > 1e-10) worst = std::max(worst, std::abs(s.f[c + 2].v / s.f[c].v - r_alt) / std::abs(r));
    }
    return worst;
  });
}

Independence independence(double p, double k1, double k2, const std::vector<double>& grid) {
  struct Pt {
    Complex w;
    double norm;
  };
  const auto pts = map_grid(grid, [&](double z) {
    const Pair a = build_pair(SolutionType::I, p, k1, k2, z);
    const Pair b = build_pair(SolutionType::II, p, k1, k2, z);
    const Complex x = a.f1.v * b.f2.v, y = b.f1.v * a.f2.v;
    return Pt{(x - y) * std::exp(-2.0 * z), (std::abs(x) + std::abs(y)) * std::exp(-2.0 * z)};
  });
  Independence out;
  out.min_normalized_det = 1.0;
  Complex mean = 0.0;
  for (const auto& q : pts) {
    out.min_normalized_det = std::min(out.min_normalized_det, std::abs(q.w) / q.norm);
    mean += q.w;
  }
  mean /= double(pts.size());
  for (const auto& q : pts) out.det_drift = std::max(out.det_drift, std::abs(q.w - mean) / std::abs(mean));
  return out;
}

FlatWave flat_space_solution(const WaveParams& w, int branch) {
  w.validate(true, false);
  if (branch != 1 && branch != -1) throw ParameterError("branch must be +1 or -1");
  const double k32 = w.epsilon * w.epsilon - w.m * w.m - w.k1 * w.k1 - w.k2 * w.k2;
  if (!(k32 > 0.0)) {
    std::ostringstream os;
    os << "evanescent mode: k3^2 = " << k32 << " <= 0";
    throw ParameterError(os.str());
  }
  FlatWave fw;
  fw.k3 = std::sqrt(k32);
  fw.branch = branch;
  fw.f2_over_f1 = -(I * (branch * fw.k3) - I * w.p()) / Complex(w.k2, w.k1);
  return fw;
}

double flat_space_residual(const WaveParams& w, const FlatWave& fw, double z) {
  const Complex kz = I * (fw.branch * fw.k3);
  const Complex f1 = std::exp(kz * z), f2 = fw.f2_over_f1 * f1;
  const double p = w.p();
  const Complex c1(w.k2, w.k1), c2(-w.k2, w.k1);
  // (D - ip) f1 + (ik1 + k2) f2,  (D + ip) f2 - (ik1 - k2) f1
  const Complex l1 = (kz - I * p) * f1 + c1 * f2;
  const Complex l2 = (kz + I * p) * f2 - c2 * f1;
  const double s1 = std::max({std::abs(kz * f1), std::abs(p * f1), std::abs(c1 * f2)});
  const double s2 = std::max({std::abs(kz * f2), std::abs(p * f2), std::abs(c2 * f1)});
  return std::max(relative_residual(l1, {s1}), relative_residual(l2, {s2}));
}

std::vector<FlatLimitRow> flat_limit_study(const FlatLimitConfig& c) {
  if (!(c.E * c.E > c.M * c.M) || c.M < 0.0) throw ParameterError("flat limit needs E^2 > M^2, M >= 0");
  if (c.radii.empty()) throw ParameterError("flat limit needs at least one radius");
  for (std::size_t i = 1; i < c.radii.size(); ++i)
    if (!(c.radii[i] > c.radii[i - 1])) throw ParameterError("radii must increase");
  const double P = std::hypot(c.P1, c.P2);
  if (P == 0.0) throw ParameterError("flat limit needs a transverse momentum");
  const double p0 = std::sqrt(c.E * c.E - c.M * c.M);
  const double k3sq = p0 * p0 - P * P;
  if (!(k3sq > 0.0)) throw ParameterError("flat limit: transverse momentum exceeds p0 (evanescent)");
  const auto x3 = linspace(c.x3_min, c.x3_max, c.points);

  std::vector<FlatLimitRow> rows;
  for (double R : c.radii) {
    // p = helicity sqrt(eps^2 - m^2) scales exactly with R
    const double p = c.helicity * R * p0;
    for (SolutionType t : {SolutionType::I, SolutionType::II}) {
      FlatLimitRow row;
      row.R = R;
      row.type = t;
      const double sgn = (t == SolutionType::I ? 1.0 : -1.0) * c.helicity;
      row.p0 = sgn * p0;
      row.k3 = sgn * std::sqrt(k3sq);
      const double y_max = 2.0 * R * P * std::exp(c.x3_max / R);
      if (y_max > 600.0) {
        row.capped = true;
        rows.push_back(row);
        continue;
      }
      const auto k_loc = map_grid(x3, [&](double x) {
        const Pair pr = build_pair(t, p, c.P1 * R, c.P2 * R, x / R);
        return (pr.f1.d1 / pr.f1.v).imag() / R;
      });
      for (double k : k_loc) {
        row.max_dev_p0 = std::max(row.max_dev_p0, std::abs(k - row.p0) / p0);
        row.max_dev_k3 = std::max(row.max_dev_k3, std::abs(k - row.k3) / std::abs(row.k3));
      }
      rows.push_back(row);
    }
  }
  return rows;
}

PauliCheck pauli_reduction_check(double m, double E, double k1, double k2, int helicity,
                                 const std::vector<double>& grid) {
  if (!(m > 0.0) || !(E > 0.0)) throw ParameterError("Pauli reduction needs m > 0 and E > 0");
  const WaveParams w{m + E, k1, k2, m, helicity};
  w.validate();
  const double eps = w.epsilon;
  const double p_nr = helicity * std::sqrt(2.0 * m * E);
  const Complex c1(k2, k1), c2(-k2, k1);
  PauliCheck out;

  struct Big {
    Jet f, F, g, G;
  };
  auto big_small = [&](double z) {
    const auto s = build_solution(SolutionType::I, w, z);
    const Complex h = 0.5, hi = 1.0 / (2.0 * I);
    return Big{h * (s.f[0] + s.f[2]), h * (s.f[1] + s.f[3]), hi * (s.f[0] - s.f[2]), hi * (s.f[1] - s.f[3])};
  };

  out.large_small_system = max_residual("large/small component system", grid, 1e-10, [&](double z) {
    const Big b = big_small(z);
    const double e = std::exp(z);
    auto dm1 = [](const Jet& j) { return j.d1 - j.v; };
    const Complex a1 = e * c2 * b.g.v, a2 = (eps - m) * b.F.v;
    const Complex b1 = e * c2 * b.f.v, b2 = (eps + m) * b.G.v;
    const Complex g1 = e * c1 * b.G.v, g2 = (eps - m) * b.f.v;
    const Complex h1 = e * c1 * b.F.v, h2 = (eps + m) * b.g.v;
    return max_rel({Line{dm1(b.G) - a1 + a2, std::max({mag(b.G.d1), mag(b.G.v), mag(a1), mag(a2)})},
                    Line{dm1(b.F) - b1 - b2, std::max({mag(b.F.d1), mag(b.F.v), mag(b1), mag(b2)})},
                    Line{dm1(b.g) + g1 - g2, std::max({mag(b.g.d1), mag(b.g.v), mag(g1), mag(g2)})},
                    Line{dm1(b.f) + h1 + h2, std::max({mag(b.f.d1), mag(b.f.v), mag(h1), mag(h2)})}});
  });

  auto elimination = [&](const char* name, double denom, double tol) {
    return max_residual(name, grid, tol, [&, denom](double z) {
      const Big b = big_small(z);
      const double e = std::exp(z);
      const Complex G = ((b.F.d1 - b.F.v) - e * c2 * b.f.v) / denom;
      const Complex g = -((b.f.d1 - b.f.v) + e * c1 * b.F.v) / denom;
      return std::max(std::abs(G - b.G.v) / std::abs(b.G.v), std::abs(g - b.g.v) / std::abs(b.g.v));
    });
  };
  out.elimination_exact = elimination("small components, exact elimination", E + 2.0 * m, 1e-10);
  // replacing E + 2m by 2m is an O(E/m) relative change
  out.elimination_2m = elimination("small components, nonrelativistic elimination", 2.0 * m, E / m);

  // second-order pair and the 0 = 0 identity, for the nonrelativistic p
  auto pauli_lines = [&](double z, bool identity) {
    const Pair pr = build_pair(SolutionType::I, p_nr, k1, k2, z);
    const double e = std::exp(z);
    const double K2 = (k1 * k1 + k2 * k2) * e * e;
    if (!identity) {
      // [D^2 - 2D + 1 - e^{2z} K^2 + p^2] f - coupling
      auto op = [&](const Jet& f) { return f.d2 - 2.0 * f.d1 + (1.0 + p_nr * p_nr - K2) * f.v; };
      auto sc = [&](const Jet& f) {
        return std::max({mag(f.d2), 2.0 * mag(f.d1), (1.0 + p_nr * p_nr) * mag(f.v), K2 * mag(f.v)});
      };
      const Complex u2 = e * c2 * pr.f1.v, u1 = e * c1 * pr.f2.v;
      return max_rel({Line{op(pr.f2) - u2, std::max(sc(pr.f2), mag(u2))},
                      Line{op(pr.f1) + u1, std::max(sc(pr.f1), mag(u1))}});
    }
    // (D - 1 - ip)(e^z c2 f1) - e^z c2 (D - 1 - ip) f1 - e^z c2 f1, and the f2 partner
    const Jet u = c2 * ez(z, pr.f1), v = -c1 * ez(z, pr.f2);
    const Complex l1 = shifted(u, I * p_nr) - e * c2 * shifted(pr.f1, I * p_nr) - e * c2 * pr.f1.v;
    const Complex l2 = shifted(v, -I * p_nr) + e * c1 * shifted(pr.f2, -I * p_nr) + e * c1 * pr.f2.v;
    const double s1 = std::max({mag(u.d1), mag(u.v) * std::hypot(1.0, p_nr), e * mag(c2) * mag(pr.f1.d1)});
    const double s2 = std::max({mag(v.d1), mag(v.v) * std::hypot(1.0, p_nr), e * mag(c1) * mag(pr.f2.d1)});
    return std::max(relative_residual(l1, {s1}), relative_residual(l2, {s2}));
  };
  out.second_order_pauli = max_residual("nonrelativistic second-order pair", grid, 1e-10,
                                        [&](double z) { return pauli_lines(z, false); });
  out.identity = max_residual("0 = 0 commutator identity", grid, 1e-10,
                              [&](double z) { return pauli_lines(z, true); });

  const auto ratios = map_grid(grid, [&](double z) {
    const Big b = big_small(z);
    return std::abs(b.g.v) / std::abs(b.f.v);
  });
  out.small_large_ratio = *std::max_element(ratios.begin(), ratios.end());
  out.p_over_2m = std::abs(w.p()) / (2.0 * m);
  const double p_exact = std::sqrt(eps * eps - m * m), p_approx = std::sqrt(2.0 * m * E);
  out.p_gap = (p_exact - p_approx) / p_approx;
  out.gap_bound = E / (4.0 * m);
  return out;
}

std::vector<double> standard_grid(const WaveParams& w, int n) {
  w.validate(true, false);
  const double zt = w.z_turn();
  return linspace(zt - 6.0, zt + 2.0, n);
}

}  // namespace hspinor::dirac

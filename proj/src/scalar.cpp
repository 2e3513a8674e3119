#include <cmath>
#include <sstream>

#include "hspinor/parallel.hpp"
#include "hspinor/scalar.hpp"
#include "hspinor/special_functions.hpp"
#include "zjet.hpp"

namespace hspinor::scalar {

using detail::arg_to_z;
using detail::power_exp;

namespace {
constexpr double pi = 3.141592653589793238462643383279502884;
}

void ScalarParams::validate(bool need_k) const {
  if (!std::isfinite(epsilon) || !std::isfinite(k1) || !std::isfinite(k2))
    throw ParameterError("scalar parameters must be finite");
  if (!(epsilon > 1.0)) {
    std::ostringstream os;
    os << "epsilon = " << epsilon << " must exceed 1 (propagating regime)";
    throw ParameterError(os.str());
  }
  if (need_k && kperp2() == 0.0) throw ParameterError("k1 = k2 = 0: use the axial solution");
}

std::string_view to_string(Variant v) {
  switch (v) {
    case Variant::F1: return "f1";
    case Variant::F2: return "f2";
    case Variant::F5: return "f5";
    case Variant::F7: return "f7";
  }
  return "?";
}

Variant variant_from_string(std::string_view s) {
  if (s == "f1" || s == "F1") return Variant::F1;
  if (s == "f2" || s == "F2") return Variant::F2;
  if (s == "f5" || s == "F5") return Variant::F5;
  if (s == "f7" || s == "F7") return Variant::F7;
  throw ParameterError("unknown scalar variant '" + std::string(s) + "' (f1, f2, f5, f7)");
}

double potential(double z, const ScalarParams& p) {
  const double v = 1.0 + p.kperp2() * std::exp(2.0 * z);
  if (!std::isfinite(v)) throw NumericalError(ErrorKind::Overflow, "potential overflows binary64");
  return v;
}

Jet scalar_solution(Variant v, const ScalarParams& p, double z) {
  p.validate();
  const Complex a = p.a();
  const double y = p.y_of(z);
  Jet f;
  switch (v) {
    case Variant::F1:
      f = power_exp(a + 0.5, -1.0, y) * arg_to_z(sf::kummer_phi_jet({a, 2.0 * a, y}), y);
      break;
    case Variant::F2:
      // y^{a+1/2} y^{1-2a} = y^{3/2-a}
      f = power_exp(1.5 - a, -1.0, y) * arg_to_z(sf::kummer_phi_jet({1.0 - a, 2.0 - 2.0 * a, y}), y);
      break;
    case Variant::F5:
      f = power_exp(a + 0.5, -1.0, y) * arg_to_z(sf::tricomi_psi_jet({a, 2.0 * a, y}), y);
      break;
    case Variant::F7: {
      // e^{-y/2} e^{y} Psi(a,2a,-y); d/dy Psi(-y) = -Psi'(-y)
      const auto g = sf::tricomi_psi_jet({a, 2.0 * a, -y});
      f = power_exp(a + 0.5, +1.0, y) * arg_to_z({g.value, -g.d1, g.d2}, y);
      break;
    }
  }
  if (!detail::finite(f)) throw NumericalError(ErrorKind::Overflow, "scalar solution overflows binary64");
  return f;
}

Jet scalar_phi(Variant v, const ScalarParams& p, double z) {
  return detail::exp_jet(-1.0, z) * scalar_solution(v, p, z);
}

namespace {

// the pure exponentials stay defined at the threshold eps = 1 (f = e^z)
void validate_axial(const ScalarParams& p, int sign) {
  if (p.epsilon == 1.0 && std::isfinite(p.k1) && std::isfinite(p.k2)) {
    if (sign != 1 && sign != -1) throw ParameterError("sign must be +1 or -1");
    return;
  }
  p.validate(false);
  if (sign != 1 && sign != -1) throw ParameterError("sign must be +1 or -1");
}

}  // namespace

Jet axial_scalar(const ScalarParams& p, int sign, double z) {
  validate_axial(p, sign);
  return detail::exp_jet(Complex(1.0, sign * p.kappa()), z);
}

Jet axial_phi(const ScalarParams& p, int sign, double z) {
  validate_axial(p, sign);
  return detail::exp_jet(Complex(0.0, sign * p.kappa()), z);
}

Complex schrodinger_residual(const ScalarParams& p, double z, const Jet& f, double* scale) {
  const double w = p.kperp2() * std::exp(2.0 * z);
  const Complex r = f.d2 - 2.0 * f.d1 + (p.epsilon - w) * f.v;
  if (scale) {
    *scale = std::max({std::abs(f.d2), 2.0 * std::abs(f.d1), p.epsilon * std::abs(f.v), w * std::abs(f.v)});
  }
  return r;
}

Complex phi_residual(const ScalarParams& p, double z, const Jet& phi, double* scale) {
  const double w = p.kperp2() * std::exp(2.0 * z);
  const Complex r = phi.d2 + (p.epsilon - 1.0 - w) * phi.v;
  if (scale) *scale = std::max({std::abs(phi.d2), (p.epsilon - 1.0) * std::abs(phi.v), w * std::abs(phi.v)});
  return r;
}

ResidualReport ode_residual(Variant v, const ScalarParams& p, const std::vector<double>& z_grid, double tol) {
  auto rep = max_residual("scalar " + std::string(to_string(v)) + " (f-equation)", z_grid, tol, [&](double z) {
    double s = 0.0;
    const Complex r = schrodinger_residual(p, z, scalar_solution(v, p, z), &s);
    return relative_residual(r, {s});
  });
  rep.system = SystemId::ScalarSchrodinger;
  return rep;
}

ResidualReport phi_ode_residual(Variant v, const ScalarParams& p, const std::vector<double>& z_grid, double tol) {
  auto rep = max_residual("scalar " + std::string(to_string(v)) + " (phi-equation)", z_grid, tol, [&](double z) {
    double s = 0.0;
    const Complex r = phi_residual(p, z, scalar_phi(v, p, z), &s);
    return relative_residual(r, {s});
  });
  rep.system = SystemId::ScalarPhi;
  return rep;
}

ConnectionCheck kummer_connection_check(const ScalarParams& p, const std::vector<double>& z_grid, double tol) {
  p.validate();
  const Complex a = p.a();
  const Complex w7 = -std::exp(-2.0 * pi * I * a);
  auto line = [&](const char* name, auto lhs_of_y, Complex w) {
    return max_residual(name, z_grid, tol, [&, w](double z) {
      const double y = p.y_of(z);
      const Complex lhs = lhs_of_y(y);
      const Complex rhs = sf::kummer_connection_sum(a, y, w);
      return std::abs(lhs - rhs) / std::abs(lhs);
    });
  };
  // the common factor y^{a+1/2} e^{-y/2} cancels in the relative residual;
  // Y5 = Psi(a,2a,y), Y7 = e^y Psi(a,2a,-y)
  auto y5 = [&](double y) { return sf::tricomi_psi_integral({a, 2.0 * a, y}); };
  auto y7 = [&](double y) { return std::exp(y) * sf::tricomi_psi_integral({a, 2.0 * a, -y}); };
  ConnectionCheck c;
  c.f5 = line("connection f5 = c1 f1 + c2 f2", y5, 1.0);
  c.f7_printed = line("connection f7 = c1 f1 - c2 f2 (printed)", y7, -1.0);
  c.f7_corrected = line("connection f7 = c1 f1 - e^{-2 pi i a} c2 f2", y7, w7);
  return c;
}

Reflection reflection_coefficient(double epsilon, std::optional<std::pair<double, double>> k) {
  ScalarParams p{epsilon, 0.0, 0.0};
  p.validate(false);
  const Complex a = p.a();
  const Complex g1 = sf::gamma_complex(1.0 - 2.0 * a), g2 = sf::gamma_complex(2.0 * a - 1.0);
  const Complex g3 = sf::gamma_complex(a), g4 = sf::gamma_complex(1.0 - a);
  Reflection r;
  const double ratio = std::abs(g1) * std::abs(g3) / (std::abs(g2) * std::abs(g4));
  r.R = ratio * ratio;
  if (k) {
    const double kk = std::hypot(k->first, k->second);
    if (kk == 0.0) throw ParameterError("amplitudes need k != 0");
    const double kap = p.kappa();
    r.m_minus = g1 / g4 * std::pow(Complex(2.0 * kk), Complex(1.0, -kap));
    r.m_plus = g2 / g3 * std::pow(Complex(2.0 * kk), Complex(1.0, kap));
  }
  return r;
}

double critical_point(const ScalarParams& p) {
  p.validate();
  return std::log(std::sqrt((p.epsilon - 1.0) / p.kperp2()));
}

double critical_point_dimensional(double E, double M, double rho, double K1, double K2, double hbar) {
  if (!(rho > 0.0) || !(hbar > 0.0) || !(M > 0.0)) throw ParameterError("rho, hbar, M must be positive");
  const double eps = 2.0 * M * E * rho * rho / (hbar * hbar);
  const double kk = (K1 * K1 + K2 * K2) * rho * rho;
  if (!(eps > 1.0)) throw ParameterError("2 M E rho^2 / hbar^2 must exceed 1");
  if (kk == 0.0) throw ParameterError("transverse momentum must be nonzero");
  return rho * std::log(std::sqrt((eps - 1.0) / kk));
}

std::vector<double> default_grid(const ScalarParams& p, int n) {
  const double z0 = critical_point(p);
  return linspace(z0 - 8.0, z0 + 4.0, n);
}

}  // namespace hspinor::scalar

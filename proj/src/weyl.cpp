#include <algorithm>
#include <cmath>
#include <sstream>

#include "hspinor/parallel.hpp"
#include "hspinor/weyl.hpp"

namespace hspinor::weyl {

void WeylParams::validate() const {
  if (!std::isfinite(epsilon) || !std::isfinite(k1) || !std::isfinite(k2))
    throw ParameterError("Weyl parameters must be finite");
  if (!(epsilon > 0.0)) throw ParameterError("Weyl energy must be positive");
  if (sign != 1 && sign != -1) throw ParameterError("sign must be +1 or -1");
  if (std::hypot(k1, k2) == 0.0) throw ParameterError("k1 = k2 = 0 is not covered by the Weyl builder");
}

WeylParams WeylParams::from_wave(const dirac::WaveParams& w) {
  return {w.epsilon, w.k1, w.k2, w.helicity};
}

WeylPair build_weyl(dirac::SolutionType t, const WeylParams& p, double z, const dirac::BuildOptions& o) {
  p.validate();
  const auto pr = dirac::build_pair(t, p.p(), p.k1, p.k2, z, o);
  return {pr.f1, pr.f2};
}

std::array<dirac::Line, 2> weyl_lines(const WeylParams& p, double z, const Jet& h1, const Jet& h2) {
  const double e = std::exp(z);
  // with sign = -1: (D - 1 + i eps) h1, (D - 1 - i eps) h2
  const Complex s1 = 1.0 + I * p.p(), s2 = 1.0 - I * p.p();
  const Complex u = e * Complex(p.k2, p.k1) * h2.v;   // e^z (i k1 + k2) h2
  const Complex v = e * Complex(-p.k2, p.k1) * h1.v;  // e^z (i k1 - k2) h1
  const double g = std::abs(s1);
  return {dirac::Line{h1.d1 - s1 * h1.v + u, std::max({std::abs(h1.d1), g * std::abs(h1.v), std::abs(u)})},
          dirac::Line{h2.d1 - s2 * h2.v - v, std::max({std::abs(h2.d1), g * std::abs(h2.v), std::abs(v)})}};
}

ResidualReport weyl_system_residual(dirac::SolutionType t, const WeylParams& p, const std::vector<double>& grid,
                                    const dirac::BuildOptions& o, double tol) {
  p.validate();
  auto rep = max_residual("Weyl system, type " + std::string(dirac::to_string(t)), grid, tol, [&](double z) {
    const auto h = build_weyl(t, p, z, o);
    const auto l = weyl_lines(p, z, h.h1, h.h2);
    return std::max(relative_residual(l[0].r, {l[0].scale}), relative_residual(l[1].r, {l[1].scale}));
  });
  rep.system = SystemId::Weyl;
  return rep;
}

double dirac_agreement(dirac::SolutionType t, const WeylParams& p, double mass, const std::vector<double>& grid) {
  p.validate();
  const dirac::WaveParams w{p.epsilon, p.k1, p.k2, mass, p.sign};
  const auto d = map_grid(grid, [&](double z) {
    const auto h = build_weyl(t, p, z);
    const auto s = dirac::build_solution(t, w, z);
    return std::max(std::abs(h.h1.v - s.f[0].v) / std::abs(h.h1.v), std::abs(h.h2.v - s.f[1].v) / std::abs(h.h2.v));
  });
  return *std::max_element(d.begin(), d.end());
}

std::vector<double> standard_grid(const WeylParams& p, int n) {
  p.validate();
  const double zt = std::log(p.epsilon / std::hypot(p.k1, p.k2));
  return linspace(zt - 6.0, zt + 2.0, n);
}

}  // namespace hspinor::weyl

#include <array>
#include <cmath>
#include <optional>
#include <sstream>

#include "extended.hpp"
#include "hspinor/special_functions.hpp"

namespace hspinor::sf {

using detail::qcomplex;
using detail::qreal;

namespace {

constexpr double pi = 3.141592653589793238462643383279502884;
constexpr int series_cap = 10000;

inline Complex rg(const Complex& z) { return rgamma_complex(z); }
// grids evaluate the same four orders over and over; 1/Gamma in binary128
// would otherwise be a large part of each call
qcomplex rg(const qcomplex& z) {
  struct Entry {
    qcomplex z, g;
    bool used = false;
  };
  thread_local std::array<Entry, 8> cache;
  thread_local std::size_t next = 0;
  for (const auto& e : cache)
    if (e.used && e.z == z) return e.g;
  Entry& e = cache[next];
  next = (next + 1) % cache.size();
  e = {z, detail::rgamma_q(z), true};
  return e.g;
}

template <class C>
struct JetT {
  C v, d1, d2;
};

void check_order(Complex nu) {
  if (detail::near_nonpositive_integer(nu, pole_tolerance) && std::abs(nu) > 0.5) {
    std::ostringstream os;
    os << "Bessel order nu = " << nu << " is a negative integer";
    detail::fail(ErrorKind::Degenerate, os.str());
  }
}

void check_finite(const ArgJet& j, const char* what) {
  for (Complex v : {j.value, j.d1, j.d2})
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      detail::fail(ErrorKind::Overflow, std::string(what) + " overflowed binary64");
}

// J_nu and its x-derivatives from the ascending series, differentiated
// termwise: with t_n = (-x^2/4)^n / (n! G(nu+n+1)),
//   J = (x/2)^nu S0,  J' = (x/2)^nu S1 / x,  J'' = (x/2)^nu S2 / x^2,
// S0 = sum t_n, S1 = sum t_n (nu+2n), S2 = sum t_n (nu+2n)(nu+2n-1).
// cond receives the worst cancellation factor over the three sums.
template <class C>
JetT<C> j_series_t(const C& nu, const C& x, detail::real_t<C> tol, detail::real_t<C>* cond) {
  using std::abs;
  using std::exp;
  using std::log;
  using R = detail::real_t<C>;
  auto l1 = [](const C& z) {
    using std::fabs;
    return R(fabs(z.real()) + fabs(z.imag()));
  };
  const C w = -x * x / R(4);
  C t = rg(nu + R(1));
  C s0(0), s1(0), s2(0);
  R a0(0), a1(0), a2(0);
  int small = 0;
  for (int n = 0;; ++n) {
    if (n == series_cap)
      detail::fail(ErrorKind::NonConvergence, "Bessel series did not converge within the iteration cap");
    const C e = nu + R(2 * n);
    const C u0 = t, u1 = t * e, u2 = t * e * (e - R(1));
    s0 += u0;
    s1 += u1;
    s2 += u2;
    if (cond) {
      a0 += abs(u0);
      a1 += abs(u1);
      a2 += abs(u2);
    }
    // |re| + |im| avoids hypot (slow in binary128); halving keeps the test at
    // least as strict as the modulus one
    const R half_tol = R(0.5) * tol;
    if (l1(u0) <= half_tol * l1(s0) && l1(u1) <= half_tol * l1(s1) && l1(u2) <= half_tol * l1(s2)) {
      if (++small == 3) break;
    } else {
      small = 0;
    }
    t *= w / (R(n + 1) * (nu + R(n + 1)));
  }
  if (cond) {
    R c = a0 / abs(s0);
    if (a1 / abs(s1) > c) c = a1 / abs(s1);
    if (a2 / abs(s2) > c) c = a2 / abs(s2);
    *cond = c;
  }
  const C pre = exp(nu * log(x / R(2)));
  return {pre * s0, pre * s1 / x, pre * s2 / (x * x)};
}

ArgJet to_arg_jet(const JetT<Complex>& j) { return {j.v, j.d1, j.d2}; }
ArgJet to_arg_jet(const JetT<qcomplex>& j) { return {detail::to_d(j.v), detail::to_d(j.d1), detail::to_d(j.d2)}; }

JetT<qcomplex> j_series_q(Complex nu, Complex x) {
  return j_series_t<qcomplex>(detail::to_q(nu), detail::to_q(x), qreal(1e-34), nullptr);
}

ArgJet j_series(Complex nu, Complex x) {
  if (x == 0.0) {
    // only the orders the solution builders could ever meet at the origin
    if (std::abs(nu) < pole_tolerance) return {1.0, 0.0, -0.5};
    detail::fail(ErrorKind::Boundary, "Bessel series at x = 0 needs nu = 0");
  }
  double cond = 0.0;
  const auto j = j_series_t<Complex>(nu, x, 1e-16, &cond);
  if (cond <= detail::escalate_factor) return to_arg_jet(j);
  return to_arg_jet(j_series_q(nu, x));
}

// H1 (sgn = +1) or H2 (sgn = -1):
//   sqrt(2/pi) e^{sgn i w} sum u_k x^{-k-1/2},  w = x - nu pi/2 - pi/4,
//   u_k = (sgn i)^k a_k,  a_k = a_{k-1} (4nu^2 - (2k-1)^2) / (8k)
// with value and derivatives summed termwise
std::optional<ArgJet> hankel_sum(int sgn, Complex nu, Complex x, bool strict) {
  const Complex s = double(sgn) * I;
  const Complex mu = 4.0 * nu * nu;
  const Complex xi = 1.0 / x;
  const Complex rx = 1.0 / std::sqrt(x);
  Complex u = 1.0, xp = rx;  // u_k, x^{-k-1/2}
  Complex t0 = 0.0, t1 = 0.0, t2 = 0.0;
  double prev = std::abs(xp);
  int small = 0;
  bool converged = false;
  for (int k = 0; k < 400; ++k) {
    const double h = k + 0.5;
    const Complex c0 = u * xp;
    const double mag = std::abs(c0);
    if (k > 0 && mag > prev && small == 0) break;
    t0 += c0;
    t1 += -h * c0 * xi;
    t2 += h * (h + 1.0) * c0 * xi * xi;
    prev = mag;
    if (mag <= 1e-17 * std::abs(t0)) {
      if (++small == 2) {
        converged = true;
        break;
      }
    } else {
      small = 0;
    }
    const double odd = 2.0 * k + 1.0;
    u *= s * (mu - odd * odd) / (8.0 * (k + 1));
    xp *= xi;
  }
  if (strict && !converged) return std::nullopt;
  const Complex omega = x - nu * pi / 2.0 - pi / 4.0;
  const Complex e = std::sqrt(2.0 / pi) * std::exp(s * omega);
  return ArgJet{e * t0, e * (s * t0 + t1), e * (s * s * t0 + 2.0 * s * t1 + t2)};
}

ArgJet combine(Cylinder kind, const ArgJet& h1, const ArgJet& h2) {
  auto lin = [](Complex a, const ArgJet& f, Complex b, const ArgJet& g) {
    return ArgJet{a * f.value + b * g.value, a * f.d1 + b * g.d1, a * f.d2 + b * g.d2};
  };
  switch (kind) {
    case Cylinder::H1: return h1;
    case Cylinder::H2: return h2;
    case Cylinder::J: return lin(0.5, h1, 0.5, h2);
    case Cylinder::N: return lin(-0.5 * I, h1, 0.5 * I, h2);
  }
  return h1;
}

void check_connection(Complex nu) {
  if (std::abs(std::sin(pi * nu)) < pole_tolerance) {
    std::ostringstream os;
    os << "cylinder connection degenerate: sin(nu pi) = 0 at nu = " << nu;
    detail::fail(ErrorKind::Degenerate, os.str());
  }
}

// H1, H2, N from J_{+nu}, J_{-nu} in binary128:
//   H1 = +i/sin(nu pi) (e^{-i nu pi} J_nu - J_{-nu})
//   H2 = -i/sin(nu pi) (e^{+i nu pi} J_nu - J_{-nu})
//   N  = (cos(nu pi) J_nu - J_{-nu}) / sin(nu pi)
ArgJet connection_q(Cylinder kind, Complex nu_d, Complex x) {
  const auto jp = j_series_q(nu_d, x);
  const auto jm = j_series_q(-nu_d, x);
  const qcomplex nu = detail::to_q(nu_d);
  const qreal qpi = detail::pi_v<qreal>();
  const qcomplex iq(0, 1);
  const qcomplex sn = sin(nu * qpi);
  qcomplex cp, cm;
  switch (kind) {
    case Cylinder::H1:
      cp = iq / sn * exp(-iq * nu * qpi);
      cm = -iq / sn;
      break;
    case Cylinder::H2:
      cp = -iq / sn * exp(iq * nu * qpi);
      cm = iq / sn;
      break;
    case Cylinder::N:
      cp = cos(nu * qpi) / sn;
      cm = qcomplex(-1) / sn;
      break;
    case Cylinder::J:
      cp = qcomplex(1);
      cm = qcomplex(0);
      break;
  }
  return to_arg_jet(JetT<qcomplex>{cp * jp.v + cm * jm.v, cp * jp.d1 + cm * jm.d1, cp * jp.d2 + cm * jm.d2});
}

}  // namespace

ArgJet bessel_j_series(const BesselParams& p) {
  check_order(p.nu);
  const auto j = j_series(p.nu, detail::sanitize(p.x));
  check_finite(j, "J");
  return j;
}

ArgJet hankel_asymptotic(Cylinder kind, const BesselParams& p) {
  const Complex x = detail::sanitize(p.x);
  const auto h1 = hankel_sum(+1, p.nu, x, false);
  const auto h2 = hankel_sum(-1, p.nu, x, false);
  const auto j = combine(kind, *h1, *h2);
  check_finite(j, "Hankel asymptotic");
  return j;
}

ArgJet cylinder_jet(Cylinder kind, const BesselParams& p) {
  const Complex x = detail::sanitize(p.x);
  if (kind == Cylinder::J) {
    check_order(p.nu);
    if (std::abs(x) >= bessel_switch_radius) {
      const auto h1 = hankel_sum(+1, p.nu, x, true);
      const auto h2 = hankel_sum(-1, p.nu, x, true);
      if (h1 && h2) {
        const auto j = combine(kind, *h1, *h2);
        check_finite(j, "J");
        return j;
      }
    }
    const auto j = j_series(p.nu, x);
    check_finite(j, "J");
    return j;
  }
  check_connection(p.nu);
  if (std::abs(x) >= bessel_switch_radius) {
    const auto h1 = hankel_sum(+1, p.nu, x, true);
    const auto h2 = hankel_sum(-1, p.nu, x, true);
    if (h1 && h2) {
      const auto j = combine(kind, *h1, *h2);
      check_finite(j, "Hankel");
      return j;
    }
  }
  const auto j = connection_q(kind, p.nu, x);
  check_finite(j, "Hankel");
  return j;
}

Complex bessel_j(const BesselParams& p) { return cylinder_jet(Cylinder::J, p).value; }
Complex hankel_h1(const BesselParams& p) { return cylinder_jet(Cylinder::H1, p).value; }
Complex hankel_h2(const BesselParams& p) { return cylinder_jet(Cylinder::H2, p).value; }
Complex neumann_n(const BesselParams& p) { return cylinder_jet(Cylinder::N, p).value; }

}  // namespace hspinor::sf

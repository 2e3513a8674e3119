#include <algorithm>
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
constexpr double series_tol = 1e-16;
// binary128 sums feed cancelling combinations; the tail must be negligible
// against the largest partial sums, not just the final value
constexpr double series_tol_q = 1e-33;

void check_c(Complex c) {
  if (detail::near_nonpositive_integer(c, pole_tolerance)) {
    std::ostringstream os;
    os << "Kummer parameter c = " << c << " is a non-positive integer";
    detail::fail(ErrorKind::Pole, os.str());
  }
}

void check_finite(Complex v, const char* what) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    detail::fail(ErrorKind::Overflow, std::string(what) + " overflowed binary64");
}

// Poincare sum  sum_n (u)_n (v)_n / n! w^{-n}. strict: nullopt unless the
// terms fall below 1e-17 relative before they start growing; otherwise the
// sum is cut before its smallest term (optimal truncation)
std::optional<Complex> poincare_sum(Complex u, Complex v, Complex w, bool strict) {
  Complex term = 1.0, sum = 1.0;
  double prev = 1.0;
  int small = 0;
  for (int n = 0; n < 500; ++n) {
    const Complex next = term * (u + double(n)) * (v + double(n)) / (double(n + 1) * w);
    const double t = std::abs(next);
    if (t > prev && small == 0) {
      if (strict) return std::nullopt;
      return sum;
    }
    term = next;
    sum += term;
    prev = t;
    if (t <= 1e-17 * std::abs(sum)) {
      if (++small == 2) return sum;
    } else {
      small = 0;
    }
  }
  if (strict) return std::nullopt;
  return sum;
}

std::optional<Complex> phi_asymptotic(Complex a, Complex c, Complex y, bool strict) {
  // Phi is a polynomial (or the e^y y^{a-c} part vanishes) at these points
  if (detail::near_nonpositive_integer(a, pole_tolerance) ||
      detail::near_nonpositive_integer(c - a, pole_tolerance))
    return std::nullopt;
  const auto s1 = poincare_sum(c - a, 1.0 - a, y, strict);
  const auto s2 = poincare_sum(a, a - c + 1.0, -y, strict);
  if (!s1 || !s2) return std::nullopt;
  const Complex ly = std::log(y);
  const Complex lgc = log_gamma_complex(c);
  const Complex t1 = std::exp(lgc - log_gamma_complex(a) + y + (a - c) * ly) * *s1;
  // recessive term; on the positive real axis (a Stokes line) the multiplier
  // is the mean of e^{+i pi a} and e^{-i pi a}
  Complex mult;
  if (y.imag() > 0.0)
    mult = std::exp(I * pi * a);
  else if (y.imag() < 0.0)
    mult = std::exp(-I * pi * a);
  else
    mult = std::cos(pi * a);
  const Complex t2 = std::exp(lgc - log_gamma_complex(c - a) - a * ly) * mult * *s2;
  return t1 + t2;
}

Complex phi_series(Complex a, Complex c, Complex y) {
  double acc = 0.0;
  const Complex v = detail::kummer_series_t<Complex>(a, c, y, series_tol, series_cap, &acc);
  if (acc <= detail::escalate_factor * std::abs(v)) return v;
  return detail::to_d(detail::kummer_series_t<qcomplex>(detail::to_q(a), detail::to_q(c), detail::to_q(y),
                                                        qreal(series_tol_q), series_cap));
}

}  // namespace

Complex kummer_phi_series(const KummerParams& p) {
  check_c(p.c);
  const Complex v = phi_series(p.a, p.c, detail::sanitize(p.y));
  check_finite(v, "Phi");
  return v;
}

Complex kummer_phi_asymptotic(const KummerParams& p) {
  check_c(p.c);
  const auto v = phi_asymptotic(p.a, p.c, detail::sanitize(p.y), false);
  if (!v) detail::fail(ErrorKind::NonConvergence, "Phi asymptotic form undefined (polynomial case)");
  check_finite(*v, "Phi");
  return *v;
}

Complex kummer_phi(const KummerParams& p) {
  check_c(p.c);
  const Complex y = detail::sanitize(p.y);
  if (y.real() < 0.0) {
    // Kummer transformation keeps the series free of alternating cancellation
    const Complex v = std::exp(y) * kummer_phi({p.c - p.a, p.c, -y});
    check_finite(v, "Phi");
    return v;
  }
  if (std::abs(y) >= kummer_switch_radius) {
    if (const auto v = phi_asymptotic(p.a, p.c, y, true)) {
      check_finite(*v, "Phi");
      return *v;
    }
  }
  const Complex v = phi_series(p.a, p.c, y);
  check_finite(v, "Phi");
  return v;
}

ArgJet kummer_phi_jet(const KummerParams& p) {
  const Complex a = p.a, c = p.c;
  return {kummer_phi(p), a / c * kummer_phi({a + 1.0, c + 1.0, p.y}),
          a * (a + 1.0) / (c * (c + 1.0)) * kummer_phi({a + 2.0, c + 2.0, p.y})};
}

namespace detail {

qcomplex kummer_phi_q(qcomplex a, qcomplex c, qcomplex y) {
  if (y.real() < 0) return exp(y) * kummer_phi_q(c - a, c, -y);
  return kummer_series_t<qcomplex>(a, c, y, qreal(series_tol_q), series_cap);
}

}  // namespace detail

namespace {

void check_psi(const KummerParams& p) {
  check_c(p.c);
  if (detail::near_integer(p.c, pole_tolerance)) {
    std::ostringstream os;
    os << "Tricomi connection degenerate: c = " << p.c << " is an integer";
    detail::fail(ErrorKind::Degenerate, os.str());
  }
}

qcomplex psi_connection_q(qcomplex a, qcomplex c, qcomplex y) {
  const qcomplex one(1), two(2);
  // grids call this with the same few (a, c) (a jet needs three); the gamma
  // ratios would otherwise dominate the cost
  struct Entry {
    qcomplex a, c, g1, g2;
    bool used = false;
  };
  thread_local std::array<Entry, 4> cache;
  thread_local std::size_t next = 0;
  const Entry* hit = nullptr;
  for (const auto& e : cache)
    if (e.used && e.a == a && e.c == c) hit = &e;
  if (!hit) {
    Entry& e = cache[next];
    next = (next + 1) % cache.size();
    e = {a, c, detail::gamma_q(one - c) * detail::rgamma_q(a - c + one),
         detail::gamma_q(c - one) * detail::rgamma_q(a), true};
    hit = &e;
  }
  const qcomplex &g1 = hit->g1, &g2 = hit->g2;
  const qcomplex t1 = g1 * detail::kummer_phi_q(a, c, y);
  const qcomplex t2 = g2 * exp((one - c) * log(y)) * detail::kummer_phi_q(a - c + one, two - c, y);
  return t1 + t2;
}

}  // namespace

Complex tricomi_psi_connection(const KummerParams& p) {
  check_psi(p);
  const Complex v = detail::to_d(psi_connection_q(detail::to_q(p.a), detail::to_q(p.c),
                                                  detail::to_q(detail::sanitize(p.y))));
  check_finite(v, "Psi");
  return v;
}

Complex tricomi_psi_asymptotic(const KummerParams& p) {
  const Complex y = detail::sanitize(p.y);
  const auto s = poincare_sum(p.a, p.a - p.c + 1.0, -y, false);
  return std::exp(-p.a * std::log(y)) * *s;
}

Complex tricomi_psi(const KummerParams& p) {
  check_psi(p);
  const Complex y = detail::sanitize(p.y);
  if (std::abs(y) >= kummer_switch_radius) {
    if (const auto s = poincare_sum(p.a, p.a - p.c + 1.0, -y, true)) {
      const Complex v = std::exp(-p.a * std::log(y)) * *s;
      check_finite(v, "Psi");
      return v;
    }
    // large |Im a| makes the smallest asymptotic term too big; the
    // connection would cancel like e^{|y|}, the integral does not
    if (p.a.real() > 0.0) return tricomi_psi_integral({p.a, p.c, y});
  }
  return tricomi_psi_connection({p.a, p.c, y});
}

ArgJet tricomi_psi_jet(const KummerParams& p) {
  const Complex a = p.a, c = p.c;
  return {tricomi_psi(p), -a * tricomi_psi({a + 1.0, c + 1.0, p.y}),
          a * (a + 1.0) * tricomi_psi({a + 2.0, c + 2.0, p.y})};
}

Complex kummer_ode_residual(const KummerParams& p, const ArgJet& g, double* scale) {
  const Complex t1 = p.y * g.d2, t2 = (p.c - p.y) * g.d1, t3 = -p.a * g.value;
  if (scale) *scale = std::max({std::abs(t1), std::abs(p.c * g.d1), std::abs(p.y * g.d1), std::abs(t3)});
  return t1 + t2 + t3;
}

Complex kummer_connection_sum(Complex a, Complex y, Complex w) {
  check_psi({a, 2.0 * a, y});
  const qcomplex aq = detail::to_q(a), yq = detail::to_q(detail::sanitize(y)), wq = detail::to_q(w);
  const qcomplex one(1), two(2);
  const qcomplex c1 = detail::gamma_q(one - two * aq) * detail::rgamma_q(one - aq);
  const qcomplex c2 = detail::gamma_q(two * aq - one) * detail::rgamma_q(aq);
  const qcomplex y1 = detail::kummer_phi_q(aq, two * aq, yq);
  const qcomplex y2 = exp((one - two * aq) * log(yq)) * detail::kummer_phi_q(one - aq, two - two * aq, yq);
  const Complex v = detail::to_d(c1 * y1 + wq * c2 * y2);
  check_finite(v, "Kummer connection");
  return v;
}

}  // namespace hspinor::sf

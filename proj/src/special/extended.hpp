#pragma once

// binary128 helpers for the cancelling combinations. Algorithms that run in
// both precisions are templates over the complex type C; std:: and
// boost::multiprecision overloads are both found through ADL.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/complex128.hpp>
#include <boost/multiprecision/float128.hpp>

#include <cmath>
#include <string>

#include "hspinor/types.hpp"

namespace hspinor::sf::detail {

using qreal = boost::multiprecision::float128;
using qcomplex = boost::multiprecision::complex128;

inline qcomplex to_q(Complex z) { return qcomplex(qreal(z.real()), qreal(z.imag())); }
inline Complex to_d(const qcomplex& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

template <class C> struct real_of;
template <> struct real_of<Complex> { using type = double; };
template <> struct real_of<qcomplex> { using type = qreal; };
template <class C> using real_t = typename real_of<C>::type;

inline double re(const Complex& z) { return z.real(); }
inline qreal re(const qcomplex& z) { return z.real(); }
inline double im(const Complex& z) { return z.imag(); }
inline qreal im(const qcomplex& z) { return z.imag(); }

template <class R> R pi_v();
template <> inline double pi_v<double>() { return 3.141592653589793238462643383279502884; }
template <> inline qreal pi_v<qreal>() { return boost::math::constants::pi<qreal>(); }

// the kernel convention is arg in (-pi, pi]; a negative zero imaginary part
// would flip log() of a negative real to -i pi
inline Complex sanitize(Complex z) { return z.imag() == 0.0 ? Complex(z.real(), 0.0) : z; }

// z within tol of a non-positive integer
inline bool near_nonpositive_integer(Complex z, double tol) {
  const double r = std::round(z.real());
  return r <= 0.0 && std::abs(z - Complex(r, 0.0)) < tol;
}

inline bool near_integer(Complex z, double tol) {
  return std::abs(z - Complex(std::round(z.real()), 0.0)) < tol;
}

[[noreturn]] void fail(ErrorKind k, const std::string& what);

// sum_{n} (a)_n / (c)_n y^n / n!  with the three-small-terms stop rule;
// abs_sum (if given) receives sum |term|, so abs_sum/|sum| is the cancellation factor
template <class C>
C kummer_series_t(const C& a, const C& c, const C& y, real_t<C> tol, int cap,
                  real_t<C>* abs_sum = nullptr) {
  using std::abs;
  C term(1), sum(1);
  real_t<C> acc(1);
  int small = 0;
  for (int n = 0; n < cap; ++n) {
    const real_t<C> rn(n);
    term *= (a + rn) * y / ((c + rn) * (rn + real_t<C>(1)));
    sum += term;
    if (abs_sum) acc += abs(term);
    // |re| + |im| is within sqrt 2 of the modulus and avoids hypot (slow in binary128);
    // the halved bound keeps the test at least as strict as the modulus one
    using std::fabs;
    if (fabs(term.real()) + fabs(term.imag()) <= real_t<C>(0.5) * tol * (fabs(sum.real()) + fabs(sum.imag()))) {
      if (++small == 3) {
        if (abs_sum) *abs_sum = acc;
        return sum;
      }
    } else {
      small = 0;
    }
  }
  fail(ErrorKind::NonConvergence, "Kummer series did not converge within the iteration cap");
}

qcomplex gamma_q(const qcomplex& z);
qcomplex rgamma_q(const qcomplex& z);
qcomplex kummer_phi_q(qcomplex a, qcomplex c, qcomplex y);

// a binary64 series that lost more than this factor to cancellation is redone in binary128
inline constexpr double escalate_factor = 1e3;

}  // namespace hspinor::sf::detail

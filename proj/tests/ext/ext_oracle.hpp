#pragma once

// Extended-precision reference values for the kernel tests. Software
// floating point (cpp_bin_float), so nothing is shared with the kernel's
// binary64/binary128 arithmetic. Digits are a template parameter; the
// cancelling combinations (Psi through the connection, H and N through
// J_{+-nu}) need about log10 of the cancelled magnitude on top of 20.

#include <boost/math/constants/constants.hpp>
#include <boost/math/special_functions/bernoulli.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>

#include <complex>
#include <stdexcept>
#include <vector>

namespace ext {

namespace mp = boost::multiprecision;

template <unsigned D>
using Real = mp::number<mp::cpp_bin_float<D>, mp::et_off>;
template <unsigned D>
using Cx = mp::number<mp::complex_adaptor<mp::cpp_bin_float<D>>, mp::et_off>;

template <unsigned D>
Cx<D> to_ext(std::complex<double> z) {
  return Cx<D>(Real<D>(z.real()), Real<D>(z.imag()));
}
template <unsigned D>
std::complex<double> to_double(const Cx<D>& z) {
  return {static_cast<double>(z.real()), static_cast<double>(z.imag())};
}

template <unsigned D>
Real<D> mag(const Cx<D>& z) {
  return abs(z);
}

template <unsigned D>
Real<D> eps_of() {
  return pow(Real<D>(10), -int(D) + 2);
}

// ln Gamma for Re w large: Stirling with Bernoulli numbers
template <unsigned D>
Cx<D> stirling(const Cx<D>& w, int terms) {
  using R = Real<D>;
  const R half_log_2pi = log(2 * boost::math::constants::pi<R>()) / 2;
  Cx<D> s = (w - R(0.5)) * log(w) - w + half_log_2pi;
  const Cx<D> w2 = w * w;
  Cx<D> wp = w;
  for (int k = 1; k <= terms; ++k) {
    const R b = boost::math::bernoulli_b2n<R>(k);
    s += Cx<D>(b / R((2 * k) * (2 * k - 1))) / wp;
    wp *= w2;
  }
  return s;
}

template <unsigned D>
Cx<D> gamma(const Cx<D>& z) {
  using R = Real<D>;
  const R pi = boost::math::constants::pi<R>();
  if (z.real() < R(0.5)) return Cx<D>(pi) / (sin(pi * z) * gamma<D>(Cx<D>(R(1)) - z));
  const int shift = int(1.25 * D) + 10;
  const int terms = int(0.45 * D) + 5;
  Cx<D> w = z, prod(R(1));
  while (w.real() < R(shift)) {
    prod *= w;
    w += R(1);
  }
  return exp(stirling<D>(w, terms)) / prod;
}

// Phi(a, c, y) by the ascending series, stopped when three consecutive terms
// fall below 10^{2-D} of the partial sum
template <unsigned D>
Cx<D> kummer_phi(const Cx<D>& a, const Cx<D>& c, const Cx<D>& y) {
  using R = Real<D>;
  Cx<D> term(R(1)), sum(R(1));
  int small = 0;
  for (int n = 0; n < 200000; ++n) {
    const R rn(n);
    term *= (a + rn) * y / ((c + rn) * (rn + R(1)));
    sum += term;
    if (mag<D>(term) <= eps_of<D>() * mag<D>(sum)) {
      if (++small == 3) return sum;
    } else {
      small = 0;
    }
  }
  throw std::runtime_error("ext::kummer_phi did not converge");
}

// Psi(a, c, y), principal branch, via the connection of the two Phi solutions
template <unsigned D>
Cx<D> tricomi_psi_connection(const Cx<D>& a, const Cx<D>& c, const Cx<D>& y) {
  using R = Real<D>;
  const Cx<D> one(R(1)), two(R(2));
  return gamma<D>(one - c) / gamma<D>(a - c + one) * kummer_phi<D>(a, c, y) +
         gamma<D>(c - one) / gamma<D>(a) * exp((one - c) * log(y)) * kummer_phi<D>(a - c + one, two - c, y);
}

// Psi(a, c, y) ~ y^{-a} sum (a)_n (a-c+1)_n / n! (-y)^{-n}, summed to the
// smallest term; valid for |y| large and |arg y| < 3 pi / 2
template <unsigned D>
Cx<D> tricomi_psi_asymptotic(const Cx<D>& a, const Cx<D>& c, const Cx<D>& y, Real<D>* smallest = nullptr) {
  using R = Real<D>;
  const Cx<D> b = a - c + R(1);
  Cx<D> term(R(1)), sum(R(1));
  R prev = R(1);
  for (int n = 0; n < 100000; ++n) {
    const R rn(n);
    const Cx<D> next = term * (a + rn) * (b + rn) / (-(rn + R(1)) * y);
    const R m = mag<D>(next);
    if (m > prev) break;
    term = next;
    sum += term;
    prev = m;
    if (m <= eps_of<D>() * mag<D>(sum)) break;
  }
  if (smallest) *smallest = prev / mag<D>(sum);
  return exp(-a * log(y)) * sum;
}

// connection inside |y| < 100 (cancellation ~e^{|y|}), asymptotic beyond
template <unsigned D>
Cx<D> tricomi_psi(const Cx<D>& a, const Cx<D>& c, const Cx<D>& y) {
  if (mag<D>(y) < Real<D>(100)) return tricomi_psi_connection<D>(a, c, y);
  Real<D> smallest;
  const Cx<D> v = tricomi_psi_asymptotic<D>(a, c, y, &smallest);
  if (smallest > Real<D>(1e-30)) throw std::runtime_error("ext::tricomi_psi asymptotic series not accurate enough");
  return v;
}

// J_nu(x) = (x/2)^nu sum (-x^2/4)^n / (n! Gamma(nu + n + 1))
template <unsigned D>
Cx<D> bessel_j(const Cx<D>& nu, const Cx<D>& x) {
  using R = Real<D>;
  const Cx<D> q = -x * x / R(4);
  Cx<D> term = Cx<D>(R(1)) / gamma<D>(nu + R(1));
  Cx<D> sum = term;
  int small = 0;
  for (int n = 0; n < 200000; ++n) {
    term *= q / (R(n + 1) * (nu + R(n + 1)));
    sum += term;
    if (mag<D>(term) <= eps_of<D>() * mag<D>(sum)) {
      if (++small == 3) return exp(nu * log(x / R(2))) * sum;
    } else {
      small = 0;
    }
  }
  throw std::runtime_error("ext::bessel_j did not converge");
}

template <unsigned D>
Cx<D> hankel_h1(const Cx<D>& nu, const Cx<D>& x) {
  using R = Real<D>;
  const R pi = boost::math::constants::pi<R>();
  const Cx<D> i(R(0), R(1));
  return i / sin(nu * pi) * (exp(-i * nu * pi) * bessel_j<D>(nu, x) - bessel_j<D>(-nu, x));
}

template <unsigned D>
Cx<D> hankel_h2(const Cx<D>& nu, const Cx<D>& x) {
  using R = Real<D>;
  const R pi = boost::math::constants::pi<R>();
  const Cx<D> i(R(0), R(1));
  return -i / sin(nu * pi) * (exp(i * nu * pi) * bessel_j<D>(nu, x) - bessel_j<D>(-nu, x));
}

template <unsigned D>
Cx<D> neumann_n(const Cx<D>& nu, const Cx<D>& x) {
  using R = Real<D>;
  const R pi = boost::math::constants::pi<R>();
  return (cos(nu * pi) * bessel_j<D>(nu, x) - bessel_j<D>(-nu, x)) / sin(nu * pi);
}

// derivative from the standard recurrence C'_nu = C_{nu-1} - (nu/x) C_nu
template <unsigned D, class F>
Cx<D> cylinder_derivative(F&& c, const Cx<D>& nu, const Cx<D>& x) {
  return c(nu - Real<D>(1), x) - nu / x * c(nu, x);
}

template <unsigned D>
double rel_diff(std::complex<double> kernel, const Cx<D>& ref) {
  const Cx<D> k = to_ext<D>(kernel);
  return static_cast<double>(mag<D>(k - ref) / mag<D>(ref));
}

}  // namespace ext

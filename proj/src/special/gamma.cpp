#include <array>
#include <cmath>
#include <sstream>

#include "extended.hpp"
#include "hspinor/special_functions.hpp"

namespace hspinor {

std::string_view to_string(ErrorKind k) {
  switch (k) {
    case ErrorKind::Pole: return "pole";
    case ErrorKind::NonConvergence: return "non-convergence";
    case ErrorKind::Degenerate: return "degenerate-parameters";
    case ErrorKind::Overflow: return "overflow";
    case ErrorKind::Boundary: return "boundary";
    case ErrorKind::UnderResolved: return "under-resolved-grid";
    case ErrorKind::StepUnderflow: return "step-underflow";
    case ErrorKind::IllConditioned: return "ill-conditioned";
    case ErrorKind::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

}  // namespace hspinor

namespace hspinor::sf {
namespace detail {

void fail(ErrorKind k, const std::string& what) { throw NumericalError(k, what); }

namespace {

// Stirling tail coefficients B_{2k} / (2k (2k-1)), k = 1..15, as exact fractions
struct Frac {
  long long num, den;
};
constexpr std::array<Frac, 15> bernoulli = {{{1, 6},
                                             {-1, 30},
                                             {1, 42},
                                             {-1, 30},
                                             {5, 66},
                                             {-691, 2730},
                                             {7, 6},
                                             {-3617, 510},
                                             {43867, 798},
                                             {-174611, 330},
                                             {854513, 138},
                                             {-236364091, 2730},
                                             {8553103, 6},
                                             {-23749461029LL, 870},
                                             {8615841276005LL, 14322}}};

// log Gamma for Re z >= 30 by the Stirling series, error below 1e-38
qcomplex stirling_q(const qcomplex& z) {
  const qreal half_log_2pi = log(2 * pi_v<qreal>()) / 2;
  qcomplex s = (z - qreal(0.5)) * log(z) - z + half_log_2pi;
  const qcomplex zi = qreal(1) / z;
  const qcomplex zi2 = zi * zi;
  qcomplex zp = zi;
  for (std::size_t k = 1; k <= bernoulli.size(); ++k) {
    const qreal b = qreal(bernoulli[k - 1].num) / qreal(bernoulli[k - 1].den);
    s += b / qreal(2 * k * (2 * k - 1)) * zp;
    zp *= zi2;
  }
  return s;
}

}  // namespace

qcomplex gamma_q(const qcomplex& z) {
  if (near_nonpositive_integer(to_d(z), pole_tolerance))
    fail(ErrorKind::Pole, "gamma pole at a non-positive integer");
  const qreal pi = pi_v<qreal>();
  if (z.real() < qreal(0.5)) return pi / (sin(pi * z) * gamma_q(qreal(1) - z));
  qcomplex w = z, prod(1);
  while (w.real() < qreal(30)) {
    prod *= w;
    w += qreal(1);
  }
  return exp(stirling_q(w)) / prod;
}

qcomplex rgamma_q(const qcomplex& z) {
  if (near_nonpositive_integer(to_d(z), pole_tolerance)) return qcomplex(0);
  return qreal(1) / gamma_q(z);
}

}  // namespace detail

namespace {

constexpr double lanczos_g = 7.0;
constexpr std::array<double, 9> lanczos_c = {0.99999999999980993,  676.5203681218851,
                                             -1259.1392167224028,  771.32342877765313,
                                             -176.61502916214059,  12.507343278686905,
                                             -0.13857109526572012, 9.9843695780195716e-6,
                                             1.5056327351493116e-7};
constexpr double pi = 3.141592653589793238462643383279502884;

void check_pole(Complex z) {
  if (detail::near_nonpositive_integer(z, pole_tolerance)) {
    std::ostringstream os;
    os << "gamma pole: z = " << z << " is within " << pole_tolerance << " of a non-positive integer";
    detail::fail(ErrorKind::Pole, os.str());
  }
}

// Lanczos sum and t for Re z >= 1/2
void lanczos_parts(Complex z, Complex& sum, Complex& t) {
  z -= 1.0;
  sum = lanczos_c[0];
  for (int i = 1; i < 9; ++i) sum += lanczos_c[i] / (z + double(i));
  t = z + lanczos_g + 0.5;
}

// log sin(pi z) without overflow for large |Im z|
Complex log_sin_pi(Complex z) {
  if (z.imag() >= 0.0) {
    const Complex e = std::exp(2.0 * I * pi * z);
    return std::log(Complex(0.0, 0.5)) - I * pi * z + std::log(1.0 - e);
  }
  const Complex e = std::exp(-2.0 * I * pi * z);
  return std::log(Complex(0.0, -0.5)) + I * pi * z + std::log(1.0 - e);
}

}  // namespace

Complex gamma_complex(Complex z) {
  check_pole(z);
  if (z.real() < 0.5) return pi / (std::sin(pi * z) * gamma_complex(1.0 - z));
  Complex sum, t;
  lanczos_parts(z, sum, t);
  return std::sqrt(2.0 * pi) * std::exp((z - 0.5) * std::log(t) - t) * sum;
}

Complex log_gamma_complex(Complex z) {
  check_pole(z);
  if (z.real() < 0.5) return std::log(pi) - log_sin_pi(z) - log_gamma_complex(1.0 - z);
  Complex sum, t;
  lanczos_parts(z, sum, t);
  return 0.5 * std::log(2.0 * pi) + (z - 0.5) * std::log(t) - t + std::log(sum);
}

Complex rgamma_complex(Complex z) {
  if (detail::near_nonpositive_integer(z, pole_tolerance)) return 0.0;
  if (std::abs(z) > 100.0) return std::exp(-log_gamma_complex(z));
  return 1.0 / gamma_complex(z);
}

}  // namespace hspinor::sf

#pragma once

#include <complex>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace hspinor {

using Complex = std::complex<double>;
inline constexpr Complex I{0.0, 1.0};

inline constexpr std::string_view version = "0.1.0";

// bad physical input (exit code 2 in the CLI)
class ParameterError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class ErrorKind {
  Pole,
  NonConvergence,
  Degenerate,
  Overflow,
  Boundary,
  UnderResolved,
  StepUnderflow,
  IllConditioned,
  Inconclusive,
};

std::string_view to_string(ErrorKind k);

class NumericalError : public std::runtime_error {
 public:
  NumericalError(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

// value and first two derivatives with respect to the grid coordinate
struct Jet {
  Complex v{}, d1{}, d2{};
};

inline Jet operator+(const Jet& a, const Jet& b) { return {a.v + b.v, a.d1 + b.d1, a.d2 + b.d2}; }
inline Jet operator-(const Jet& a, const Jet& b) { return {a.v - b.v, a.d1 - b.d1, a.d2 - b.d2}; }
inline Jet operator*(Complex s, const Jet& a) { return {s * a.v, s * a.d1, s * a.d2}; }
inline Jet operator*(const Jet& a, const Jet& b) {
  return {a.v * b.v, a.d1 * b.v + a.v * b.d1, a.d2 * b.v + 2.0 * a.d1 * b.d1 + a.v * b.d2};
}

// closed list of systems the oracle knows how to integrate
enum class SystemId {
  ScalarSchrodinger,  // f'' - 2f' + (eps - k^2 e^{2z}) f = 0
  ScalarPhi,          // phi'' + (eps - 1 - k^2 e^{2z}) phi = 0
  DiracFirstOrder,    // coupled pair for f1, f2
  DiracSecondOrder,   // decoupled equation for f1 (f2: same with p -> -p)
  Weyl,               // coupled pair with p -> -eps
  PhiSystem,          // phi-variables of the Bessel representation
  KummerOde,          // y Phi'' + (c - y) Phi' - a Phi = 0
  BesselOde,          // F'' + F'/x + (1 - nu^2/x^2) F = 0 on x = iX
};

inline constexpr SystemId all_systems[] = {
    SystemId::ScalarSchrodinger, SystemId::ScalarPhi, SystemId::DiracFirstOrder,
    SystemId::DiracSecondOrder,  SystemId::Weyl,      SystemId::PhiSystem,
    SystemId::KummerOde,         SystemId::BesselOde};

std::string_view to_string(SystemId s);

struct ResidualReport {
  std::string check;
  std::optional<SystemId> system;
  std::vector<double> grid;
  double max_rel_residual = 0.0;
  double argmax_z = 0.0;
  double tolerance_used = 0.0;

  bool passed() const { return max_rel_residual < tolerance_used; }
};

std::vector<double> linspace(double a, double b, int n);

// |r| / max(|t_i|), with a floor so identically vanishing lines count as exact
double relative_residual(Complex r, std::initializer_list<double> term_magnitudes);

}  // namespace hspinor

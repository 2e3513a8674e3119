#pragma once

// z-derivatives of the building blocks in the variable y = c e^z (dy/dz = y)

#include <cmath>

#include "hspinor/special_functions.hpp"
#include "hspinor/types.hpp"

namespace hspinor::detail {

// G(y(z)) from value/derivatives in y: G_z = y G', G_zz = y^2 G'' + y G'
inline Jet arg_to_z(const sf::ArgJet& g, double y) {
  return {g.value, y * g.d1, y * y * g.d2 + y * g.d1};
}

// y^s e^{sigma y / 2}:  P_z = (s + sigma y/2) P,  P_zz = ((s + sigma y/2)^2 + sigma y/2) P
inline Jet power_exp(Complex s, double sigma, double y) {
  const Complex v = std::exp(s * std::log(y) + 0.5 * sigma * y);
  const Complex q = s + 0.5 * sigma * y;
  return {v, q * v, (q * q + 0.5 * sigma * y) * v};
}

// e^{w z}
inline Jet exp_jet(Complex w, double z) {
  const Complex v = std::exp(w * z);
  return {v, w * v, w * w * v};
}

inline bool finite(const Jet& j) {
  for (Complex c : {j.v, j.d1, j.d2})
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
  return true;
}

}  // namespace hspinor::detail

#pragma once
#include <cmath>
#include <stdexcept>

namespace mqm {

//! Physical constants of the vacuum theory. Defaults are natural units
//! c = hbar = eps0 = 1; SI values may be supplied instead.
struct PhysicalConstants {
  double c = 1.0;    //!< speed of light, length/time
  double hbar = 1.0; //!< reduced action quantum
  double eps0 = 1.0; //!< vacuum permittivity

  double mu0() const { return 1.0 / (eps0 * c * c); }

  //! Single prefactor sqrt(hbar/eps0) carried by every synthesized field.
  double field_scale() const { return std::sqrt(hbar / eps0); }

  //! Current normalization g = eps0*c/hbar (number density choice).
  double current_scale() const { return eps0 * c / hbar; }

  void validate() const {
    if (!(c > 0.0) || !(hbar > 0.0) || !(eps0 > 0.0))
      throw std::invalid_argument("PhysicalConstants: c, hbar, eps0 must be strictly positive");
  }

  friend bool operator==(const PhysicalConstants &a, const PhysicalConstants &b) {
    return a.c == b.c && a.hbar == b.hbar && a.eps0 == b.eps0;
  }
};

} // namespace mqm

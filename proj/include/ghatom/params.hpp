#pragma once

#include <cmath>
#include <complex>
#include <numbers>

#include "errors.hpp"
#include "mat2.hpp"

namespace ghatom {

// Dimensionless description of one incidence configuration.
//
// Unit system: rates in units of gamma, energies in hbar*gamma, wavevectors
// in k_gamma = sqrt(2 m gamma / hbar), lengths in 1/k_gamma, times in
// 1/gamma.  See docs/units.md for the reduction.
struct ScaledParams {
  double gamma = 1.0;    // excited-state decay rate (sets the scale; 1 by convention)
  double delta_L = 0.0;  // laser detuning
  double omega = 0.0;    // peak Rabi frequency
  double k = 1.0;        // incident wavenumber magnitude
  double k_L = 0.0;      // laser wavenumber
  double L = 0.0;        // slab width
  double theta = 0.0;    // incidence angle from the slab normal, radians

  void validate() const {
    if (!(gamma >= 0.0)) throw ValidationError("gamma must be >= 0");
    if (!(k > 0.0)) throw ValidationError("k must be > 0");
    if (!(L >= 0.0)) throw ValidationError("L must be >= 0");
    if (!(std::abs(theta) < std::numbers::pi / 2.0))
      throw ValidationError("|theta| must be < pi/2");
    if (!(omega >= 0.0)) throw ValidationError("omega must be >= 0");
    if (!(k_L >= 0.0)) throw ValidationError("k_L must be >= 0");
  }
};

// Wavevectors and effective detuning derived from a configuration.
struct Kinematics {
  double kx = 0.0;         // normal wavevector component
  double ky = 0.0;         // transverse wavevector component
  double delta_eff = 0.0;  // effective detuning (Doppler + recoil corrected)
  double k1 = 0.0;         // ground-channel free wavevector (= kx)
  cplx k2;                 // excited-channel free wavevector, Im >= 0
  double Ex = 0.0;         // incident x kinetic energy, kx^2
};

// Principal branch of the excited free wavevector: k2^2 = delta + i g/2 + kx^2.
// For gamma > 0 the argument lies in the upper half plane, so the principal
// square root already satisfies Im > 0; at gamma = 0 force the +0 imaginary
// part so a closed channel comes out as +i|k2|.
inline cplx excited_wavevector(double delta_eff, double gamma, double kx) {
  const cplx arg(delta_eff + kx * kx, 0.5 * gamma + 0.0);
  return std::sqrt(arg);
}

// Effective detuning: delta_L minus Doppler (2 ky kL) and recoil (kL^2) terms.
inline double effective_detuning(const ScaledParams& p, double ky) {
  return p.delta_L - 2.0 * ky * p.k_L - p.k_L * p.k_L;
}

// Kinematics for an arbitrary Cartesian wavevector sharing p's slab and laser
// parameters.  Used by finite-difference stencils, which step off the (k,
// theta) shell; ky may be negative there.
inline Kinematics kinematics_at(const ScaledParams& p, double kx, double ky) {
  Kinematics kin;
  kin.kx = kx;
  kin.ky = ky;
  kin.delta_eff = effective_detuning(p, ky);
  kin.k1 = kx;
  kin.k2 = excited_wavevector(kin.delta_eff, p.gamma, kx);
  kin.Ex = kx * kx;
  return kin;
}

inline Kinematics derive_kinematics(const ScaledParams& p) {
  p.validate();
  return kinematics_at(p, p.k * std::cos(p.theta), p.k * std::sin(p.theta));
}

}  // namespace ghatom

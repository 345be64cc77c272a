#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <utility>

#include "errors.hpp"
#include "mat2.hpp"
#include "params.hpp"

namespace ghatom {

// Dressed-state decomposition of the non-Hermitian 2x2 optical potential.
//
// The in-slab potential matrix (in units of hbar*gamma) is
//   V = -1/2 [[0, omega], [omega, 2(delta + i gamma/2)]]
// and is diagonalized by U with eigenvalues v_plus, v_minus.  With decay the
// matrix is non-Hermitian, so U is not unitary; u_inv is its exact inverse.
struct DressedFrame {
  cplx v_plus;   // eigenvalue carrying the + sign of the closed form
  cplx v_minus;  // eigenvalue carrying the - sign
  double phi = 0.0;  // mixing angle, tan(phi) = omega / (2 |v_plus|)
  double beta = 0.0; // phase angle, arg(v_plus)
  Mat2 u;
  Mat2 u_inv;
  cplx f;        // normalization factor in u_inv
  cplx alpha1;   // in-slab spatial rate of the + mode, alpha1^2 = v_plus - kx^2
  cplx alpha2;   // in-slab spatial rate of the - mode
};

// Closed-form eigenvalues; labels follow the +/- sign under the principal
// root, no re-sorting (keeps angle curves continuous in theta).
inline std::pair<cplx, cplx> dressed_eigenvalues(double delta_eff, double gamma,
                                                 double omega) {
  const cplx z(delta_eff, 0.5 * gamma);
  const cplx root = std::sqrt(z * z + omega * omega);
  return {0.5 * (-z + root), 0.5 * (-z - root)};
}

inline std::pair<double, double> mixing_angles(cplx v_plus, double omega,
                                               double delta_eff) {
  const double mod = std::abs(v_plus);
  if (mod < 1e-13 * std::max({1.0, omega, std::abs(delta_eff)}))
    throw DegenerateFrame("dressed basis ill-defined: |v_plus| ~ 0");
  const double phi = std::atan(omega / (2.0 * mod));
  const double beta = std::arg(v_plus);
  return {phi, beta};
}

struct TransformMatrices {
  Mat2 u;
  Mat2 u_inv;
  cplx f;
};

inline TransformMatrices transform_matrices(double phi, double beta) {
  const double s = std::sin(phi);
  const double c = std::cos(phi);
  const cplx eb = std::exp(cplx(0.0, beta));
  const cplx ebm = std::exp(cplx(0.0, -beta));

  const cplx inv_f = ebm * s * s + eb * c * c;  // det(U)
  if (std::abs(inv_f) < 1e-12)
    throw SingularTransform("transform matrix singular: det(U) ~ 0");
  const cplx f = 1.0 / inv_f;

  Mat2 u;
  u(0, 0) = s;
  u(0, 1) = c;
  u(1, 0) = -eb * c;
  u(1, 1) = ebm * s;

  Mat2 u_inv;
  u_inv(0, 0) = f * ebm * s;
  u_inv(0, 1) = -f * c;
  u_inv(1, 0) = f * eb * c;
  u_inv(1, 1) = f * s;

  return {u, u_inv, f};
}

// Principal branch (Re >= 0, then Im >= 0).  Downstream transfer-matrix
// entries are even in alpha, so this choice only affects reporting.
inline std::pair<cplx, cplx> decay_rates(cplx v_plus, cplx v_minus, double kx) {
  const double ex = kx * kx;
  auto rate = [ex](cplx v) {
    cplx a = std::sqrt(v - ex);
    if (a.real() < 0.0 || (a.real() == 0.0 && a.imag() < 0.0)) a = -a;
    return a;
  };
  return {rate(v_plus), rate(v_minus)};
}

inline DressedFrame make_dressed_frame(const ScaledParams& p,
                                       const Kinematics& kin) {
  DressedFrame fr;
  std::tie(fr.v_plus, fr.v_minus) =
      dressed_eigenvalues(kin.delta_eff, p.gamma, p.omega);
  std::tie(fr.phi, fr.beta) =
      mixing_angles(fr.v_plus, p.omega, kin.delta_eff);
  auto tm = transform_matrices(fr.phi, fr.beta);
  fr.u = tm.u;
  fr.u_inv = tm.u_inv;
  fr.f = tm.f;
  std::tie(fr.alpha1, fr.alpha2) = decay_rates(fr.v_plus, fr.v_minus, kin.kx);
  return fr;
}

}  // namespace ghatom

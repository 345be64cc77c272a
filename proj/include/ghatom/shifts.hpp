#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "errors.hpp"
#include "params.hpp"
#include "scattering.hpp"

namespace ghatom {

enum class Channel { R, T };

inline cplx ground_amplitude(const ScatterCoeffs& c, Channel ch) {
  return ch == Channel::R ? c.r1 : c.t1;
}

inline double phase_of(cplx s) {
  if (std::abs(s) <= 1e-300)
    throw ZeroAmplitude("phase undefined: amplitude magnitude below 1e-300");
  return std::arg(s);
}

struct PhaseGradient {
  double d_kx = 0.0;
  double d_ky = 0.0;
};

// Gradient of the ground-channel phase in Cartesian wavevector components,
// via Im[(1/S) dS/dk_i] with central differences on S itself.  Immune to 2pi
// wrapping.  Varying kx moves every wavevector and rate; varying ky enters
// only through the Doppler term of the effective detuning.
inline PhaseGradient phase_gradient(const ScaledParams& p, Channel ch,
                                    double rel_step = 1e-6) {
  const double kx0 = p.k * std::cos(p.theta);
  const double ky0 = p.k * std::sin(p.theta);

  const cplx s0 = ground_amplitude(scatter(p).coeffs, ch);
  if (std::abs(s0) <= 1e-300)
    throw ZeroAmplitude("phase gradient undefined at a reflection zero");

  double h = rel_step * p.k;
  for (int attempt = 0;; ++attempt) {
    const cplx sxp = ground_amplitude(scatter_at(p, kx0 + h, ky0), ch);
    const cplx sxm = ground_amplitude(scatter_at(p, kx0 - h, ky0), ch);
    const cplx syp = ground_amplitude(scatter_at(p, kx0, ky0 + h), ch);
    const cplx sym = ground_amplitude(scatter_at(p, kx0, ky0 - h), ch);

    double mx = std::abs(s0), mn = std::abs(s0);
    for (cplx s : {sxp, sxm, syp, sym}) {
      mx = std::max(mx, std::abs(s));
      mn = std::min(mn, std::abs(s));
    }
    if (mn <= 0.0 || mx / mn > 1e3) {
      if (attempt == 0) {
        h *= 0.1;  // one automatic shrink near a sharp resonance
        continue;
      }
      throw StencilCrossesResonance(
          "amplitude varies by > 3 orders of magnitude across stencil");
    }
    PhaseGradient g;
    g.d_kx = (((sxp - sxm) / (2.0 * h)) / s0).imag();
    g.d_ky = (((syp - sym) / (2.0 * h)) / s0).imag();
    return g;
  }
}

struct ChannelShift {
  double theta = 0.0;   // amplitude phase, (-pi, pi]
  PhaseGradient grad;
  double dt = 0.0;      // group delay relative to free flight, units 1/gamma
  double y = 0.0;       // lateral shift along the interface, units 1/k_gamma
};

// Delay and lateral shift from a phase gradient:
//   dt = (dTheta/dkx + L) / (2 kx),   y = 2 ky dt - dTheta/dky.
inline ChannelShift delay_and_shift(const ScaledParams& p,
                                    const PhaseGradient& g, Channel ch,
                                    cplx amplitude) {
  const double kx = p.k * std::cos(p.theta);
  const double ky = p.k * std::sin(p.theta);
  if (!(kx > 0.0)) throw ValidationError("delay requires kx > 0");
  ChannelShift out;
  out.theta = phase_of(amplitude);
  out.grad = g;
  out.dt = (g.d_kx + p.L) / (2.0 * kx);
  out.y = 2.0 * ky * out.dt - g.d_ky;
  (void)ch;
  return out;
}

struct ShiftResult {
  ChannelShift reflected;
  ChannelShift transmitted;
};

inline ShiftResult compute_shifts(const ScaledParams& p,
                                  double fd_rel_step = 1e-6) {
  const ScatterCoeffs c = scatter(p).coeffs;
  ShiftResult r;
  r.reflected = delay_and_shift(p, phase_gradient(p, Channel::R, fd_rel_step),
                                Channel::R, c.r1);
  r.transmitted = delay_and_shift(p, phase_gradient(p, Channel::T, fd_rel_step),
                                  Channel::T, c.t1);
  return r;
}

// Critical angle(s) for a repulsive dominant dressed mode: solutions of
//   k^2 cos^2(theta) = Re v_plus(theta)
// where v_plus depends on theta through the Doppler-shifted detuning.  Grid
// scan for sign changes, then bisection to 1e-10.  Empty result: no root
// (red detuning, or barrier higher than the total kinetic energy everywhere).
inline std::vector<double> critical_angle(const ScaledParams& p,
                                          int scan_points = 4096) {
  p.validate();
  auto g = [&](double theta) {
    const double ky = p.k * std::sin(theta);
    const double kc = p.k * std::cos(theta);
    const auto [vp, vm] =
        dressed_eigenvalues(effective_detuning(p, ky), p.gamma, p.omega);
    return kc * kc - vp.real();
  };

  const double hi = std::numbers::pi / 2.0 - 1e-9;
  std::vector<double> roots;
  double prev_t = 0.0, prev_g = g(0.0);
  for (int i = 1; i <= scan_points; ++i) {
    const double t = hi * static_cast<double>(i) / scan_points;
    const double gt = g(t);
    if ((prev_g <= 0.0) != (gt <= 0.0)) {
      double a = prev_t, b = t, ga = prev_g;
      while (b - a > 1e-10) {
        const double m = 0.5 * (a + b);
        const double gm = g(m);
        if ((ga <= 0.0) != (gm <= 0.0))
          b = m;
        else {
          a = m;
          ga = gm;
        }
      }
      roots.push_back(0.5 * (a + b));
    }
    prev_t = t;
    prev_g = gt;
  }
  return roots;
}

}  // namespace ghatom

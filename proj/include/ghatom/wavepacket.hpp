#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "errors.hpp"
#include "params.hpp"
#include "scattering.hpp"
#include "shifts.hpp"

namespace ghatom {

// Narrow-band Gaussian packet in wavevector space plus observation plan.
struct PacketSpec {
  double sigma_k = 0.0;       // isotropic momentum width
  int modes = 64;             // quadrature points per k axis
  double x0 = 0.0;            // initial peak position, must sit left of the slab
  double y0 = 0.0;
  std::vector<double> times;  // scaled observation times
  int grid_n = 256;           // spatial samples per axis
  double grid_span = 12.0;    // grid extent in units of 1/sigma_k

  void validate(const ScaledParams& p) const {
    if (!(sigma_k > 0.0 && sigma_k <= 0.02 * p.k))
      throw ValidationError("sigma_k must be in (0, 0.02 k] (narrow band)");
    if (modes < 32) throw ValidationError("modes must be >= 32");
    if (!(x0 < -p.L / 2.0))
      throw ValidationError("packet origin must satisfy x0 < -L/2");
    if (grid_n < 16) throw ValidationError("grid_n must be >= 16");
  }
};

// Sampled ground-channel field on a rectangular lattice.
struct PacketField {
  Channel channel = Channel::T;
  double time = 0.0;
  double x_start = 0.0, dx = 0.0;
  double y_start = 0.0, dy = 0.0;
  int nx = 0, ny = 0;
  std::vector<cplx> values;   // row-major, index = ix * ny + iy
  int dropped_nodes = 0;      // quadrature nodes that failed amplitude evaluation

  cplx at(int ix, int iy) const { return values[ix * ny + iy]; }
  double x_of(int ix) const { return x_start + ix * dx; }
  double y_of(int iy) const { return y_start + iy * dy; }
};

// Superpose stationary scattering solutions over a Gaussian-weighted tensor
// grid of wavevectors (+-4 sigma, modes points per axis).  Total per-node
// phase: Theta(k') -+ k'x (x +- x0) + k'y (y - y0) - k'^2 t  (upper signs:
// reflection).  The phase is separable in x and y, so the field is two small
// dense contractions rather than a per-point node sum; accumulation order is
// fixed and independent of threading.
inline PacketField synthesize(const ScaledParams& p, const PacketSpec& spec,
                              Channel ch, double t) {
  p.validate();
  spec.validate(p);
  if (t < 0.0) throw ValidationError("observation time must be >= 0");

  const double kx = p.k * std::cos(p.theta);
  const double ky = p.k * std::sin(p.theta);
  const double sig = spec.sigma_k;
  const int m = spec.modes;

  // ballistic peak estimate centers the grid
  const double xc = (ch == Channel::R) ? -spec.x0 - 2.0 * kx * t
                                       : spec.x0 + 2.0 * kx * t;
  const double yc = spec.y0 + 2.0 * ky * t;
  const double half = 0.5 * spec.grid_span / sig;

  PacketField field;
  field.channel = ch;
  field.time = t;
  field.nx = spec.grid_n;
  field.ny = spec.grid_n;
  field.x_start = xc - half;
  field.y_start = yc - half;
  field.dx = 2.0 * half / (spec.grid_n - 1);
  field.dy = field.dx;
  field.values.assign(static_cast<size_t>(field.nx) * field.ny, cplx(0.0));

  std::vector<double> dk(m);
  for (int i = 0; i < m; ++i)
    dk[i] = -4.0 * sig + 8.0 * sig * i / (m - 1);

  const cplx i_unit(0.0, 1.0);
  const double xsign = (ch == Channel::R) ? -1.0 : 1.0;

  // node coefficients: weight * amplitude * time phase * origin phase
  std::vector<cplx> C(static_cast<size_t>(m) * m, cplx(0.0));
  int dropped = 0;
  for (int i = 0; i < m; ++i) {
    const double kxp = kx + dk[i];
    for (int j = 0; j < m; ++j) {
      const double kyp = ky + dk[j];
      cplx s;
      try {
        s = ground_amplitude(scatter_at(p, kxp, kyp), ch);
      } catch (const NumericalError&) {
        ++dropped;
        continue;
      }
      const double w = std::exp(-(dk[i] * dk[i] + dk[j] * dk[j]) /
                                (2.0 * sig * sig));
      const double k2 = kxp * kxp + kyp * kyp;
      C[i * m + j] = w * s *
                     std::exp(i_unit *
                              (-kxp * spec.x0 - kyp * spec.y0 - k2 * t));
    }
  }
  field.dropped_nodes = dropped;

  // separable carrier factors along each axis
  std::vector<cplx> ux(static_cast<size_t>(m) * field.nx);
  std::vector<cplx> vy(static_cast<size_t>(m) * field.ny);
  for (int i = 0; i < m; ++i)
    for (int a = 0; a < field.nx; ++a)
      ux[i * field.nx + a] =
          std::exp(i_unit * (xsign * (kx + dk[i]) * field.x_of(a)));
  for (int j = 0; j < m; ++j)
    for (int b = 0; b < field.ny; ++b)
      vy[j * field.ny + b] = std::exp(i_unit * ((ky + dk[j]) * field.y_of(b)));

  // tmp[i][b] = sum_j C[i][j] vy[j][b], then field[a][b] = sum_i ux[i][a] tmp[i][b]
  std::vector<cplx> tmp(static_cast<size_t>(m) * field.ny, cplx(0.0));
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j) {
      const cplx c = C[i * m + j];
      if (c == cplx(0.0)) continue;
      for (int b = 0; b < field.ny; ++b)
        tmp[i * field.ny + b] += c * vy[j * field.ny + b];
    }
  for (int a = 0; a < field.nx; ++a)
    for (int i = 0; i < m; ++i) {
      const cplx u = ux[i * field.nx + a];
      for (int b = 0; b < field.ny; ++b)
        field.values[a * field.ny + b] += u * tmp[i * field.ny + b];
    }

  for (const cplx& v : field.values)
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
      throw NumericalError("non-finite packet field value");
  return field;
}

struct PeakLocation {
  double x = 0.0;
  double y = 0.0;
};

// Sub-cell peak of |psi|^2 via separate 3-point parabolic interpolation along
// each axis around the global maximum sample.
inline PeakLocation measure_peak(const PacketField& field) {
  int im = 0, jm = 0;
  double best = -1.0;
  for (int a = 0; a < field.nx; ++a)
    for (int b = 0; b < field.ny; ++b) {
      const double v = std::norm(field.at(a, b));
      if (v > best) {
        best = v;
        im = a;
        jm = b;
      }
    }
  if (!(best > 0.0))
    throw NumericalError("cannot locate peak of an identically zero field");
  if (im < 3 || jm < 3 || im >= field.nx - 3 || jm >= field.ny - 3)
    throw PeakOnBoundary("packet peak within 3 cells of the grid edge");

  // secondary well-separated maxima signal resonance ringing
  for (int a = 1; a + 1 < field.nx; ++a)
    for (int b = 1; b + 1 < field.ny; ++b) {
      if (std::abs(a - im) <= 5 && std::abs(b - jm) <= 5) continue;
      const double v = std::norm(field.at(a, b));
      if (v <= 0.8 * best) continue;
      if (v >= std::norm(field.at(a - 1, b)) &&
          v >= std::norm(field.at(a + 1, b)) &&
          v >= std::norm(field.at(a, b - 1)) &&
          v >= std::norm(field.at(a, b + 1)))
        throw MultiPeak("secondary peak at (" + std::to_string(field.x_of(a)) +
                        ", " + std::to_string(field.y_of(b)) +
                        ") rivals main peak at (" +
                        std::to_string(field.x_of(im)) + ", " +
                        std::to_string(field.y_of(jm)) + ")");
    }

  auto subcell = [](double fm, double f0, double fp) {
    const double den = fm - 2.0 * f0 + fp;
    return (std::abs(den) < 1e-300) ? 0.0 : 0.5 * (fm - fp) / den;
  };
  const double off_x = subcell(std::norm(field.at(im - 1, jm)), best,
                               std::norm(field.at(im + 1, jm)));
  const double off_y = subcell(std::norm(field.at(im, jm - 1)), best,
                               std::norm(field.at(im, jm + 1)));
  return {field.x_of(im) + off_x * field.dx, field.y_of(jm) + off_y * field.dy};
}

// Observation times that let the packet clear the slab by a few packet widths.
inline std::vector<double> default_times(const ScaledParams& p,
                                         const PacketSpec& spec) {
  const double kx = p.k * std::cos(p.theta);
  const double vx = 2.0 * kx;
  const double t_hit = (std::abs(spec.x0) - p.L / 2.0) / vx;
  const double t_clear = (p.L + 4.0 / spec.sigma_k) / vx;
  const double t1 = t_hit + t_clear;
  return {t1, t1 + 1.5 / spec.sigma_k / vx};
}

struct ShiftReport {
  Channel channel = Channel::T;
  double grad_kx_measured = 0.0;
  double grad_ky_measured = 0.0;
  double dt_measured = 0.0;
  double y_measured = 0.0;
  double dt_analytic = 0.0;
  double y_analytic = 0.0;
  std::vector<double> times;
  std::vector<PeakLocation> peaks;
};

// End-to-end oracle: track the packet peak at two times, invert the peak
// trajectory for the phase gradients, then form delay and lateral shift and
// tabulate against the stationary-phase values.
inline ShiftReport shift_report(const ScaledParams& p, const PacketSpec& spec,
                                Channel ch) {
  std::vector<double> times = spec.times;
  if (times.size() < 2) times = default_times(p, spec);

  const double kx = p.k * std::cos(p.theta);
  const double ky = p.k * std::sin(p.theta);

  ShiftReport rep;
  rep.channel = ch;
  rep.times = {times[0], times[1]};

  double gx = 0.0, gy = 0.0;
  for (double t : rep.times) {
    const PacketField f = synthesize(p, spec, ch, t);
    const PeakLocation pk = measure_peak(f);
    rep.peaks.push_back(pk);
    if (ch == Channel::R)
      gx += pk.x + spec.x0 + 2.0 * kx * t;
    else
      gx += spec.x0 + 2.0 * kx * t - pk.x;
    gy += 2.0 * ky * t - (pk.y - spec.y0);
  }
  rep.grad_kx_measured = gx / 2.0;
  rep.grad_ky_measured = gy / 2.0;
  rep.dt_measured = (rep.grad_kx_measured + p.L) / (2.0 * kx);
  rep.y_measured = 2.0 * ky * rep.dt_measured - rep.grad_ky_measured;

  if (p.omega == 0.0 && ch == Channel::T) {
    rep.dt_analytic = p.L / (2.0 * kx);
    rep.y_analytic = ky * p.L / kx;
  } else {
    const ScatterCoeffs c = scatter(p).coeffs;
    const ChannelShift cs = delay_and_shift(p, phase_gradient(p, ch), ch,
                                            ground_amplitude(c, ch));
    rep.dt_analytic = cs.dt;
    rep.y_analytic = cs.y;
  }
  return rep;
}

}  // namespace ghatom

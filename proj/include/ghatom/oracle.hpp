#pragma once

#include <algorithm>
#include <cmath>
#include <random>

#include "params.hpp"
#include "scattering.hpp"

namespace ghatom {

// Seeded random-draw comparison of the closed-form coefficients against the
// direct boundary-matching solve, plus the gamma = 0 flux suite.

inline double relative_deviation(cplx a, cplx b) {
  const double scale = std::max(std::abs(a), std::abs(b));
  if (scale < 1e-280) return 0.0;  // both numerically dead
  return std::abs(a - b) / scale;
}

inline double coeffs_deviation(const ScatterCoeffs& a, const ScatterCoeffs& b) {
  return std::max({relative_deviation(a.r1, b.r1),
                   relative_deviation(a.r2, b.r2),
                   relative_deviation(a.t1, b.t1),
                   relative_deviation(a.t2, b.t2)});
}

inline ScaledParams draw_params(std::mt19937& rng, bool gamma_zero) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  ScaledParams p;
  p.gamma = gamma_zero ? 0.0 : 1.0;
  p.delta_L = -300.0 + 600.0 * u(rng);
  p.omega = 1.0 + 49.0 * u(rng);
  p.k = 0.5 + 4.5 * u(rng);
  p.k_L = 10.0 * u(rng);
  p.L = 0.5 + 9.5 * u(rng);
  p.theta = (1.0 + 84.0 * u(rng)) * std::numbers::pi / 180.0;
  return p;
}

struct OracleSummary {
  int trials = 0;
  int skipped_ill_conditioned = 0;
  double max_rel_dev = 0.0;
  double worst_theta_deg = 0.0;
  double worst_delta = 0.0;
};

inline OracleSummary run_oracle_trials(int n, unsigned seed) {
  std::mt19937 rng(seed);
  OracleSummary s;
  while (s.trials < n) {
    const ScaledParams p = draw_params(rng, s.trials % 2 == 0 ? false : true);
    ScatterCoeffs direct;
    try {
      direct = coefficients_direct(p);
    } catch (const IllConditioned&) {
      ++s.skipped_ill_conditioned;
      continue;
    }
    const double dev = coeffs_deviation(scatter(p).coeffs, direct);
    if (dev > s.max_rel_dev) {
      s.max_rel_dev = dev;
      s.worst_theta_deg = p.theta * 180.0 / std::numbers::pi;
      s.worst_delta = p.delta_L;
    }
    ++s.trials;
  }
  return s;
}

struct FluxSummary {
  int open_trials = 0;
  int closed_trials = 0;
  double max_open_residual = 0.0;    // |flux residual|, open excited channel
  double max_closed_residual = 0.0;  // | |R1|^2 + |T1|^2 - 1 |, closed channel
};

// gamma = 0 draws, split by whether the excited channel propagates.
inline FluxSummary run_flux_trials(int n_per_class, unsigned seed) {
  std::mt19937 rng(seed);
  FluxSummary s;
  while (s.open_trials < n_per_class || s.closed_trials < n_per_class) {
    const ScaledParams p = draw_params(rng, true);
    const Kinematics kin = derive_kinematics(p);
    const bool open = kin.delta_eff + kin.kx * kin.kx > 0.0;
    if (open && s.open_trials >= n_per_class) continue;
    if (!open && s.closed_trials >= n_per_class) continue;
    const ScatterCoeffs c = scatter(p).coeffs;
    if (open) {
      const double res =
          std::abs(flux_residual(c, kin.k1, kin.k2, p.gamma)) / kin.k1;
      s.max_open_residual = std::max(s.max_open_residual, res);
      ++s.open_trials;
    } else {
      const double res =
          std::abs(std::norm(c.r1) + std::norm(c.t1) - 1.0);
      s.max_closed_residual = std::max(s.max_closed_residual, res);
      ++s.closed_trials;
    }
  }
  return s;
}

}  // namespace ghatom

#pragma once

#include <atomic>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <ostream>
#include <string>
#include <thread>
#include <vector>

#include "errors.hpp"
#include "params.hpp"
#include "scattering.hpp"
#include "shifts.hpp"

namespace ghatom {

inline const char* error_name(const Error& e) {
  if (dynamic_cast<const DegenerateFrame*>(&e)) return "DegenerateFrame";
  if (dynamic_cast<const SingularTransform*>(&e)) return "SingularTransform";
  if (dynamic_cast<const ChannelDegenerate*>(&e)) return "ChannelDegenerate";
  if (dynamic_cast<const ResonanceSingular*>(&e)) return "ResonanceSingular";
  if (dynamic_cast<const IllConditioned*>(&e)) return "IllConditioned";
  if (dynamic_cast<const ZeroAmplitude*>(&e)) return "ZeroAmplitude";
  if (dynamic_cast<const StencilCrossesResonance*>(&e))
    return "StencilCrossesResonance";
  if (dynamic_cast<const PeakOnBoundary*>(&e)) return "PeakOnBoundary";
  if (dynamic_cast<const MultiPeak*>(&e)) return "MultiPeak";
  if (dynamic_cast<const ValidationError*>(&e)) return "ValidationError";
  if (dynamic_cast<const IoError*>(&e)) return "IoError";
  if (dynamic_cast<const NumericalError*>(&e)) return "NumericalError";
  return "Error";
}

struct SweepSpec {
  ScaledParams base;        // theta field ignored; swept below
  double theta_min_deg = 0.0;
  double theta_max_deg = 89.0;
  int n = 2;
  bool unwrap = false;
  double fd_rel_step = 1e-6;

  void validate() const {
    if (!(theta_min_deg >= 0.0 && theta_min_deg < theta_max_deg &&
          theta_max_deg < 90.0))
      throw ValidationError("need 0 <= theta_min < theta_max < 90");
    if (n < 2) throw ValidationError("sweep needs n >= 2");
  }
};

struct SweepRow {
  double theta_deg = 0.0;
  double delta_eff = 0.0;
  cplx vp, vm, ap, am;
  double absR1sq = 0.0, absT1sq = 0.0;
  double theta_R = 0.0, theta_T = 0.0;
  double y_R = 0.0, y_T = 0.0;
  double dt_R = 0.0, dt_T = 0.0;
  double flux = 0.0;
  std::string reason;  // empty = ok
};

inline int sweep_thread_count() {
  unsigned n = std::thread::hardware_concurrency();
  if (n == 0) n = 1;
  if (const char* env = std::getenv("GH_ATOM_THREADS")) {
    const long cap = std::strtol(env, nullptr, 10);
    if (cap >= 1 && static_cast<unsigned>(cap) < n)
      n = static_cast<unsigned>(cap);
  }
  return static_cast<int>(n);
}

inline SweepRow evaluate_sweep_row(const ScaledParams& base, double theta_deg,
                                   double fd_rel_step) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  SweepRow row;
  row.theta_deg = theta_deg;
  row.delta_eff = nan;
  row.vp = row.vm = row.ap = row.am = cplx(nan, nan);
  row.absR1sq = row.absT1sq = row.theta_R = row.theta_T = nan;
  row.y_R = row.y_T = row.dt_R = row.dt_T = row.flux = nan;

  ScaledParams p = base;
  p.theta = theta_deg * std::numbers::pi / 180.0;
  try {
    const Kinematics kin = derive_kinematics(p);
    row.delta_eff = kin.delta_eff;
    std::tie(row.vp, row.vm) =
        dressed_eigenvalues(kin.delta_eff, p.gamma, p.omega);
    std::tie(row.ap, row.am) = decay_rates(row.vp, row.vm, kin.kx);

    const ScatterState st = scatter(p);
    row.absR1sq = std::norm(st.coeffs.r1);
    row.absT1sq = std::norm(st.coeffs.t1);
    row.flux = flux_residual(st.coeffs, kin.k1, kin.k2, p.gamma);

    const ShiftResult sh = compute_shifts(p, fd_rel_step);
    row.theta_R = sh.reflected.theta;
    row.theta_T = sh.transmitted.theta;
    row.y_R = sh.reflected.y;
    row.y_T = sh.transmitted.y;
    row.dt_R = sh.reflected.dt;
    row.dt_T = sh.transmitted.dt;
  } catch (const Error& e) {
    row.reason = error_name(e);
  }
  return row;
}

// Continuity by minimizing +-2pi jumps between consecutive finite samples.
inline void unwrap_column(std::vector<SweepRow>& rows,
                          double SweepRow::* field) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double offset = 0.0;
  double prev = std::numeric_limits<double>::quiet_NaN();
  for (SweepRow& r : rows) {
    double& v = r.*field;
    if (!std::isfinite(v)) continue;
    const double raw = v;
    if (std::isfinite(prev)) {
      double candidate = raw + offset;
      while (candidate - prev > std::numbers::pi) {
        offset -= two_pi;
        candidate -= two_pi;
      }
      while (candidate - prev < -std::numbers::pi) {
        offset += two_pi;
        candidate += two_pi;
      }
    }
    v = raw + offset;
    prev = v;
  }
}

// Rows computed in parallel, stored and emitted in theta order.
inline std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  spec.validate();
  std::vector<SweepRow> rows(spec.n);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= spec.n) return;
      const double t = spec.theta_min_deg +
                       (spec.theta_max_deg - spec.theta_min_deg) * i /
                           (spec.n - 1);
      rows[i] = evaluate_sweep_row(spec.base, t, spec.fd_rel_step);
    }
  };
  const int nthreads = sweep_thread_count();
  std::vector<std::thread> pool;
  for (int i = 1; i < nthreads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (spec.unwrap) {
    unwrap_column(rows, &SweepRow::theta_R);
    unwrap_column(rows, &SweepRow::theta_T);
  }
  return rows;
}

inline constexpr const char* kSweepCsvHeader =
    "theta_deg,delta_eff,Vp_re,Vp_im,Vm_re,Vm_im,ap_re,ap_im,am_re,am_im,"
    "absR1sq,absT1sq,ThetaR,ThetaT,yR,yT,dtR,dtT,flux,reason";

inline std::string csv_number(double v) {
  if (std::isnan(v)) return "nan";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17e", v);
  return buf;
}

inline void write_sweep_csv(std::ostream& os, const std::vector<SweepRow>& rows) {
  os << kSweepCsvHeader << '\n';
  for (const SweepRow& r : rows) {
    os << csv_number(r.theta_deg) << ',' << csv_number(r.delta_eff) << ','
       << csv_number(r.vp.real()) << ',' << csv_number(r.vp.imag()) << ','
       << csv_number(r.vm.real()) << ',' << csv_number(r.vm.imag()) << ','
       << csv_number(r.ap.real()) << ',' << csv_number(r.ap.imag()) << ','
       << csv_number(r.am.real()) << ',' << csv_number(r.am.imag()) << ','
       << csv_number(r.absR1sq) << ',' << csv_number(r.absT1sq) << ','
       << csv_number(r.theta_R) << ',' << csv_number(r.theta_T) << ','
       << csv_number(r.y_R) << ',' << csv_number(r.y_T) << ','
       << csv_number(r.dt_R) << ',' << csv_number(r.dt_T) << ','
       << csv_number(r.flux) << ',' << r.reason << '\n';
  }
}

}  // namespace ghatom

// Command-line front end: single-point evaluation, theta sweeps, critical
// angle search, oracle comparison runs, and wavepacket peak tracking.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ghatom/ghatom.hpp"

namespace {

using namespace ghatom;

constexpr int kExitOk = 0;
constexpr int kExitBadInput = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitIo = 4;

struct ParamFlags {
  std::string config;
  std::optional<double> gamma, delta, omega, k, k_l, length, theta_deg;
  std::optional<double> fd_rel_step, sigma_k;
  std::optional<int> modes;
};

void add_param_flags(CLI::App* cmd, ParamFlags& f) {
  cmd->add_option("--config", f.config, "config file (key = value lines)");
  cmd->add_option("--gamma", f.gamma, "decay rate (default 1)");
  cmd->add_option("--Delta", f.delta, "laser detuning");
  cmd->add_option("--Omega", f.omega, "peak Rabi frequency");
  cmd->add_option("--k", f.k, "incident wavenumber magnitude");
  cmd->add_option("--kL", f.k_l, "laser wavenumber");
  cmd->add_option("--L", f.length, "slab width");
  cmd->add_option("--theta-deg", f.theta_deg, "incidence angle in degrees");
  cmd->add_option("--fd-rel-step", f.fd_rel_step,
                  "relative finite-difference step for phase gradients");
  cmd->add_option("--sigma-k", f.sigma_k,
                  "packet momentum width (default 0.005 k)");
  cmd->add_option("--modes", f.modes, "quadrature points per k axis");
}

Settings resolve(const ParamFlags& f) {
  Settings s;
  if (!f.config.empty()) load_config(f.config, s);
  if (f.gamma) s.params.gamma = *f.gamma;
  if (f.delta) s.params.delta_L = *f.delta;
  if (f.omega) s.params.omega = *f.omega;
  if (f.k) s.params.k = *f.k;
  if (f.k_l) s.params.k_L = *f.k_l;
  if (f.length) s.params.L = *f.length;
  if (f.theta_deg) s.params.theta = *f.theta_deg * std::numbers::pi / 180.0;
  if (f.fd_rel_step) s.fd_rel_step = *f.fd_rel_step;
  if (f.sigma_k) s.sigma_k = *f.sigma_k;
  if (f.modes) s.modes = *f.modes;
  s.params.validate();
  return s;
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string fmt(cplx v) {
  return fmt(v.real()) + (v.imag() < 0 ? " - " : " + ") +
         fmt(std::abs(v.imag())) + "i";
}

int cmd_coeffs(const Settings& s, bool with_oracle) {
  const ScatterState st = scatter(s.params);
  const Kinematics& kin = st.kin;
  std::cout << "kx        = " << fmt(kin.kx) << "\n"
            << "ky        = " << fmt(kin.ky) << "\n"
            << "delta_eff = " << fmt(kin.delta_eff) << "\n"
            << "k1        = " << fmt(kin.k1) << "\n"
            << "k2        = " << fmt(kin.k2) << "\n"
            << "Ex        = " << fmt(kin.Ex) << "\n";
  if (st.frame) {
    std::cout << "V+        = " << fmt(st.frame->v_plus) << "\n"
              << "V-        = " << fmt(st.frame->v_minus) << "\n"
              << "phi       = " << fmt(st.frame->phi) << "\n"
              << "beta      = " << fmt(st.frame->beta) << "\n"
              << "alpha+    = " << fmt(st.frame->alpha1) << "\n"
              << "alpha-    = " << fmt(st.frame->alpha2) << "\n";
  } else {
    std::cout << "dressed frame: free propagation (Omega = 0)\n";
  }
  std::cout << "R1        = " << fmt(st.coeffs.r1) << "\n"
            << "R2        = " << fmt(st.coeffs.r2) << "\n"
            << "T1        = " << fmt(st.coeffs.t1) << "\n"
            << "T2        = " << fmt(st.coeffs.t2) << "\n"
            << "|R1|^2    = " << fmt(std::norm(st.coeffs.r1)) << "\n"
            << "|T1|^2    = " << fmt(std::norm(st.coeffs.t1)) << "\n"
            << "flux      = "
            << fmt(flux_residual(st.coeffs, kin.k1, kin.k2, s.params.gamma))
            << "\n";
  if (with_oracle) {
    const ScatterCoeffs d = coefficients_direct(s.params);
    std::cout << "direct R1 = " << fmt(d.r1) << "\n"
              << "direct R2 = " << fmt(d.r2) << "\n"
              << "direct T1 = " << fmt(d.t1) << "\n"
              << "direct T2 = " << fmt(d.t2) << "\n"
              << "max rel dev = " << fmt(coeffs_deviation(st.coeffs, d))
              << "\n";
  }
  return kExitOk;
}

int cmd_sweep(const Settings& s, double tmin, double tmax, int n, bool unwrap,
              const std::string& out_path, bool svg) {
  SweepSpec spec;
  spec.base = s.params;
  spec.theta_min_deg = tmin;
  spec.theta_max_deg = tmax;
  spec.n = n;
  spec.unwrap = unwrap;
  spec.fd_rel_step = s.fd_rel_step;
  const std::vector<SweepRow> rows = run_sweep(spec);

  std::ofstream os(out_path, std::ios::binary);
  if (!os) throw IoError("cannot open output file: " + out_path);
  write_sweep_csv(os, rows);
  if (!os) throw IoError("write failed: " + out_path);
  std::cout << "wrote " << rows.size() << " rows to " << out_path << "\n";

  if (svg) {
    const std::string stem =
        out_path.size() > 4 && out_path.ends_with(".csv")
            ? out_path.substr(0, out_path.size() - 4)
            : out_path;
    for (Channel ch : {Channel::R, Channel::T}) {
      const std::string path =
          stem + (ch == Channel::R ? "_R.svg" : "_T.svg");
      std::ofstream sv(path, std::ios::binary);
      if (!sv) throw IoError("cannot open output file: " + path);
      write_channel_svg(sv, rows, ch);
      if (!sv) throw IoError("write failed: " + path);
      std::cout << "wrote " << path << "\n";
    }
  }
  return kExitOk;
}

int cmd_critical_angle(const Settings& s) {
  const std::vector<double> roots = critical_angle(s.params);
  if (roots.empty()) {
    std::cout << "theta_c = none (no angle where the normal kinetic energy "
                 "matches the repulsive barrier height)\n";
    return kExitOk;
  }
  for (double r : roots)
    std::cout << "theta_c_deg = " << fmt(r * 180.0 / std::numbers::pi) << "\n";
  if (roots.size() > 1)
    std::cout << "warning: multiple crossings found; result is ambiguous\n";
  return kExitOk;
}

int cmd_oracle(int trials, unsigned seed) {
  const OracleSummary s = run_oracle_trials(trials, seed);
  const FluxSummary f = run_flux_trials(std::max(1, trials / 2), seed + 1);
  std::cout << "oracle trials            = " << s.trials << "\n"
            << "ill-conditioned skipped  = " << s.skipped_ill_conditioned
            << "\n"
            << "max rel deviation        = " << fmt(s.max_rel_dev) << "\n"
            << "worst point              = theta " << fmt(s.worst_theta_deg)
            << " deg, Delta " << fmt(s.worst_delta) << "\n"
            << "flux open-channel max    = " << fmt(f.max_open_residual)
            << "\n"
            << "flux closed-channel max  = " << fmt(f.max_closed_residual)
            << "\n";
  const bool ok = s.max_rel_dev < 1e-9 && f.max_open_residual < 1e-10 &&
                  f.max_closed_residual < 1e-10;
  std::cout << (ok ? "PASS" : "FAIL") << "\n";
  return ok ? kExitOk : kExitNumerical;
}

void dump_field_csv(const PacketField& f, const std::string& path) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw IoError("cannot open output file: " + path);
  os << "x,y,re,im,abs2\n";
  for (int a = 0; a < f.nx; ++a)
    for (int b = 0; b < f.ny; ++b) {
      const cplx v = f.at(a, b);
      os << csv_number(f.x_of(a)) << ',' << csv_number(f.y_of(b)) << ','
         << csv_number(v.real()) << ',' << csv_number(v.imag()) << ','
         << csv_number(std::norm(v)) << '\n';
    }
  if (!os) throw IoError("write failed: " + path);
}

int cmd_wavepacket(const Settings& s, const std::string& channel,
                   const std::vector<double>& times,
                   const std::string& dump_path) {
  const Channel ch = channel == "R" ? Channel::R : Channel::T;
  PacketSpec spec;
  spec.sigma_k = s.packet_sigma();
  spec.modes = s.modes;
  spec.x0 = -(s.params.L / 2.0 + 6.0 / spec.sigma_k);
  spec.y0 = 0.0;
  spec.times = times;

  const ShiftReport rep = shift_report(s.params, spec, ch);
  std::cout << "channel            = " << channel << "\n"
            << "times              = " << fmt(rep.times[0]) << ", "
            << fmt(rep.times[1]) << "\n";
  for (size_t i = 0; i < rep.peaks.size(); ++i)
    std::cout << "peak[" << i << "]            = (" << fmt(rep.peaks[i].x)
              << ", " << fmt(rep.peaks[i].y) << ")\n";
  std::cout << "dTheta/dkx meas    = " << fmt(rep.grad_kx_measured) << "\n"
            << "dTheta/dky meas    = " << fmt(rep.grad_ky_measured) << "\n"
            << "dt measured        = " << fmt(rep.dt_measured) << "\n"
            << "dt stationary      = " << fmt(rep.dt_analytic) << "\n"
            << "y measured         = " << fmt(rep.y_measured) << "\n"
            << "y stationary       = " << fmt(rep.y_analytic) << "\n";

  if (!dump_path.empty()) {
    const std::vector<double> ts =
        rep.times.empty() ? default_times(s.params, spec) : rep.times;
    dump_field_csv(synthesize(s.params, spec, ch, ts.back()), dump_path);
    std::cout << "wrote field to " << dump_path << "\n";
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Matter-wave scattering of two-level atoms off a laser slab: "
      "amplitudes, lateral shifts, and verification oracles"};
  app.require_subcommand(1);

  ParamFlags pf_coeffs, pf_sweep, pf_crit, pf_packet;

  auto* coeffs = app.add_subcommand("coeffs", "single-point amplitude report");
  add_param_flags(coeffs, pf_coeffs);
  bool with_oracle = false;
  coeffs->add_flag("--oracle", with_oracle,
                   "append the direct-solve comparison");

  auto* sweep = app.add_subcommand("sweep", "theta sweep to CSV");
  add_param_flags(sweep, pf_sweep);
  double tmin = 0.5, tmax = 89.0;
  int nrows = 512;
  bool unwrap = false, svg = false;
  std::string out_path = "sweep.csv";
  sweep->add_option("--theta-min", tmin, "sweep start, degrees");
  sweep->add_option("--theta-max", tmax, "sweep end, degrees");
  sweep->add_option("--n", nrows, "sample count");
  sweep->add_flag("--unwrap", unwrap, "unwrap phase columns");
  sweep->add_option("--out", out_path, "output CSV path");
  sweep->add_flag("--svg", svg, "also write per-channel SVG charts");

  auto* crit = app.add_subcommand("critical-angle",
                                  "barrier critical angle (blue detuning)");
  add_param_flags(crit, pf_crit);

  auto* oracle = app.add_subcommand(
      "oracle", "random-draw closed-form vs direct-solve comparison");
  int trials = 200;
  unsigned seed = 20260823;
  oracle->add_option("--trials", trials, "number of draws");
  oracle->add_option("--seed", seed, "RNG seed");

  auto* packet =
      app.add_subcommand("wavepacket", "packet synthesis peak-tracking check");
  add_param_flags(packet, pf_packet);
  std::string channel = "R";
  std::vector<double> times;
  std::string dump_path;
  packet->add_option("--channel", channel, "R or T")
      ->check(CLI::IsMember({"R", "T"}));
  packet->add_option("--times", times, "two observation times")
      ->delimiter(',');
  packet->add_option("--dump-field", dump_path, "write sampled field CSV");

  try {
    app.parse(argc, argv);
    if (*coeffs) return cmd_coeffs(resolve(pf_coeffs), with_oracle);
    if (*sweep)
      return cmd_sweep(resolve(pf_sweep), tmin, tmax, nrows, unwrap, out_path,
                       svg);
    if (*crit) return cmd_critical_angle(resolve(pf_crit));
    if (*oracle) return cmd_oracle(trials, seed);
    if (*packet)
      return cmd_wavepacket(resolve(pf_packet), channel, times, dump_path);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kExitOk : kExitBadInput;
  } catch (const ghatom::ValidationError& e) {
    std::cerr << "error [ValidationError]: " << e.what() << "\n";
    return kExitBadInput;
  } catch (const ghatom::IoError& e) {
    std::cerr << "error [IoError]: " << e.what() << "\n";
    return kExitIo;
  } catch (const ghatom::Error& e) {
    std::cerr << "error [" << ghatom::error_name(e) << "]: " << e.what()
              << "\n";
    return kExitNumerical;
  }
  return kExitBadInput;
}

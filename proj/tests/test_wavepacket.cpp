#include <catch2/catch_amalgamated.hpp>

#include <numbers>

#include "ghatom/wavepacket.hpp"

using namespace ghatom;

namespace {

ScaledParams base_params(double delta, double theta_deg, double omega = 20.0) {
  ScaledParams p;
  p.gamma = 1.0;
  p.delta_L = delta;
  p.omega = omega;
  p.k = 3.0;
  p.k_L = 8.1125;
  p.L = 6.0;
  p.theta = theta_deg * std::numbers::pi / 180.0;
  return p;
}

PacketSpec basic_spec(const ScaledParams& p, double sigma_scale = 0.005) {
  PacketSpec spec;
  spec.sigma_k = sigma_scale * p.k;
  spec.modes = 48;
  spec.x0 = -(p.L / 2.0 + 5.0 / spec.sigma_k);
  spec.y0 = 0.0;
  return spec;
}

}  // namespace

TEST_CASE("free packet sits at its origin at t = 0") {
  ScaledParams p = base_params(0.0, 30.0, 0.0);
  const PacketSpec spec = basic_spec(p);
  const PacketField f = synthesize(p, spec, Channel::T, 0.0);
  const PeakLocation pk = measure_peak(f);
  CHECK(pk.x == Catch::Approx(spec.x0).margin(f.dx));
  CHECK(pk.y == Catch::Approx(spec.y0).margin(f.dy));
}

TEST_CASE("free packet moves ballistically") {
  ScaledParams p = base_params(0.0, 30.0, 0.0);
  const PacketSpec spec = basic_spec(p);
  const double kx = p.k * std::cos(p.theta);
  const double ky = p.k * std::sin(p.theta);
  for (double t : {40.0, 120.0}) {
    const PacketField f = synthesize(p, spec, Channel::T, t);
    const PeakLocation pk = measure_peak(f);
    CHECK(pk.x == Catch::Approx(spec.x0 + 2.0 * kx * t).margin(2.0 * f.dx));
    CHECK(pk.y == Catch::Approx(spec.y0 + 2.0 * ky * t).margin(2.0 * f.dy));
  }
}

TEST_CASE("no potential, no reflected packet") {
  ScaledParams p = base_params(0.0, 30.0, 0.0);
  const PacketSpec spec = basic_spec(p);
  const PacketField f = synthesize(p, spec, Channel::R, 50.0);
  double total = 0.0;
  for (const cplx& v : f.values) total += std::norm(v);
  CHECK(total == 0.0);
  CHECK_THROWS_AS(measure_peak(f), NumericalError);
}

TEST_CASE("geometric transmission crossing without coupling") {
  ScaledParams p = base_params(0.0, 45.0, 0.0);
  const PacketSpec spec = basic_spec(p);
  const ShiftReport rep = shift_report(p, spec, Channel::T);
  CHECK(rep.y_analytic == Catch::Approx(6.0).epsilon(1e-12));
  CHECK(rep.y_measured == Catch::Approx(rep.y_analytic).epsilon(0.02));
  CHECK(rep.dt_measured == Catch::Approx(rep.dt_analytic).epsilon(0.02));
}

TEST_CASE("mirror symmetry of the reflected packet without laser recoil") {
  ScaledParams p = base_params(-100.0, 25.0);
  p.k_L = 0.0;
  const PacketSpec spec = basic_spec(p);
  const std::vector<double> times = default_times(p, spec);
  const PacketField f_pos = synthesize(p, spec, Channel::R, times[0]);
  p.theta = -p.theta;
  const PacketField f_neg = synthesize(p, spec, Channel::R, times[0]);
  const PeakLocation a = measure_peak(f_pos);
  const PeakLocation b = measure_peak(f_neg);
  CHECK(a.x == Catch::Approx(b.x).margin(2.0 * f_pos.dx));
  CHECK(a.y == Catch::Approx(-b.y).margin(2.0 * f_pos.dy));
}

TEST_CASE("quadrature refinement leaves the peak in place") {
  ScaledParams p = base_params(-100.0, 30.0);
  PacketSpec spec = basic_spec(p);
  const std::vector<double> times = default_times(p, spec);
  spec.modes = 32;
  const PeakLocation coarse =
      measure_peak(synthesize(p, spec, Channel::T, times[0]));
  spec.modes = 64;
  const PeakLocation fine =
      measure_peak(synthesize(p, spec, Channel::T, times[0]));
  const double packet_width = 1.0 / spec.sigma_k;
  CHECK(std::abs(coarse.x - fine.x) < 0.01 * packet_width);
  CHECK(std::abs(coarse.y - fine.y) < 0.01 * packet_width);
}

TEST_CASE("transmitted norm steady across times at zero decay") {
  // closed excited channel, |T1| ~ 1 region: integrated |psi|^2 stable
  ScaledParams p = base_params(-100.0, 30.0);
  p.gamma = 0.0;
  const PacketSpec spec = basic_spec(p);
  const std::vector<double> times = default_times(p, spec);
  double norms[2];
  int idx = 0;
  for (double t : times) {
    const PacketField f = synthesize(p, spec, Channel::T, t);
    double total = 0.0;
    for (const cplx& v : f.values) total += std::norm(v);
    norms[idx++] = total * f.dx * f.dy;
  }
  CHECK(std::abs(norms[0] - norms[1]) < 0.01 * norms[0]);
}

TEST_CASE("packet spec validation") {
  const ScaledParams p = base_params(-100.0, 30.0);
  PacketSpec spec = basic_spec(p);
  spec.sigma_k = 0.1 * p.k;  // too wide for the narrow-band construction
  CHECK_THROWS_AS(spec.validate(p), ValidationError);
  spec = basic_spec(p);
  spec.modes = 8;
  CHECK_THROWS_AS(spec.validate(p), ValidationError);
  spec = basic_spec(p);
  spec.x0 = 0.0;
  CHECK_THROWS_AS(spec.validate(p), ValidationError);
}

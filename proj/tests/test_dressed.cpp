#include <catch2/catch_amalgamated.hpp>

#include <Eigen/Eigenvalues>
#include <random>

#include "ghatom/dressed.hpp"

using namespace ghatom;

namespace {

// Scaled in-slab potential matrix, built independently of the closed forms.
Eigen::Matrix2cd potential_matrix(double delta_eff, double gamma,
                                  double omega) {
  Eigen::Matrix2cd v;
  v << 0.0, -0.5 * omega, -0.5 * omega, -(cplx(delta_eff, 0.5 * gamma));
  return v;
}

}  // namespace

TEST_CASE("eigenvalues in simple limits") {
  {
    auto [vp, vm] = dressed_eigenvalues(-10.0, 0.0, 0.0);
    CHECK(vp == cplx(10.0, 0.0));
    CHECK(vm == cplx(0.0, 0.0));
  }
  {
    auto [vp, vm] = dressed_eigenvalues(0.0, 0.0, 20.0);
    CHECK(vp == cplx(10.0, 0.0));
    CHECK(vm == cplx(-10.0, 0.0));
  }
}

TEST_CASE("closed-form eigenvalues match dense eigensolver") {
  const double delta = 99.77, gamma = 1.0, omega = 20.0;
  const auto [vp, vm] = dressed_eigenvalues(delta, gamma, omega);
  Eigen::ComplexEigenSolver<Eigen::Matrix2cd> es(
      potential_matrix(delta, gamma, omega));
  // match each closed-form eigenvalue to the nearest dense one
  for (cplx v : {vp, vm}) {
    const double d0 = std::abs(v - es.eigenvalues()(0));
    const double d1 = std::abs(v - es.eigenvalues()(1));
    CHECK(std::min(d0, d1) < 1e-12 * std::max(1.0, std::abs(v)));
  }
}

TEST_CASE("mixing angles in the symmetric splitting case") {
  const auto [vp, vm] = dressed_eigenvalues(0.0, 0.0, 20.0);
  const auto [phi, beta] = mixing_angles(vp, 20.0, 0.0);
  CHECK(phi == Catch::Approx(std::numbers::pi / 4.0));
  CHECK(beta == Catch::Approx(0.0).margin(1e-15));
}

TEST_CASE("mixing angle across detuning extremes") {
  // deep red: |v_plus| >> omega, phi small
  {
    const auto [vp, vm] = dressed_eigenvalues(-165.81, 1.0, 20.0);
    const auto [phi, beta] = mixing_angles(vp, 20.0, -165.81);
    CHECK(phi < 0.1);
  }
  // deep blue: |v_plus| << omega, phi near pi/2
  {
    const auto [vp, vm] = dressed_eigenvalues(134.19, 1.0, 20.0);
    const auto [phi, beta] = mixing_angles(vp, 20.0, 134.19);
    CHECK(phi > 1.47);
  }
}

TEST_CASE("degenerate frame rejected") {
  // omega > 0 but v_plus = 0: delta > 0, gamma = 0, omega -> 0 limit forced
  CHECK_THROWS_AS(mixing_angles(cplx(0.0, 0.0), 1.0, 10.0), DegenerateFrame);
}

TEST_CASE("transform matrices in closed-form limits") {
  {
    const auto tm = transform_matrices(std::numbers::pi / 4.0, 0.0);
    const double r = std::sqrt(2.0) / 2.0;
    CHECK(std::abs(tm.u(0, 0) - r) < 1e-15);
    CHECK(std::abs(tm.u(0, 1) - r) < 1e-15);
    CHECK(std::abs(tm.u(1, 0) + r) < 1e-15);
    CHECK(std::abs(tm.u(1, 1) - r) < 1e-15);
    CHECK(std::abs(tm.f - 1.0) < 1e-15);
  }
  {
    const auto tm = transform_matrices(0.0, 0.0);
    CHECK(std::abs(tm.u(0, 0)) < 1e-15);
    CHECK(std::abs(tm.u(0, 1) - 1.0) < 1e-15);
    CHECK(std::abs(tm.u(1, 0) + 1.0) < 1e-15);
    CHECK(std::abs(tm.u(1, 1)) < 1e-15);
    CHECK(std::abs(tm.u_inv(0, 0)) < 1e-15);
    CHECK(std::abs(tm.u_inv(0, 1) + 1.0) < 1e-15);
    CHECK(std::abs(tm.u_inv(1, 0) - 1.0) < 1e-15);
    CHECK(std::abs(tm.u_inv(1, 1)) < 1e-15);
  }
}

TEST_CASE("dressed algebra over random draws") {
  std::mt19937 rng(4242);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  for (int i = 0; i < 1000; ++i) {
    const double delta = -300.0 + 600.0 * u(rng);
    const double gamma = (i % 2 == 0) ? 1.0 : 0.0;
    const double omega = 50.0 * u(rng);

    const auto [vp, vm] = dressed_eigenvalues(delta, gamma, omega);
    const cplx z(delta, 0.5 * gamma);
    CHECK(std::abs(vp + vm + z) < 1e-12 * std::max(1.0, std::abs(z)));
    CHECK(std::abs(vp * vm + 0.25 * omega * omega) <
          1e-11 * std::max(1.0, 0.25 * omega * omega));

    double phi, beta;
    try {
      std::tie(phi, beta) = mixing_angles(vp, omega, delta);
    } catch (const DegenerateFrame&) {
      continue;  // omega ~ 0 with positive detuning: no dressed frame
    }
    const auto tm = transform_matrices(phi, beta);

    const Mat2 id = tm.u * tm.u_inv;
    CHECK(std::abs(id(0, 0) - 1.0) < 1e-10);
    CHECK(std::abs(id(1, 1) - 1.0) < 1e-10);
    CHECK(std::abs(id(0, 1)) < 1e-10);
    CHECK(std::abs(id(1, 0)) < 1e-10);

    // eigen-residual against the independently built potential matrix
    const Eigen::Matrix2cd vhat = potential_matrix(delta, gamma, omega);
    const cplx vals[2] = {vp, vm};
    for (int col = 0; col < 2; ++col) {
      Eigen::Vector2cd x(tm.u(0, col), tm.u(1, col));
      CHECK((vhat * x - vals[col] * x).norm() <
            1e-10 * std::max(1.0, std::abs(vals[col])));
    }

    if (gamma == 0.0) {
      CHECK(std::abs(beta) < 1e-12);
      // U unitary at zero decay
      Mat2 utu;
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
          utu(a, b) = std::conj(tm.u(0, a)) * tm.u(0, b) +
                      std::conj(tm.u(1, a)) * tm.u(1, b);
      CHECK(std::abs(utu(0, 0) - 1.0) < 1e-10);
      CHECK(std::abs(utu(1, 1) - 1.0) < 1e-10);
      CHECK(std::abs(utu(0, 1)) < 1e-10);
      if (omega > 0.0) {
        // real eigenvalues, splitting equals sqrt(delta^2 + omega^2)
        CHECK(std::abs(vp.imag()) < 1e-12);
        CHECK(std::abs(vm.imag()) < 1e-12);
        CHECK((vp - vm).real() ==
              Catch::Approx(std::hypot(delta, omega)).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("spatial rates: principal branch and closure") {
  {
    auto [a1, a2] = decay_rates(cplx(0.0), cplx(0.0), 3.0);
    CHECK(std::abs(a1 - cplx(0.0, 3.0)) < 1e-15);
  }
  {
    auto [a1, a2] = decay_rates(cplx(4.0), cplx(4.0), 0.0);
    CHECK(std::abs(a1 - cplx(2.0, 0.0)) < 1e-15);
  }
}

TEST_CASE("red-detuned sweep: minus-mode rate oscillatory") {
  // deep red detuning: the minus mode sees a well, alpha_- dominated by an
  // O(1)-O(10) imaginary part (spatial frequency) across incidence angles;
  // the observables are even in alpha, so only the magnitude is constrained
  ScaledParams p;
  p.delta_L = -100.0;
  p.omega = 20.0;
  p.k = 3.0;
  p.k_L = 8.1125;
  p.L = 6.0;
  for (int i = 0; i < 50; ++i) {
    p.theta = 1.5 * i / 49.0;
    const Kinematics kin = derive_kinematics(p);
    const auto [vp, vm] =
        dressed_eigenvalues(kin.delta_eff, p.gamma, p.omega);
    const auto [a1, a2] = decay_rates(vp, vm, kin.kx);
    CHECK(std::abs(a2.imag()) > 0.3);
    CHECK(std::abs(a2.imag()) < 20.0);
    // closure against the eigenvalue
    CHECK(std::abs(a2 * a2 + kin.kx * kin.kx - vm) <
          1e-12 * std::max(1.0, std::abs(vm)));
  }
}

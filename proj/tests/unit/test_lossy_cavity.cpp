#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "ccm/lossy_cavity.hpp"
#include "models.hpp"
#include "oracles.hpp"

using namespace ccm;

namespace {

// amplitude pair by fixed-step RK4
std::vector<std::vector<cplx>> rk4_pair(double delta, double G, double gamma,
                                        const std::vector<double>& ts, double h) {
  const cplx w1(delta, -gamma / 2);
  return oracle::rk4(
      [&](const std::vector<cplx>& y, std::vector<cplx>& dy) {
        dy[0] = -I_ * G * y[1];
        dy[1] = -I_ * w1 * y[1] - I_ * G * y[0];
      },
      {1.0, 0.0}, h, ts);
}

double spectral_norm(const ComplexMatrix& m) {
  const Eigen::MatrixXcd dense = m;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(dense);
  return svd.singularValues()(0);
}

double max_deviation(double tau, double gamma, double G, std::size_t n) {
  const LossyCavityParams p{0.0, G, std::sqrt(gamma / tau), tau};
  const auto traj = amplitude_trajectory(p, n, 1.0, 0.0);
  double worst = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    const double exact = std::norm(analytic_excited_amplitude(0.0, G, gamma, k * tau));
    worst = std::max(worst, std::abs(std::norm(traj[k].eps) - exact));
  }
  return worst;
}

}  // namespace

TEST_CASE("transfer matrix") {
  SUBCASE("tau = 0") {
    CHECK(max_abs(transfer_matrix({0.4, 1.0, 2.0, 0.0}) - identity(2)) < 1e-15);
  }
  SUBCASE("zero detuning") {
    const double G = 1.3, g = 2.1, tau = 0.17;
    const ComplexMatrix m = transfer_matrix({0.0, G, g, tau});
    const double c = std::cos(G * tau), s = std::sin(G * tau), cg = std::cos(g * tau);
    CHECK(std::abs(m(0, 0) - c) < 1e-15);
    CHECK(std::abs(m(0, 1) + I_ * s) < 1e-15);
    CHECK(std::abs(m(1, 0) + I_ * s * cg) < 1e-15);
    CHECK(std::abs(m(1, 1) - c * cg) < 1e-15);
  }
  SUBCASE("omega -> 0 limit") {
    const ComplexMatrix m = transfer_matrix({0.0, 0.0, 1.0, 0.3});
    CHECK(max_abs(m - ComplexMatrix(Eigen::Vector2cd(1.0, std::cos(0.3)).asDiagonal())) < 1e-15);
    // approaching continuously
    const ComplexMatrix near = transfer_matrix({1e-9, 1e-9, 1.0, 0.3});
    CHECK(max_abs(near - m) < 1e-8);
  }
  SUBCASE("block of the exponentiated single-excitation Hamiltonian") {
    // exp(-iH tau) on {|10>, |01>} then the ancilla swap factor cos(g tau) on beta
    const double delta = 0.6, G = 1.0, g = std::sqrt(10.0), tau = 0.1;
    ComplexMatrix h(2, 2);
    h << 0.0, G, G, delta;
    const ComplexMatrix u = oracle::taylor_exp(-I_ * tau * h);
    ComplexMatrix expect = u;
    expect.row(1) *= std::cos(g * tau);
    CHECK(max_abs(transfer_matrix({delta, G, g, tau}) - expect) < 1e-12);
  }
  SUBCASE("contraction") {
    oracle::Rng rng(5);
    for (int t = 0; t < 50; ++t) {
      const LossyCavityParams p{rng.uniform(-3, 3), rng.uniform(0, 3), rng.uniform(0, 5),
                                rng.uniform(0.001, 2)};
      CHECK(spectral_norm(transfer_matrix(p)) <= 1.0 + 1e-12);
    }
  }
  CHECK_THROWS_AS(transfer_matrix({0.0, 1.0, 1.0, -0.1}), PreconditionError);
  CHECK_THROWS_AS(transfer_matrix({0.0, -1.0, 1.0, 0.1}), PreconditionError);
}

TEST_CASE("single-excitation unitary") {
  CHECK(max_abs(single_excitation_unitary({0.5, 1.0, 2.0, 0.0}) - identity(3)) < 1e-15);
  SUBCASE("g = 0 decouples the ancilla") {
    const auto u = single_excitation_unitary({0.5, 1.0, 0.0, 0.4});
    CHECK(std::abs(u(2, 2) - 1.0) < 1e-15);
    CHECK(std::abs(u(0, 2)) + std::abs(u(1, 2)) + std::abs(u(2, 0)) + std::abs(u(2, 1)) < 1e-15);
  }
  oracle::Rng rng(9);
  for (int t = 0; t < 30; ++t) {
    const LossyCavityParams p{rng.uniform(-3, 3), rng.uniform(0, 3), rng.uniform(0, 5),
                              rng.uniform(0.001, 2)};
    const auto u = single_excitation_unitary(p);
    CHECK(max_abs(u.adjoint() * u - identity(3)) < 1e-12);
    CHECK(max_abs(u.topLeftCorner(2, 2) - transfer_matrix(p)) < 1e-14);
  }
}

TEST_CASE("amplitude trajectory") {
  SUBCASE("k = 0 returns the initial amplitudes") {
    const auto t = amplitude_trajectory({0.2, 1.0, 1.0, 0.1}, 0, {0.6, 0.1}, {0.0, 0.5});
    REQUIRE(t.size() == 1);
    CHECK(t[0].eps == cplx(0.6, 0.1));
    CHECK(t[0].betas.at(0) == cplx(0.0, 0.5));
  }
  SUBCASE("no ancilla coupling: Rabi exchange") {
    const double G = 0.9, tau = 0.2;
    const auto t = amplitude_trajectory({0.0, G, 0.0, tau}, 40, 1.0, 0.0);
    for (std::size_t k = 0; k <= 40; ++k)
      CHECK(std::abs(t[k].eps - std::cos(k * G * tau)) < 1e-12);
  }
  SUBCASE("matches explicit ancillas") {
    const double G = 1.0, g = std::sqrt(10.0), tau = 0.1;
    std::vector<cplx> eps;
    oracle::brute_force_lossy(0.0, G, g, tau, 2, 6, &eps);
    const auto t = amplitude_trajectory({0.0, G, g, tau}, 6, 1.0, 0.0);
    for (std::size_t k = 0; k <= 6; ++k) CHECK(std::abs(t[k].eps - eps[k]) < 1e-10);
  }
  SUBCASE("norm including the amplitudes left on ancillas") {
    oracle::Rng rng(21);
    for (int t = 0; t < 10; ++t) {
      const LossyCavityParams p{rng.uniform(-2, 2), rng.uniform(0.1, 2), rng.uniform(0.1, 4),
                                rng.uniform(0.01, 1)};
      const auto led = amplitude_trajectory_with_ancillas(p, 200, 1.0, 0.0);
      double lost = 0.0;
      for (std::size_t k = 1; k <= 200; ++k) {
        lost += std::norm(led.lambdas[k - 1]);
        CHECK(std::abs(led.steps[k].norm2() + lost - 1.0) < 1e-10);
      }
    }
  }
  CHECK_THROWS_AS(amplitude_trajectory({0.0, 1.0, 1.0, 0.1}, 3, 1.0, 0.5), PreconditionError);
}

TEST_CASE("analytic excited amplitude") {
  SUBCASE("closed Rabi oscillation") {
    for (double t : {0.0, 0.3, 1.0, 4.0})
      CHECK(std::abs(analytic_excited_amplitude(0.0, 1.4, 0.0, t) - std::cos(1.4 * t)) < 1e-14);
  }
  SUBCASE("critical damping gamma = 4G has delta = 0") {
    // one-sided difference around the double root
    const double t = 1.3;
    const cplx at = analytic_excited_amplitude(0.0, 0.5, 2.0, t);
    const cplx near = analytic_excited_amplitude(0.0, 0.5, 2.0 + 1e-7, t);
    CHECK(std::abs(at - near) < 1e-6);
    CHECK(std::abs(at - std::exp(-0.5 * t) * (1.0 + 0.5 * t)) < 1e-14);
  }
  SUBCASE("damped oscillation vs monotone decay") {
    auto count_rises = [](double gamma) {
      int rises = 0;
      double prev = 1.0;
      for (int k = 1; k <= 4000; ++k) {
        const double p = std::norm(analytic_excited_amplitude(0.0, 1.0, gamma, 0.005 * k));
        if (p > prev + 1e-15) ++rises;
        prev = p;
      }
      return rises;
    };
    CHECK(count_rises(1.0) > 0);
    CHECK(count_rises(2.0) > 0);
    CHECK(count_rises(6.0) == 0);
  }
  SUBCASE("RK4 of the amplitude pair") {
    const std::vector<double> ts{0.5, 1.0, 2.0};
    const auto y = rk4_pair(0.0, 1.0, 1.0, ts, 1e-4);
    for (std::size_t k = 0; k < ts.size(); ++k)
      CHECK(std::abs(analytic_excited_amplitude(0.0, 1.0, 1.0, ts[k]) - y[k][0]) < 1e-10);
  }
}

TEST_CASE("amplitude ODE") {
  std::vector<double> ts;
  for (int k = 0; k <= 40; ++k) ts.push_back(0.1 * k);
  SUBCASE("no coupling") {
    for (const auto& a : amplitude_ode_solve(0.3, 0.0, 1.0, ts))
      CHECK(std::abs(a.eps - 1.0) < 1e-12);
  }
  SUBCASE("lossless resonant") {
    const auto out = amplitude_ode_solve(0.0, 1.2, 0.0, ts);
    for (std::size_t k = 0; k < ts.size(); ++k) {
      CHECK(std::abs(out[k].eps - std::cos(1.2 * ts[k])) < 1e-10);
      CHECK(std::abs(out[k].betas[0] + I_ * std::sin(1.2 * ts[k])) < 1e-10);
    }
  }
  SUBCASE("random parameters vs closed form") {
    oracle::Rng rng(3);
    for (int t = 0; t < 20; ++t) {
      const double d = rng.uniform(-2, 2), G = rng.uniform(0, 2), gam = rng.uniform(0, 5);
      const auto out = amplitude_ode_solve(d, G, gam, ts);
      for (std::size_t k = 0; k < ts.size(); ++k)
        CHECK(std::abs(out[k].eps - analytic_excited_amplitude(d, G, gam, ts[k])) < 1e-9);
    }
  }
}

TEST_CASE("discrete dynamics converges to the continuum") {
  SUBCASE("first order in tau") {
    std::vector<double> dev;
    for (double tau : {0.2, 0.1, 0.05, 0.025})
      dev.push_back(max_deviation(tau, 1.0, 1.0, static_cast<std::size_t>(std::lround(20.0 / tau))));
    for (std::size_t k = 1; k < dev.size(); ++k) {
      const double ratio = dev[k - 1] / dev[k];
      CHECK(ratio >= 1.5);
      CHECK(ratio <= 2.5);
    }
  }
  SUBCASE("coarse and fine collision times") {
    CHECK(max_deviation(0.1, 1.0, 1.0, 200) <= 0.01);
    CHECK(max_deviation(2.0, 1.0, 1.0, 200) >= 0.05);
  }
}

TEST_CASE("state helpers") {
  const auto rho = lossy_cavity_state(cplx(0.6, 0.0), cplx(0.0, 0.5), 3);
  const auto b = single_excitation_block(rho.matrix(), 3);
  CHECK(b.p_eps == doctest::Approx(0.36));
  CHECK(b.p_beta == doctest::Approx(0.25));
  CHECK(std::abs(b.coherence - cplx(0.6, 0.0) * std::conj(cplx(0.0, 0.5))) < 1e-15);
  CHECK(std::real(rho.matrix()(0, 0)) == doctest::Approx(0.39));
}

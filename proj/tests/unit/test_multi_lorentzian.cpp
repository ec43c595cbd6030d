#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numbers>

#include "ccm/lindblad.hpp"
#include "ccm/lossy_cavity.hpp"
#include "ccm/multi_lorentzian.hpp"
#include "ccm/spectral.hpp"
#include "models.hpp"
#include "oracles.hpp"

using namespace ccm;

namespace {

std::vector<double> uniform_grid(double h, double t_end) {
  std::vector<double> ts;
  const auto n = static_cast<std::size_t>(std::lround(t_end / h));
  for (std::size_t k = 0; k <= n; ++k) ts.push_back(h * static_cast<double>(k));
  return ts;
}

double volterra_vs_ode3(const TriContinuousParams& p, SdCase which, CaseBWeights w) {
  const auto ts = uniform_grid(1e-3, 10.0);
  const auto ode = amplitude_ode3(p, ts);
  const auto vol = solve_volterra(equivalent_sd(p, which, 0.0, w), 0.0, ts);
  double worst = 0.0;
  for (std::size_t k = 0; k < ts.size(); ++k) worst = std::max(worst, std::abs(ode[k].eps - vol[k]));
  return worst;
}

double spectral_norm(const ComplexMatrix& m) {
  const Eigen::MatrixXcd dense = m;
  Eigen::JacobiSVD<Eigen::MatrixXcd> svd(dense);
  return svd.singularValues()(0);
}

}  // namespace

TEST_CASE("three-level transfer matrix") {
  CHECK(max_abs(transfer_matrix3({{0.3, -0.2, 1.0, 0.7, 0.4}, 2.0, 1.0, 0.0}) - identity(3)) <
        1e-15);
  SUBCASE("decoupled second branch") {
    const double d = 0.4, G = 1.1, g = 2.5, tau = 0.13;
    const ComplexMatrix m3 = transfer_matrix3({{d, 0.9, G, 0.0, 0.0}, g, 0.0, tau});
    const ComplexMatrix m = transfer_matrix({d, G, g, tau});
    CHECK(max_abs(m3.topLeftCorner(2, 2) - m) < 1e-13);
    CHECK(std::abs(m3(2, 2) - std::exp(-I_ * 0.9 * tau)) < 1e-13);  // phase from delta2 only
    CHECK(std::abs(m3(0, 2)) + std::abs(m3(2, 0)) + std::abs(m3(1, 2)) + std::abs(m3(2, 1)) <
          1e-15);
  }
  SUBCASE("contraction") {
    oracle::Rng rng(17);
    for (int t = 0; t < 40; ++t) {
      const TriDiscreteParams p{{rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(0, 2),
                                 rng.uniform(0, 2), rng.uniform(-1, 1)},
                                rng.uniform(0, 4), rng.uniform(0, 4), rng.uniform(0.01, 1)};
      CHECK(spectral_norm(transfer_matrix3(p)) <= 1.0 + 1e-12);
    }
  }
}

TEST_CASE("three-level trajectory vs explicit ancillas") {
  const TriDiscreteParams p{{0.3, -0.5, 1.0, 0.6, 0.4}, 2.0, 1.5, 0.1};
  std::vector<cplx> eps, b1, b2;
  oracle::brute_force_tripartite(p.k.delta1, p.k.delta2, p.k.big_g1, p.k.big_g2, p.k.c,
                                 p.small_g1, p.small_g2, p.tau, 2, 6, &eps, &b1, &b2);
  const auto traj = amplitude_trajectory3(p, 6);
  for (std::size_t k = 0; k <= 6; ++k) {
    CHECK(std::abs(traj[k].eps - eps[k]) < 1e-10);
    CHECK(std::abs(traj[k].betas[0] - b1[k]) < 1e-10);
    CHECK(std::abs(traj[k].betas[1] - b2[k]) < 1e-10);
  }
  SUBCASE("collision engine, with and without a monitored Fock level") {
    for (int fock : {2, 3}) {
      const auto states = evolve(make_tripartite_model(p, fock), tripartite_state(1.0, 0.0, 0.0, fock), 6);
      for (std::size_t k = 0; k <= 6; ++k) {
        const auto expect = tripartite_state(traj[k].eps, traj[k].betas[0], traj[k].betas[1], fock);
        CHECK(max_abs(states[k].matrix() - expect.matrix()) < 1e-10);
      }
    }
  }
}

TEST_CASE("three-level amplitude ODE") {
  const auto ts = uniform_grid(0.1, 5.0);
  SUBCASE("no coupling to S") {
    for (const auto& a : amplitude_ode3({{0.2, 0.3, 0.0, 0.0, 0.5}, 1.0, 2.0}, ts))
      CHECK(std::abs(a.eps - 1.0) < 1e-12);
  }
  SUBCASE("reduces to the two-level closed form") {
    const auto out = amplitude_ode3({{0.4, 1.0, 1.2, 0.0, 0.0}, 0.9, 3.0}, ts);
    for (std::size_t k = 0; k < ts.size(); ++k)
      CHECK(std::abs(out[k].eps - analytic_excited_amplitude(0.4, 1.2, 0.9, ts[k])) < 1e-10);
  }
  SUBCASE("norm does not grow") {
    const auto out = amplitude_ode3({{0.4, -0.3, 1.2, 0.7, 0.5}, 0.9, 0.4}, ts);
    for (std::size_t k = 1; k < ts.size(); ++k) CHECK(out[k].norm2() <= out[k - 1].norm2() + 1e-12);
  }
  SUBCASE("matches the master equation of the tripartite model") {
    const TriCoupling k{0.4, -0.3, 1.2, 0.7, 0.5};
    const double tau = 1e-3, g1 = 0.9, g2 = 0.4;
    const TriDiscreteParams dp{k, std::sqrt(g1 / tau), std::sqrt(g2 / tau), tau};
    const auto me = integrate_me(liouvillian(make_tripartite_model(dp, 2)),
                                 tripartite_state(1.0, 0.0, 0.0, 2), ts);
    const auto ode = amplitude_ode3(continuum_of(dp), ts);
    for (std::size_t j = 0; j < ts.size(); ++j) {
      const auto expect = tripartite_state(ode[j].eps, ode[j].betas[0], ode[j].betas[1], 2);
      CHECK(max_abs(me[j].matrix() - expect.matrix()) < 1e-8);
    }
  }
  SUBCASE("discrete chain approaches the continuum") {
    const TriCoupling k{0.2, -0.1, 1.0, 0.5, 0.3};
    std::vector<double> dev;
    for (double tau : {0.04, 0.02, 0.01}) {
      const TriDiscreteParams dp{k, std::sqrt(1.0 / tau), std::sqrt(0.5 / tau), tau};
      const auto n = static_cast<std::size_t>(std::lround(5.0 / tau));
      const auto traj = amplitude_trajectory3(dp, n);
      const auto ode = amplitude_ode3(continuum_of(dp), uniform_grid(tau, 5.0));
      double worst = 0.0;
      for (std::size_t j = 0; j <= n; ++j)
        worst = std::max(worst, std::abs(std::norm(traj[j].eps) - std::norm(ode[j].eps)));
      dev.push_back(worst);
    }
    CHECK(dev.back() < 0.01);
    CHECK(dev[0] / dev[1] > 1.5);
    CHECK(dev[1] / dev[2] > 1.5);
  }
}

TEST_CASE("equivalent spectral densities") {
  SUBCASE("case a with one mode is the single Lorentzian") {
    const double G = 0.8, gamma = 1.4;
    const TriContinuousParams p{{0.0, 0.0, G, 0.0, 0.0}, gamma, 2.0};
    const auto j = equivalent_sd(p, SdCase::a);
    // peak 4G^2/gamma over 2 pi, width gamma/2
    const auto ref = lorentzian_sd(4 * G * G / gamma, gamma / 2, 0.0, 0.0);
    for (double w : {-3.0, -0.5, 0.0, 0.2, 1.0, 7.0})
      CHECK(eval_sd(j, w) == doctest::Approx(eval_sd(ref, w)).epsilon(1e-14));
    CHECK(eval_sd(j, 0.0) == doctest::Approx(4 * G * G / gamma / (2 * std::numbers::pi)));
  }
  SUBCASE("case a: Volterra matches the three-level ODE") {
    const TriContinuousParams p{{0.4, -0.7, 1.0, 0.6, 0.0}, 1.5, 0.8};
    CHECK(volterra_vs_ode3(p, SdCase::a, CaseBWeights::residue_matched) < 1e-4);
  }
  SUBCASE("case b: residue-matched weights pass, published weights do not") {
    const TriContinuousParams p{{0.0, 0.0, 1.0, 0.0, 0.5}, 4.0, 1.0};
    CHECK(volterra_vs_ode3(p, SdCase::b, CaseBWeights::residue_matched) < 1e-4);
    CHECK(volterra_vs_ode3(p, SdCase::b, CaseBWeights::published) > 1e-2);
    const auto j = equivalent_sd(p, SdCase::b);
    for (int k = 0; k <= 400; ++k) CHECK(eval_sd(j, -20.0 + 0.1 * k) >= -1e-12);
  }
  SUBCASE("case b coefficients as c -> 0") {
    const TriContinuousParams p{{0.0, 0.0, 1.0, 0.0, 1e-6}, 4.0, 1.0};
    const auto cb = case_b_coefficients(p);
    CHECK(cb.lambda_plus == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(cb.lambda_minus == doctest::Approx(0.5).epsilon(1e-9));
    CHECK(cb.kappa_plus == doctest::Approx(1.0).epsilon(1e-9));  // 4G^2/gamma1
    CHECK(std::abs(cb.kappa_minus) < 1e-9);
  }
  SUBCASE("preconditions") {
    CHECK_THROWS_AS(equivalent_sd({{0.0, 0.0, 1.0, 0.5, 0.2}, 1.0, 1.0}, SdCase::a),
                    PreconditionError);
    CHECK_THROWS_AS(equivalent_sd({{0.0, 0.0, 1.0, 0.5, 0.2}, 4.0, 1.0}, SdCase::b),
                    PreconditionError);
    CHECK_THROWS_AS(equivalent_sd({{0.0, 0.3, 1.0, 0.0, 0.2}, 4.0, 1.0}, SdCase::b),
                    PreconditionError);
    // gamma1 - gamma2 > 2c but chi^2 < 0
    CHECK_THROWS_AS(equivalent_sd({{0.0, 0.0, 1.0, 0.0, 0.6}, 3.0, 1.0}, SdCase::b),
                    PreconditionError);
  }
}

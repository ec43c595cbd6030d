#include "ccm/multi_lorentzian.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "ccm/operators.hpp"
#include "ode.hpp"

namespace ccm {

namespace {

void check_coupling(const TriCoupling& k) {
  for (double v : {k.delta1, k.delta2, k.big_g1, k.big_g2, k.c})
    if (!std::isfinite(v)) throw PreconditionError("tripartite: parameters must be finite");
  if (k.big_g1 < 0.0 || k.big_g2 < 0.0)
    throw PreconditionError("tripartite: G1, G2 must be nonnegative");
}

}  // namespace

void TriDiscreteParams::validate() const {
  check_coupling(k);
  if (!(tau >= 0.0) || !std::isfinite(tau))
    throw PreconditionError("tripartite: tau must be nonnegative");
  if (!(small_g1 >= 0.0) || !(small_g2 >= 0.0))
    throw PreconditionError("tripartite: g1, g2 must be nonnegative");
}

void TriContinuousParams::validate() const {
  check_coupling(k);
  if (!(gamma1 >= 0.0) || !(gamma2 >= 0.0))
    throw PreconditionError("tripartite: gamma1, gamma2 must be nonnegative");
}

TriContinuousParams continuum_of(const TriDiscreteParams& p) {
  return {p.k, p.small_g1 * p.small_g1 * p.tau, p.small_g2 * p.small_g2 * p.tau};
}

ComplexMatrix single_excitation_hamiltonian3(const TriCoupling& k) {
  ComplexMatrix h(3, 3);
  h << 0.0, k.big_g1, k.big_g2,
       k.big_g1, k.delta1, k.c,
       k.big_g2, k.c, k.delta2;
  return h;
}

ComplexMatrix transfer_matrix3(const TriDiscreteParams& p) {
  p.validate();
  ComplexMatrix d = ComplexMatrix::Zero(3, 3);
  d(0, 0) = 1.0;
  d(1, 1) = std::cos(p.small_g1 * p.tau);
  d(2, 2) = std::cos(p.small_g2 * p.tau);
  return d * matexp(-I_ * p.tau * single_excitation_hamiltonian3(p.k));
}

std::vector<AmplitudeVector> amplitude_trajectory3(const TriDiscreteParams& p,
                                                   std::size_t n) {
  const ComplexMatrix m = transfer_matrix3(p);
  std::vector<AmplitudeVector> out;
  out.reserve(n + 1);
  ComplexVector x(3);
  x << 1.0, 0.0, 0.0;
  out.push_back({x(0), {x(1), x(2)}});
  for (std::size_t k = 1; k <= n; ++k) {
    x = m * x;
    out.push_back({x(0), {x(1), x(2)}});
  }
  return out;
}

CompositeModel make_tripartite_model(const TriDiscreteParams& p, int fock_levels) {
  p.validate();
  if (fock_levels < 2) throw PreconditionError("mode truncation needs at least 2 levels");
  const Dims dims{2, fock_levels, fock_levels};
  const ComplexMatrix s = annihilation(2);
  const ComplexMatrix a = annihilation(fock_levels);
  auto jc = [&](int mode) {
    const ComplexMatrix x = kron(s, a.adjoint());
    return ComplexMatrix(embed(x + x.adjoint(), dims, {0, mode}));
  };
  const ComplexMatrix hop = kron(a.adjoint(), a);
  const ComplexMatrix h =
      p.k.delta1 * embed(number_op(fock_levels), dims, {1}) +
      p.k.delta2 * embed(number_op(fock_levels), dims, {2}) + p.k.big_g1 * jc(1) +
      p.k.big_g2 * jc(2) + p.k.c * embed(hop + hop.adjoint(), dims, {1, 2});
  std::vector<AncillaSpec> anc(2);
  for (int i = 0; i < 2; ++i) {
    anc[i].dim = 2;
    anc[i].eta = DensityMatrix::basis_state(2, 0);
    anc[i].coupling_op = exchange(fock_levels, 2);
    anc[i].coupling_rate = i == 0 ? p.small_g1 : p.small_g2;
  }
  std::vector<int> fock;
  if (fock_levels > 2) fock = {1, 2};
  return CompositeModel(2, {fock_levels, fock_levels}, h, anc, p.tau, fock);
}

DensityMatrix tripartite_state(cplx eps, cplx beta1, cplx beta2, int fock_levels) {
  const double w = std::norm(eps) + std::norm(beta1) + std::norm(beta2);
  if (w > 1.0 + 1e-12) throw PreconditionError("amplitudes have norm above one");
  const int f = fock_levels;
  ComplexVector psi = ComplexVector::Zero(2 * f * f);
  psi(1 * f * f) = eps;      // |1,0,0>
  psi(0 * f * f + f) = beta1;  // |0,1,0>
  psi(0 * f * f + 1) = beta2;  // |0,0,1>
  ComplexMatrix m = psi * psi.adjoint();
  m(0, 0) += std::max(0.0, 1.0 - w);
  return DensityMatrix((m + m.adjoint()) * 0.5);
}

std::vector<AmplitudeVector> amplitude_ode3(const TriContinuousParams& p,
                                            const std::vector<double>& t_grid,
                                            double tol) {
  p.validate();
  if (t_grid.empty() || t_grid.front() != 0.0)
    throw PreconditionError("amplitude_ode3: time grid must start at 0");
  const auto& k = p.k;
  const cplx d1 = -I_ * cplx(k.delta1, -0.5 * p.gamma1);
  const cplx d2 = -I_ * cplx(k.delta2, -0.5 * p.gamma2);
  auto rhs = [&](const cplx* y, cplx* dy) {
    dy[0] = -I_ * (k.big_g1 * y[1] + k.big_g2 * y[2]);
    dy[1] = d1 * y[1] - I_ * (k.big_g1 * y[0] + k.c * y[2]);
    dy[2] = d2 * y[2] - I_ * (k.big_g2 * y[0] + k.c * y[1]);
  };
  std::vector<AmplitudeVector> out;
  out.reserve(t_grid.size());
  detail::integrate_complex(rhs, {1.0, 0.0, 0.0}, t_grid, {tol, tol * 1e-2, 1'000'000},
                            [&](std::size_t, const std::vector<cplx>& y) {
                              out.push_back({y[0], {y[1], y[2]}});
                            });
  return out;
}

CaseBCoefficients case_b_coefficients(const TriContinuousParams& p,
                                      CaseBWeights weights) {
  p.validate();
  if (p.k.big_g2 != 0.0)
    throw PreconditionError("case (b) needs G2 = 0");
  if (p.k.delta1 != p.k.delta2)
    throw PreconditionError("case (b) needs equal detunings");
  const double g1 = p.gamma1, g2 = p.gamma2, c = p.k.c, G = p.k.big_g1;
  if (!(g1 - g2 > 2.0 * c))
    throw PreconditionError("case (b) needs gamma1 - gamma2 > 2c");
  const double chi2 = (g1 - g2) * (g1 - g2) - 16.0 * c * c;
  if (!(chi2 > 0.0))
    throw PreconditionError(
        "case (b): chi^2 = (gamma1 - gamma2)^2 - 16 c^2 must be positive "
        "(gamma1 - gamma2 > 4|c|)");
  CaseBCoefficients r;
  r.chi = std::sqrt(chi2);
  r.lambda_plus = (g1 + g2 + r.chi) / 4.0;
  r.lambda_minus = (g1 + g2 - r.chi) / 4.0;
  const double den = chi2 * (4.0 * c * c + g1 * g2);
  const double s = weights == CaseBWeights::residue_matched ? -1.0 : 1.0;
  r.kappa_plus = 2.0 * G * G *
                 (8.0 * c * c * (r.chi - 2.0 * g2) +
                  (g1 - g2) * g2 * (g1 - (g2 + s * r.chi))) / den;
  r.kappa_minus = 2.0 * G * G *
                  (8.0 * c * c * (r.chi + 2.0 * g2) -
                   (g1 - g2) * g2 * (g1 - (g2 - s * r.chi))) / den;
  return r;
}

SpectralDensity equivalent_sd(const TriContinuousParams& p, SdCase which,
                              double omega0, CaseBWeights weights) {
  p.validate();
  constexpr double two_pi = 2.0 * std::numbers::pi;
  LorentzianSum out;
  if (which == SdCase::a) {
    if (p.k.c != 0.0) throw PreconditionError("case (a) needs c = 0");
    const double gs[2] = {p.gamma1, p.gamma2};
    const double bigs[2] = {p.k.big_g1, p.k.big_g2};
    const double ds[2] = {p.k.delta1, p.k.delta2};
    for (int i = 0; i < 2; ++i) {
      if (bigs[i] == 0.0) continue;
      if (!(gs[i] > 0.0))
        throw PreconditionError("case (a) needs gamma_i > 0 for every coupled mode");
      out.terms.push_back(
          {4.0 * bigs[i] * bigs[i] / gs[i] / two_pi, omega0 + ds[i], gs[i] / 2.0});
    }
  } else {
    const auto r = case_b_coefficients(p, weights);
    out.terms.push_back({r.kappa_plus / two_pi, omega0 + p.k.delta1, r.lambda_plus});
    out.terms.push_back({-r.kappa_minus / two_pi, omega0 + p.k.delta1, r.lambda_minus});
  }
  SpectralDensity sd = out;
  if (weights == CaseBWeights::residue_matched || which == SdCase::a) validate(sd);
  return sd;
}

}  // namespace ccm

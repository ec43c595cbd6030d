#include "ccm/lossy_cavity.hpp"

#include <cmath>
#include <string>

#include "ccm/operators.hpp"
#include "ode.hpp"
#include "special.hpp"

namespace ccm {

void LossyCavityParams::validate() const {
  // tau = 0 is allowed: the maps reduce to the identity
  if (!(tau >= 0.0) || !std::isfinite(tau))
    throw PreconditionError("lossy cavity: tau must be nonnegative");
  if (!(big_g >= 0.0) || !std::isfinite(big_g))
    throw PreconditionError("lossy cavity: G must be nonnegative");
  if (!(small_g >= 0.0) || !std::isfinite(small_g))
    throw PreconditionError("lossy cavity: g must be nonnegative");
  if (!std::isfinite(delta)) throw PreconditionError("lossy cavity: delta not finite");
}

double AmplitudeVector::norm2() const {
  double s = std::norm(eps);
  for (const auto& b : betas) s += std::norm(b);
  return s;
}

namespace {

struct Rotation {
  cplx phase;  // e^{-i delta tau / 2}
  cplx z;
  cplx off;    // -i (G / Omega) sin(Omega tau)
};

Rotation jc_rotation(const LossyCavityParams& p) {
  const double omega = 0.5 * std::sqrt(p.delta * p.delta + 4.0 * p.big_g * p.big_g);
  const double s_over = p.tau * detail::sinc(omega * p.tau);  // sin(Omega tau)/Omega
  Rotation r;
  r.phase = std::exp(-I_ * (0.5 * p.delta * p.tau));
  r.z = cplx(std::cos(omega * p.tau), 0.5 * p.delta * s_over);
  r.off = -I_ * (p.big_g * s_over);
  return r;
}

}  // namespace

ComplexMatrix transfer_matrix(const LossyCavityParams& p) {
  p.validate();
  const auto r = jc_rotation(p);
  const double cg = std::cos(p.small_g * p.tau);
  ComplexMatrix m(2, 2);
  m << r.z, r.off, r.off * cg, std::conj(r.z) * cg;
  return r.phase * m;
}

ComplexMatrix single_excitation_unitary(const LossyCavityParams& p) {
  p.validate();
  const auto r = jc_rotation(p);
  const double cg = std::cos(p.small_g * p.tau);
  const double sg = std::sin(p.small_g * p.tau);
  ComplexMatrix u(3, 3);
  u << r.phase * r.z, r.phase * r.off, 0.0,
       r.phase * r.off * cg, r.phase * std::conj(r.z) * cg, -I_ * sg,
       -I_ * sg * r.phase * r.off, -I_ * sg * r.phase * std::conj(r.z), cg;
  return u;
}

std::vector<AmplitudeVector> amplitude_trajectory(const LossyCavityParams& p,
                                                  std::size_t n, cplx eps0,
                                                  cplx beta0) {
  return amplitude_trajectory_with_ancillas(p, n, eps0, beta0).steps;
}

AmplitudeLedger amplitude_trajectory_with_ancillas(const LossyCavityParams& p,
                                                   std::size_t n, cplx eps0,
                                                   cplx beta0) {
  if (std::norm(eps0) + std::norm(beta0) > 1.0 + 1e-12)
    throw PreconditionError("initial amplitudes have norm above one");
  const ComplexMatrix u = single_excitation_unitary(p);
  AmplitudeLedger out;
  out.steps.reserve(n + 1);
  out.lambdas.reserve(n);
  cplx e = eps0, b = beta0;
  out.steps.push_back({e, {b}});
  for (std::size_t k = 1; k <= n; ++k) {
    const cplx e1 = u(0, 0) * e + u(0, 1) * b;
    const cplx b1 = u(1, 0) * e + u(1, 1) * b;
    out.lambdas.push_back(u(2, 0) * e + u(2, 1) * b);
    e = e1;
    b = b1;
    out.steps.push_back({e, {b}});
  }
  return out;
}

cplx analytic_excited_amplitude(double delta, double big_g, double gamma,
                                double t) {
  if (!(t >= 0.0)) throw PreconditionError("analytic amplitude: t must be >= 0");
  const cplx w1(delta, -0.5 * gamma);
  const cplx d = std::sqrt(4.0 * big_g * big_g + w1 * w1);
  const cplx x = 0.5 * d * t;
  // (w1/d) sin(d t/2) = w1 (t/2) sinc(d t/2)
  const cplx bracket = std::cos(x) + I_ * w1 * (0.5 * t) * detail::sinc(x);
  return std::exp(-I_ * (0.5 * delta * t)) * std::exp(-0.25 * gamma * t) * bracket;
}

std::vector<AmplitudeVector> amplitude_ode_solve(double delta, double big_g,
                                                 double gamma,
                                                 const std::vector<double>& t_grid,
                                                 double tol) {
  if (t_grid.empty() || t_grid.front() != 0.0)
    throw PreconditionError("amplitude_ode_solve: time grid must start at 0");
  const cplx damp = -I_ * cplx(delta, -0.5 * gamma);
  auto rhs = [&](const cplx* y, cplx* dy) {
    dy[0] = -I_ * big_g * y[1];
    dy[1] = damp * y[1] - I_ * big_g * y[0];
  };
  std::vector<AmplitudeVector> out;
  out.reserve(t_grid.size());
  detail::integrate_complex(rhs, {1.0, 0.0}, t_grid, {tol, tol * 1e-2, 1'000'000},
                            [&](std::size_t, const std::vector<cplx>& y) {
                              out.push_back({y[0], {y[1]}});
                            });
  return out;
}

CompositeModel make_lossy_cavity_model(const LossyCavityParams& p, int fock_levels) {
  p.validate();
  if (fock_levels < 2) throw PreconditionError("cavity truncation needs at least 2 levels");
  const ComplexMatrix s = annihilation(2);
  const ComplexMatrix a = annihilation(fock_levels);
  const ComplexMatrix h = p.delta * kron(identity(2), number_op(fock_levels)) +
                          p.big_g * (kron(s, a.adjoint()) + kron(s.adjoint(), a));
  AncillaSpec anc;
  anc.dim = 2;
  anc.eta = DensityMatrix::basis_state(2, 0);
  anc.coupling_op = exchange(fock_levels, 2);
  anc.coupling_rate = p.small_g;
  std::vector<int> fock;
  if (fock_levels > 2) fock.push_back(1);
  return CompositeModel(2, {fock_levels}, h, {anc}, p.tau, fock);
}

DensityMatrix lossy_cavity_state(cplx eps, cplx beta, int fock_levels) {
  const double w = std::norm(eps) + std::norm(beta);
  if (w > 1.0 + 1e-12) throw PreconditionError("amplitudes have norm above one");
  const int d = 2 * fock_levels;
  ComplexVector psi = ComplexVector::Zero(d);
  psi(1 * fock_levels + 0) = eps;  // |1>_S |0>
  psi(0 * fock_levels + 1) = beta; // |0>_S |1>
  ComplexMatrix m = psi * psi.adjoint();
  m(0, 0) += std::max(0.0, 1.0 - w);
  return DensityMatrix((m + m.adjoint()) * 0.5);
}

SingleExcitationBlock single_excitation_block(const ComplexMatrix& rho,
                                              int fock_levels) {
  if (rho.rows() != 2 * fock_levels)
    throw DimensionError("single_excitation_block: state has wrong dimension");
  const int ie = fock_levels, ib = 1;
  return {rho(ie, ie).real(), rho(ib, ib).real(), rho(ie, ib)};
}

}  // namespace ccm

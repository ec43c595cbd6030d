#pragma once

// Qubit S exchanging with two cavity modes S_1, S_2 (mutual coupling c),
// each mode leaking into its own stream of vacuum ancillas.

#include <vector>

#include "ccm/collision.hpp"
#include "ccm/lossy_cavity.hpp"
#include "ccm/spectral.hpp"

namespace ccm {

struct TriCoupling {
  double delta1 = 0.0, delta2 = 0.0;
  double big_g1 = 1.0, big_g2 = 0.0;
  double c = 0.0;
};

struct TriDiscreteParams {
  TriCoupling k;
  double small_g1 = 0.0, small_g2 = 0.0;
  double tau = 0.1;
  void validate() const;
};

struct TriContinuousParams {
  TriCoupling k;
  double gamma1 = 1.0, gamma2 = 1.0;
  void validate() const;
};

// Continuous rates gamma_i = g_i^2 tau.
TriContinuousParams continuum_of(const TriDiscreteParams& p);

// H restricted to {|100>, |010>, |001>}.
ComplexMatrix single_excitation_hamiltonian3(const TriCoupling& k);

// diag(1, cos g1 tau, cos g2 tau) exp(-i H3 tau)
ComplexMatrix transfer_matrix3(const TriDiscreteParams& p);

std::vector<AmplitudeVector> amplitude_trajectory3(const TriDiscreteParams& p,
                                                   std::size_t n);

// S (2) (x) S_1 (fock) (x) S_2 (fock), one two-level ancilla per mode.
CompositeModel make_tripartite_model(const TriDiscreteParams& p, int fock_levels = 3);

// |1,0,0> amplitude in a system state of make_tripartite_model.
DensityMatrix tripartite_state(cplx eps, cplx beta1, cplx beta2, int fock_levels = 3);

// eps' = -iG1 b1 - iG2 b2
// b1' = -i(D1 - i g1/2) b1 - iG1 eps - ic b2,  and 1 <-> 2; start (1, 0, 0).
std::vector<AmplitudeVector> amplitude_ode3(const TriContinuousParams& p,
                                            const std::vector<double>& t_grid,
                                            double tol = 1e-12);

enum class SdCase { a, b };

// Case (b) Lorentzian weights. residue_matched reproduces the pseudo-mode
// kernel exactly; published keeps the (gamma1 - (gamma2 +- chi)) factor as
// it is usually quoted, for comparison only (it does not match).
enum class CaseBWeights { residue_matched, published };

struct CaseBCoefficients {
  double chi = 0.0;
  double lambda_plus = 0.0, lambda_minus = 0.0;
  double kappa_plus = 0.0, kappa_minus = 0.0;
};

// Requires G2 = 0, delta1 = delta2 and real chi, i.e. gamma1 - gamma2 > 4|c|.
CaseBCoefficients case_b_coefficients(const TriContinuousParams& p,
                                      CaseBWeights weights = CaseBWeights::residue_matched);

// Two-Lorentzian spectral density with the same single-excitation dynamics
// for S. Centers sit at omega0 + delta_i.
SpectralDensity equivalent_sd(const TriContinuousParams& p, SdCase which,
                              double omega0 = 0.0,
                              CaseBWeights weights = CaseBWeights::residue_matched);

}  // namespace ccm

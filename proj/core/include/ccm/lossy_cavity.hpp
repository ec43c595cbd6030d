#pragma once

// Qubit S, cavity mode S_1 (detuning delta), bosonic ancillas in vacuum.
// H = delta a^dag a + G (s a^dag + s^dag a),  W = g (a b^dag + a^dag b).
// One excitation, so S (x) S_1 reduces to the pair (eps, beta).

#include <vector>

#include "ccm/collision.hpp"
#include "ccm/tensor.hpp"

namespace ccm {

struct LossyCavityParams {
  double delta = 0.0;
  double big_g = 1.0;
  double small_g = 0.0;
  double tau = 0.1;

  void validate() const;  // throws PreconditionError
  double gamma() const { return small_g * small_g * tau; }
};

struct AmplitudeVector {
  cplx eps{1.0, 0.0};
  std::vector<cplx> betas;

  double norm2() const;
};

// 2x2 map (eps, beta)_{n-1} -> (eps, beta)_n.
ComplexMatrix transfer_matrix(const LossyCavityParams& p);

// Step unitary restricted to {|1,0,0>, |0,1,0>, |0,0,1_n>} (S, S_1, fresh
// ancilla). Its upper-left block is transfer_matrix; row 3 gives the
// amplitude handed to the new ancilla.
ComplexMatrix single_excitation_unitary(const LossyCavityParams& p);

std::vector<AmplitudeVector> amplitude_trajectory(const LossyCavityParams& p,
                                                  std::size_t n, cplx eps0,
                                                  cplx beta0);

struct AmplitudeLedger {
  std::vector<AmplitudeVector> steps;
  std::vector<cplx> lambdas;  // lambdas[k-1] created at step k
};

// Also records the amplitude each ancilla leaves with.
AmplitudeLedger amplitude_trajectory_with_ancillas(const LossyCavityParams& p,
                                                   std::size_t n, cplx eps0,
                                                   cplx beta0);

// Closed-form eps(t) of the damped Jaynes-Cummings problem, eps(0) = 1,
// beta(0) = 0, cavity loss rate gamma.
cplx analytic_excited_amplitude(double delta, double big_g, double gamma,
                                double t);

// Direct integration of eps' = -iG beta, beta' = -i(delta - i gamma/2) beta - iG eps.
std::vector<AmplitudeVector> amplitude_ode_solve(double delta, double big_g,
                                                 double gamma,
                                                 const std::vector<double>& t_grid,
                                                 double tol = 1e-12);

// Composite model on S (2 levels) (x) S_1 (fock_levels). The ancillas are
// two-level: one excitation can never put more than one quantum in them.
CompositeModel make_lossy_cavity_model(const LossyCavityParams& p,
                                       int fock_levels = 3);

// eps |1,0> + beta |0,1> (+ vacuum weight so the trace is one).
DensityMatrix lossy_cavity_state(cplx eps, cplx beta, int fock_levels = 3);

// Reads (|eps|^2, |beta|^2, eps beta^*) back out of a system state.
struct SingleExcitationBlock {
  double p_eps = 0.0;
  double p_beta = 0.0;
  cplx coherence{0.0, 0.0};
};
SingleExcitationBlock single_excitation_block(const ComplexMatrix& rho,
                                              int fock_levels = 3);

}  // namespace ccm

#pragma once

// Continuous-time limit of a CompositeModel: jump operators, the GKSL
// generator, and its integration.

#include <vector>

#include "ccm/collision.hpp"
#include "ccm/tensor.hpp"

namespace ccm {

struct JumpOperatorSet {
  std::vector<ComplexMatrix> ops;
  double rate = 0.0;  // gamma = g^2 tau
};

inline constexpr double kZeroPopulation = 1e-14;

// A_{mu nu} = sqrt(p_nu) <mu|w|nu>, partial matrix element over the ancilla
// (second factor of w). Eigenbasis of eta from herm_eig.
JumpOperatorSet jump_operators(const ComplexMatrix& w, const DensityMatrix& eta,
                               double g, double tau);

// Same, in a caller-supplied eigenbasis of eta (columns of `basis`, must be
// unitary and diagonalize eta). Degenerate eta admits many such bases.
JumpOperatorSet jump_operators(const ComplexMatrix& w, const DensityMatrix& eta,
                               const ComplexMatrix& basis, double g, double tau);

// L(rho) = -i[H, rho] + sum_sets rate * sum_A (A rho A^dag - 1/2 {A^dag A, rho}).
// Applied without ever forming the dim^2 x dim^2 superoperator.
class Liouvillian {
 public:
  Liouvillian(ComplexMatrix hamiltonian, std::vector<JumpOperatorSet> dissipators);

  ComplexMatrix operator()(const ComplexMatrix& rho) const;
  // out = L(rho); out must not alias rho
  void apply(const ComplexMatrix& rho, ComplexMatrix& out) const;

  int dim() const { return static_cast<int>(h_.rows()); }
  const ComplexMatrix& hamiltonian() const { return h_; }
  const std::vector<JumpOperatorSet>& dissipators() const { return sets_; }

 private:
  ComplexMatrix h_;
  std::vector<JumpOperatorSet> sets_;
  ComplexMatrix k_;  // -iH - 1/2 sum rate A^dag A
  std::vector<ComplexMatrix> scaled_;  // sqrt(rate) A
  std::vector<ComplexMatrix> scaled_dag_;
};

// Jump operators of every ancilla, embedded on the full system space.
Liouvillian liouvillian(const CompositeModel& model);

struct StateDiagnostics {
  double trace_deviation = 0.0;
  double hermiticity_deviation = 0.0;
  double min_eigenvalue = 0.0;
  bool ok = true;
};

StateDiagnostics validate_state(const ComplexMatrix& rho, double tol = 1e-9);
inline StateDiagnostics validate_state(const DensityMatrix& rho, double tol = 1e-9) {
  return validate_state(rho.matrix(), tol);
}

struct IntegrationOptions {
  double rel_tol = 1e-10;
  double abs_tol = 1e-12;
  double positivity_tol = 1e-8;
};

// Adaptive RKF7(8) through t_grid (t_grid[0] must be 0).
std::vector<DensityMatrix> integrate_me(const Liouvillian& L,
                                        const DensityMatrix& rho0,
                                        const std::vector<double>& t_grid,
                                        const IntegrationOptions& opts = {});

}  // namespace ccm

#pragma once

// Qubit S dispersively coupled to qubit S_1 (V = G sigma_z (x) sigma_x),
// S_1 exchanging with qubit ancillas; and the random-telegraph variant
// (V = H_S (x) sigma_z, maximally mixed ancillas).

#include <vector>

#include "ccm/collision.hpp"
#include "ccm/lindblad.hpp"
#include "ccm/tensor.hpp"

namespace ccm {

struct DephasingParams {
  double big_g = 1.0;
  double small_g = 0.0;
  double tau = 0.1;
  // Ancilla state 1/2 (I - xi sigma_z). xi = 1 (ancillas in |1>) is the
  // state the closed-form transfer matrix is usually quoted for; the
  // coherence factor f_n does not depend on it.
  double xi_bias = 1.0;

  void validate() const;
  double gamma() const { return small_g * small_g * tau; }
};

// Basis G_{kj} = P_k (x) P_j / 2 with P = (I, X, Y, Z); index 4k + j,
// k labelling S and j labelling S_1.
struct PauliTransferMatrix {
  RealMatrix entries;  // 16 x 16, F_ab = Tr{G_a F[G_b]}
  RealVector apply(const RealVector& r) const { return entries * r; }
};

RealVector bloch_vector(const ComplexMatrix& rho);  // r_a = Tr{G_a rho}
ComplexMatrix from_bloch(const RealVector& r);

// Closed form.
PauliTransferMatrix pauli_transfer_matrix(const DephasingParams& p);
// Column by column from any single step on a two-qubit system.
PauliTransferMatrix pauli_transfer_matrix(const CollisionStep& step);

// Interaction W = g (X X + Y Y) between S_1 and its ancilla, which is what
// makes c_g = cos(2 g tau).
CompositeModel make_pure_dephasing_model(const DephasingParams& p);

// rho_S (x) s1, with s1 = |1><1| unless given.
DensityMatrix dephasing_initial_state(const DensityMatrix& rho_s);
DensityMatrix dephasing_initial_state(const DensityMatrix& rho_s,
                                      const DensityMatrix& s1);

// f_n in closed form, complex-safe, with the coincident-eigenvalue limit.
double dephasing_factor_discrete(const DephasingParams& p, std::size_t n);
// (B^n)_{11}, B = [[c_G, -s_G], [c_g s_G, c_g c_G]].
double dephasing_factor_block(const DephasingParams& p, std::size_t n);

// f(t) = e^{-gamma t}[cosh(k t) + gamma sinh(k t)/k], k = sqrt(gamma^2 - 4G^2).
double dephasing_factor_continuous(double gamma, double big_g, double t);
// -f'(t) / (2 f(t))
double dephasing_rate_continuous(double gamma, double big_g, double t);

// ---- random telegraph noise ----

// H = H_S (x) sigma_z on S (x) S_1, standard exchange W = g(s b^dag + h.c.)
// with maximally mixed ancillas and g chosen so that g^2 tau = 2 / t_c.
CompositeModel make_rtn_model(const ComplexMatrix& h_s, double t_c, double tau);

struct RtnTrajectory {
  std::vector<ComplexMatrix> plus;
  std::vector<ComplexMatrix> minus;
  ComplexMatrix total(std::size_t k) const { return plus[k] + minus[k]; }
};

// rho_+-' = -i[+-H_S, rho_+-] +- (rho_- - rho_+)/t_c
RtnTrajectory rtn_propagate(const ComplexMatrix& h_s, double t_c,
                            const ComplexMatrix& rho_plus0,
                            const ComplexMatrix& rho_minus0,
                            const std::vector<double>& t_grid,
                            double tol = 1e-12);

}  // namespace ccm

#pragma once

// Discrete composite collision model. The colliding system is
// S (x) S_1 (x) ... (x) S_N; every step applies one intra-system unitary and
// then lets each auxiliary collide with its own fresh ancilla.

#include <functional>
#include <optional>
#include <vector>

#include "ccm/tensor.hpp"

namespace ccm {

struct AncillaSpec {
  int dim = 2;
  DensityMatrix eta = DensityMatrix::basis_state(2, 0);
  // Hermitian, on (target factor) (x) (ancilla), ancilla second.
  ComplexMatrix coupling_op;
  double coupling_rate = 0.0;  // g
  // Factor of the colliding system this ancilla touches. Empty means
  // "auxiliary i" for the i-th ancilla, or S itself when there are none.
  std::optional<int> target;
};

// Max-entry norm of Tr_R{ w (I (x) eta) }.
double moment_residual(const AncillaSpec& spec, int target_dim);

inline constexpr double kMomentTolerance = 1e-10;

class CompositeModel {
 public:
  // `fock_factors` lists factors of the colliding system that are truncated
  // oscillators; their top level is watched for leakage during evolution.
  CompositeModel(int dim_s, Dims aux_dims, ComplexMatrix internal_hamiltonian,
                 std::vector<AncillaSpec> ancillas, double tau,
                 std::vector<int> fock_factors = {});

  int dim_s() const { return dims_.front(); }
  Dims aux_dims() const { return Dims(dims_.begin() + 1, dims_.end()); }
  // S followed by the auxiliaries.
  const Dims& system_dims() const { return dims_; }
  int system_dim() const { return product(dims_); }
  const ComplexMatrix& internal_hamiltonian() const { return h_; }
  const std::vector<AncillaSpec>& ancillas() const { return ancillas_; }
  // resolved target factor of ancilla i
  int target_of(std::size_t i) const { return targets_[i]; }
  double tau() const { return tau_; }
  const std::vector<int>& fock_factors() const { return fock_; }

  // Same model with a new collision time and couplings rescaled so that
  // g_i^2 tau stays fixed.
  CompositeModel with_tau_fixed_rate(double tau) const;

 private:
  Dims dims_;
  ComplexMatrix h_;
  std::vector<AncillaSpec> ancillas_;
  std::vector<int> targets_;
  double tau_;
  std::vector<int> fock_;
};

std::vector<double> moment_condition_check(const CompositeModel& model);

enum class CollisionOrder { intra_first, ancilla_first };

// Full-space layout used by step_unitary: system factors, then one fresh
// ancilla per AncillaSpec in order.
Dims joint_dims(const CompositeModel& model);

ComplexMatrix step_unitary(const CompositeModel& model,
                           CollisionOrder order = CollisionOrder::intra_first);

// Precomputed single step. Cheap to copy, immutable, thread-safe.
class CollisionStep {
 public:
  explicit CollisionStep(const CompositeModel& model,
                         CollisionOrder order = CollisionOrder::intra_first);

  // Tr_R[ U (x (x) eta) U^dagger ] for any operator x on the system space.
  ComplexMatrix apply(const ComplexMatrix& x) const;
  DensityMatrix operator()(const DensityMatrix& rho) const;

  const ComplexMatrix& unitary() const { return u_; }
  int system_dim() const { return ds_; }

 private:
  ComplexMatrix u_;
  ComplexMatrix eta_;  // product of all fresh ancilla states
  int ds_;
  int da_;
};

DensityMatrix collide(const CompositeModel& model, const DensityMatrix& rho);

// Population of the top Fock level of each monitored factor.
std::vector<double> top_level_population(const CompositeModel& model,
                                         const ComplexMatrix& rho);

struct EvolveOptions {
  CollisionOrder order = CollisionOrder::intra_first;
  double leakage_threshold = 1e-8;
};

// trajectory[k] = collide^k(rho0). Throws NumericalError when a monitored
// Fock factor puts more than leakage_threshold in its top level.
std::vector<DensityMatrix> evolve(const CompositeModel& model,
                                  const DensityMatrix& rho0, std::size_t n,
                                  const EvolveOptions& opts = {});

// Streaming variant; the observer sees (k, rho_k) for k = 0..n.
void evolve(const CompositeModel& model, const DensityMatrix& rho0,
            std::size_t n,
            const std::function<void(std::size_t, const DensityMatrix&)>& obs,
            const EvolveOptions& opts = {});

}  // namespace ccm

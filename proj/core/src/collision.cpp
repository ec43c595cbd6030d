#include "ccm/collision.hpp"

#include <cmath>
#include <string>

namespace ccm {

double moment_residual(const AncillaSpec& spec, int target_dim) {
  const int d = target_dim * spec.dim;
  if (spec.coupling_op.rows() != d || spec.coupling_op.cols() != d)
    throw DimensionError("ancilla coupling operator must be " +
                         std::to_string(d) + "x" + std::to_string(d));
  const ComplexMatrix weighted =
      spec.coupling_op * kron(identity(target_dim), spec.eta.matrix());
  return max_abs(partial_trace(weighted, {target_dim, spec.dim}, {0}));
}

CompositeModel::CompositeModel(int dim_s, Dims aux_dims,
                               ComplexMatrix internal_hamiltonian,
                               std::vector<AncillaSpec> ancillas, double tau,
                               std::vector<int> fock_factors)
    : h_(std::move(internal_hamiltonian)),
      ancillas_(std::move(ancillas)),
      tau_(tau),
      fock_(std::move(fock_factors)) {
  if (dim_s <= 0) throw DimensionError("dim_S must be positive");
  dims_.push_back(dim_s);
  dims_.insert(dims_.end(), aux_dims.begin(), aux_dims.end());
  const int ds = product(dims_);
  if (h_.rows() != ds || h_.cols() != ds)
    throw DimensionError("internal Hamiltonian must be " + std::to_string(ds) +
                         "x" + std::to_string(ds));
  if (!all_finite(h_)) throw PreconditionError("internal Hamiltonian not finite");
  if (hermiticity_defect(h_) > 1e-12)
    throw PreconditionError("internal Hamiltonian is not Hermitian");
  if (!(tau_ >= 0.0) || !std::isfinite(tau_))
    throw PreconditionError("tau must be finite and nonnegative");

  const int n_aux = static_cast<int>(aux_dims.size());
  for (std::size_t i = 0; i < ancillas_.size(); ++i) {
    const auto& a = ancillas_[i];
    int t = 0;
    if (a.target) {
      t = *a.target;
    } else if (n_aux > 0) {
      t = static_cast<int>(i) + 1;
    }
    if (t < 0 || t >= static_cast<int>(dims_.size()))
      throw DimensionError("ancilla " + std::to_string(i) +
                           " targets a factor that does not exist");
    targets_.push_back(t);
    if (a.eta.dim() != a.dim)
      throw DimensionError("ancilla " + std::to_string(i) +
                           ": eta dimension differs from dim");
    if (!std::isfinite(a.coupling_rate))
      throw PreconditionError("ancilla coupling rate must be finite");
    if (hermiticity_defect(a.coupling_op) > 1e-12)
      throw PreconditionError("ancilla " + std::to_string(i) +
                              ": coupling operator is not Hermitian");
    const double r = moment_residual(a, dims_[t]);
    if (r > kMomentTolerance)
      throw PreconditionError(
          "ancilla " + std::to_string(i) +
          ": first moment Tr_R{w eta} is nonzero (residual " +
          std::to_string(r) +
          "); absorb it into the internal Hamiltonian before building the model");
  }
  for (int f : fock_)
    if (f < 0 || f >= static_cast<int>(dims_.size()))
      throw DimensionError("fock factor index out of range");
}

CompositeModel CompositeModel::with_tau_fixed_rate(double tau) const {
  if (!(tau > 0.0) || !(tau_ > 0.0))
    throw PreconditionError("rate-preserving rescale needs positive tau");
  auto anc = ancillas_;
  for (auto& a : anc) a.coupling_rate *= std::sqrt(tau_ / tau);
  return CompositeModel(dims_.front(), aux_dims(), h_, std::move(anc), tau,
                        fock_);
}

std::vector<double> moment_condition_check(const CompositeModel& model) {
  std::vector<double> out;
  for (std::size_t i = 0; i < model.ancillas().size(); ++i)
    out.push_back(moment_residual(model.ancillas()[i],
                                  model.system_dims()[model.target_of(i)]));
  return out;
}

Dims joint_dims(const CompositeModel& model) {
  Dims d = model.system_dims();
  for (const auto& a : model.ancillas()) d.push_back(a.dim);
  return d;
}

ComplexMatrix step_unitary(const CompositeModel& model, CollisionOrder order) {
  const Dims dims = joint_dims(model);
  const int ns = static_cast<int>(model.system_dims().size());
  const int da = product(dims) / model.system_dim();
  const double tau = model.tau();

  const ComplexMatrix us =
      kron(matexp(-I_ * tau * model.internal_hamiltonian()), identity(da));
  ComplexMatrix uw = identity(product(dims));
  for (std::size_t i = 0; i < model.ancillas().size(); ++i) {
    const auto& a = model.ancillas()[i];
    if (a.coupling_rate == 0.0 || tau == 0.0) continue;
    const ComplexMatrix local = matexp(-I_ * (a.coupling_rate * tau) * a.coupling_op);
    uw = embed(local, dims, {model.target_of(i), ns + static_cast<int>(i)}) * uw;
  }
  return order == CollisionOrder::intra_first ? ComplexMatrix(uw * us)
                                              : ComplexMatrix(us * uw);
}

CollisionStep::CollisionStep(const CompositeModel& model, CollisionOrder order)
    : u_(step_unitary(model, order)), ds_(model.system_dim()) {
  eta_ = ComplexMatrix::Identity(1, 1);
  for (const auto& a : model.ancillas()) eta_ = kron(eta_, a.eta.matrix());
  da_ = static_cast<int>(eta_.rows());
}

ComplexMatrix CollisionStep::apply(const ComplexMatrix& x) const {
  if (x.rows() != ds_ || x.cols() != ds_)
    throw DimensionError("collide: state dimension " +
                         std::to_string(x.rows()) + " does not match system " +
                         std::to_string(ds_));
  const ComplexMatrix joint = u_ * kron(x, eta_) * u_.adjoint();
  if (da_ == 1) return joint;
  return partial_trace(joint, {ds_, da_}, {0});
}

DensityMatrix CollisionStep::operator()(const DensityMatrix& rho) const {
  const ComplexMatrix out = apply(rho.matrix());
  return DensityMatrix((out + out.adjoint()) * 0.5);
}

DensityMatrix collide(const CompositeModel& model, const DensityMatrix& rho) {
  return CollisionStep(model)(rho);
}

std::vector<double> top_level_population(const CompositeModel& model,
                                         const ComplexMatrix& rho) {
  std::vector<double> out;
  const Dims& dims = model.system_dims();
  for (int f : model.fock_factors()) {
    const ComplexMatrix red = partial_trace(rho, dims, {f});
    out.push_back(red(dims[f] - 1, dims[f] - 1).real());
  }
  return out;
}

void evolve(const CompositeModel& model, const DensityMatrix& rho0,
            std::size_t n,
            const std::function<void(std::size_t, const DensityMatrix&)>& obs,
            const EvolveOptions& opts) {
  const CollisionStep step(model, opts.order);
  DensityMatrix rho = rho0;
  obs(0, rho);
  for (std::size_t k = 1; k <= n; ++k) {
    rho = step(rho);
    const auto leak = top_level_population(model, rho.matrix());
    for (std::size_t j = 0; j < leak.size(); ++j)
      if (leak[j] > opts.leakage_threshold)
        throw NumericalError(
            "Fock truncation too small: factor " +
            std::to_string(model.fock_factors()[j]) + " holds " +
            std::to_string(leak[j]) + " in its top level after step " +
            std::to_string(k) + "; raise the truncation");
    obs(k, rho);
  }
}

std::vector<DensityMatrix> evolve(const CompositeModel& model,
                                  const DensityMatrix& rho0, std::size_t n,
                                  const EvolveOptions& opts) {
  std::vector<DensityMatrix> traj;
  traj.reserve(n + 1);
  evolve(model, rho0, n,
         [&](std::size_t, const DensityMatrix& r) { traj.push_back(r); }, opts);
  return traj;
}

}  // namespace ccm

#include "ccm/lindblad.hpp"

#include <cmath>
#include <string>

#include "ode.hpp"

namespace ccm {

JumpOperatorSet jump_operators(const ComplexMatrix& w, const DensityMatrix& eta,
                               const ComplexMatrix& basis, double g, double tau) {
  const int da = eta.dim();
  if (w.rows() != w.cols() || w.rows() % da != 0)
    throw DimensionError("jump_operators: coupling operator does not factor as "
                         "target (x) ancilla");
  if (basis.rows() != da || basis.cols() != da)
    throw DimensionError("jump_operators: basis has wrong dimension");
  if (max_abs(basis.adjoint() * basis - identity(da)) > 1e-10)
    throw PreconditionError("jump_operators: basis is not unitary");
  if (!(tau >= 0.0)) throw PreconditionError("jump_operators: tau must be >= 0");
  const int dt = static_cast<int>(w.rows()) / da;

  const ComplexMatrix eta_b = basis.adjoint() * eta.matrix() * basis;
  ComplexMatrix off = eta_b;
  off.diagonal().setZero();
  if (max_abs(off) > 1e-10)
    throw PreconditionError("jump_operators: basis does not diagonalize eta");

  AncillaSpec probe;
  probe.dim = da;
  probe.eta = eta;
  probe.coupling_op = w;
  if (moment_residual(probe, dt) > kMomentTolerance)
    throw PreconditionError("jump_operators: moment condition Tr_R{w eta} = 0 violated");

  JumpOperatorSet set;
  set.rate = g * g * tau;
  for (int nu = 0; nu < da; ++nu) {
    const double p = eta_b(nu, nu).real();
    if (p < kZeroPopulation) continue;
    const double sp = std::sqrt(p);
    for (int mu = 0; mu < da; ++mu) {
      ComplexMatrix a = ComplexMatrix::Zero(dt, dt);
      for (int i = 0; i < dt; ++i)
        for (int j = 0; j < dt; ++j) {
          cplx acc = 0.0;
          for (int x = 0; x < da; ++x) {
            const cplx bra = std::conj(basis(x, mu));
            if (bra == cplx(0.0)) continue;
            for (int y = 0; y < da; ++y)
              acc += bra * w(i * da + x, j * da + y) * basis(y, nu);
          }
          a(i, j) = sp * acc;
        }
      if (max_abs(a) > 1e-15) set.ops.push_back(std::move(a));
    }
  }
  return set;
}

JumpOperatorSet jump_operators(const ComplexMatrix& w, const DensityMatrix& eta,
                               double g, double tau) {
  return jump_operators(w, eta, herm_eig(eta.matrix()).vectors, g, tau);
}

Liouvillian::Liouvillian(ComplexMatrix hamiltonian,
                         std::vector<JumpOperatorSet> dissipators)
    : h_(std::move(hamiltonian)), sets_(std::move(dissipators)) {
  const auto d = h_.rows();
  if (d != h_.cols()) throw DimensionError("Liouvillian: Hamiltonian not square");
  if (hermiticity_defect(h_) > 1e-12)
    throw PreconditionError("Liouvillian: Hamiltonian not Hermitian");
  k_ = -I_ * h_;
  for (const auto& s : sets_) {
    if (!(s.rate >= 0.0)) throw PreconditionError("Liouvillian: negative rate");
    for (const auto& a : s.ops) {
      if (a.rows() != d || a.cols() != d)
        throw DimensionError("Liouvillian: jump operator has wrong dimension");
      k_ -= 0.5 * s.rate * (a.adjoint() * a);
      scaled_.push_back(std::sqrt(s.rate) * a);
      scaled_dag_.push_back(scaled_.back().adjoint());
    }
  }
}

void Liouvillian::apply(const ComplexMatrix& rho, ComplexMatrix& out) const {
  out.noalias() = k_ * rho;
  out.noalias() += rho * k_.adjoint();
  for (std::size_t i = 0; i < scaled_.size(); ++i)
    out.noalias() += scaled_[i] * rho * scaled_dag_[i];
}

ComplexMatrix Liouvillian::operator()(const ComplexMatrix& rho) const {
  if (rho.rows() != h_.rows() || rho.cols() != h_.cols())
    throw DimensionError("Liouvillian: state has wrong dimension");
  ComplexMatrix out(rho.rows(), rho.cols());
  apply(rho, out);
  return out;
}

Liouvillian liouvillian(const CompositeModel& model) {
  std::vector<JumpOperatorSet> sets;
  const Dims& dims = model.system_dims();
  for (std::size_t i = 0; i < model.ancillas().size(); ++i) {
    const auto& a = model.ancillas()[i];
    auto local = jump_operators(a.coupling_op, a.eta, a.coupling_rate, model.tau());
    JumpOperatorSet full;
    full.rate = local.rate;
    for (const auto& op : local.ops)
      full.ops.push_back(embed(op, dims, {model.target_of(i)}));
    sets.push_back(std::move(full));
  }
  return Liouvillian(model.internal_hamiltonian(), std::move(sets));
}

StateDiagnostics validate_state(const ComplexMatrix& rho, double tol) {
  StateDiagnostics d;
  if (rho.rows() != rho.cols() || rho.rows() == 0)
    throw DimensionError("validate_state: matrix must be square");
  d.trace_deviation = std::abs(rho.trace() - 1.0);
  d.hermiticity_deviation = hermiticity_defect(rho);
  Eigen::MatrixXcd sym = (rho + rho.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sym, Eigen::EigenvaluesOnly);
  d.min_eigenvalue = es.eigenvalues().minCoeff();
  d.ok = d.trace_deviation <= tol && d.hermiticity_deviation <= tol &&
         d.min_eigenvalue >= -tol && all_finite(rho);
  return d;
}

std::vector<DensityMatrix> integrate_me(const Liouvillian& L,
                                        const DensityMatrix& rho0,
                                        const std::vector<double>& t_grid,
                                        const IntegrationOptions& opts) {
  if (t_grid.empty() || t_grid.front() != 0.0)
    throw PreconditionError("integrate_me: time grid must start at 0");
  const int d = L.dim();
  if (rho0.dim() != d) throw DimensionError("integrate_me: state dimension mismatch");

  using CMap = Eigen::Map<const ComplexMatrix>;
  using Map = Eigen::Map<ComplexMatrix>;
  ComplexMatrix scratch(d, d);
  auto rhs = [&](const cplx* y, cplx* dy) {
    L.apply(CMap(y, d, d), scratch);
    Map(dy, d, d) = scratch;
  };
  std::vector<cplx> y0(rho0.matrix().data(), rho0.matrix().data() + d * d);

  std::vector<DensityMatrix> out;
  out.reserve(t_grid.size());
  StateTolerances st;
  st.hermiticity = 1e-12;
  st.trace = 1e-9;
  st.min_eigenvalue = -opts.positivity_tol;
  detail::integrate_complex(
      rhs, std::move(y0), t_grid, {opts.rel_tol, opts.abs_tol, 1'000'000},
      [&](std::size_t k, const std::vector<cplx>& y) {
        ComplexMatrix m = CMap(y.data(), d, d);
        m = (m + m.adjoint()).eval() * 0.5;
        const auto diag = validate_state(m, opts.positivity_tol);
        if (diag.min_eigenvalue < -opts.positivity_tol)
          throw NumericalError("integrate_me: positivity lost at t = " +
                               std::to_string(t_grid[k]) + " (min eigenvalue " +
                               std::to_string(diag.min_eigenvalue) + ")");
        out.emplace_back(std::move(m), st);
      });
  return out;
}

}  // namespace ccm

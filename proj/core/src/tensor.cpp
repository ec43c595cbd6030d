#include "ccm/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include <unsupported/Eigen/MatrixFunctions>

namespace ccm {

ComplexMatrix identity(int n) { return ComplexMatrix::Identity(n, n); }

ComplexMatrix dagger(const ComplexMatrix& a) { return a.adjoint(); }

double max_abs(const ComplexMatrix& a) {
  return a.size() == 0 ? 0.0 : a.cwiseAbs().maxCoeff();
}

double hermiticity_defect(const ComplexMatrix& a) {
  if (a.rows() != a.cols()) return INFINITY;
  return max_abs(a - a.adjoint());
}

bool all_finite(const ComplexMatrix& a) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    const cplx z = a.data()[i];
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
  }
  return true;
}

int product(const Dims& dims) {
  int p = 1;
  for (int d : dims) {
    if (d <= 0) throw DimensionError("factor dimensions must be positive");
    p *= d;
  }
  return p;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i)
    for (Eigen::Index j = 0; j < a.cols(); ++j)
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
  return out;
}

ComplexMatrix kron(const std::vector<ComplexMatrix>& factors) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (const auto& f : factors) out = kron(out, f);
  return out;
}

ComplexMatrix matexp(const ComplexMatrix& a, double tol) {
  if (a.rows() != a.cols())
    throw DimensionError("matexp: matrix must be square, got " +
                         std::to_string(a.rows()) + "x" +
                         std::to_string(a.cols()));
  if (!(tol >= 1e-15))
    throw PreconditionError("matexp: tolerance below 1e-15 is not attainable");
  const Eigen::Index n = a.rows();
  if (n == 0) return a;

  const double scale = std::max(1.0, max_abs(a));
  const ComplexMatrix herm_part = (a + a.adjoint()) * 0.5;
  if (max_abs(herm_part) <= 1e-15 * scale) {
    // a = -i h with h Hermitian: exp(a) = V exp(-i lambda) V^dagger
    const ComplexMatrix h = I_ * (a - a.adjoint()) * 0.5;
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(h);
    const Eigen::MatrixXcd& v = es.eigenvectors();
    Eigen::VectorXcd phases(n);
    for (Eigen::Index k = 0; k < n; ++k)
      phases(k) = std::exp(-I_ * es.eigenvalues()(k));
    return v * phases.asDiagonal() * v.adjoint();
  }
  Eigen::MatrixXcd col = a;
  Eigen::MatrixXcd e = col.exp();
  return e;
}

namespace {

std::vector<int> strides_of(const Dims& dims) {
  std::vector<int> s(dims.size(), 1);
  for (int k = static_cast<int>(dims.size()) - 2; k >= 0; --k)
    s[k] = s[k + 1] * dims[k + 1];
  return s;
}

// Flat indices (into the full space) of every multi-index over `factors`,
// other factors held at zero, enumerated in row-major order of `factors`.
std::vector<int> offsets(const Dims& dims, const std::vector<int>& factors) {
  const auto st = strides_of(dims);
  std::vector<int> out{0};
  for (int f : factors) {
    std::vector<int> next;
    next.reserve(out.size() * dims[f]);
    for (int base : out)
      for (int v = 0; v < dims[f]; ++v) next.push_back(base + v * st[f]);
    out.swap(next);
  }
  return out;
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix& m, const Dims& dims,
                            std::vector<int> keep) {
  const int total = product(dims);
  if (m.rows() != total || m.cols() != total)
    throw DimensionError("partial_trace: dims multiply to " +
                         std::to_string(total) + " but matrix is " +
                         std::to_string(m.rows()) + "x" +
                         std::to_string(m.cols()));
  if (keep.empty()) throw DimensionError("partial_trace: keep set is empty");
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  std::vector<int> traced;
  for (int k = 0; k < static_cast<int>(dims.size()); ++k) {
    if (!std::binary_search(keep.begin(), keep.end(), k)) traced.push_back(k);
  }
  for (int k : keep)
    if (k < 0 || k >= static_cast<int>(dims.size()))
      throw DimensionError("partial_trace: keep index out of range");

  const auto kept = offsets(dims, keep);
  const auto tr = offsets(dims, traced);
  const int dk = static_cast<int>(kept.size());
  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (int r = 0; r < dk; ++r)
    for (int c = 0; c < dk; ++c) {
      cplx acc = 0.0;
      for (int t : tr) acc += m(kept[r] + t, kept[c] + t);
      out(r, c) = acc;
    }
  return out;
}

HermitianEigen herm_eig(const ComplexMatrix& h, double herm_tol) {
  if (h.rows() != h.cols()) throw DimensionError("herm_eig: matrix not square");
  const double defect = hermiticity_defect(h);
  if (defect > herm_tol)
    throw PreconditionError("herm_eig: matrix is not Hermitian (defect " +
                            std::to_string(defect) + ")");
  Eigen::MatrixXcd sym = (h + h.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sym);
  if (es.info() != Eigen::Success)
    throw NumericalError("herm_eig: eigensolver did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

ComplexMatrix mat_power(const ComplexMatrix& m, std::size_t n) {
  if (m.rows() != m.cols()) throw DimensionError("mat_power: matrix not square");
  ComplexMatrix result = identity(static_cast<int>(m.rows()));
  ComplexMatrix base = m;
  while (n > 0) {
    if (n & 1u) result = result * base;
    n >>= 1u;
    if (n > 0) base = base * base;
  }
  return result;
}

ComplexMatrix embed(const ComplexMatrix& op, const Dims& dims,
                    const std::vector<int>& targets) {
  const int total = product(dims);
  Dims tdims;
  for (int t : targets) {
    if (t < 0 || t >= static_cast<int>(dims.size()))
      throw DimensionError("embed: target index out of range");
    tdims.push_back(dims[t]);
  }
  const int dt = product(tdims);
  if (op.rows() != dt || op.cols() != dt)
    throw DimensionError("embed: operator is " + std::to_string(op.rows()) +
                         "x" + std::to_string(op.cols()) +
                         " but targets span dimension " + std::to_string(dt));
  std::vector<int> rest;
  for (int k = 0; k < static_cast<int>(dims.size()); ++k)
    if (std::find(targets.begin(), targets.end(), k) == targets.end())
      rest.push_back(k);
  const auto tgt = offsets(dims, targets);
  const auto spect = offsets(dims, rest);
  ComplexMatrix out = ComplexMatrix::Zero(total, total);
  for (int s : spect)
    for (int r = 0; r < dt; ++r)
      for (int c = 0; c < dt; ++c) {
        const cplx v = op(r, c);
        if (v != cplx(0.0)) out(s + tgt[r], s + tgt[c]) = v;
      }
  return out;
}

// ---------------------------------------------------------------------------

DensityMatrix::DensityMatrix(ComplexMatrix m, const StateTolerances& tol)
    : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols())
    throw DimensionError("density matrix must be square and nonempty");
  if (!all_finite(m_))
    throw PreconditionError("density matrix has non-finite entries");
  const double herm = hermiticity_defect(m_);
  if (herm > tol.hermiticity)
    throw PreconditionError("density matrix not Hermitian (defect " +
                            std::to_string(herm) + ")");
  const double tr_dev = std::abs(m_.trace() - 1.0);
  if (tr_dev > tol.trace)
    throw PreconditionError("density matrix trace deviates from 1 by " +
                            std::to_string(tr_dev));
  Eigen::MatrixXcd sym = (m_ + m_.adjoint()) * 0.5;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(sym, Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  if (lo < tol.min_eigenvalue)
    throw PreconditionError("density matrix has negative eigenvalue " +
                            std::to_string(lo));
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const double nrm = psi.norm();
  if (!(nrm > 0.0)) throw PreconditionError("pure: zero state vector");
  const ComplexVector u = psi / nrm;
  ComplexMatrix m = u * u.adjoint();
  return DensityMatrix((m + m.adjoint()) * 0.5);
}

DensityMatrix DensityMatrix::maximally_mixed(int dim) {
  if (dim <= 0) throw DimensionError("maximally_mixed: dim must be positive");
  return DensityMatrix(identity(dim) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::basis_state(int dim, int k) {
  if (dim <= 0 || k < 0 || k >= dim)
    throw DimensionError("basis_state: index out of range");
  ComplexMatrix m = ComplexMatrix::Zero(dim, dim);
  m(k, k) = 1.0;
  return DensityMatrix(std::move(m));
}

DensityMatrix DensityMatrix::product(const std::vector<DensityMatrix>& parts) {
  ComplexMatrix m = ComplexMatrix::Identity(1, 1);
  for (const auto& p : parts) m = kron(m, p.matrix());
  return DensityMatrix(std::move(m));
}

}  // namespace ccm

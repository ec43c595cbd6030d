#pragma once

// Dense complex linear algebra used throughout. Everything is row-major with
// run-time dimensions; qubits and truncated oscillators go through the same code.

#include <complex>
#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "ccm/errors.hpp"

namespace ccm {

using cplx = std::complex<double>;
using ComplexMatrix =
    Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using ComplexVector = Eigen::Matrix<cplx, Eigen::Dynamic, 1>;
using RealMatrix =
    Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;
using RealVector = Eigen::VectorXd;
using Dims = std::vector<int>;

inline constexpr cplx I_{0.0, 1.0};

ComplexMatrix identity(int n);
ComplexMatrix dagger(const ComplexMatrix& a);

// max |a_ij|
double max_abs(const ComplexMatrix& a);
// max |a - a^dagger| entrywise
double hermiticity_defect(const ComplexMatrix& a);
bool all_finite(const ComplexMatrix& a);

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron(const std::vector<ComplexMatrix>& factors);

// exp(a). Anti-Hermitian input (the only kind the collision code produces)
// goes through a Hermitian eigendecomposition so the result is unitary to
// rounding; anything else uses Pade scaling-and-squaring. `tol` is the
// requested relative accuracy; values below 1e-15 are not attainable in
// double precision and are rejected.
ComplexMatrix matexp(const ComplexMatrix& a, double tol = 1e-13);

// Trace over every factor not listed in `keep`. `keep` may be given in any
// order; the result keeps the factors in ascending order.
ComplexMatrix partial_trace(const ComplexMatrix& m, const Dims& dims,
                            std::vector<int> keep);

struct HermitianEigen {
  RealVector values;     // ascending
  ComplexMatrix vectors; // columns
};
HermitianEigen herm_eig(const ComplexMatrix& h, double herm_tol = 1e-10);

ComplexMatrix mat_power(const ComplexMatrix& m, std::size_t n);

// Lift `op`, acting on the factors `targets` (in the order given), to the full
// product space described by `dims`.
ComplexMatrix embed(const ComplexMatrix& op, const Dims& dims,
                    const std::vector<int>& targets);

int product(const Dims& dims);

struct StateTolerances {
  double hermiticity = 1e-12;
  double trace = 1e-9;
  double min_eigenvalue = -1e-9;
};

// Hermitian, unit trace, PSD within tolerances. Checked on construction.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m, const StateTolerances& tol = {});

  static DensityMatrix pure(const ComplexVector& psi);
  static DensityMatrix maximally_mixed(int dim);
  static DensityMatrix basis_state(int dim, int k);
  // Product state of the given factors.
  static DensityMatrix product(const std::vector<DensityMatrix>& parts);

  int dim() const { return static_cast<int>(m_.rows()); }
  const ComplexMatrix& matrix() const { return m_; }
  cplx operator()(int r, int c) const { return m_(r, c); }

 private:
  ComplexMatrix m_;
};

}  // namespace ccm

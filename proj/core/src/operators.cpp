#include "ccm/operators.hpp"

#include <cmath>

namespace ccm {

ComplexMatrix pauli_x() {
  ComplexMatrix m(2, 2);
  m << 0.0, 1.0, 1.0, 0.0;
  return m;
}

ComplexMatrix pauli_y() {
  ComplexMatrix m(2, 2);
  m << 0.0, -I_, I_, 0.0;
  return m;
}

ComplexMatrix pauli_z() {
  ComplexMatrix m(2, 2);
  m << 1.0, 0.0, 0.0, -1.0;
  return m;
}

ComplexMatrix annihilation(int levels) {
  if (levels < 1) throw DimensionError("annihilation: levels must be >= 1");
  ComplexMatrix a = ComplexMatrix::Zero(levels, levels);
  for (int n = 1; n < levels; ++n) a(n - 1, n) = std::sqrt(double(n));
  return a;
}

ComplexMatrix creation(int levels) { return annihilation(levels).adjoint(); }

ComplexMatrix number_op(int levels) {
  ComplexMatrix n = ComplexMatrix::Zero(levels, levels);
  for (int k = 0; k < levels; ++k) n(k, k) = double(k);
  return n;
}

ComplexMatrix exchange(int levels_a, int levels_b) {
  const ComplexMatrix a = annihilation(levels_a);
  const ComplexMatrix b = annihilation(levels_b);
  return kron(a, b.adjoint()) + kron(a.adjoint(), b);
}

DensityMatrix biased_qubit(double xi) {
  if (!(std::abs(xi) <= 1.0))
    throw PreconditionError("qubit bias must lie in [-1, 1]");
  ComplexMatrix m = ComplexMatrix::Zero(2, 2);
  m(0, 0) = 0.5 * (1.0 - xi);
  m(1, 1) = 0.5 * (1.0 + xi);
  return DensityMatrix(std::move(m));
}

}  // namespace ccm

#pragma once

#include "ccm/tensor.hpp"

namespace ccm {

// Pauli matrices in the basis {|0>, |1>} with sigma_z = diag(1, -1).
ComplexMatrix pauli_x();
ComplexMatrix pauli_y();
ComplexMatrix pauli_z();

// Truncated bosonic annihilation operator, a|n> = sqrt(n)|n-1>, n < levels.
// annihilation(2) = |0><1| is also the lowering operator of any qubit that is
// treated as a one-excitation mode (|1> excited), which is how the
// excitation-conserving models use their qubits.
ComplexMatrix annihilation(int levels);
ComplexMatrix creation(int levels);
ComplexMatrix number_op(int levels);

// Rotating-wave exchange a (x) b^dag + a^dag (x) b between two factors.
ComplexMatrix exchange(int levels_a, int levels_b);

// Qubit state 1/2 (I - xi sigma_z): xi = 1 is |1>, xi = -1 is |0>.
DensityMatrix biased_qubit(double xi);

}  // namespace ccm

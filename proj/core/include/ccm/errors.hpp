#pragma once

#include <stdexcept>
#include <string>

namespace ccm {

// Shape or factor-dimension mismatch between arguments.
struct DimensionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Inputs outside the domain of an operation (bad rates, non-Hermitian
// operator where one is required, violated moment condition...).
struct PreconditionError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Something went wrong while computing: step-size underflow, positivity
// loss, leakage out of a truncated Fock space, quadrature that did not settle.
struct NumericalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ccm

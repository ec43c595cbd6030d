#pragma once

// Independent reference implementations for the tests. Nothing here calls the
// library's matexp, partial_trace, embed or step construction.

#include <complex>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "ccm/tensor.hpp"

namespace oracle {

using ccm::ComplexMatrix;
using ccm::ComplexVector;
using ccm::cplx;

// exp(a) by squaring a truncated Taylor series (terms until below 1e-18).
ComplexMatrix taylor_exp(const ComplexMatrix& a);

// Naive Kronecker product by explicit index arithmetic.
ComplexMatrix kron_naive(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix kron_list(const std::vector<ComplexMatrix>& fs);

// Trace over a single factor `drop` by explicit multi-index loops.
ComplexMatrix trace_out(const ComplexMatrix& m, const std::vector<int>& dims, int drop);

ComplexMatrix naive_power(const ComplexMatrix& m, int n);

// Classical fourth-order Runge-Kutta on y' = f(y), fixed step, sampling at the
// requested times (which must be multiples of the step).
std::vector<std::vector<cplx>> rk4(
    const std::function<void(const std::vector<cplx>&, std::vector<cplx>&)>& f,
    std::vector<cplx> y0, double h, const std::vector<double>& sample_times);

// State-vector simulator on a tensor product of factors with local gates.
class StateVector {
 public:
  StateVector(std::vector<int> dims, ComplexVector psi);
  // apply a gate acting on `factors` (in that order) in place
  void apply(const ComplexMatrix& gate, const std::vector<int>& factors);
  // reduced density matrix of the first `k` factors
  ComplexMatrix reduced_leading(int k) const;
  cplx amplitude(const std::vector<int>& digits) const;
  const ComplexVector& data() const { return psi_; }

 private:
  std::vector<int> dims_;
  std::vector<long> strides_;
  ComplexVector psi_;
};

// Deterministic random helpers.
struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(gen);
  }
  double normal() { return std::normal_distribution<double>(0.0, 1.0)(gen); }
};

ComplexMatrix random_matrix(Rng& rng, int rows, int cols);
ComplexMatrix random_hermitian(Rng& rng, int n);
ComplexMatrix random_density(Rng& rng, int n);  // full rank
ComplexMatrix random_unitary(Rng& rng, int n);

}  // namespace oracle

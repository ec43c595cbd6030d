#pragma once

// Hand-built operators for the brute-force oracles. Written out entry by
// entry so they share nothing with the library's operator factories.

#include <cmath>
#include <vector>

#include "oracles.hpp"

namespace oracle {

inline ComplexMatrix lower(int levels) {
  ComplexMatrix a = ComplexMatrix::Zero(levels, levels);
  for (int n = 1; n < levels; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
  return a;
}

inline ComplexMatrix eye(int n) { return ComplexMatrix::Identity(n, n); }

// Explicit-ancilla simulation of the lossy cavity model: factors
// S(2), S1(fock), R_1..R_n (2 each); S starts excited, everything else empty.
// Returns the reduced S(x)S1 state after each step, k = 0..n.
std::vector<ComplexMatrix> brute_force_lossy(double delta, double G, double g,
                                             double tau, int fock, int n,
                                             std::vector<cplx>* eps = nullptr);

// Same for the two-mode model: S(2), S1(fock), S2(fock), then per step the
// pair R_{k1}, R_{k2}. Returns reduced S(x)S1(x)S2 states and the |100, vac>
// amplitudes.
std::vector<ComplexMatrix> brute_force_tripartite(double d1, double d2, double G1,
                                                  double G2, double c, double g1,
                                                  double g2, double tau, int fock,
                                                  int n, std::vector<cplx>* eps,
                                                  std::vector<cplx>* b1 = nullptr,
                                                  std::vector<cplx>* b2 = nullptr);

}  // namespace oracle

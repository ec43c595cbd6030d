#include "models.hpp"

namespace oracle {

namespace {
const cplx kI{0.0, 1.0};
}

std::vector<ComplexMatrix> brute_force_lossy(double delta, double G, double g,
                                             double tau, int fock, int n,
                                             std::vector<cplx>* eps) {
  std::vector<int> dims{2, fock};
  for (int k = 0; k < n; ++k) dims.push_back(2);
  long total = 1;
  for (int d : dims) total *= d;
  ComplexVector psi = ComplexVector::Zero(total);
  StateVector sv(dims, psi);
  {
    ComplexVector v = ComplexVector::Zero(total);
    long stride = total / 2;  // S is the leading factor
    v(1 * stride) = 1.0;
    sv = StateVector(dims, v);
  }
  const ComplexMatrix s = lower(2), a = lower(fock), b = lower(2);
  ComplexMatrix num = ComplexMatrix::Zero(fock, fock);
  for (int k = 0; k < fock; ++k) num(k, k) = k;
  const ComplexMatrix h = delta * kron_naive(eye(2), num) +
                          G * (kron_naive(s, a.adjoint()) + kron_naive(s.adjoint(), a));
  const ComplexMatrix us = taylor_exp(-kI * tau * h);
  const ComplexMatrix w = kron_naive(a, b.adjoint()) + kron_naive(a.adjoint(), b);
  const ComplexMatrix uw = taylor_exp(-kI * (g * tau) * w);

  std::vector<ComplexMatrix> out{sv.reduced_leading(2)};
  std::vector<int> zero(dims.size(), 0);
  auto excited = zero;
  excited[0] = 1;
  if (eps) eps->push_back(sv.amplitude(excited));
  for (int k = 1; k <= n; ++k) {
    sv.apply(us, {0, 1});
    sv.apply(uw, {1, 1 + k});
    out.push_back(sv.reduced_leading(2));
    if (eps) eps->push_back(sv.amplitude(excited));
  }
  return out;
}

std::vector<ComplexMatrix> brute_force_tripartite(double d1, double d2, double G1,
                                                  double G2, double c, double g1,
                                                  double g2, double tau, int fock,
                                                  int n, std::vector<cplx>* eps,
                                                  std::vector<cplx>* b1,
                                                  std::vector<cplx>* b2) {
  std::vector<int> dims{2, fock, fock};
  for (int k = 0; k < 2 * n; ++k) dims.push_back(2);
  long total = 1;
  for (int d : dims) total *= d;
  ComplexVector v = ComplexVector::Zero(total);
  v(total / 2) = 1.0;
  StateVector sv(dims, v);

  const ComplexMatrix s = lower(2), a = lower(fock), r = lower(2);
  ComplexMatrix num = ComplexMatrix::Zero(fock, fock);
  for (int k = 0; k < fock; ++k) num(k, k) = k;
  const ComplexMatrix i2 = eye(2), iF = eye(fock);
  ComplexMatrix h = d1 * kron_list({i2, num, iF}) + d2 * kron_list({i2, iF, num});
  h += G1 * (kron_list({s, a.adjoint(), iF}) + kron_list({s.adjoint(), a, iF}));
  h += G2 * (kron_list({s, iF, a.adjoint()}) + kron_list({s.adjoint(), iF, a}));
  h += c * (kron_list({i2, a.adjoint(), a}) + kron_list({i2, a, a.adjoint()}));
  const ComplexMatrix us = taylor_exp(-kI * tau * h);
  const ComplexMatrix w = kron_naive(a, r.adjoint()) + kron_naive(a.adjoint(), r);
  const ComplexMatrix u1 = taylor_exp(-kI * (g1 * tau) * w);
  const ComplexMatrix u2 = taylor_exp(-kI * (g2 * tau) * w);

  std::vector<int> d100(dims.size(), 0), d010(dims.size(), 0), d001(dims.size(), 0);
  d100[0] = 1;
  d010[1] = 1;
  d001[2] = 1;
  auto record = [&] {
    if (eps) eps->push_back(sv.amplitude(d100));
    if (b1) b1->push_back(sv.amplitude(d010));
    if (b2) b2->push_back(sv.amplitude(d001));
  };
  std::vector<ComplexMatrix> out{sv.reduced_leading(3)};
  record();
  for (int k = 1; k <= n; ++k) {
    sv.apply(us, {0, 1, 2});
    sv.apply(u1, {1, 3 + 2 * (k - 1)});
    sv.apply(u2, {2, 4 + 2 * (k - 1)});
    out.push_back(sv.reduced_leading(3));
    record();
  }
  return out;
}

}  // namespace oracle

#include "ccm/dephasing.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>
#include <vector>

#include "ccm/operators.hpp"
#include "ode.hpp"
#include "special.hpp"

namespace ccm {

void DephasingParams::validate() const {
  if (!(tau > 0.0) || !std::isfinite(tau))
    throw PreconditionError("dephasing: tau must be positive");
  if (!std::isfinite(big_g) || !std::isfinite(small_g))
    throw PreconditionError("dephasing: rates must be finite");
  if (!(std::abs(xi_bias) <= 1.0))
    throw PreconditionError("dephasing: xi_bias must lie in [-1, 1]");
}

namespace {

const std::array<ComplexMatrix, 4>& paulis() {
  static const std::array<ComplexMatrix, 4> p{identity(2), pauli_x(), pauli_y(),
                                              pauli_z()};
  return p;
}

ComplexMatrix basis_element(int a) {
  return kron(paulis()[a / 4], paulis()[a % 4]) * 0.5;
}

}  // namespace

RealVector bloch_vector(const ComplexMatrix& rho) {
  if (rho.rows() != 4 || rho.cols() != 4)
    throw DimensionError("bloch_vector: expects a two-qubit operator");
  RealVector r(16);
  for (int a = 0; a < 16; ++a) r(a) = (basis_element(a) * rho).trace().real();
  return r;
}

ComplexMatrix from_bloch(const RealVector& r) {
  if (r.size() != 16) throw DimensionError("from_bloch: expects 16 components");
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  for (int a = 0; a < 16; ++a) m += r(a) * basis_element(a);
  return m;
}

PauliTransferMatrix pauli_transfer_matrix(const DephasingParams& p) {
  p.validate();
  const double cg = std::cos(2.0 * p.small_g * p.tau);
  const double sg = std::sin(2.0 * p.small_g * p.tau);
  const double cG = std::cos(2.0 * p.big_g * p.tau);
  const double sG = std::sin(2.0 * p.big_g * p.tau);
  const double xi = p.xi_bias;
  const double sg2 = sg * sg;
  RealMatrix f = RealMatrix::Zero(16, 16);
  f(0, 0) = 1;
  f(1, 1) = cg;
  f(2, 2) = cG * cg;       f(2, 15) = -cg * sG;
  f(3, 0) = -xi * sg2;     f(3, 3) = cG * cg * cg;  f(3, 14) = cg * cg * sG;
  f(4, 4) = cG;            f(4, 9) = -sG;
  f(5, 5) = cG * cg;       f(5, 8) = -cg * sG;
  f(6, 6) = cg;
  f(7, 4) = -xi * cG * sg2; f(7, 7) = cg * cg;      f(7, 9) = xi * sG * sg2;
  f(8, 5) = sG;            f(8, 8) = cG;
  f(9, 4) = cg * sG;       f(9, 9) = cG * cg;
  f(10, 10) = cg;
  f(11, 5) = -xi * sG * sg2; f(11, 8) = -xi * cG * sg2; f(11, 11) = cg * cg;
  f(12, 12) = 1;
  f(13, 13) = cg;
  f(14, 3) = -cg * sG;     f(14, 14) = cG * cg;
  f(15, 2) = cg * cg * sG; f(15, 12) = -xi * sg2;    f(15, 15) = cG * cg * cg;
  return {f};
}

PauliTransferMatrix pauli_transfer_matrix(const CollisionStep& step) {
  if (step.system_dim() != 4)
    throw DimensionError("pauli_transfer_matrix: step must act on two qubits");
  RealMatrix f(16, 16);
  for (int b = 0; b < 16; ++b) {
    const ComplexMatrix out = step.apply(basis_element(b));
    for (int a = 0; a < 16; ++a) f(a, b) = (basis_element(a) * out).trace().real();
  }
  return {f};
}

CompositeModel make_pure_dephasing_model(const DephasingParams& p) {
  p.validate();
  const ComplexMatrix h = p.big_g * kron(pauli_z(), pauli_x());
  AncillaSpec anc;
  anc.dim = 2;
  anc.eta = biased_qubit(p.xi_bias);
  anc.coupling_op = kron(pauli_x(), pauli_x()) + kron(pauli_y(), pauli_y());
  anc.coupling_rate = p.small_g;
  return CompositeModel(2, {2}, h, {anc}, p.tau);
}

DensityMatrix dephasing_initial_state(const DensityMatrix& rho_s) {
  return dephasing_initial_state(rho_s, DensityMatrix::basis_state(2, 1));
}

DensityMatrix dephasing_initial_state(const DensityMatrix& rho_s,
                                      const DensityMatrix& s1) {
  if (rho_s.dim() != 2 || s1.dim() != 2)
    throw DimensionError("dephasing_initial_state: both factors are qubits");
  return DensityMatrix::product({rho_s, s1});
}

double dephasing_factor_discrete(const DephasingParams& p, std::size_t n) {
  p.validate();
  if (n == 0) return 1.0;
  const double cg = std::cos(2.0 * p.small_g * p.tau);
  const double cG = std::cos(2.0 * p.big_g * p.tau);
  const double tr = (cg + 1.0) * cG;  // trace of B
  const cplx kd = std::sqrt(cplx(tr * tr - 4.0 * cg, 0.0));
  const cplx lp = 0.5 * (tr + kd);
  const cplx lm = 0.5 * (tr - kd);
  const double w = 0.5 * (1.0 - cg) * cG;
  const double nn = static_cast<double>(n);
  const cplx pp = std::pow(lp, nn);
  const cplx pm = std::pow(lm, nn);
  // (lp^n - lm^n) / (lp - lm), the divided difference
  cplx dd;
  const double scale = std::max({std::abs(lp), std::abs(lm), 1e-300});
  if (std::abs(kd) > 1e-4 * scale) {
    dd = (pp - pm) / kd;
  } else {
    // near-coincident eigenvalues: sum_k lp^k lm^(n-1-k), no cancellation
    std::vector<cplx> pw(n);
    cplx powm = 1.0;
    for (std::size_t k = 0; k < n; ++k) { pw[k] = powm; powm *= lm; }
    cplx powp = 1.0;
    dd = 0.0;
    for (std::size_t k = 0; k < n; ++k) { dd += powp * pw[n - 1 - k]; powp *= lp; }
  }
  const cplx f = 0.5 * (pp + pm) + w * dd;
  return f.real();
}

double dephasing_factor_block(const DephasingParams& p, std::size_t n) {
  p.validate();
  const double cg = std::cos(2.0 * p.small_g * p.tau);
  const double cG = std::cos(2.0 * p.big_g * p.tau);
  const double sG = std::sin(2.0 * p.big_g * p.tau);
  ComplexMatrix b(2, 2);
  b << cG, -sG, cg * sG, cg * cG;
  return mat_power(b, n)(0, 0).real();
}

double dephasing_factor_continuous(double gamma, double big_g, double t) {
  if (!(t >= 0.0)) throw PreconditionError("f(t): t must be >= 0");
  if (!(gamma >= 0.0) || !(big_g >= 0.0))
    throw PreconditionError("f(t): rates must be nonnegative");
  const double disc = gamma * gamma - 4.0 * big_g * big_g;
  if (disc > 0.0) {
    const double k = std::sqrt(disc);
    if (k * t > 1e-3) {
      // e^{-gt}cosh(kt) etc. without overflow
      const double up = std::exp((k - gamma) * t);
      const double dn = std::exp(-(k + gamma) * t);
      return 0.5 * (1.0 + gamma / k) * up + 0.5 * (1.0 - gamma / k) * dn;
    }
  }
  const cplx kt = std::sqrt(cplx(disc, 0.0)) * t;
  const cplx f = std::exp(-gamma * t) *
                 (std::cosh(kt) + gamma * t * detail::sinhc(kt));
  if (std::abs(f.imag()) > 1e-12 * std::max(1.0, std::abs(f.real())))
    throw NumericalError("f(t): unexpected imaginary residue");
  return f.real();
}

double dephasing_rate_continuous(double gamma, double big_g, double t) {
  if (!(t >= 0.0)) throw PreconditionError("gamma(t): t must be >= 0");
  // f' = -4 G^2 e^{-gamma t} sinh(k t)/k
  const double disc = gamma * gamma - 4.0 * big_g * big_g;
  if (disc > 0.0) {
    const double k = std::sqrt(disc);
    if (k * t > 1e-3) {
      const double x = std::exp(-2.0 * k * t);
      const double sh = (1.0 - x) / k;  // 2 sinh(kt) e^{-kt} / k
      return 2.0 * big_g * big_g * sh / ((1.0 + x) + gamma * sh);
    }
  }
  const cplx kt = std::sqrt(cplx(disc, 0.0)) * t;
  const cplx shc = t * detail::sinhc(kt);
  const cplx r = 2.0 * big_g * big_g * shc / (std::cosh(kt) + gamma * shc);
  return r.real();
}

CompositeModel make_rtn_model(const ComplexMatrix& h_s, double t_c, double tau) {
  if (!(t_c > 0.0)) throw PreconditionError("rtn: correlation time must be positive");
  if (!(tau > 0.0)) throw PreconditionError("rtn: tau must be positive");
  if (h_s.rows() != 2 || h_s.cols() != 2)
    throw DimensionError("rtn: H_S must be a qubit operator");
  const double gamma = 2.0 / t_c;
  AncillaSpec anc;
  anc.dim = 2;
  anc.eta = DensityMatrix::maximally_mixed(2);
  anc.coupling_op = exchange(2, 2);
  anc.coupling_rate = std::sqrt(gamma / tau);
  return CompositeModel(2, {2}, kron(h_s, pauli_z()), {anc}, tau);
}

RtnTrajectory rtn_propagate(const ComplexMatrix& h_s, double t_c,
                            const ComplexMatrix& rho_plus0,
                            const ComplexMatrix& rho_minus0,
                            const std::vector<double>& t_grid, double tol) {
  if (!(t_c > 0.0)) throw PreconditionError("rtn: correlation time must be positive");
  const auto d = h_s.rows();
  if (h_s.cols() != d || rho_plus0.rows() != d || rho_minus0.rows() != d ||
      rho_plus0.cols() != d || rho_minus0.cols() != d)
    throw DimensionError("rtn: branch states must match H_S");
  const cplx tr = rho_plus0.trace() + rho_minus0.trace();
  if (std::abs(tr - 1.0) > 1e-9)
    throw PreconditionError("rtn: branch traces must add to one");
  if (t_grid.empty() || t_grid.front() != 0.0)
    throw PreconditionError("rtn: time grid must start at 0");

  const auto dd = d * d;
  using CMap = Eigen::Map<const ComplexMatrix>;
  using Map = Eigen::Map<ComplexMatrix>;
  const double r = 1.0 / t_c;
  auto rhs = [&](const cplx* y, cplx* dy) {
    CMap p(y, d, d), m(y + dd, d, d);
    Map dp(dy, d, d), dm(dy + dd, d, d);
    dp = -I_ * (h_s * p - p * h_s) + r * (m - p);
    dm = I_ * (h_s * m - m * h_s) - r * (m - p);
  };
  std::vector<cplx> y0(2 * dd);
  std::copy(rho_plus0.data(), rho_plus0.data() + dd, y0.begin());
  std::copy(rho_minus0.data(), rho_minus0.data() + dd, y0.begin() + dd);
  RtnTrajectory out;
  detail::integrate_complex(rhs, std::move(y0), t_grid, {tol, tol * 1e-2, 1'000'000},
                            [&](std::size_t, const std::vector<cplx>& y) {
                              out.plus.emplace_back(CMap(y.data(), d, d));
                              out.minus.emplace_back(CMap(y.data() + dd, d, d));
                            });
  return out;
}

}  // namespace ccm

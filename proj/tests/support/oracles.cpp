#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace oracle {

ComplexMatrix taylor_exp(const ComplexMatrix& a) {
  const long n = a.rows();
  double nrm = 0.0;
  for (long i = 0; i < n; ++i) {
    double row = 0.0;
    for (long j = 0; j < n; ++j) row += std::abs(a(i, j));
    nrm = std::max(nrm, row);
  }
  int squarings = 0;
  while (nrm > 0.5) {
    nrm *= 0.5;
    ++squarings;
  }
  const ComplexMatrix b = a / std::pow(2.0, squarings);
  ComplexMatrix sum = ComplexMatrix::Identity(n, n);
  ComplexMatrix term = ComplexMatrix::Identity(n, n);
  for (int k = 1; k < 60; ++k) {
    term = (term * b) / static_cast<double>(k);
    sum += term;
    if (term.cwiseAbs().maxCoeff() < 1e-18) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

ComplexMatrix kron_naive(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (long i = 0; i < a.rows(); ++i)
    for (long k = 0; k < b.rows(); ++k)
      for (long j = 0; j < a.cols(); ++j)
        for (long l = 0; l < b.cols(); ++l)
          out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

ComplexMatrix kron_list(const std::vector<ComplexMatrix>& fs) {
  ComplexMatrix out = ComplexMatrix::Identity(1, 1);
  for (const auto& f : fs) out = kron_naive(out, f);
  return out;
}

ComplexMatrix trace_out(const ComplexMatrix& m, const std::vector<int>& dims, int drop) {
  long left = 1, right = 1;
  for (int k = 0; k < drop; ++k) left *= dims[k];
  for (std::size_t k = drop + 1; k < dims.size(); ++k) right *= dims[k];
  const long d = dims[drop];
  ComplexMatrix out = ComplexMatrix::Zero(left * right, left * right);
  for (long l1 = 0; l1 < left; ++l1)
    for (long r1 = 0; r1 < right; ++r1)
      for (long l2 = 0; l2 < left; ++l2)
        for (long r2 = 0; r2 < right; ++r2) {
          cplx acc = 0.0;
          for (long x = 0; x < d; ++x)
            acc += m((l1 * d + x) * right + r1, (l2 * d + x) * right + r2);
          out(l1 * right + r1, l2 * right + r2) = acc;
        }
  return out;
}

ComplexMatrix naive_power(const ComplexMatrix& m, int n) {
  ComplexMatrix out = ComplexMatrix::Identity(m.rows(), m.cols());
  for (int k = 0; k < n; ++k) out = out * m;
  return out;
}

std::vector<std::vector<cplx>> rk4(
    const std::function<void(const std::vector<cplx>&, std::vector<cplx>&)>& f,
    std::vector<cplx> y, double h, const std::vector<double>& sample_times) {
  const std::size_t n = y.size();
  std::vector<cplx> k1(n), k2(n), k3(n), k4(n), tmp(n);
  std::vector<std::vector<cplx>> out;
  long step = 0;
  for (double ts : sample_times) {
    const long target = std::lround(ts / h);
    if (std::abs(target * h - ts) > 1e-9 * std::max(1.0, ts))
      throw std::invalid_argument("rk4: sample time not on the step grid");
    for (; step < target; ++step) {
      f(y, k1);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k1[i];
      f(tmp, k2);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + 0.5 * h * k2[i];
      f(tmp, k3);
      for (std::size_t i = 0; i < n; ++i) tmp[i] = y[i] + h * k3[i];
      f(tmp, k4);
      for (std::size_t i = 0; i < n; ++i)
        y[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    out.push_back(y);
  }
  return out;
}

StateVector::StateVector(std::vector<int> dims, ComplexVector psi)
    : dims_(std::move(dims)), psi_(std::move(psi)) {
  strides_.assign(dims_.size(), 1);
  for (int k = static_cast<int>(dims_.size()) - 2; k >= 0; --k)
    strides_[k] = strides_[k + 1] * dims_[k + 1];
  long total = 1;
  for (int d : dims_) total *= d;
  if (psi_.size() != total) throw std::invalid_argument("StateVector: size mismatch");
}

void StateVector::apply(const ComplexMatrix& gate, const std::vector<int>& factors) {
  // local index offsets for the gate's basis
  std::vector<long> loc{0};
  for (int f : factors) {
    std::vector<long> next;
    for (long b : loc)
      for (int v = 0; v < dims_[f]; ++v) next.push_back(b + v * strides_[f]);
    loc.swap(next);
  }
  const long dl = static_cast<long>(loc.size());
  if (gate.rows() != dl) throw std::invalid_argument("StateVector: gate size mismatch");
  std::vector<char> is_target(dims_.size(), 0);
  for (int f : factors) is_target[f] = 1;
  // enumerate spectator bases
  std::vector<long> spect{0};
  for (std::size_t f = 0; f < dims_.size(); ++f) {
    if (is_target[f]) continue;
    std::vector<long> next;
    for (long b : spect)
      for (int v = 0; v < dims_[f]; ++v) next.push_back(b + v * strides_[f]);
    spect.swap(next);
  }
  ComplexVector in(dl), out(dl);
  for (long s : spect) {
    for (long i = 0; i < dl; ++i) in(i) = psi_(s + loc[i]);
    out = gate * in;
    for (long i = 0; i < dl; ++i) psi_(s + loc[i]) = out(i);
  }
}

ComplexMatrix StateVector::reduced_leading(int k) const {
  long lead = 1;
  for (int i = 0; i < k; ++i) lead *= dims_[i];
  const long rest = psi_.size() / lead;
  ComplexMatrix out = ComplexMatrix::Zero(lead, lead);
  for (long i = 0; i < lead; ++i)
    for (long j = 0; j < lead; ++j) {
      cplx acc = 0.0;
      for (long a = 0; a < rest; ++a) acc += psi_(i * rest + a) * std::conj(psi_(j * rest + a));
      out(i, j) = acc;
    }
  return out;
}

cplx StateVector::amplitude(const std::vector<int>& digits) const {
  long idx = 0;
  for (std::size_t k = 0; k < digits.size(); ++k) idx += digits[k] * strides_[k];
  return psi_(idx);
}

ComplexMatrix random_matrix(Rng& rng, int rows, int cols) {
  ComplexMatrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = cplx(rng.normal(), rng.normal());
  return m;
}

ComplexMatrix random_hermitian(Rng& rng, int n) {
  const ComplexMatrix a = random_matrix(rng, n, n);
  return (a + a.adjoint()) * 0.5;
}

ComplexMatrix random_density(Rng& rng, int n) {
  const ComplexMatrix a = random_matrix(rng, n, n);
  ComplexMatrix r = a * a.adjoint();
  r /= r.trace();
  return (r + r.adjoint()) * 0.5;
}

ComplexMatrix random_unitary(Rng& rng, int n) {
  const ComplexMatrix a = random_matrix(rng, n, n);
  const Eigen::MatrixXcd col = a;
  Eigen::HouseholderQR<Eigen::MatrixXcd> qr(col);
  ComplexMatrix q = qr.householderQ();
  return q;
}

}  // namespace oracle

// Micro benchmarks for the hot paths. Run: ccm_bench --benchmark_filter=...
#include <benchmark/benchmark.h>

#include <cmath>
#include <complex>
#include <vector>

#include "ccm/collision.hpp"
#include "ccm/lindblad.hpp"
#include "ccm/lossy_cavity.hpp"
#include "ccm/multi_lorentzian.hpp"
#include "ccm/operators.hpp"
#include "ccm/spectral.hpp"
#include "ccm/tensor.hpp"

using namespace ccm;

namespace {

// one collision of the lossy cavity, Fock levels 0..range(0)-1
void BM_CollideLossy(benchmark::State& st) {
  const int fock = static_cast<int>(st.range(0));
  const auto model = make_lossy_cavity_model({0.2, 1.0, 3.0, 0.05}, fock);
  DensityMatrix rho = lossy_cavity_state(cplx(0.6, 0.0), cplx(0.0, 0.8), fock);
  for (auto _ : st) {
    rho = collide(model, rho);
    benchmark::DoNotOptimize(rho);
  }
}
BENCHMARK(BM_CollideLossy)->Arg(3)->Arg(6)->Arg(12);

void BM_CollideTripartite(benchmark::State& st) {
  const auto model = make_tripartite_model({{0.2, -0.3, 1.0, 0.5, 0.4}, 2.0, 1.0, 0.05}, 2);
  DensityMatrix rho = tripartite_state(1.0, 0.0, 0.0, 2);
  for (auto _ : st) {
    rho = collide(model, rho);
    benchmark::DoNotOptimize(rho);
  }
}
BENCHMARK(BM_CollideTripartite);

// general path vs the Hermitian-generator path
void BM_MatexpGeneral(benchmark::State& st) {
  const auto n = st.range(0);
  ComplexMatrix a(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) a(i, j) = cplx(std::sin(i + 2.0 * j), 0.3 * std::cos(i * j));
  a *= 0.1;
  for (auto _ : st) benchmark::DoNotOptimize(matexp(a));
}
BENCHMARK(BM_MatexpGeneral)->RangeMultiplier(2)->Range(4, 64);

void BM_MatexpAntiHermitian(benchmark::State& st) {
  const auto n = st.range(0);
  ComplexMatrix h(n, n);
  for (Eigen::Index i = 0; i < n; ++i)
    for (Eigen::Index j = 0; j < n; ++j) h(i, j) = cplx(std::sin(i + 2.0 * j), 0.3 * std::cos(i * j));
  const ComplexMatrix a = cplx(0.0, -0.1) * (h + h.adjoint());
  for (auto _ : st) benchmark::DoNotOptimize(matexp(a));
}
BENCHMARK(BM_MatexpAntiHermitian)->RangeMultiplier(2)->Range(4, 64);

void BM_LiouvillianApply(benchmark::State& st) {
  const int fock = static_cast<int>(st.range(0));
  const Liouvillian l = liouvillian(make_lossy_cavity_model({0.2, 1.0, 3.0, 0.05}, fock));
  const ComplexMatrix rho = lossy_cavity_state(cplx(0.6, 0.0), cplx(0.0, 0.8), fock).matrix();
  for (auto _ : st) benchmark::DoNotOptimize(l(rho));
}
BENCHMARK(BM_LiouvillianApply)->Arg(3)->Arg(6)->Arg(12);

void volterra(benchmark::State& st, VolterraMethod m) {
  const auto n = static_cast<std::size_t>(st.range(0));
  std::vector<double> ts(n + 1);
  for (std::size_t k = 0; k <= n; ++k) ts[k] = 10.0 * static_cast<double>(k) / static_cast<double>(n);
  const auto sd = lorentzian_sd(1.0, 0.5, 0.0, 0.0);
  for (auto _ : st) benchmark::DoNotOptimize(solve_volterra(sd, 0.0, ts, m));
  st.SetComplexityN(static_cast<benchmark::IterationCount>(n));
}

// pseudo-mode route is linear in the grid length, the trapezoid rule quadratic
void BM_VolterraPseudoMode(benchmark::State& st) { volterra(st, VolterraMethod::pseudo_mode); }
BENCHMARK(BM_VolterraPseudoMode)->RangeMultiplier(2)->Range(512, 8192)->Complexity();

void BM_VolterraTrapezoid(benchmark::State& st) { volterra(st, VolterraMethod::product_trapezoid); }
BENCHMARK(BM_VolterraTrapezoid)->RangeMultiplier(2)->Range(512, 4096)->Complexity();


}  // namespace
BENCHMARK_MAIN();

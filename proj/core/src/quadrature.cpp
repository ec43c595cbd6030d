#include "quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <limits>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "ccm/errors.hpp"

namespace ccm::detail {

double integrate(const RealFn& f, double a, double b, double rel_tol,
                 double abs_tol) {
  using boost::math::quadrature::gauss_kronrod;
  if (a == b) return 0.0;
  double err = 0.0, l1 = 0.0;
  const double v = gauss_kronrod<double, 61>::integrate(f, a, b, 18, rel_tol, &err, &l1);
  if (!std::isfinite(v)) throw NumericalError("quadrature produced a non-finite value");
  if (err > std::max(1e-6 * l1, abs_tol))
    throw NumericalError("quadrature did not converge (error estimate " +
                         std::to_string(err) + ")");
  return v;
}

double wynn_limit(const std::vector<double>& s, double* err) {
  const std::size_t n = s.size();
  if (n == 0) {
    if (err) *err = 0.0;
    return 0.0;
  }
  if (n < 3) {
    if (err) *err = n == 2 ? std::abs(s[1] - s[0]) : INFINITY;
    return s.back();
  }
  // prev = column k-1, cur = column k; entries indexed by the starting term
  std::vector<double> prev(n + 1, 0.0), cur(s.begin(), s.end());
  double best = s.back(), last = s[n - 2];
  bool have_last = true;
  for (std::size_t k = 1; k < n; ++k) {
    std::vector<double> next(n - k);
    bool broke = false;
    for (std::size_t i = 0; i + k < n; ++i) {
      const double d = cur[i + 1] - cur[i];
      if (d == 0.0 || !std::isfinite(d)) {
        broke = true;
        break;
      }
      next[i] = prev[i + 1] + 1.0 / d;
    }
    if (broke) break;
    prev.swap(cur);
    cur.swap(next);
    if (k % 2 == 0 && !cur.empty()) {
      const double est = cur.back();
      if (!std::isfinite(est)) break;
      if (cur.size() >= 2) {
        last = cur[cur.size() - 2];
        have_last = true;
      }
      best = est;
    }
  }
  if (err) *err = have_last ? std::abs(best - last) : INFINITY;
  return best;
}

double oscillatory_tail(const RealFn& f, double a, double panel, double rel_tol,
                        double abs_floor) {
  std::vector<double> sums;
  double acc = 0.0;
  double prev_est = 0.0;
  int settled = 0;
  constexpr int kMinPanels = 8;
  constexpr int kMaxPanels = 400;
  for (int k = 0; k < kMaxPanels; ++k) {
    const double lo = a + k * panel;
    acc += integrate(f, lo, lo + panel, rel_tol * 1e-2, abs_floor * 1e-3);
    sums.push_back(acc);
    if (k + 1 < kMinPanels) continue;
    // Wynn on the most recent stretch keeps the table well conditioned
    const std::size_t window = std::min<std::size_t>(sums.size(), 24);
    std::vector<double> recent(sums.end() - window, sums.end());
    double e = 0.0;
    const double est = wynn_limit(recent, &e);
    const double tol = std::max(rel_tol * std::abs(est), abs_floor);
    if (std::abs(est - prev_est) <= tol && e <= 10 * tol) {
      if (++settled >= 2) return est;
    } else {
      settled = 0;
    }
    prev_est = est;
  }
  throw NumericalError("oscillatory tail did not converge");
}

}  // namespace ccm::detail

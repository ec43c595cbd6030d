#pragma once

// Quadrature plumbing shared by the spectral code. Not installed.

#include <functional>
#include <vector>

namespace ccm::detail {

using RealFn = std::function<double(double)>;

// Adaptive Gauss-Kronrod on [a, b]; either end may be infinite.
double integrate(const RealFn& f, double a, double b, double rel_tol,
                 double abs_tol = 0.0);

// Wynn epsilon extrapolation of a sequence of partial sums. `err` receives
// the change between the last two even-column estimates.
double wynn_limit(const std::vector<double>& partial_sums, double* err = nullptr);

// int_a^inf f, summed panel by panel (panel length `panel`, chosen by the
// caller to match the oscillation) and accelerated with Wynn epsilon.
double oscillatory_tail(const RealFn& f, double a, double panel, double rel_tol,
                        double abs_floor);

}  // namespace ccm::detail

#pragma once

// Thin wrapper over Boost.Odeint for linear complex systems. Not installed.

#include <functional>
#include <string>
#include <vector>

#include <boost/numeric/odeint.hpp>

#include "ccm/errors.hpp"
#include "ccm/tensor.hpp"

namespace ccm::detail {

using ComplexRhs = std::function<void(const cplx* y, cplx* dy)>;

struct OdeTolerances {
  double rel = 1e-12;
  double abs = 1e-14;
  std::size_t max_steps = 5'000'000;
};

// Integrates y' = f(y) through every time in `t_grid` (ascending, first entry
// is the initial time) and hands each sample to `obs` as it is reached.
inline void integrate_complex(
    const ComplexRhs& f, std::vector<cplx> y0, const std::vector<double>& t_grid,
    const OdeTolerances& tol,
    const std::function<void(std::size_t, const std::vector<cplx>&)>& obs) {
  namespace odeint = boost::numeric::odeint;
  using state = std::vector<double>;
  if (t_grid.empty()) return;
  for (std::size_t k = 1; k < t_grid.size(); ++k)
    if (!(t_grid[k] >= t_grid[k - 1]))
      throw PreconditionError("time grid must be ascending");

  const std::size_t n = y0.size();
  state x(2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    x[2 * i] = y0[i].real();
    x[2 * i + 1] = y0[i].imag();
  }
  auto sys = [&](const state& xs, state& dxs, double) {
    f(reinterpret_cast<const cplx*>(xs.data()), reinterpret_cast<cplx*>(dxs.data()));
  };
  std::vector<cplx> sample(n);
  std::size_t idx = 0;
  auto observer = [&](const state& xs, double) {
    for (std::size_t i = 0; i < n; ++i) sample[i] = cplx(xs[2 * i], xs[2 * i + 1]);
    obs(idx++, sample);
  };
  const double span = t_grid.back() - t_grid.front();
  double dt = span > 0 ? span * 1e-3 : 1e-3;
  if (t_grid.size() > 1) {
    const double first = t_grid[1] - t_grid[0];
    if (first > 0) dt = std::min(dt, first);
  }
  try {
    auto stepper = odeint::make_controlled(
        tol.abs, tol.rel, odeint::runge_kutta_fehlberg78<state>());
    odeint::integrate_times(stepper, sys, x, t_grid.begin(), t_grid.end(), dt,
                            observer, odeint::max_step_checker(tol.max_steps));
  } catch (const odeint::step_adjustment_error& e) {
    throw NumericalError(std::string("ODE step-size underflow: ") + e.what());
  } catch (const odeint::no_progress_error& e) {
    throw NumericalError(std::string("ODE integration made no progress: ") + e.what());
  }
}

}  // namespace ccm::detail

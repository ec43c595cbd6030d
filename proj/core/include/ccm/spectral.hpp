#pragma once

// Spectral densities, the spontaneous-emission memory kernel, and the
// dephasing-rate sine transforms.

#include <functional>
#include <variant>
#include <vector>

#include "ccm/lossy_cavity.hpp"
#include "ccm/tensor.hpp"

namespace ccm {

// weight * hw^2 / ((w - center)^2 + hw^2); `weight` is the peak value and may
// be negative.
struct LorentzianTerm {
  double weight = 0.0;
  double center = 0.0;
  double half_width = 1.0;
};

struct LorentzianSum {
  std::vector<LorentzianTerm> terms;
};

// sum_j r^j/(gamma + k)^2 * 4 G^2 k (j+1)^2 / ((j+1)^2 + w^2/(4k^2)),
// k = sqrt(gamma^2 - 4G^2), r = (gamma - k)/(gamma + k). Needs gamma > 2G.
struct DephasingSeries {
  double gamma = 1.0;
  double big_g = 0.0;
  double truncation_tol = 1e-15;
};

using SpectralDensity = std::variant<LorentzianSum, DephasingSeries>;

// Throws PreconditionError on bad widths, gamma <= 2G, or a Lorentzian sum
// that goes negative on the validation grid.
void validate(const SpectralDensity& j);

double eval_sd(const SpectralDensity& j, double omega);

// Terms of the dephasing series as Lorentzians centred at zero, truncated at
// the requested tolerance.
LorentzianSum as_lorentzians(const DephasingSeries& s);

// K(dt) = int dw J(w) e^{i(w0 - w) dt}, frequency integral over the whole
// real line. Closed form: each Lorentzian gives weight pi hw e^{i(w0-c)dt - hw dt}.
cplx memory_kernel(const SpectralDensity& j, double dt, double omega0);

// Same integral by oscillatory quadrature (cosine/sine panels with Wynn
// acceleration; a mapped Gauss-Kronrod rule at dt = 0). Used as the oracle
// for the closed form, and the only path for an arbitrary J.
cplx memory_kernel_quadrature(const std::function<double(double)>& j, double dt,
                              double omega0, double rel_tol = 1e-10);
cplx memory_kernel_quadrature(const SpectralDensity& j, double dt, double omega0,
                              double rel_tol = 1e-10);

enum class VolterraMethod {
  automatic,          // pseudo_mode when possible
  pseudo_mode,        // exact: one damped amplitude per Lorentzian term
  product_trapezoid,  // second-order product integration, any kernel
};

// eps' = -int_0^t K(t - s) eps(s) ds, eps(0) = 1, on a uniform grid from 0.
std::vector<cplx> solve_volterra(const SpectralDensity& j, double omega0,
                                 const std::vector<double>& t_grid,
                                 VolterraMethod method = VolterraMethod::automatic);

// Product trapezoid on an explicitly supplied kernel K(m h), m = 0..N.
std::vector<cplx> solve_volterra_kernel(const std::vector<cplx>& kernel, double h);

// (Gamma0 / 2 pi) kappa^2 / ((w - w0 - delta)^2 + kappa^2)
SpectralDensity lorentzian_sd(double gamma0, double kappa, double delta,
                              double omega0);

enum class LorentzianMapping {
  published,       // G = sqrt(Gamma0 kappa / 4)
  kernel_matched,  // G = sqrt(Gamma0 kappa / 2): G^2 equals the kernel weight
};

// g = sqrt(2 kappa / tau), so g^2 tau = 2 kappa.
LossyCavityParams map_lorentzian_to_cm(
    double gamma0, double kappa, double delta, double tau,
    LorentzianMapping mapping = LorentzianMapping::published);

// gamma(t) = int_0^inf dw sin(w t) J(w) / w
double dephasing_rate_from_sd(const SpectralDensity& j, double t,
                              double rel_tol = 1e-8);
double dephasing_rate_from_sd(const std::function<double(double)>& j, double t,
                              double rel_tol = 1e-8);

// J(w) = w int_0^inf dt sin(w t) gamma(t). The integral is done on [0, t_max];
// beyond that gamma is fitted as constant + decaying exponential and the
// remainder added analytically (the constant part in the Abel sense).
// Throws NumericalError if that fit does not describe the tail.
double sd_from_dephasing_rate(const std::function<double(double)>& gamma_fn,
                              double omega, double t_max, double rel_tol = 1e-10);

}  // namespace ccm

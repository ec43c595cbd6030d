#include "ccm/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "quadrature.hpp"

namespace ccm {

namespace {

constexpr double kPi = std::numbers::pi;

double kappa_c(const DephasingSeries& s) {
  return std::sqrt(s.gamma * s.gamma - 4.0 * s.big_g * s.big_g);
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double lorentzian(const LorentzianTerm& t, double w) {
  const double x = w - t.center;
  return t.weight * t.half_width * t.half_width / (x * x + t.half_width * t.half_width);
}

}  // namespace

LorentzianSum as_lorentzians(const DephasingSeries& s) {
  LorentzianSum out;
  if (s.big_g == 0.0) return out;
  const double k = kappa_c(s);
  const double r = (s.gamma - k) / (s.gamma + k);
  const double base = 4.0 * s.big_g * s.big_g * k / ((s.gamma + k) * (s.gamma + k));
  double rj = 1.0;
  for (int j = 0; j < 100000; ++j) {
    // term j at w = 0 equals base r^j; width 2k(j+1)
    out.terms.push_back({base * rj, 0.0, 2.0 * k * (j + 1)});
    rj *= r;
    if (rj < s.truncation_tol) break;
  }
  return out;
}

void validate(const SpectralDensity& j) {
  std::visit(
      overloaded{
          [](const LorentzianSum& s) {
            double lo = INFINITY, hi = -INFINITY, wmax = 0.0;
            for (const auto& t : s.terms) {
              if (!(t.half_width > 0.0) || !std::isfinite(t.half_width))
                throw PreconditionError("Lorentzian half-width must be positive");
              if (!std::isfinite(t.weight) || !std::isfinite(t.center))
                throw PreconditionError("Lorentzian parameters must be finite");
              lo = std::min(lo, t.center - 20.0 * t.half_width);
              hi = std::max(hi, t.center + 20.0 * t.half_width);
              wmax = std::max(wmax, std::abs(t.weight));
            }
            if (s.terms.empty()) return;
            std::vector<double> grid;
            const int n = 4000;
            for (int i = 0; i <= n; ++i) grid.push_back(lo + (hi - lo) * i / n);
            for (const auto& t : s.terms) grid.push_back(t.center);
            for (double w : grid) {
              double v = 0.0;
              for (const auto& t : s.terms) v += lorentzian(t, w);
              if (v < -1e-12 * std::max(1.0, wmax))
                throw PreconditionError("spectral density is negative at w = " +
                                        std::to_string(w));
            }
          },
          [](const DephasingSeries& s) {
            if (!(s.big_g >= 0.0) || !(s.gamma > 2.0 * s.big_g))
              throw PreconditionError(
                  "dephasing series needs gamma > 2G (and G >= 0)");
            if (!(s.truncation_tol > 0.0 && s.truncation_tol < 1.0))
              throw PreconditionError("truncation tolerance must lie in (0, 1)");
          }},
      j);
}

double eval_sd(const SpectralDensity& j, double omega) {
  return std::visit(
      overloaded{[&](const LorentzianSum& s) {
                   double v = 0.0;
                   for (const auto& t : s.terms) v += lorentzian(t, omega);
                   return v;
                 },
                 [&](const DephasingSeries& s) {
                   if (!(s.gamma > 2.0 * s.big_g))
                     throw PreconditionError("dephasing series needs gamma > 2G");
                   double v = 0.0;
                   for (const auto& t : as_lorentzians(s).terms) v += lorentzian(t, omega);
                   return v;
                 }},
      j);
}

cplx memory_kernel(const SpectralDensity& j, double dt, double omega0) {
  if (!(dt >= 0.0)) throw PreconditionError("memory kernel: dt must be >= 0");
  auto closed = [&](const LorentzianSum& s) {
    cplx k = 0.0;
    for (const auto& t : s.terms)
      k += t.weight * kPi * t.half_width *
           std::exp(cplx(-t.half_width * dt, (omega0 - t.center) * dt));
    return k;
  };
  return std::visit(overloaded{[&](const LorentzianSum& s) { return closed(s); },
                               [&](const DephasingSeries& s) {
                                 validate(s);
                                 return memory_kernel_quadrature(SpectralDensity(s), dt,
                                                                 omega0);
                               }},
                    j);
}

namespace {

// Frequency range (relative to w0) outside which J is in its 1/w^2 tail.
double feature_extent(const SpectralDensity& j, double omega0) {
  return std::visit(overloaded{[&](const LorentzianSum& s) {
                                 double x = 1.0;
                                 for (const auto& t : s.terms)
                                   x = std::max(x, std::abs(t.center - omega0) +
                                                       40.0 * t.half_width);
                                 return x;
                               },
                               [&](const DephasingSeries& s) {
                                 return std::abs(omega0) + 80.0 * kappa_c(s);
                               }},
                    j);
}

cplx kernel_quadrature_impl(const std::function<double(double)>& j, double dt,
                            double omega0, double rel_tol, double extent) {
  using detail::integrate;
  if (dt == 0.0) {
    const double v = integrate(j, -INFINITY, INFINITY, rel_tol);
    return {v, 0.0};
  }
  const double half = kPi / dt;
  // central window, a whole number of half periods wide on each side
  const double x_edge = half * std::ceil(extent / half);
  auto fc = [&](double x) { return j(omega0 + x) * std::cos(x * dt); };
  auto fs = [&](double x) { return j(omega0 + x) * std::sin(x * dt); };
  double re = 0.0, im = 0.0, scale = 0.0;
  const int panels = static_cast<int>(std::lround(x_edge / half));
  for (int p = -panels; p < panels; ++p) {
    const double lo = p * half, hi = lo + half;
    re += integrate(fc, lo, hi, rel_tol * 1e-2);
    im -= integrate(fs, lo, hi, rel_tol * 1e-2);
    scale += integrate([&](double x) { return std::abs(j(omega0 + x)); }, lo, hi, 1e-6);
  }
  const double floor = rel_tol * std::max(scale, 1e-300) * 1e-2;
  // tails, x > x_edge and x < -x_edge (folded)
  auto fc_l = [&](double x) { return j(omega0 - x) * std::cos(x * dt); };
  auto fs_l = [&](double x) { return j(omega0 - x) * std::sin(x * dt); };
  // sine vanishes at x_edge; cosine panels start at the next cosine zero
  const double c0 = x_edge + 0.5 * half;
  re += integrate(fc, x_edge, c0, rel_tol * 1e-2) +
        detail::oscillatory_tail(fc, c0, half, rel_tol * 1e-2, floor);
  re += integrate(fc_l, x_edge, c0, rel_tol * 1e-2) +
        detail::oscillatory_tail(fc_l, c0, half, rel_tol * 1e-2, floor);
  im -= detail::oscillatory_tail(fs, x_edge, half, rel_tol * 1e-2, floor);
  im += detail::oscillatory_tail(fs_l, x_edge, half, rel_tol * 1e-2, floor);
  return {re, im};
}

}  // namespace

cplx memory_kernel_quadrature(const std::function<double(double)>& j, double dt,
                              double omega0, double rel_tol) {
  if (!(dt >= 0.0)) throw PreconditionError("memory kernel: dt must be >= 0");
  return kernel_quadrature_impl(j, dt, omega0, rel_tol, 100.0);
}

cplx memory_kernel_quadrature(const SpectralDensity& j, double dt, double omega0,
                              double rel_tol) {
  if (!(dt >= 0.0)) throw PreconditionError("memory kernel: dt must be >= 0");
  validate(j);
  return kernel_quadrature_impl([&](double w) { return eval_sd(j, w); }, dt, omega0,
                                rel_tol, feature_extent(j, omega0));
}

// ---------------------------------------------------------------------------

namespace {

double uniform_step(const std::vector<double>& t) {
  if (t.empty() || t.front() != 0.0)
    throw PreconditionError("Volterra solver: time grid must start at 0");
  if (t.size() == 1) return 0.0;
  const double h = t[1] - t[0];
  if (!(h > 0.0)) throw PreconditionError("Volterra solver: step must be positive");
  for (std::size_t k = 1; k < t.size(); ++k)
    if (std::abs(t[k] - k * h) > 1e-9 * std::max(1.0, t[k]))
      throw PreconditionError("Volterra solver: time grid is not uniform (t[" +
                              std::to_string(k) + "] = " + std::to_string(t[k]) + ")");
  return h;
}

std::vector<cplx> pseudo_modes(const LorentzianSum& s, double omega0,
                               std::size_t n_points, double h) {
  const int k = static_cast<int>(s.terms.size());
  ComplexMatrix a = ComplexMatrix::Zero(k + 1, k + 1);
  for (int i = 0; i < k; ++i) {
    const auto& t = s.terms[i];
    a(0, i + 1) = -t.weight * kPi * t.half_width;
    a(i + 1, 0) = 1.0;
    a(i + 1, i + 1) = cplx(-t.half_width, omega0 - t.center);
  }
  const ComplexMatrix step = matexp(a * h);
  ComplexVector x = ComplexVector::Zero(k + 1);
  x(0) = 1.0;
  std::vector<cplx> out;
  out.reserve(n_points);
  out.push_back(1.0);
  for (std::size_t i = 1; i < n_points; ++i) {
    x = step * x;
    out.push_back(x(0));
  }
  return out;
}

}  // namespace

std::vector<cplx> solve_volterra_kernel(const std::vector<cplx>& kernel, double h) {
  const std::size_t n = kernel.size();
  std::vector<cplx> eps;
  if (n == 0) return eps;
  eps.reserve(n);
  eps.push_back(1.0);
  // f_prev = int_0^{t_n} K(t_n - s) eps(s) ds by the trapezoid rule
  cplx f_prev = 0.0;
  const cplx denom = 1.0 + 0.25 * h * h * kernel[0];
  for (std::size_t m = 0; m + 1 < n; ++m) {
    const std::size_t np1 = m + 1;
    // everything in F_{n+1} except the implicit 1/2 h K_0 eps_{n+1}
    cplx s = 0.5 * kernel[np1] * eps[0];
    for (std::size_t q = 1; q < np1; ++q) s += kernel[np1 - q] * eps[q];
    s *= h;
    const cplx e = (eps[m] - 0.5 * h * (f_prev + s)) / denom;
    eps.push_back(e);
    f_prev = s + 0.5 * h * kernel[0] * e;
  }
  return eps;
}

std::vector<cplx> solve_volterra(const SpectralDensity& j, double omega0,
                                 const std::vector<double>& t_grid,
                                 VolterraMethod method) {
  validate(j);
  const double h = uniform_step(t_grid);
  if (t_grid.size() == 1) return {1.0};
  const bool lorentz = std::holds_alternative<LorentzianSum>(j);
  if (method == VolterraMethod::automatic)
    method = lorentz ? VolterraMethod::pseudo_mode : VolterraMethod::product_trapezoid;
  if (method == VolterraMethod::pseudo_mode) {
    if (lorentz) return pseudo_modes(std::get<LorentzianSum>(j), omega0, t_grid.size(), h);
    return pseudo_modes(as_lorentzians(std::get<DephasingSeries>(j)), omega0,
                        t_grid.size(), h);
  }
  std::vector<cplx> kernel(t_grid.size());
  for (std::size_t m = 0; m < kernel.size(); ++m)
    kernel[m] = memory_kernel(j, m * h, omega0);
  return solve_volterra_kernel(kernel, h);
}

SpectralDensity lorentzian_sd(double gamma0, double kappa, double delta,
                              double omega0) {
  if (!(gamma0 >= 0.0) || !(kappa > 0.0))
    throw PreconditionError("Lorentzian needs Gamma0 >= 0 and kappa > 0");
  return LorentzianSum{{{gamma0 / (2.0 * kPi), omega0 + delta, kappa}}};
}

LossyCavityParams map_lorentzian_to_cm(double gamma0, double kappa, double delta,
                                       double tau, LorentzianMapping mapping) {
  if (!(gamma0 > 0.0) || !(kappa > 0.0) || !(tau > 0.0))
    throw PreconditionError("Lorentzian mapping needs Gamma0, kappa, tau > 0");
  LossyCavityParams p;
  p.delta = delta;
  p.tau = tau;
  p.small_g = std::sqrt(2.0 * kappa / tau);
  p.big_g = mapping == LorentzianMapping::published ? std::sqrt(gamma0 * kappa / 4.0)
                                                    : std::sqrt(gamma0 * kappa / 2.0);
  return p;
}

// ---------------------------------------------------------------------------

namespace {

double sine_transform_over_w(const std::function<double(double)>& j, double t,
                             double rel_tol, double extent) {
  if (t == 0.0) return 0.0;
  const double half = kPi / std::abs(t);
  // sin(w t)/w = t sinc(w t)
  auto f = [&](double w) {
    const double x = w * t;
    const double sc = std::abs(x) < 1e-8 ? t : std::sin(x) / w;
    return j(w) * sc;
  };
  const int panels = std::max(1, static_cast<int>(std::ceil(extent / half)));
  double head = 0.0, scale = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double piece = detail::integrate(f, p * half, (p + 1) * half, rel_tol * 1e-2);
    head += piece;
    scale += std::abs(piece);
  }
  const double floor = rel_tol * std::max(scale, 1e-300) * 1e-2;
  return head + detail::oscillatory_tail(f, panels * half, half, rel_tol * 1e-2, floor);
}

}  // namespace

double dephasing_rate_from_sd(const SpectralDensity& j, double t, double rel_tol) {
  if (!(t >= 0.0)) throw PreconditionError("dephasing rate: t must be >= 0");
  validate(j);
  return sine_transform_over_w([&](double w) { return eval_sd(j, w); }, t, rel_tol,
                               feature_extent(j, 0.0));
}

double dephasing_rate_from_sd(const std::function<double(double)>& j, double t,
                              double rel_tol) {
  if (!(t >= 0.0)) throw PreconditionError("dephasing rate: t must be >= 0");
  double peak = 0.0;
  for (double w = 1e-2; w <= 1e4; w *= 10.0) peak = std::max(peak, std::abs(j(w)));
  const double far = std::max(std::abs(j(1e8)), std::abs(j(1e9)));
  if (far > 1e-6 * peak && far > 0.0)
    throw PreconditionError(
        "dephasing rate: J(w) does not decay at large w; the sine transform diverges");
  return sine_transform_over_w(j, t, rel_tol, 100.0);
}

double sd_from_dephasing_rate(const std::function<double(double)>& gamma_fn,
                              double omega, double t_max, double rel_tol) {
  if (!(t_max > 0.0)) throw PreconditionError("sine transform: t_max must be positive");
  if (omega == 0.0) return 0.0;
  const double w = std::abs(omega);

  // finite part on [0, t_max], split at the zeros of sin(w t)
  const double half = kPi / w;
  auto f = [&](double t) { return std::sin(w * t) * gamma_fn(t); };
  double head = 0.0;
  double lo = 0.0;
  // keep panels no longer than t_max / 16 so slow features are resolved
  const double step = std::min(half, t_max / 16.0);
  while (lo < t_max) {
    // fold a short remainder into this panel rather than integrate a sliver
    const double hi = t_max - lo < 1.25 * step ? t_max : lo + step;
    head += detail::integrate(f, lo, hi, rel_tol);
    lo = hi;
  }

  // tail model: gamma(t) ~ C + A e^{-b (t - t_max)}
  const double hs = t_max / 40.0;
  const double y0 = gamma_fn(t_max - 2 * hs), y1 = gamma_fn(t_max - hs),
               y2 = gamma_fn(t_max), ym = gamma_fn(t_max - 3 * hs);
  const double scale = std::max({std::abs(y0), std::abs(y1), std::abs(y2), 1e-300});
  const double d1 = y1 - y0, d2 = y2 - y1;
  double c = y2, a = 0.0, b = 0.0;
  const double flat = 1e-12 * scale;
  if (std::abs(d1) > flat || std::abs(d2) > flat) {
    const double q = d2 / d1;
    if (!(q > 0.0 && q < 1.0))
      throw NumericalError(
          "sine transform: gamma(t) is not settling near t_max; increase t_max");
    b = -std::log(q) / hs;
    c = y2 + d2 * q / (1.0 - q);
    a = y2 - c;
    const double pred = c + a * std::exp(3.0 * b * hs);
    if (std::abs(pred - ym) > 1e-6 * scale)
      throw NumericalError(
          "sine transform: gamma(t) tail is not constant + exponential at t_max; "
          "increase t_max");
  } else if (std::abs(ym - y2) > 1e-9 * scale) {
    throw NumericalError("sine transform: gamma(t) tail is irregular at t_max");
  }
  const double s = std::sin(w * t_max), co = std::cos(w * t_max);
  const double tail = c * co / w + a * (b * s + w * co) / (b * b + w * w);
  // w sin(w t) is even in w
  return w * (head + tail);
}

}  // namespace ccm

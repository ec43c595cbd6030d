#include <algorithm>
#include <cmath>

#include "ccm/collision.hpp"
#include "ccm/dephasing.hpp"
#include "ccm/lindblad.hpp"
#include "ccm/operators.hpp"
#include "internal.hpp"

namespace ccm::runner {

namespace {

double single_tau_max(Scenario s, double tau, double horizon) {
  ScenarioConfig cfg = default_config(s);
  cfg.t_max = horizon;
  cfg.steps.reset();
  detail::StateGate gate;
  const auto t = s == Scenario::lossy_cavity ? detail::lossy_table(cfg, tau, gate)
                                             : detail::dephasing_table(cfg, tau, gate);
  return detail::max_deviation(t);
}

double worst_order_gap(Scenario s, const std::vector<double>& taus, double horizon) {
  ScenarioConfig cfg = default_config(s);
  cfg.tau_list = taus;
  cfg.t_max = horizon;
  cfg.steps.reset();
  const auto r = convergence_sweep(cfg);
  double worst = 0.0;
  for (std::size_t i = 1; i < r.tables.front().rows.size(); ++i) {
    const auto& rows = r.tables.front().rows;
    worst = std::max(worst, std::abs(rows[i - 1][1] / rows[i][1] - 2.0));
  }
  return worst;
}

double dephasing_routes() {
  // fixed draws with g tau, G tau < 0.5
  const DephasingParams draws[] = {{1.0, 2.0, 0.1}, {3.0, 0.5, 0.12}, {0.4, 4.0, 0.09},
                                   {2.2, 2.2, 0.2}, {0.9, 0.3, 0.45}};
  ComplexMatrix plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  double worst = 0.0;
  for (const auto& p : draws) {
    const RealMatrix f = pauli_transfer_matrix(p).entries;
    const auto rho0 = dephasing_initial_state(DensityMatrix(plus));
    RealVector r = bloch_vector(rho0.matrix());
    const double r0 = r(4);
    const auto traj = evolve(make_pure_dephasing_model(p), rho0, 100);
    for (std::size_t n = 0; n <= 100; ++n) {
      const double closed = dephasing_factor_discrete(p, n);
      const ComplexMatrix rs = partial_trace(traj[n].matrix(), {2, 2}, {0});
      worst = std::max({worst, std::abs(closed - dephasing_factor_block(p, n)),
                        std::abs(closed - r(4) / r0), std::abs(closed - 2.0 * rs(0, 1).real())});
      r = f * r;
    }
  }
  return worst;
}

double rtn_vs_me() {
  const double v = 1.0, t_c = 2.0;
  std::vector<double> ts;
  for (int k = 0; k <= 50; ++k) ts.push_back(0.1 * k);
  ComplexMatrix plus(2, 2);
  plus << 0.5, 0.5, 0.5, 0.5;
  const auto tr = rtn_propagate(pauli_z() * v, t_c, 0.5 * plus, 0.5 * plus, ts);
  const auto me = integrate_me(liouvillian(make_rtn_model(pauli_z() * v, t_c, 1e-3)),
                               DensityMatrix(kron(plus, identity(2) * 0.5)), ts);
  double worst = 0.0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const ComplexMatrix rs = partial_trace(me[k].matrix(), {2, 2}, {0});
    worst = std::max(worst, std::abs(rs(0, 1) - tr.total(k)(0, 1)));
  }
  return worst;
}

double degenerate_basis() {
  const auto eta = DensityMatrix::maximally_mixed(2);
  const ComplexMatrix w = exchange(2, 2);
  ComplexMatrix h(2, 2);
  h << 0.3, cplx(0.1, -0.2), cplx(0.1, 0.2), -0.4;
  ComplexMatrix rho(2, 2);
  rho << 0.6, cplx(0.2, 0.1), cplx(0.2, -0.1), 0.4;
  const Liouvillian base(h, {jump_operators(w, eta, 1.0, 0.5)});
  const ComplexMatrix ref = base(rho);
  double worst = 0.0;
  for (double a : {0.3, 1.1, 2.0}) {
    // exp(-i a (cos b X + sin b Y)) for a few axes
    for (double b : {0.0, 0.7, 1.9}) {
      const ComplexMatrix v = matexp(-I_ * a * (std::cos(b) * pauli_x() + std::sin(b) * pauli_y()));
      const Liouvillian rot(h, {jump_operators(w, eta, v, 1.0, 0.5)});
      worst = std::max(worst, max_abs(rot(rho) - ref));
    }
  }
  return worst;
}

double bridge_check(BridgePreset p, const std::string& mapping, const std::string& name) {
  ScenarioConfig cfg;
  cfg.scenario = Scenario::sd_bridge;
  cfg.preset = p;
  cfg.mapping = mapping;
  finalize(cfg);
  for (const auto& c : sd_equivalence_report(cfg).checks)
    if (c.name == name) return c.value;
  return NAN;
}

double all_scenarios_state_defect() {
  double worst = 0.0;
  for (Scenario s : {Scenario::lossy_cavity, Scenario::dephasing, Scenario::rtn,
                     Scenario::multi_lorentzian}) {
    const auto r = run_scenario(default_config(s));
    double trace = 0.0, min_eig = 1.0;
    for (const auto& [k, v] : r.metadata) {
      if (k == "max_trace_deviation") trace = std::get<double>(v);
      if (k == "min_eigenvalue") min_eig = std::get<double>(v);
    }
    worst = std::max({worst, trace, -min_eig});
  }
  return worst;
}

}  // namespace

std::vector<Certificate> run_certificates(std::vector<Certificate>* diagnostics) {
  std::vector<Certificate> out;
  out.push_back({"lossy_tau_0.1", single_tau_max(Scenario::lossy_cavity, 0.1, 20.0), 0.01});
  out.push_back({"lossy_tau_2", single_tau_max(Scenario::lossy_cavity, 2.0, 400.0), 0.05, true});
  out.push_back({"lossy_first_order_ratio_gap",
                 worst_order_gap(Scenario::lossy_cavity, {0.2, 0.1, 0.05, 0.025}, 20.0), 0.5});
  out.push_back({"dephasing_four_routes", dephasing_routes(), 1e-10});
  out.push_back({"dephasing_continuum", single_tau_max(Scenario::dephasing, 1e-3, 3.0), 5e-3});
  out.push_back({"dephasing_sd_transform",
                 bridge_check(BridgePreset::dephasing_series, "", "transform_vs_series"), 1e-3});
  out.push_back({"lorentzian_closed_form_vs_volterra",
                 bridge_check(BridgePreset::lorentzian_decay, "published", "closed_form_vs_volterra"),
                 1e-6});
  out.push_back({"lorentzian_collision_vs_volterra",
                 bridge_check(BridgePreset::lorentzian_decay, "published", "collision_vs_volterra"),
                 1e-2});
  out.push_back({"multi_lorentzian_a",
                 bridge_check(BridgePreset::multi_lorentzian_a, "", "ode_vs_volterra"), 1e-4});
  out.push_back({"multi_lorentzian_b",
                 bridge_check(BridgePreset::multi_lorentzian_b, "residue_matched", "ode_vs_volterra"),
                 1e-4});
  out.push_back({"rtn_vs_master_equation", rtn_vs_me(), 1e-6});
  out.push_back({"state_validity", all_scenarios_state_defect(), 1e-9});
  out.push_back({"degenerate_basis_invariance", degenerate_basis(), 1e-12});
  if (diagnostics) {
    diagnostics->push_back(
        {"lorentzian_closed_form_vs_volterra[kernel_matched]",
         bridge_check(BridgePreset::lorentzian_decay, "kernel_matched", "closed_form_vs_volterra"),
         1e-6});
    diagnostics->push_back(
        {"lorentzian_collision_vs_volterra[kernel_matched]",
         bridge_check(BridgePreset::lorentzian_decay, "kernel_matched", "collision_vs_volterra"),
         1e-2});
    diagnostics->push_back(
        {"multi_lorentzian_b[published weights]",
         bridge_check(BridgePreset::multi_lorentzian_b, "published", "ode_vs_volterra"), 1e-4});
  }
  return out;
}

}  // namespace ccm::runner

#include <algorithm>
#include <cmath>

#include "ccm/dephasing.hpp"
#include "ccm/errors.hpp"
#include "ccm/lossy_cavity.hpp"
#include "ccm/multi_lorentzian.hpp"
#include "ccm/spectral.hpp"
#include "internal.hpp"

namespace ccm::runner {

namespace {

std::vector<double> time_grid(const ScenarioConfig& cfg, double h) {
  const std::size_t n = detail::steps_for(cfg, h);
  std::vector<double> g(n + 1);
  for (std::size_t k = 0; k <= n; ++k) g[k] = h * static_cast<double>(k);
  return g;
}

BridgeReport lorentzian_decay(const ScenarioConfig& cfg) {
  const double g0 = cfg.param("gamma0"), kappa = cfg.param("kappa"), delta = cfg.param("delta");
  const double tau = cfg.tau_list.front();
  const auto mapping = cfg.mapping == "kernel_matched" ? LorentzianMapping::kernel_matched
                                                       : LorentzianMapping::published;
  const auto cm = map_lorentzian_to_cm(g0, kappa, delta, tau, mapping);
  const auto ts = time_grid(cfg, tau);
  const auto traj = amplitude_trajectory(cm, ts.size() - 1, 1.0, 0.0);
  const auto vol = solve_volterra(lorentzian_sd(g0, kappa, delta, 0.0), 0.0, ts);

  Table t;
  t.name = "lorentzian_decay";
  t.columns = {"step", "t", "pop_collision", "pop_closed_form", "pop_volterra"};
  double closed_vs_vol = 0.0, cm_vs_vol = 0.0, cm_vs_closed = 0.0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const cplx closed = analytic_excited_amplitude(delta, cm.big_g, cm.gamma(), ts[k]);
    const double pcm = std::norm(traj[k].eps), pcl = std::norm(closed), pv = std::norm(vol[k]);
    closed_vs_vol = std::max(closed_vs_vol, std::abs(closed - vol[k]));
    cm_vs_vol = std::max(cm_vs_vol, std::abs(pcm - pv));
    cm_vs_closed = std::max(cm_vs_closed, std::abs(pcm - pcl));
    t.rows.push_back({static_cast<double>(k), ts[k], pcm, pcl, pv});
  }
  t.metadata = {{"gamma0", g0},          {"kappa", kappa},         {"delta", delta},
                {"tau", tau},            {"mapping", cfg.mapping}, {"big_g", cm.big_g},
                {"small_g", cm.small_g}, {"gamma", cm.gamma()}};
  BridgeReport rep;
  rep.checks = {{"closed_form_vs_volterra", closed_vs_vol, 1e-6},
                {"collision_vs_volterra", cm_vs_vol, 1e-2},
                {"collision_vs_closed_form", cm_vs_closed, 1e-2}};
  rep.results.tables.push_back(std::move(t));
  return rep;
}

BridgeReport dephasing_series(const ScenarioConfig& cfg) {
  const double gamma = cfg.param("gamma"), G = cfg.param("big_g");
  const double w_lo = cfg.param("omega_min"), w_hi = cfg.param("omega_max");
  const std::size_t n = cfg.steps.value_or(60);
  if (n < 2) throw ConfigError("dephasing_series needs steps >= 2 frequency points");
  if (!(w_lo > 0.0) || !(w_hi > w_lo)) throw ConfigError("need 0 < omega_min < omega_max");
  const DephasingSeries series{gamma, G};
  validate(series);
  const double kc = std::sqrt(gamma * gamma - 4 * G * G);
  const double t_max = 20.0 / kc;
  const auto rate = [&](double t) { return dephasing_rate_continuous(gamma, G, t); };

  Table t;
  t.name = "dephasing_series";
  t.columns = {"step", "omega", "j_series", "j_transform", "rel_deviation"};
  double worst = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double w = w_lo + (w_hi - w_lo) * static_cast<double>(k) / static_cast<double>(n - 1);
    const double js = eval_sd(series, w), jt = sd_from_dephasing_rate(rate, w, t_max);
    const double rel = std::abs(jt - js) / std::abs(js);
    worst = std::max(worst, rel);
    t.rows.push_back({static_cast<double>(k), w, js, jt, rel});
  }
  t.metadata = {{"gamma", gamma}, {"big_g", G}, {"kappa_c", kc}, {"t_max", t_max}};
  BridgeReport rep;
  rep.checks = {{"transform_vs_series", worst, 1e-3}};
  rep.results.tables.push_back(std::move(t));
  return rep;
}

BridgeReport multi(const ScenarioConfig& cfg, bool case_b) {
  TriContinuousParams p;
  if (case_b) {
    const double d = cfg.param("delta");
    p.k = {d, d, cfg.param("big_g1"), 0.0, cfg.param("c")};
  } else {
    p.k = {cfg.param("delta1"), cfg.param("delta2"), cfg.param("big_g1"), cfg.param("big_g2"), 0.0};
  }
  p.gamma1 = cfg.param("gamma1");
  p.gamma2 = cfg.param("gamma2");
  const auto weights =
      cfg.mapping == "published" ? CaseBWeights::published : CaseBWeights::residue_matched;
  const auto j = equivalent_sd(p, case_b ? SdCase::b : SdCase::a, 0.0, weights);
  const double h = cfg.tau_list.front();
  const auto ts = time_grid(cfg, h);
  const auto ode = amplitude_ode3(p, ts);
  const auto vol = solve_volterra(j, 0.0, ts);
  Table t;
  t.name = case_b ? "multi_lorentzian_b" : "multi_lorentzian_a";
  t.columns = {"step", "t", "pop_ode", "pop_volterra", "deviation"};
  double worst = 0.0;
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const double dev = std::abs(ode[k].eps - vol[k]);
    worst = std::max(worst, dev);
    t.rows.push_back({static_cast<double>(k), ts[k], std::norm(ode[k].eps), std::norm(vol[k]), dev});
  }
  t.metadata = {{"gamma1", p.gamma1}, {"gamma2", p.gamma2}, {"c", p.k.c}, {"h", h}};
  if (case_b) t.metadata.emplace_back("weights", cfg.mapping);
  BridgeReport rep;
  rep.checks = {{"ode_vs_volterra", worst, 1e-4}};
  rep.results.tables.push_back(std::move(t));
  return rep;
}

}  // namespace

BridgeReport sd_equivalence_report(const ScenarioConfig& cfg) {
  if (cfg.scenario != Scenario::sd_bridge) throw ConfigError("not an sd_bridge config");
  BridgeReport rep;
  try {
    switch (cfg.preset) {
      case BridgePreset::lorentzian_decay: rep = lorentzian_decay(cfg); break;
      case BridgePreset::dephasing_series: rep = dephasing_series(cfg); break;
      case BridgePreset::multi_lorentzian_a: rep = multi(cfg, false); break;
      case BridgePreset::multi_lorentzian_b: rep = multi(cfg, true); break;
    }
  } catch (const PreconditionError& e) {
    throw ConfigError(std::string("invalid parameters: ") + e.what());
  }
  auto& md = rep.results.metadata;
  md.emplace_back("scenario", std::string("sd_bridge"));
  md.emplace_back("preset", to_string(cfg.preset));
  bool all = true;
  for (const auto& c : rep.checks) {
    md.emplace_back("check." + c.name, c.value);
    md.emplace_back("check." + c.name + ".bound", c.bound);
    md.emplace_back("check." + c.name + ".pass", c.pass());
    all = all && c.pass();
  }
  md.emplace_back("all_checks_pass", all);
  return rep;
}

}  // namespace ccm::runner

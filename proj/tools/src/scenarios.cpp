#include <algorithm>
#include <cmath>
#include <set>
#include <string>

#include "ccm/collision.hpp"
#include "ccm/dephasing.hpp"
#include "ccm/errors.hpp"
#include "ccm/lindblad.hpp"
#include "ccm/lossy_cavity.hpp"
#include "ccm/multi_lorentzian.hpp"
#include "ccm/operators.hpp"
#include "internal.hpp"

namespace ccm::runner {

namespace detail {

void StateGate::check(const ComplexMatrix& rho, const std::string& where) {
  const auto d = validate_state(rho);
  ++count_;
  trace_dev_ = std::max(trace_dev_, d.trace_deviation);
  min_eig_ = std::min(min_eig_, d.min_eigenvalue);
  if (!d.ok)
    throw NumericalError("state check failed at " + where + ": trace deviation " +
                         std::to_string(d.trace_deviation) + ", min eigenvalue " +
                         std::to_string(d.min_eigenvalue));
}

void StateGate::annotate(Metadata& md) const {
  md.emplace_back("states_checked", static_cast<long long>(count_));
  md.emplace_back("max_trace_deviation", trace_dev_);
  md.emplace_back("min_eigenvalue", min_eig_);
}

double StateGate::worst() const { return std::max(trace_dev_, -min_eig_); }

std::size_t steps_for(const ScenarioConfig& cfg, double tau) {
  if (cfg.steps) return *cfg.steps;
  return static_cast<std::size_t>(std::llround(*cfg.t_max / tau));
}

double max_deviation(const Table& t) {
  for (const auto& [k, v] : t.metadata)
    if (k == "max_deviation") return std::get<double>(v);
  return NAN;
}

namespace {

void add_coupling_flags(Metadata& md, double g, double tau) {
  md.emplace_back("g_tau", g * tau);
  md.emplace_back("g_tau_below_0.1", g * tau < 0.1);
}

}  // namespace

Table lossy_table(const ScenarioConfig& cfg, double tau, StateGate& gate) {
  LossyCavityParams p;
  p.delta = cfg.param("delta");
  p.big_g = cfg.param("big_g");
  p.tau = tau;
  if (cfg.has_param("small_g")) {
    p.small_g = cfg.param("small_g");
  } else {
    const double target = cfg.has_param("gamma_target") ? cfg.param("gamma_target") : p.big_g;
    if (!(target >= 0.0)) throw ConfigError("gamma_target must be nonnegative");
    p.small_g = std::sqrt(target / tau);
  }
  p.validate();
  const double gamma = p.gamma();
  const std::size_t n = steps_for(cfg, tau);
  const auto traj = amplitude_trajectory(p, n, 1.0, 0.0);

  Table t;
  t.name = "lossy_cavity";
  t.columns = {"step", "t", "pop_discrete", "pop_continuous", "deviation", "pop_cavity"};
  double worst = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    const double time = tau * static_cast<double>(k);
    const double pd = std::norm(traj[k].eps);
    const double pc = std::norm(analytic_excited_amplitude(p.delta, p.big_g, gamma, time));
    worst = std::max(worst, std::abs(pd - pc));
    gate.check(lossy_cavity_state(traj[k].eps, traj[k].betas[0], 2).matrix(),
               "lossy_cavity step " + std::to_string(k));
    t.rows.push_back({static_cast<double>(k), time, pd, pc, std::abs(pd - pc),
                      std::norm(traj[k].betas[0])});
  }
  t.metadata = {{"tau", tau},         {"delta", p.delta},       {"big_g", p.big_g},
                {"small_g", p.small_g}, {"gamma", gamma},       {"steps", static_cast<long long>(n)},
                {"max_deviation", worst}};
  add_coupling_flags(t.metadata, p.small_g, tau);
  return t;
}

Table dephasing_table(const ScenarioConfig& cfg, double tau, StateGate& gate) {
  const double gamma = cfg.param("gamma_target");
  if (!(gamma >= 0.0)) throw ConfigError("gamma_target must be nonnegative");
  DephasingParams p{cfg.param("big_g"), std::sqrt(gamma / tau), tau, cfg.param("xi_bias")};
  p.validate();
  const std::size_t n = steps_for(cfg, tau);
  Table t;
  t.name = "dephasing";
  t.columns = {"step", "t", "f_n", "f_t", "deviation"};
  double worst = 0.0;
  for (std::size_t k = 0; k <= n; ++k) {
    const double time = tau * static_cast<double>(k);
    const double fn = dephasing_factor_discrete(p, k);
    const double ft = dephasing_factor_continuous(p.gamma(), p.big_g, time);
    worst = std::max(worst, std::abs(fn - ft));
    ComplexMatrix rs(2, 2);
    rs << 0.5, 0.5 * fn, 0.5 * fn, 0.5;  // S prepared in |+>
    gate.check(rs, "dephasing step " + std::to_string(k));
    t.rows.push_back({static_cast<double>(k), time, fn, ft, std::abs(fn - ft)});
  }
  t.metadata = {{"tau", tau},          {"big_g", p.big_g},  {"small_g", p.small_g},
                {"gamma", p.gamma()},  {"xi_bias", p.xi_bias},
                {"steps", static_cast<long long>(n)}, {"max_deviation", worst}};
  add_coupling_flags(t.metadata, p.small_g, tau);
  return t;
}

Table multi_table(const ScenarioConfig& cfg, double tau, StateGate& gate) {
  const TriCoupling k{cfg.param("delta1"), cfg.param("delta2"), cfg.param("big_g1"),
                      cfg.param("big_g2"), cfg.param("c")};
  const double g1 = cfg.param("gamma1"), g2 = cfg.param("gamma2");
  if (!(g1 >= 0.0) || !(g2 >= 0.0)) throw ConfigError("gamma1, gamma2 must be nonnegative");
  const TriDiscreteParams dp{k, std::sqrt(g1 / tau), std::sqrt(g2 / tau), tau};
  dp.validate();
  const std::size_t n = steps_for(cfg, tau);
  const auto traj = amplitude_trajectory3(dp, n);
  std::vector<double> grid(n + 1);
  for (std::size_t j = 0; j <= n; ++j) grid[j] = tau * static_cast<double>(j);
  const auto ode = amplitude_ode3(continuum_of(dp), grid);

  Table t;
  t.name = "multi_lorentzian";
  t.columns = {"step", "t", "pop_discrete", "pop_continuous", "deviation", "pop_mode1", "pop_mode2"};
  double worst = 0.0;
  for (std::size_t j = 0; j <= n; ++j) {
    const double pd = std::norm(traj[j].eps), pc = std::norm(ode[j].eps);
    worst = std::max(worst, std::abs(pd - pc));
    gate.check(tripartite_state(traj[j].eps, traj[j].betas[0], traj[j].betas[1], 2).matrix(),
               "multi_lorentzian step " + std::to_string(j));
    t.rows.push_back({static_cast<double>(j), grid[j], pd, pc, std::abs(pd - pc),
                      std::norm(traj[j].betas[0]), std::norm(traj[j].betas[1])});
  }
  t.metadata = {{"tau", tau},       {"gamma1", g1}, {"gamma2", g2},
                {"small_g1", dp.small_g1}, {"small_g2", dp.small_g2},
                {"steps", static_cast<long long>(n)}, {"max_deviation", worst}};
  add_coupling_flags(t.metadata, std::max(dp.small_g1, dp.small_g2), tau);
  return t;
}

Table rtn_table(const ScenarioConfig& cfg, StateGate& gate) {
  const double v = cfg.param("v"), t_c = cfg.param("t_c");
  if (!(t_c > 0.0)) throw ConfigError("t_c must be positive");
  const double t_max = cfg.t_max.value_or(5.0);
  const std::size_t n = cfg.steps.value_or(static_cast<std::size_t>(std::llround(t_max / 0.01)));
  if (n == 0) throw ConfigError("rtn needs steps >= 1");
  std::vector<double> grid(n + 1);
  for (std::size_t k = 0; k <= n; ++k) grid[k] = t_max * static_cast<double>(k) / static_cast<double>(n);
  ComplexMatrix plus(2, 2);
  plus << 0.25, 0.25, 0.25, 0.25;  // half of |+><+| in each branch
  const auto tr = rtn_propagate(pauli_z() * v, t_c, plus, plus, grid);
  Table t;
  t.name = "rtn";
  t.columns = {"step", "t", "coherence_re", "coherence_im", "coherence_abs"};
  for (std::size_t k = 0; k <= n; ++k) {
    const ComplexMatrix rho = tr.total(k);
    gate.check(rho, "rtn t = " + std::to_string(grid[k]));
    t.rows.push_back({static_cast<double>(k), grid[k], rho(0, 1).real(), rho(0, 1).imag(),
                      std::abs(rho(0, 1))});
  }
  t.metadata = {{"v", v}, {"t_c", t_c}, {"gamma", 2.0 / t_c}, {"steps", static_cast<long long>(n)}};
  return t;
}

Table generic_table(const ScenarioConfig& cfg, double tau, StateGate& gate) {
  const GenericSpec& g = *cfg.generic;
  if (g.system_dims.empty()) throw ConfigError("generic.system_dims must be nonempty");
  std::vector<AncillaSpec> ancs;
  for (const auto& a : g.ancillas) {
    AncillaSpec s;
    s.dim = a.dim;
    s.eta = DensityMatrix(a.state);
    s.coupling_op = a.coupling;
    s.coupling_rate = a.rate;
    s.target = a.target;
    ancs.push_back(std::move(s));
  }
  const CompositeModel model(g.system_dims.front(),
                             Dims(g.system_dims.begin() + 1, g.system_dims.end()), g.hamiltonian,
                             std::move(ancs), tau, g.fock_factors);
  const std::size_t n = steps_for(cfg, tau);
  Table t;
  t.name = "generic_cm";
  const int d = model.system_dim();
  t.columns = {"step", "t", "trace", "min_eigenvalue"};
  for (int i = 0; i < d; ++i) t.columns.push_back("pop_" + std::to_string(i));
  evolve(model, DensityMatrix(g.initial_state), n, [&](std::size_t k, const DensityMatrix& rho) {
    gate.check(rho.matrix(), "generic_cm step " + std::to_string(k));
    const auto diag = validate_state(rho.matrix());
    std::vector<double> row{static_cast<double>(k), tau * static_cast<double>(k),
                            rho.matrix().trace().real(), diag.min_eigenvalue};
    for (int i = 0; i < d; ++i) row.push_back(rho(i, i).real());
    t.rows.push_back(std::move(row));
  });
  t.metadata = {{"tau", tau}, {"steps", static_cast<long long>(n)}, {"system_dim", static_cast<long long>(d)}};
  for (std::size_t i = 0; i < g.ancillas.size(); ++i) {
    t.metadata.emplace_back("gamma_" + std::to_string(i), g.ancillas[i].rate * g.ancillas[i].rate * tau);
  }
  return t;
}

}  // namespace detail

namespace {

void select_outputs(const ScenarioConfig& cfg, ResultSet& r) {
  if (cfg.outputs.empty()) return;
  std::set<std::string> available;
  for (const auto& t : r.tables)
    for (std::size_t c = 2; c < t.columns.size(); ++c) available.insert(t.columns[c]);
  for (const auto& o : cfg.outputs) {
    if (!available.count(o)) {
      std::string list;
      for (const auto& a : available) list += (list.empty() ? "" : ", ") + a;
      throw ConfigError("unknown output '" + o + "' for " + to_string(cfg.scenario) +
                        "; available: " + list);
    }
  }
  for (auto& t : r.tables) {
    std::vector<std::size_t> keep{0, 1};
    for (const auto& o : cfg.outputs)
      for (std::size_t c = 2; c < t.columns.size(); ++c)
        if (t.columns[c] == o) keep.push_back(c);
    std::vector<std::string> cols;
    for (auto c : keep) cols.push_back(t.columns[c]);
    for (auto& row : t.rows) {
      std::vector<double> nr;
      for (auto c : keep) nr.push_back(row[c]);
      row = std::move(nr);
    }
    t.columns = std::move(cols);
  }
}

}  // namespace

ResultSet run_scenario(const ScenarioConfig& cfg) {
  if (cfg.scenario == Scenario::sd_bridge) {
    auto rep = sd_equivalence_report(cfg);
    select_outputs(cfg, rep.results);
    return rep.results;
  }
  ResultSet r;
  r.metadata.emplace_back("scenario", to_string(cfg.scenario));
  detail::StateGate gate;
  try {
    if (cfg.scenario == Scenario::rtn) {
      r.tables.push_back(detail::rtn_table(cfg, gate));
    } else {
      for (double tau : cfg.tau_list) {
        switch (cfg.scenario) {
          case Scenario::lossy_cavity: r.tables.push_back(detail::lossy_table(cfg, tau, gate)); break;
          case Scenario::dephasing: r.tables.push_back(detail::dephasing_table(cfg, tau, gate)); break;
          case Scenario::multi_lorentzian: r.tables.push_back(detail::multi_table(cfg, tau, gate)); break;
          case Scenario::generic_cm: r.tables.push_back(detail::generic_table(cfg, tau, gate)); break;
          default: break;
        }
      }
    }
  } catch (const PreconditionError& e) {
    throw ConfigError(std::string("invalid parameters: ") + e.what());
  } catch (const DimensionError& e) {
    throw ConfigError(std::string("inconsistent dimensions: ") + e.what());
  }
  gate.annotate(r.metadata);
  select_outputs(cfg, r);
  return r;
}

}  // namespace ccm::runner

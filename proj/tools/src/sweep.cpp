#include <atomic>
#include <cmath>
#include <exception>
#include <thread>

#include "ccm/errors.hpp"
#include "internal.hpp"

namespace ccm::runner {

ResultSet convergence_sweep(const ScenarioConfig& cfg_in) {
  ScenarioConfig cfg = cfg_in;
  if (cfg.tau_list.size() < 2) throw ConfigError("a tau sweep needs at least two tau values");
  if (cfg.scenario != Scenario::lossy_cavity && cfg.scenario != Scenario::dephasing &&
      cfg.scenario != Scenario::multi_lorentzian)
    throw ConfigError("tau sweeps apply to lossy_cavity, dephasing and multi_lorentzian");
  // a common horizon: steps are derived per tau
  if (!cfg.t_max) cfg.t_max = static_cast<double>(*cfg.steps) * cfg.tau_list.front();
  cfg.steps.reset();

  const std::size_t m = cfg.tau_list.size();
  std::vector<double> dev(m, 0.0);
  std::vector<detail::StateGate> gates(m);
  std::vector<std::exception_ptr> errors(m);
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t i = next++; i < m; i = next++) {
      try {
        const double tau = cfg.tau_list[i];
        Table t;
        switch (cfg.scenario) {
          case Scenario::lossy_cavity: t = detail::lossy_table(cfg, tau, gates[i]); break;
          case Scenario::dephasing: t = detail::dephasing_table(cfg, tau, gates[i]); break;
          default: t = detail::multi_table(cfg, tau, gates[i]); break;
        }
        dev[i] = detail::max_deviation(t);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  std::vector<std::thread> pool;
  for (unsigned w = 0; w < std::min<std::size_t>(hw, m); ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();
  for (auto& e : errors) {
    if (!e) continue;
    try {
      std::rethrow_exception(e);
    } catch (const PreconditionError& p) {
      throw ConfigError(std::string("invalid parameters: ") + p.what());
    }
  }

  Table t;
  t.name = "convergence_sweep";
  t.columns = {"tau", "max_deviation", "order"};
  bool decreasing = true;
  for (std::size_t i = 0; i < m; ++i) {
    double order = NAN;
    if (i > 0) {
      order = std::log(dev[i - 1] / dev[i]) / std::log(cfg.tau_list[i - 1] / cfg.tau_list[i]);
      if ((cfg.tau_list[i] < cfg.tau_list[i - 1]) != (dev[i] < dev[i - 1])) decreasing = false;
    }
    t.rows.push_back({cfg.tau_list[i], dev[i], order});
  }
  t.metadata = {{"horizon", *cfg.t_max}, {"deviation_follows_tau", decreasing}};
  ResultSet r;
  r.metadata.emplace_back("scenario", to_string(cfg.scenario));
  r.metadata.emplace_back("mode", std::string("sweep"));
  long long checked = 0;
  double worst = 0.0;
  for (const auto& g : gates) {
    checked += static_cast<long long>(g.count());
    worst = std::max(worst, g.worst());
  }
  r.metadata.emplace_back("states_checked", checked);
  r.metadata.emplace_back("worst_state_defect", worst);
  r.tables.push_back(std::move(t));
  return r;
}

}  // namespace ccm::runner

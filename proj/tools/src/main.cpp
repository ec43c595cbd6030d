// ccm: run collision-model scenarios from a YAML config.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "ccm/errors.hpp"
#include "ccm/runner/config.hpp"
#include "ccm/runner/output.hpp"
#include "ccm/runner/runner.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 1;
constexpr int kNumericalFailure = 2;

std::vector<double> parse_tau_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (item.find_first_not_of(" \t", used) != std::string::npos) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw ccm::runner::ConfigError("--sweep-tau: cannot read '" + item + "' as a number");
    }
  }
  return out;
}

int run_check() {
  std::vector<ccm::runner::Certificate> diag;
  const auto certs = ccm::runner::run_certificates(&diag);
  bool all = true;
  for (const auto& c : certs) {
    std::cout << (c.pass() ? "PASS " : "FAIL ") << c.name << " value=" << c.value
              << (c.at_least ? " min=" : " max=") << c.bound << '\n';
    all = all && c.pass();
  }
  for (const auto& c : diag)
    std::cout << "INFO " << c.name << " value=" << c.value << " bound=" << c.bound << '\n';
  return all ? kOk : kNumericalFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ccm: composite collision model runner"};
  std::string config_path, scenario, out_path, format = "csv", sweep_tau;
  bool check = false;
  app.add_option("--config", config_path, "YAML scenario config")->check(CLI::ExistingFile);
  app.add_option("--scenario", scenario,
                 "lossy_cavity | dephasing | rtn | multi_lorentzian | generic_cm | sd_bridge "
                 "(overrides the config)");
  app.add_option("--out", out_path, "output file (default stdout)");
  app.add_option("--format", format, "csv | json")->check(CLI::IsMember({"csv", "json"}));
  app.add_option("--sweep-tau", sweep_tau, "comma-separated tau list; runs a convergence sweep");
  app.add_flag("--check", check, "run the built-in equivalence certificates");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kOk : kConfigError;
  }

  try {
    if (check) return run_check();
    if (config_path.empty() && scenario.empty())
      throw ccm::runner::ConfigError("give --config or --scenario (or --check)");
    ccm::runner::ScenarioConfig cfg =
        config_path.empty()
            ? ccm::runner::default_config(ccm::runner::scenario_from_string(scenario))
            : ccm::runner::load_config(config_path, scenario);
    if (!sweep_tau.empty()) {
      cfg.tau_list = parse_tau_list(sweep_tau);
      cfg.sweep = true;
      ccm::runner::finalize(cfg);
    }
    const auto result =
        cfg.sweep ? ccm::runner::convergence_sweep(cfg) : ccm::runner::run_scenario(cfg);

    std::ofstream file;
    if (!out_path.empty()) {
      file.open(out_path);
      if (!file) throw ccm::runner::ConfigError("cannot write '" + out_path + "'");
    }
    std::ostream& os = out_path.empty() ? std::cout : file;
    if (format == "json") ccm::runner::write_json(os, result);
    else ccm::runner::write_csv(os, result);
    return kOk;
  } catch (const ccm::runner::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ccm::PreconditionError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ccm::DimensionError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const ccm::NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

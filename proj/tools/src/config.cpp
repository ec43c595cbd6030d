#include "ccm/runner/config.hpp"

#include <yaml-cpp/yaml.h>

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace ccm::runner {

namespace {

const std::map<std::string, Scenario> kScenarios{
    {"lossy_cavity", Scenario::lossy_cavity}, {"dephasing", Scenario::dephasing},
    {"rtn", Scenario::rtn},                   {"multi_lorentzian", Scenario::multi_lorentzian},
    {"generic_cm", Scenario::generic_cm},     {"sd_bridge", Scenario::sd_bridge}};

const std::map<std::string, BridgePreset> kPresets{
    {"lorentzian_decay", BridgePreset::lorentzian_decay},
    {"dephasing_series", BridgePreset::dephasing_series},
    {"multi_lorentzian_a", BridgePreset::multi_lorentzian_a},
    {"multi_lorentzian_b", BridgePreset::multi_lorentzian_b}};

template <class E>
std::string name_of(const std::map<std::string, E>& table, E v) {
  for (const auto& [k, e] : table)
    if (e == v) return k;
  return "?";
}

std::string where(const YAML::Node& n) {
  const auto m = n.Mark();
  if (m.line < 0) return "";
  return " (line " + std::to_string(m.line + 1) + ")";
}

double as_double(const YAML::Node& n, const std::string& key) {
  try {
    return n.as<double>();
  } catch (const YAML::Exception&) {
    throw ConfigError("'" + key + "' must be a number" + where(n));
  }
}

cplx as_complex(const YAML::Node& n, const std::string& key) {
  if (n.IsSequence()) {
    if (n.size() != 2) throw ConfigError("'" + key + "': complex entries are [re, im]" + where(n));
    return {as_double(n[0], key), as_double(n[1], key)};
  }
  return {as_double(n, key), 0.0};
}

ComplexMatrix as_matrix(const YAML::Node& n, const std::string& key) {
  if (!n.IsSequence() || n.size() == 0)
    throw ConfigError("'" + key + "' must be a nonempty list of rows" + where(n));
  const auto rows = static_cast<Eigen::Index>(n.size());
  if (!n[0].IsSequence()) throw ConfigError("'" + key + "' rows must be lists" + where(n));
  const auto cols = static_cast<Eigen::Index>(n[0].size());
  ComplexMatrix m(rows, cols);
  for (Eigen::Index r = 0; r < rows; ++r) {
    const YAML::Node row = n[static_cast<std::size_t>(r)];
    if (!row.IsSequence() || static_cast<Eigen::Index>(row.size()) != cols)
      throw ConfigError("'" + key + "' rows must all have " + std::to_string(cols) + " entries" +
                        where(row));
    for (Eigen::Index c = 0; c < cols; ++c) m(r, c) = as_complex(row[static_cast<std::size_t>(c)], key);
  }
  return m;
}

void reject_unknown(const YAML::Node& map, const std::set<std::string>& allowed,
                    const std::string& context) {
  for (const auto& kv : map) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) {
      std::string list;
      for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
      throw ConfigError("unknown key '" + key + "' in " + context + where(kv.first) +
                        "; allowed: " + list);
    }
  }
}

GenericSpec parse_generic(const YAML::Node& n) {
  if (!n.IsMap()) throw ConfigError("'generic' must be a mapping" + where(n));
  reject_unknown(n, {"system_dims", "hamiltonian", "initial_state", "ancillas", "fock_factors"},
                 "generic");
  GenericSpec g;
  for (const char* req : {"system_dims", "hamiltonian", "initial_state", "ancillas"})
    if (!n[req]) throw ConfigError(std::string("generic: missing '") + req + "'");
  for (const auto& d : n["system_dims"]) g.system_dims.push_back(d.as<int>());
  g.hamiltonian = as_matrix(n["hamiltonian"], "generic.hamiltonian");
  g.initial_state = as_matrix(n["initial_state"], "generic.initial_state");
  if (n["fock_factors"])
    for (const auto& d : n["fock_factors"]) g.fock_factors.push_back(d.as<int>());
  if (!n["ancillas"].IsSequence()) throw ConfigError("generic.ancillas must be a list");
  for (const auto& a : n["ancillas"]) {
    reject_unknown(a, {"dim", "state", "coupling", "rate", "target"}, "generic.ancillas[]");
    GenericAncilla anc;
    if (a["dim"]) anc.dim = a["dim"].as<int>();
    if (!a["state"] || !a["coupling"] || !a["rate"])
      throw ConfigError("generic.ancillas[]: 'state', 'coupling' and 'rate' are required" +
                        where(a));
    anc.state = as_matrix(a["state"], "generic.ancillas[].state");
    anc.coupling = as_matrix(a["coupling"], "generic.ancillas[].coupling");
    anc.rate = as_double(a["rate"], "rate");
    if (a["target"]) anc.target = a["target"].as<int>();
    g.ancillas.push_back(std::move(anc));
  }
  return g;
}

}  // namespace

Scenario scenario_from_string(const std::string& name) {
  const auto it = kScenarios.find(name);
  if (it == kScenarios.end()) throw ConfigError("unknown scenario '" + name + "'");
  return it->second;
}

std::string to_string(Scenario s) { return name_of(kScenarios, s); }

BridgePreset preset_from_string(const std::string& name) {
  const auto it = kPresets.find(name);
  if (it == kPresets.end()) throw ConfigError("unknown sd_bridge preset '" + name + "'");
  return it->second;
}

std::string to_string(BridgePreset p) { return name_of(kPresets, p); }

std::map<std::string, double> default_params(Scenario s, BridgePreset p) {
  switch (s) {
    case Scenario::lossy_cavity:
      // gamma_target defaults to big_g; small_g, when given, replaces it
      return {{"delta", 0.0}, {"big_g", 1.0}, {"gamma_target", NAN}, {"small_g", NAN}};
    case Scenario::dephasing:
      return {{"big_g", 1.0}, {"gamma_target", 3.0}, {"xi_bias", 1.0}};
    case Scenario::rtn:
      return {{"v", 1.0}, {"t_c", 2.0}};
    case Scenario::multi_lorentzian:
      return {{"delta1", 0.0}, {"delta2", 0.0}, {"big_g1", 1.0}, {"big_g2", 0.0},
              {"c", 0.5},      {"gamma1", 4.0}, {"gamma2", 1.0}};
    case Scenario::generic_cm:
      return {};
    case Scenario::sd_bridge:
      switch (p) {
        case BridgePreset::lorentzian_decay:
          return {{"gamma0", 1.0}, {"kappa", 0.5}, {"delta", 0.0}};
        case BridgePreset::dephasing_series:
          return {{"gamma", 3.0}, {"big_g", 1.0}, {"omega_min", 0.1}, {"omega_max", 30.0}};
        case BridgePreset::multi_lorentzian_a:
          return {{"delta1", 0.4}, {"delta2", -0.7}, {"big_g1", 1.0}, {"big_g2", 0.6},
                  {"gamma1", 1.5}, {"gamma2", 0.8}};
        case BridgePreset::multi_lorentzian_b:
          return {{"delta", 0.0}, {"big_g1", 1.0}, {"c", 0.5}, {"gamma1", 4.0}, {"gamma2", 1.0}};
      }
  }
  return {};
}

double ScenarioConfig::param(const std::string& key) const {
  const auto it = params.find(key);
  if (it != params.end()) return it->second;
  const auto defs = default_params(scenario, preset);
  const auto d = defs.find(key);
  if (d == defs.end()) throw ConfigError("internal: no parameter '" + key + "'");
  return d->second;
}

ScenarioConfig parse_config(const std::string& yaml_text, const std::string& scenario_override) {
  YAML::Node root;
  try {
    root = YAML::Load(yaml_text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("YAML parse error: ") + e.what());
  }
  if (!root.IsMap()) throw ConfigError("config must be a YAML mapping");
  reject_unknown(root,
                 {"scenario", "params", "tau_list", "steps", "t_max", "outputs", "sweep",
                  "preset", "mapping", "generic"},
                 "config");
  ScenarioConfig cfg;
  if (!scenario_override.empty()) root["scenario"] = scenario_override;
  if (!root["scenario"]) throw ConfigError("config: 'scenario' is required");
  cfg.scenario = scenario_from_string(root["scenario"].as<std::string>());
  if (root["preset"]) {
    if (cfg.scenario != Scenario::sd_bridge)
      throw ConfigError("'preset' only applies to scenario sd_bridge");
    cfg.preset = preset_from_string(root["preset"].as<std::string>());
  }
  if (root["mapping"]) cfg.mapping = root["mapping"].as<std::string>();
  if (root["params"]) {
    const auto defs = default_params(cfg.scenario, cfg.preset);
    if (!root["params"].IsMap()) throw ConfigError("'params' must be a mapping");
    for (const auto& kv : root["params"]) {
      const auto key = kv.first.as<std::string>();
      if (!defs.count(key)) {
        std::string list;
        for (const auto& [k, v] : defs) list += (list.empty() ? "" : ", ") + k;
        throw ConfigError("unknown parameter '" + key + "' for " + to_string(cfg.scenario) +
                          where(kv.first) + "; allowed: " + (list.empty() ? "(none)" : list));
      }
      cfg.params[key] = as_double(kv.second, key);
    }
  }
  if (root["tau_list"]) {
    const auto n = root["tau_list"];
    if (!n.IsSequence()) throw ConfigError("'tau_list' must be a list" + where(n));
    if (n.size() == 0) throw ConfigError("tau_list must be nonempty");
    for (const auto& t : n) cfg.tau_list.push_back(as_double(t, "tau_list"));
  }
  if (root["steps"]) {
    const long long s = root["steps"].as<long long>();
    if (s < 0) throw ConfigError("'steps' must be >= 0");
    cfg.steps = static_cast<std::size_t>(s);
  }
  if (root["t_max"]) cfg.t_max = as_double(root["t_max"], "t_max");
  if (root["outputs"])
    for (const auto& o : root["outputs"]) cfg.outputs.push_back(o.as<std::string>());
  if (root["sweep"]) cfg.sweep = root["sweep"].as<bool>();
  if (root["generic"]) {
    if (cfg.scenario != Scenario::generic_cm)
      throw ConfigError("'generic' only applies to scenario generic_cm");
    cfg.generic = parse_generic(root["generic"]);
  }
  finalize(cfg);
  return cfg;
}

ScenarioConfig load_config(const std::string& path, const std::string& scenario_override) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str(), scenario_override);
}

ScenarioConfig default_config(Scenario s) {
  ScenarioConfig cfg;
  cfg.scenario = s;
  finalize(cfg);
  return cfg;
}

void finalize(ScenarioConfig& cfg) {
  if (!cfg.mapping.empty() && cfg.scenario != Scenario::sd_bridge)
    throw ConfigError("'mapping' only applies to scenario sd_bridge");
  if (cfg.scenario == Scenario::sd_bridge) {
    if (cfg.preset == BridgePreset::lorentzian_decay) {
      if (cfg.mapping.empty()) cfg.mapping = "published";
      if (cfg.mapping != "published" && cfg.mapping != "kernel_matched")
        throw ConfigError("lorentzian_decay: 'mapping' must be published or kernel_matched");
    } else if (cfg.preset == BridgePreset::multi_lorentzian_b) {
      if (cfg.mapping.empty()) cfg.mapping = "residue_matched";
      if (cfg.mapping != "residue_matched" && cfg.mapping != "published")
        throw ConfigError("multi_lorentzian_b: 'mapping' must be residue_matched or published");
    } else if (!cfg.mapping.empty()) {
      throw ConfigError("'mapping' does not apply to preset " + to_string(cfg.preset));
    }
  }
  for (const auto& [k, v] : cfg.params)
    if (!std::isfinite(v)) throw ConfigError("parameter '" + k + "' must be finite");
  if (cfg.scenario == Scenario::lossy_cavity && cfg.has_param("small_g") &&
      cfg.has_param("gamma_target"))
    throw ConfigError("give either small_g or gamma_target, not both");
  if (cfg.scenario == Scenario::generic_cm && !cfg.generic)
    throw ConfigError("scenario generic_cm needs a 'generic' block");

  if (cfg.tau_list.empty()) {
    switch (cfg.scenario) {
      case Scenario::lossy_cavity: cfg.tau_list = {0.1}; break;
      case Scenario::dephasing: cfg.tau_list = {1e-3}; break;
      case Scenario::multi_lorentzian: cfg.tau_list = {0.01}; break;
      case Scenario::generic_cm: cfg.tau_list = {0.1}; break;
      case Scenario::sd_bridge: cfg.tau_list = {1e-3}; break;
      case Scenario::rtn: break;
    }
  }
  for (double t : cfg.tau_list)
    if (!(t > 0.0) || !std::isfinite(t)) throw ConfigError("tau values must be positive");
  if (!cfg.t_max && !cfg.steps) {
    switch (cfg.scenario) {
      case Scenario::lossy_cavity: cfg.t_max = 20.0; break;
      case Scenario::dephasing: cfg.t_max = 3.0; break;
      case Scenario::rtn: cfg.t_max = 5.0; break;
      case Scenario::multi_lorentzian: cfg.t_max = 10.0; break;
      case Scenario::generic_cm: cfg.steps = 100; break;
      case Scenario::sd_bridge:
        if (cfg.preset == BridgePreset::dephasing_series) cfg.steps = 60;
        else cfg.t_max = 10.0;
        break;
    }
  }
  if (cfg.t_max && !(*cfg.t_max > 0.0)) throw ConfigError("t_max must be positive");
  if (cfg.sweep && cfg.tau_list.size() < 2)
    throw ConfigError("a tau sweep needs at least two tau values");
}

}  // namespace ccm::runner

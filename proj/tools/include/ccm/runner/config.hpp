#pragma once

// Scenario configuration for the ccm runner. Loaded from YAML; every key is
// checked against the schema for its scenario and unknown keys are rejected.

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ccm/tensor.hpp"

namespace ccm::runner {

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Scenario { lossy_cavity, dephasing, rtn, multi_lorentzian, generic_cm, sd_bridge };

Scenario scenario_from_string(const std::string& name);
std::string to_string(Scenario s);

enum class BridgePreset { lorentzian_decay, dephasing_series, multi_lorentzian_a, multi_lorentzian_b };

BridgePreset preset_from_string(const std::string& name);
std::string to_string(BridgePreset p);

struct GenericAncilla {
  int dim = 2;
  ComplexMatrix state;     // eta
  ComplexMatrix coupling;  // w on target (x) ancilla
  double rate = 0.0;       // g
  std::optional<int> target;
};

struct GenericSpec {
  std::vector<int> system_dims;  // S first
  ComplexMatrix hamiltonian;
  ComplexMatrix initial_state;
  std::vector<GenericAncilla> ancillas;
  std::vector<int> fock_factors;
};

struct ScenarioConfig {
  Scenario scenario = Scenario::lossy_cavity;
  std::map<std::string, double> params;  // as given; defaults filled by param()
  std::vector<double> tau_list;
  std::optional<std::size_t> steps;
  std::optional<double> t_max;
  std::vector<std::string> outputs;  // empty: every column
  bool sweep = false;
  BridgePreset preset = BridgePreset::lorentzian_decay;
  // sd_bridge: lorentzian_decay takes published | kernel_matched (default
  // published); multi_lorentzian_b takes residue_matched | published
  // (default residue_matched). Filled by finalize().
  std::string mapping;
  std::optional<GenericSpec> generic;

  // value of a parameter, or the scenario default
  double param(const std::string& key) const;
  bool has_param(const std::string& key) const { return params.count(key) != 0; }
};

// Parameter names (with defaults) accepted by a scenario / preset.
std::map<std::string, double> default_params(Scenario s, BridgePreset p);

// `scenario_override`, when nonempty, replaces the file's scenario key.
ScenarioConfig parse_config(const std::string& yaml_text,
                            const std::string& scenario_override = "");
ScenarioConfig load_config(const std::string& path,
                           const std::string& scenario_override = "");

// Config with nothing but the scenario set (all defaults).
ScenarioConfig default_config(Scenario s);

// Fill defaults for tau_list/t_max and check ranges. Throws ConfigError.
void finalize(ScenarioConfig& cfg);

}  // namespace ccm::runner

#pragma once

// Scenario execution, tau sweeps and the spectral-density bridge reports.

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "ccm/runner/config.hpp"

namespace ccm::runner {

using MetaValue = std::variant<double, long long, bool, std::string>;
using Metadata = std::vector<std::pair<std::string, MetaValue>>;

struct Table {
  std::string name;
  Metadata metadata;
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
};

struct ResultSet {
  Metadata metadata;
  std::vector<Table> tables;
};

// One named check with its measured value and bound.
struct Certificate {
  std::string name;
  double value = 0.0;
  double bound = 0.0;
  bool at_least = false;  // pass when value >= bound instead of <=
  bool pass() const { return at_least ? value >= bound : value <= bound; }
};

// Per-time-step tables, one per tau. Throws ConfigError on bad input and
// NumericalError when a produced state fails validation.
ResultSet run_scenario(const ScenarioConfig& cfg);

// Max discrete-vs-continuum deviation per tau, with the empirical order
// between neighbours. Needs at least two tau values. Points run in parallel;
// rows come out in input order.
ResultSet convergence_sweep(const ScenarioConfig& cfg);

struct BridgeReport {
  ResultSet results;
  std::vector<Certificate> checks;
};

BridgeReport sd_equivalence_report(const ScenarioConfig& cfg);

// Built-in equivalence certificates run by `ccm --check`. `diagnostics`
// receives extra, uncounted comparisons.
std::vector<Certificate> run_certificates(std::vector<Certificate>* diagnostics = nullptr);

}  // namespace ccm::runner

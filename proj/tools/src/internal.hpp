#pragma once

#include <cstddef>
#include <string>

#include "ccm/runner/runner.hpp"
#include "ccm/tensor.hpp"

namespace ccm::runner::detail {

// Running trace / positivity record for every state a scenario emits.
class StateGate {
 public:
  void check(const ComplexMatrix& rho, const std::string& where);
  void annotate(Metadata& md) const;
  double worst() const;  // max(|trace - 1|, -min eigenvalue)
  std::size_t count() const { return count_; }

 private:
  double trace_dev_ = 0.0;
  double min_eig_ = 1.0;
  std::size_t count_ = 0;
};

std::size_t steps_for(const ScenarioConfig& cfg, double tau);

// single-tau tables; metadata carries max_deviation where meaningful
Table lossy_table(const ScenarioConfig& cfg, double tau, StateGate& gate);
Table dephasing_table(const ScenarioConfig& cfg, double tau, StateGate& gate);
Table multi_table(const ScenarioConfig& cfg, double tau, StateGate& gate);
Table rtn_table(const ScenarioConfig& cfg, StateGate& gate);
Table generic_table(const ScenarioConfig& cfg, double tau, StateGate& gate);

double max_deviation(const Table& t);

}  // namespace ccm::runner::detail

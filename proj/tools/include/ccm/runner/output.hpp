#pragma once

#include <ostream>

#include "ccm/runner/runner.hpp"

namespace ccm::runner {

// Header row per table, 17 significant digits, metadata as '#' lines.
void write_csv(std::ostream& os, const ResultSet& r);
void write_json(std::ostream& os, const ResultSet& r);

}  // namespace ccm::runner

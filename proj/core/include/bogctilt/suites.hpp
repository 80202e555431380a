#pragma once

#include <string>
#include <vector>

#include "bogctilt/config.hpp"
#include "bogctilt/report.hpp"

namespace bogctilt {

struct SuiteDef {
  std::string name;
  std::string description;
};

/// Available suite names in dependency order.
std::vector<SuiteDef> list_suites();

/// Run one suite. Degenerate-chart conditions are surfaced per-check, never
/// fatal to the suite. Unknown names throw ConfigError.
SuiteReport run_suite(const std::string& name, const SuiteConfig& cfg);

/// Run the configured suites in dependency order (empty selection gives an
/// empty passing report). Checks inside a suite may be evaluated on a thread
/// pool capped by BOGC_TILT_THREADS; results are merged in fixed order, so
/// reports are byte-identical at any thread count.
Report run_suites(const SuiteConfig& cfg);

}  // namespace bogctilt

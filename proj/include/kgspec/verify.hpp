#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "kgspec/kernel.hpp"

namespace kgspec::verify {

struct SuiteResult {
  std::string name;
  bool ok = true;
  nlohmann::json report;
};

/// Names accepted by run_suite, in execution order for "all".
const std::vector<std::string>& suite_names();

/// Runs one invariant suite over the builtin shape/channel matrix:
/// concavity, monotonicity, comparison, oracle, inequality or shift.
/// Throws InvalidInput for an unknown name.
SuiteResult run_suite(const std::string& name, const PhysicalContext& ctx, int threads = 1);

}  // namespace kgspec::verify

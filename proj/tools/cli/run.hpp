#pragma once

#include "cli/config.hpp"
#include "cli/envelope.hpp"

namespace dqpt::cli {

struct RunResult {
  ResultEnvelope envelope;
  bool numerical_failure = false;  // oracle-check found a mismatch
};

// Executes the configured command. Throws ValidationError for bad input
// (exit 2) and other dqpt::Error subclasses on numerical failure (exit 3).
RunResult run(const RunConfig& cfg);

std::string tool_version();

}  // namespace dqpt::cli

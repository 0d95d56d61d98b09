#pragma once

#include <string>
#include <vector>

#include "json.hpp"

namespace hyprelax {

/// Runs one fully-specified command (the format written to meta.json).
/// Returns the process exit status: 0 success, 1 validation error,
/// 2 solver/eigensolver failure.
int run_command(const nlohmann::json& config, bool quiet);

/// Flag parsing plus config-file merging; flags override file values.
int run_cli(const std::vector<std::string>& args);

}  // namespace hyprelax

#pragma once

#include "spingap_cli/config.hpp"

namespace spingap::cli {

/// Executes the configured command, writing its dataset(s). Throws
/// ConfigError for invalid configuration and NumericalError (or subclasses)
/// for numerical failures; the CLI maps these to exit codes 2 and 3.
void run_command(const RunConfig& config);

}  // namespace spingap::cli

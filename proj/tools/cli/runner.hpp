#ifndef NLSW_CLI_RUNNER_HPP
#define NLSW_CLI_RUNNER_HPP

#include <string>

#include "config.hpp"

namespace nlsw_cli {

/// Execute one experiment; writes CSVs + manifest.json (or error.json) under
/// config.io.output_dir. Returns the process exit code.
int run_experiment(const RunConfig& config, const std::string& resume_path);

}  // namespace nlsw_cli

#endif

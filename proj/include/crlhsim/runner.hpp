#pragma once

#include <string>
#include <vector>

#include "crlhsim/config.hpp"

namespace crlhsim::runner {

struct RunResult {
    std::vector<std::string> outputs;  // file names written into the output dir
    std::string summary_text;          // structured text for stdout (may be empty)
};

/// Executes one subcommand: writes the figure CSVs plus a run manifest
/// (run_manifest.json) capturing the resolved config into
/// cfg.output.directory.
RunResult run(const std::string& subcommand, const config::SimulationConfig& cfg);

const std::vector<std::string>& subcommands();

}  // namespace crlhsim::runner

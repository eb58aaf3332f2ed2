// experiments.hpp — CLI experiment runners
#pragma once

#include <string>
#include <vector>

#include "config.hpp"

namespace decotool {

// Runs the configured experiment, writing the result CSV and its manifest.
// Returns the paths it created (for cleanup on failure) via `created`;
// summary `key=value` lines are printed to stdout.
void run_experiment(const RunConfig& cfg, std::vector<std::string>& created);

} // namespace decotool

// config.hpp — Flat key=value configuration for the decosim CLI
#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace decotool {

// Raised for usage and configuration problems (exit code 2); runtime failures
// inside experiments use ordinary exceptions (exit code 1).
struct CliError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ValueType { real, integer, seed, boolean, text, real_list };

struct KeySpec {
    const char* name;
    ValueType type;
    bool required;
    const char* default_value; // nullptr when there is no default
    const char* help;
};

struct ExperimentSpec {
    const char* name;
    const char* help;
    std::vector<KeySpec> keys;
};

const std::vector<ExperimentSpec>& experiment_table();
const ExperimentSpec& experiment_spec(const std::string& name);

// Fully resolved configuration: preset < config file < command-line flags,
// then defaults. Unknown keys and missing required keys are hard errors.
class RunConfig {
public:
    RunConfig(std::string experiment, std::map<std::string, std::string> values);

    const std::string& experiment() const noexcept { return experiment_; }

    bool has(const std::string& key) const;
    double get_real(const std::string& key) const;
    long long get_int(const std::string& key) const;
    std::uint64_t get_seed(const std::string& key) const;
    bool get_bool(const std::string& key) const;
    std::string get_text(const std::string& key) const;
    std::vector<double> get_real_list(const std::string& key) const;

    // Resolved output path: DECOSIM_OUTPUT_DIR is applied to relative paths.
    std::string output_path() const;

    // Manifest body in schema order; itself a valid config file for replay.
    std::string manifest(double wall_seconds) const;

private:
    const std::string& raw(const std::string& key) const;

    std::string experiment_;
    std::map<std::string, std::string> values_;
};

// Parses argv and an optional config file into a validated RunConfig.
RunConfig parse_config(int argc, const char* const* argv);

// True when the invocation only asked for usage text (already printed).
bool handled_help(int argc, const char* const* argv);

std::string usage_text();

} // namespace decotool

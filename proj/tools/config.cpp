#include "config.hpp"

#include <charconv>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "deco/csv.hpp"
#include "deco/version.hpp"

namespace decotool {
namespace {

const char* kInitHelp = "initial-state amplitude component";

std::vector<KeySpec> dephasing_keys() {
    return {
        {"lambda", ValueType::real, true, nullptr, "bath coupling strength"},
        {"beta", ValueType::real, true, nullptr, "inverse temperature"},
        {"omega_c", ValueType::real, true, nullptr, "bath cutoff frequency"},
        {"dt", ValueType::real, true, nullptr, "time step"},
        {"t_final", ValueType::real, true, nullptr, "final time"},
        {"n_traj", ValueType::integer, true, nullptr, "number of noise realizations"},
        {"master_seed", ValueType::seed, false, "1", "seed for all trajectory streams"},
        {"threads", ValueType::integer, false, "1", "worker threads (results are thread-count invariant)"},
        {"high_temperature", ValueType::boolean, false, "true",
         "use the high-temperature bath power spectrum for the exact curve"},
        {"init_c0_re", ValueType::real, false, "0.7071067811865476", kInitHelp},
        {"init_c0_im", ValueType::real, false, "0", kInitHelp},
        {"init_c1_re", ValueType::real, false, "0.7071067811865476", kInitHelp},
        {"init_c1_im", ValueType::real, false, "0", kInitHelp},
        {"output", ValueType::text, false, "dephasing-compare.csv", "output CSV path"},
    };
}

std::vector<ExperimentSpec> build_experiment_table() {
    std::vector<ExperimentSpec> table;

    table.push_back(ExperimentSpec{
        "qdf-exact",
        "exact pure-dephasing decoherence function from the second cumulant",
        {
            {"beta", ValueType::real, true, nullptr, "inverse temperature"},
            {"dt", ValueType::real, true, nullptr, "time step"},
            {"t_final", ValueType::real, true, nullptr, "final time"},
            {"lambda", ValueType::real, false, nullptr,
             "bath coupling strength (with omega_c; omit when spectral_csv is used)"},
            {"omega_c", ValueType::real, false, nullptr, "bath cutoff frequency"},
            {"spectral_csv", ValueType::text, false, nullptr,
             "tabulated spectral density CSV (header `omega,J`)"},
            {"high_temperature", ValueType::boolean, false, "false",
             "use the high-temperature bath power spectrum"},
            {"output", ValueType::text, false, "qdf-exact.csv", "output CSV path"},
        }});

    table.push_back(ExperimentSpec{
        "dephasing-compare",
        "noisy-trajectory ensemble vs. the exact decoherence function",
        dephasing_keys()});

    table.push_back(ExperimentSpec{
        "noise-validate",
        "empirical autocorrelation of a generated noise stream vs. its target",
        {
            {"noise", ValueType::text, true, nullptr, "ou | sum-exp | complex-white"},
            {"dt", ValueType::real, true, nullptr, "sample spacing"},
            {"n_samples", ValueType::integer, true, nullptr, "stream length"},
            {"max_lag", ValueType::integer, true, nullptr, "largest lag (in steps)"},
            {"ou_variance", ValueType::real, false, nullptr, "C(0) of the OU process"},
            {"ou_corr_time", ValueType::real, false, nullptr, "OU correlation time"},
            {"noise_weights", ValueType::real_list, false, nullptr,
             "sum-exp term weights |c_n|^2, comma separated"},
            {"noise_taus", ValueType::real_list, false, nullptr,
             "sum-exp correlation times, comma separated"},
            {"gamma", ValueType::real, false, nullptr, "complex-white rate"},
            {"master_seed", ValueType::seed, false, "1", "stream seed"},
            {"trajectory_index", ValueType::seed, false, "0", "stream index"},
            {"output", ValueType::text, false, "noise-validate.csv", "output CSV path"},
        }});

    table.push_back(ExperimentSpec{
        "dissipation-compare",
        "Lindblad relaxation vs. the white-noise master equation and ensemble",
        {
            {"gamma_a", ValueType::real, true, nullptr, "absorption rate"},
            {"gamma_0", ValueType::real, true, nullptr, "spontaneous emission rate"},
            {"omega_0", ValueType::real, true, nullptr, "transition frequency"},
            {"dt", ValueType::real, true, nullptr, "time step"},
            {"t_final", ValueType::real, true, nullptr, "final time"},
            {"n_traj", ValueType::integer, true, nullptr, "number of noise realizations"},
            {"gamma", ValueType::real, false, nullptr, "noise rate (defaults to gamma_a)"},
            {"master_seed", ValueType::seed, false, "1", "seed for all trajectory streams"},
            {"threads", ValueType::integer, false, "1", "worker threads"},
            {"init_c0_re", ValueType::real, false, "0.7071067811865476", kInitHelp},
            {"init_c0_im", ValueType::real, false, "0", kInitHelp},
            {"init_c1_re", ValueType::real, false, "0.7071067811865476", kInitHelp},
            {"init_c1_im", ValueType::real, false, "0", kInitHelp},
            {"output", ValueType::text, false, "dissipation-compare.csv", "output CSV path"},
        }});

    table.push_back(ExperimentSpec{
        "oracle-check",
        "truncated-mode exact decoherence function vs. the cumulant form",
        {
            {"mode_omegas", ValueType::real_list, true, nullptr, "mode frequencies"},
            {"mode_couplings", ValueType::real_list, true, nullptr, "mode couplings"},
            {"beta", ValueType::real, true, nullptr, "inverse temperature (inf allowed)"},
            {"dt", ValueType::real, true, nullptr, "time step"},
            {"t_final", ValueType::real, true, nullptr, "final time"},
            {"fock_cutoff", ValueType::integer, false, "0",
             "levels per mode; 0 selects the cutoff automatically"},
            {"output", ValueType::text, false, "oracle-check.csv", "output CSV path"},
        }});

    return table;
}

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return "";
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::map<std::string, std::string> parse_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw CliError("cannot open config file '" + path + "'");
    std::map<std::string, std::string> values;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::string stripped = trim(line);
        if (stripped.empty() || stripped[0] == '#') continue;
        const auto eq = stripped.find('=');
        if (eq == std::string::npos)
            throw CliError("config file " + path + ": line " + std::to_string(line_no) +
                           " is not `key = value`");
        const std::string key = trim(stripped.substr(0, eq));
        const std::string value = trim(stripped.substr(eq + 1));
        if (key.empty())
            throw CliError("config file " + path + ": empty key at line " + std::to_string(line_no));
        values[key] = value;
    }
    return values;
}

// fig2: the high-temperature Lorentz-Drude comparison defaults.
const std::map<std::string, std::string>& fig2_values() {
    static const std::map<std::string, std::string> values = {
        {"lambda", "0.5"},   {"beta", "1"},          {"omega_c", "1"},
        {"dt", "0.002"},     {"t_final", "10"},      {"n_traj", "2000"},
        {"master_seed", "2020"}, {"high_temperature", "true"},
    };
    return values;
}

struct ParsedArgs {
    std::optional<std::string> experiment;
    std::optional<std::string> config_path;
    std::optional<std::string> preset;
    std::vector<std::pair<std::string, std::string>> flags;
    bool help = false;
};

ParsedArgs parse_argv(int argc, const char* const* argv) {
    ParsedArgs parsed;
    int i = 1;
    if (i < argc && argv[i][0] != '-') parsed.experiment = argv[i++];
    for (; i < argc; ++i) {
        std::string arg = argv[i];
        if (arg == "--help" || arg == "-h") {
            parsed.help = true;
            continue;
        }
        if (arg.rfind("--", 0) != 0)
            throw CliError("unexpected argument '" + arg + "' (flags use --key value)");
        arg = arg.substr(2);
        std::string value;
        const auto eq = arg.find('=');
        if (eq != std::string::npos) {
            value = arg.substr(eq + 1);
            arg = arg.substr(0, eq);
        } else {
            if (i + 1 >= argc) throw CliError("flag --" + arg + " is missing a value");
            value = argv[++i];
        }
        if (arg == "config")
            parsed.config_path = value;
        else if (arg == "preset")
            parsed.preset = value;
        else
            parsed.flags.emplace_back(arg, value);
    }
    return parsed;
}

const KeySpec* find_key(const ExperimentSpec& spec, const std::string& name) {
    for (const auto& key : spec.keys)
        if (name == key.name) return &key;
    return nullptr;
}

double parse_real(const std::string& key, const std::string& value) {
    if (value == "inf" || value == "+inf") return std::numeric_limits<double>::infinity();
    try {
        std::size_t used = 0;
        const double parsed = std::stod(value, &used);
        if (used != value.size()) throw std::invalid_argument(value);
        return parsed;
    } catch (const std::exception&) {
        throw CliError("key '" + key + "': cannot parse '" + value + "' as a real number");
    }
}

} // namespace

const std::vector<ExperimentSpec>& experiment_table() {
    static const std::vector<ExperimentSpec> table = build_experiment_table();
    return table;
}

const ExperimentSpec& experiment_spec(const std::string& name) {
    for (const auto& spec : experiment_table())
        if (name == spec.name) return spec;
    throw CliError("unknown experiment '" + name + "' (see --help)");
}

RunConfig::RunConfig(std::string experiment, std::map<std::string, std::string> values)
    : experiment_(std::move(experiment)), values_(std::move(values)) {}

bool RunConfig::has(const std::string& key) const { return values_.count(key) > 0; }

const std::string& RunConfig::raw(const std::string& key) const {
    const auto it = values_.find(key);
    if (it == values_.end()) throw CliError("missing required key '" + key + "'");
    return it->second;
}

double RunConfig::get_real(const std::string& key) const { return parse_real(key, raw(key)); }

long long RunConfig::get_int(const std::string& key) const {
    const std::string& value = raw(key);
    long long parsed = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
    if (ec != std::errc() || ptr != value.data() + value.size())
        throw CliError("key '" + key + "': cannot parse '" + value + "' as an integer");
    return parsed;
}

std::uint64_t RunConfig::get_seed(const std::string& key) const {
    const std::string& value = raw(key);
    std::uint64_t parsed = 0;
    const auto [ptr, ec] = std::from_chars(value.data(), value.data() + value.size(), parsed);
    if (ec != std::errc() || ptr != value.data() + value.size())
        throw CliError("key '" + key + "': cannot parse '" + value + "' as an unsigned integer");
    return parsed;
}

bool RunConfig::get_bool(const std::string& key) const {
    const std::string& value = raw(key);
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw CliError("key '" + key + "': expected true/false, got '" + value + "'");
}

std::string RunConfig::get_text(const std::string& key) const { return raw(key); }

std::vector<double> RunConfig::get_real_list(const std::string& key) const {
    const std::string& value = raw(key);
    std::vector<double> out;
    std::stringstream stream(value);
    std::string item;
    while (std::getline(stream, item, ',')) {
        const std::string trimmed = trim(item);
        if (trimmed.empty())
            throw CliError("key '" + key + "': empty element in list '" + value + "'");
        out.push_back(parse_real(key, trimmed));
    }
    if (out.empty()) throw CliError("key '" + key + "': list must not be empty");
    return out;
}

std::string RunConfig::output_path() const {
    std::filesystem::path path = get_text("output");
    if (path.is_relative()) {
        if (const char* dir = std::getenv("DECOSIM_OUTPUT_DIR"); dir != nullptr && *dir != '\0')
            path = std::filesystem::path(dir) / path;
    }
    return path.string();
}

std::string RunConfig::manifest(double wall_seconds) const {
    std::string out;
    out += "# decosim ";
    out += deco::kVersion;
    out += "\n# wall_time_seconds = " + deco::csv::format_double(wall_seconds) + "\n";
    out += "experiment = " + experiment_ + "\n";
    const auto& spec = experiment_spec(experiment_);
    for (const auto& key : spec.keys) {
        const auto it = values_.find(key.name);
        if (it == values_.end()) continue;
        if (std::string(key.name) == "output")
            out += std::string(key.name) + " = " + output_path() + "\n";
        else
            out += std::string(key.name) + " = " + it->second + "\n";
    }
    return out;
}

RunConfig parse_config(int argc, const char* const* argv) {
    const ParsedArgs parsed = parse_argv(argc, argv);

    std::map<std::string, std::string> file_values;
    if (parsed.config_path) file_values = parse_config_file(*parsed.config_path);

    std::string experiment;
    if (parsed.experiment)
        experiment = *parsed.experiment;
    else if (const auto it = file_values.find("experiment"); it != file_values.end())
        experiment = it->second;
    else
        throw CliError("missing required key 'experiment' (pass a subcommand or set it in the "
                       "config file)");
    const ExperimentSpec& spec = experiment_spec(experiment);
    file_values.erase("experiment");

    std::map<std::string, std::string> merged;

    if (parsed.preset) {
        if (*parsed.preset != "fig2")
            throw CliError("unknown preset '" + *parsed.preset + "' (available: fig2)");
        if (experiment != "qdf-exact" && experiment != "dephasing-compare")
            throw CliError("preset 'fig2' applies to qdf-exact and dephasing-compare only");
        for (const auto& [key, value] : fig2_values())
            if (find_key(spec, key) != nullptr) merged[key] = value;
    }

    for (const auto& [key, value] : file_values) {
        if (find_key(spec, key) == nullptr)
            throw CliError("unknown key '" + key + "' for experiment '" + experiment + "'");
        merged[key] = value;
    }
    for (const auto& [key, value] : parsed.flags) {
        if (find_key(spec, key) == nullptr)
            throw CliError("unknown key '" + key + "' for experiment '" + experiment + "'");
        merged[key] = value;
    }

    for (const auto& key : spec.keys)
        if (key.default_value != nullptr && merged.count(key.name) == 0)
            merged[key.name] = key.default_value;

    for (const auto& key : spec.keys)
        if (key.required && merged.count(key.name) == 0)
            throw CliError("missing required key '" + std::string(key.name) + "'");

    return RunConfig(experiment, std::move(merged));
}

bool handled_help(int argc, const char* const* argv) {
    bool help_requested = argc <= 1;
    for (int i = 1; i < argc; ++i) {
        const std::string arg = argv[i];
        if (arg == "--help" || arg == "-h") help_requested = true;
    }
    if (help_requested) std::fputs(usage_text().c_str(), stdout);
    return help_requested;
}

std::string usage_text() {
    std::string out = "decosim — pure-dephasing and dissipative two-level dynamics, exact vs. "
                      "classical noise\n\n"
                      "usage: decosim <experiment> [--key value ...] [--config FILE] "
                      "[--preset fig2]\n"
                      "       decosim --config FILE   (experiment taken from the file)\n\n"
                      "Config files are flat `key = value` lines; # starts a comment. Flags\n"
                      "override file values. Every run writes <output>.manifest with the fully\n"
                      "resolved configuration; replaying it reproduces the CSV byte for byte.\n"
                      "DECOSIM_OUTPUT_DIR prefixes relative output paths.\n\n"
                      "experiments:\n";
    for (const auto& spec : experiment_table()) {
        out += "  " + std::string(spec.name) + " — " + spec.help + "\n";
        for (const auto& key : spec.keys) {
            out += "      --" + std::string(key.name);
            out += key.required ? "  (required)" : "";
            if (key.default_value != nullptr)
                out += std::string("  [default ") + key.default_value + "]";
            out += "  ";
            out += key.help;
            out += "\n";
        }
    }
    return out;
}

} // namespace decotool

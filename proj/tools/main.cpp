#include <cstdio>
#include <filesystem>
#include <vector>

#include "config.hpp"
#include "experiments.hpp"

namespace {

void remove_partial_outputs(const std::vector<std::string>& created) {
    for (const auto& path : created) {
        std::error_code ec;
        std::filesystem::remove(path, ec);
    }
}

} // namespace

int main(int argc, char** argv) {
    if (decotool::handled_help(argc, argv)) return 0;

    std::vector<std::string> created;
    try {
        const auto cfg = decotool::parse_config(argc, argv);
        decotool::run_experiment(cfg, created);
        return 0;
    } catch (const decotool::CliError& err) {
        remove_partial_outputs(created);
        std::fprintf(stderr, "error: %s\n", err.what());
        return 2;
    } catch (const std::exception& err) {
        remove_partial_outputs(created);
        std::fprintf(stderr, "error: %s\n", err.what());
        return 1;
    }
}

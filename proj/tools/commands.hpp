// commands.hpp — subcommand implementations of the mottlc tool

#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "config.hpp"

namespace mottlc::cli {

struct RunContext {
    RunConfig config;
    std::filesystem::path out_dir{"."};
    unsigned workers{1};
    long seed{0}; // reserved; nothing physical depends on it
    bool sort_output{false};
};

// Each command writes its files into out_dir and returns the manifest.
nlohmann::json cmd_steady(const RunContext& ctx);
nlohmann::json cmd_greens(const RunContext& ctx);
nlohmann::json cmd_critical(const RunContext& ctx);
nlohmann::json cmd_phase_diagram(const RunContext& ctx);
nlohmann::json cmd_dynamics(const RunContext& ctx);
nlohmann::json cmd_perturb(const RunContext& ctx);

// Full CLI: parses argv, dispatches, writes manifest.json. Returns the exit
// code (0 success, 1 configuration error, 2 numerical failure).
int run(int argc, const char* const* argv);

} // namespace mottlc::cli

// Subcommand dispatch for the `sshc` tool.
//
//   sshc analyze  [--ct-ratio R] [--cycles N]      flip-efficiency series
//   sshc simulate [--ct-ratio R] [--cycles N]      transient waveform + flip events
//   sshc sweep    [--axis ct|vs]                   harvest sweeps
//   sshc compare  [--ct-ratio R] [--cycles N]      full bridge vs SSHC
//
// Common flags: --config <path>, --out-dir <path>, --svg, --set key=value.
// Exit codes: 0 success, 2 config error, 3 simulation error.

#pragma once

#include <ostream>
#include <string>
#include <vector>

#include "sshc/cli/config.hpp"
#include "sshc/cli/manifest.hpp"

namespace sshc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitSimulation = 3;

struct CommandContext {
    RunConfig config;
    std::string out_dir = ".";
    bool svg = false;
    std::string axis = "ct";  // sweep only
};

/// Each command writes its files into ctx.out_dir and returns the manifest.
RunManifest cmd_analyze(const CommandContext& ctx, std::ostream& out, std::ostream& err);
RunManifest cmd_simulate(const CommandContext& ctx, std::ostream& out, std::ostream& err);
RunManifest cmd_sweep(const CommandContext& ctx, std::ostream& out, std::ostream& err);
RunManifest cmd_compare(const CommandContext& ctx, std::ostream& out, std::ostream& err);

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err);
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace sshc::cli

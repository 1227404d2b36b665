#pragma once

#include <string>
#include <vector>

#include "sshc/cli/config.hpp"

namespace sshc::cli {

inline constexpr const char* kToolVersion = "0.1.0";

struct RunManifest {
    RawConfig config_echo;
    std::string tool_version = kToolVersion;
    std::string subcommand;
    std::vector<std::string> output_paths;  // file names relative to the output directory
};

std::string manifest_json(const RunManifest& m);
RunManifest parse_manifest_json(const std::string& text);

}  // namespace sshc::cli

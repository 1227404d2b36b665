#include "sshc/cli/manifest.hpp"

#include <json.hpp>

namespace sshc::cli {

std::string manifest_json(const RunManifest& m) {
    nlohmann::ordered_json j;
    j["tool_version"] = m.tool_version;
    j["subcommand"] = m.subcommand;
    j["config_echo"] = nlohmann::ordered_json::object();
    for (const auto& key : known_keys())
        if (const auto it = m.config_echo.find(key); it != m.config_echo.end()) j["config_echo"][key] = it->second;
    j["output_paths"] = m.output_paths;
    return j.dump(2) + "\n";
}

RunManifest parse_manifest_json(const std::string& text) {
    const auto j = nlohmann::json::parse(text);
    RunManifest m;
    m.tool_version = j.at("tool_version").get<std::string>();
    m.subcommand = j.at("subcommand").get<std::string>();
    for (const auto& [key, value] : j.at("config_echo").items()) m.config_echo[key] = value.get<std::string>();
    m.output_paths = j.at("output_paths").get<std::vector<std::string>>();
    return m;
}

}  // namespace sshc::cli

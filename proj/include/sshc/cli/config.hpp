// Flat key = value run configuration with SI unit suffixes.
//
//   # comment
//   amplitude_ip = 10uA
//   cap_cp       = 10nF
//   cap_ct       = 100x      # multiple of cap_cp, or "none" for a full bridge
//   res_rp       = inf
//
// Values accept an optional SI prefix (p n u m k M G) followed by the key's
// unit. Later sources override earlier ones: defaults, then the file, then
// command-line overrides.

#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "sshc/transient_sim.hpp"

namespace sshc::cli {

class ConfigError : public std::runtime_error {
public:
    ConfigError(std::string key, const std::string& message)
        : std::runtime_error(key + ": " + message), key_(std::move(key)), message_(message) {}

    const std::string& key() const { return key_; }
    const std::string& message() const { return message_; }

private:
    std::string key_;
    std::string message_;
};

using RawConfig = std::map<std::string, std::string>;

/// Fully resolved parameter set for every subcommand.
struct RunConfig {
    SimConfig sim;
    std::size_t flip_cycles = 10;               // analyze: number of flips
    double converge_fraction = 0.99;            // analyze: cycles_to_converge target
    std::vector<double> sweep_ct_ratios{0.1, 0.5, 1, 2, 5, 10, 20, 50, 100, 200, 500, 1000};
    std::vector<double> sweep_vs;               // empty: 0 .. 1.2 x full-bridge cutoff

    bool operator==(const RunConfig&) const = default;
};

/// Keys accepted in config files and --set overrides, in echo order.
const std::vector<std::string>& known_keys();

RawConfig parse_config_text(const std::string& text, const std::string& origin = "<inline>");
RawConfig read_config_file(const std::string& path);

/// Parses "key=value".
std::pair<std::string, std::string> parse_override(const std::string& assignment);

/// Applies defaults, resolves ratios and derived values, validates.
RunConfig resolve(const RawConfig& raw);

/// Canonical key = value text; resolve(parse_config_text(echo)) == cfg.
std::string to_config_text(const RunConfig& cfg);
RawConfig to_raw(const RunConfig& cfg);

/// Number with optional SI prefix and unit, e.g. "10nF", "2.4V", "1e-6".
double parse_quantity(const std::string& key, const std::string& text, const std::string& unit);

}  // namespace sshc::cli

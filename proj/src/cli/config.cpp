#include "sshc/cli/config.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <regex>
#include <sstream>

namespace sshc::cli {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string fmt17(double x) {
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

bool strip_suffix(std::string& s, const std::string& suffix) {
    if (suffix.empty() || s.size() < suffix.size()) return false;
    if (s.compare(s.size() - suffix.size(), suffix.size(), suffix) != 0) return false;
    s.erase(s.size() - suffix.size());
    return true;
}

std::size_t parse_count(const std::string& key, const std::string& text, std::size_t min_value) {
    static const std::regex digits(R"(^\s*([0-9]+)\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, digits)) throw ConfigError(key, "expected a non-negative integer, got '" + text + "'");
    const auto v = std::stoull(m[1].str());
    if (v < min_value) throw ConfigError(key, "must be >= " + std::to_string(min_value));
    return static_cast<std::size_t>(v);
}

double positive(const std::string& key, double v) {
    if (!(v > 0.0) || !std::isfinite(v)) throw ConfigError(key, "must be > 0");
    return v;
}

double non_negative(const std::string& key, double v) {
    if (!(v >= 0.0) || !std::isfinite(v)) throw ConfigError(key, "must be >= 0");
    return v;
}

std::vector<double> parse_list(const std::string& key, const std::string& text, const std::string& unit) {
    std::vector<double> out;
    // start:stop:count, linear
    static const std::regex range(R"(^\s*([^:,]+):([^:,]+):([^:,]+)\s*$)");
    std::smatch m;
    if (std::regex_match(text, m, range)) {
        const double a = parse_quantity(key, m[1].str(), unit);
        const double b = parse_quantity(key, m[2].str(), unit);
        const std::size_t n = parse_count(key, m[3].str(), 2);
        for (std::size_t i = 0; i < n; ++i)
            out.push_back(a + (b - a) * static_cast<double>(i) / static_cast<double>(n - 1));
        return out;
    }
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) out.push_back(parse_quantity(key, item, unit));
    if (out.empty()) throw ConfigError(key, "empty list");
    return out;
}

std::string join(const std::vector<double>& xs) {
    std::string out;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) out += ",";
        out += fmt17(xs[i]);
    }
    return out;
}

const std::string& get(const RawConfig& raw, const std::string& key, const std::string& fallback) {
    const auto it = raw.find(key);
    return it == raw.end() ? fallback : it->second;
}

}  // namespace

const std::vector<std::string>& known_keys() {
    static const std::vector<std::string> keys{
        "amplitude_ip", "frequency",   "cap_cp",       "res_rp",         "diode_drop_vd",
        "storage",      "vs",          "cap_cs",       "cap_ct",         "vt_initial",
        "dt",           "n_cycles",    "phase_pulse_width", "phase_gap", "initial_vpt",
        "ordering",     "waveform_stride", "flip_cycles", "converge_fraction",
        "sweep_ct_ratios", "sweep_vs"};
    return keys;
}

double parse_quantity(const std::string& key, const std::string& text, const std::string& unit) {
    static const std::regex number(R"(^\s*([+-]?(?:[0-9]+\.?[0-9]*|\.[0-9]+)(?:[eE][+-]?[0-9]+)?)\s*(\S*)\s*$)");
    std::smatch m;
    if (!std::regex_match(text, m, number)) throw ConfigError(key, "cannot parse quantity '" + text + "'");
    const double value = std::stod(m[1].str());
    std::string suffix = m[2].str();
    if (!strip_suffix(suffix, unit) && unit == "Ohm") strip_suffix(suffix, "ohm");
    if (unit == "Hz" && !suffix.empty()) strip_suffix(suffix, "hz");

    static const std::map<std::string, double> prefixes{
        {"", 1.0},   {"p", 1e-12}, {"n", 1e-9}, {"u", 1e-6}, {"\xc2\xb5", 1e-6},
        {"m", 1e-3}, {"k", 1e3},   {"M", 1e6},  {"G", 1e9}};
    const auto it = prefixes.find(suffix);
    if (it == prefixes.end())
        throw ConfigError(key, "bad unit suffix '" + m[2].str() + "'" + (unit.empty() ? "" : " (expected " + unit + ")"));
    return value * it->second;
}

RawConfig parse_config_text(const std::string& text, const std::string& origin) {
    RawConfig raw;
    std::stringstream ss(text);
    std::string line;
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno), "expected key = value");
        auto [key, value] = std::pair{trim(line.substr(0, eq)), trim(line.substr(eq + 1))};
        raw[key] = value;
    }
    return raw;
}

RawConfig read_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("config", "cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_config_text(ss.str(), path);
}

std::pair<std::string, std::string> parse_override(const std::string& assignment) {
    const auto eq = assignment.find('=');
    if (eq == std::string::npos) throw ConfigError(assignment, "override must be key=value");
    return {trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1))};
}

RunConfig resolve(const RawConfig& raw) {
    for (const auto& [key, value] : raw) {
        (void)value;
        bool known = false;
        for (const auto& k : known_keys()) known = known || k == key;
        if (!known) throw ConfigError(key, "unknown key");
    }

    const SimConfig d = default_sim_config();
    RunConfig cfg;
    SimConfig& sim = cfg.sim;
    const auto q = [&](const std::string& key, const std::string& unit, double fallback) {
        const auto it = raw.find(key);
        return it == raw.end() ? fallback : parse_quantity(key, it->second, unit);
    };

    sim.src.amplitude_ip = positive("amplitude_ip", q("amplitude_ip", "A", d.src.amplitude_ip));
    sim.src.frequency = positive("frequency", q("frequency", "Hz", d.src.frequency));
    sim.src.cap_cp = positive("cap_cp", q("cap_cp", "F", d.src.cap_cp));
    const std::string& rp = get(raw, "res_rp", "inf");
    if (rp == "inf" || rp == "infinite" || rp == "none") {
        sim.src.res_rp.reset();
    } else {
        sim.src.res_rp = positive("res_rp", parse_quantity("res_rp", rp, "Ohm"));
    }

    sim.stage.diode_drop_vd = non_negative("diode_drop_vd", q("diode_drop_vd", "V", d.stage.diode_drop_vd));
    const double vs = non_negative("vs", q("vs", "V", d.stage.initial_vs()));
    const std::string& storage = get(raw, "storage", "fixed");
    if (storage == "fixed") {
        sim.stage.storage = FixedVoltage{vs};
    } else if (storage == "cap") {
        sim.stage.storage = FiniteCap{positive("cap_cs", q("cap_cs", "F", 1e-6)), vs};
    } else {
        throw ConfigError("storage", "expected 'fixed' or 'cap', got '" + storage + "'");
    }

    const std::string& ct = get(raw, "cap_ct", "1x");
    if (ct == "none") {
        sim.sshc.reset();
    } else {
        SshcNetwork net;
        std::string text = ct;
        if (strip_suffix(text, "x"))
            net.cap_ct = positive("cap_ct", parse_quantity("cap_ct", text, "")) * sim.src.cap_cp;
        else
            net.cap_ct = positive("cap_ct", parse_quantity("cap_ct", ct, "F"));
        net.volt_vt = q("vt_initial", "V", 0.0);
        sim.sshc = net;
    }

    const std::string& dt = get(raw, "dt", "auto");
    sim.dt = dt == "auto" ? sim.src.period() / 1e4 : positive("dt", parse_quantity("dt", dt, "s"));
    if (sim.dt > sim.src.period() / 1000.0 * (1.0 + 1e-12))
        throw ConfigError("dt", "must be <= period/1000");
    sim.n_cycles = parse_count("n_cycles", get(raw, "n_cycles", std::to_string(d.n_cycles)), 1);
    sim.phase_pulse_width = positive("phase_pulse_width", q("phase_pulse_width", "s", d.phase_pulse_width));
    sim.phase_gap = non_negative("phase_gap", q("phase_gap", "s", d.phase_gap));
    sim.initial_vpt = q("initial_vpt", "V", d.initial_vpt);
    const std::string& ordering = get(raw, "ordering", "polarity");
    if (ordering == "polarity")
        sim.ordering = PhaseOrdering::PolarityMatched;
    else if (ordering == "phin-first")
        sim.ordering = PhaseOrdering::AlwaysPhiNFirst;
    else
        throw ConfigError("ordering", "expected 'polarity' or 'phin-first'");
    sim.waveform_stride = parse_count("waveform_stride", get(raw, "waveform_stride", "1"), 1);

    cfg.flip_cycles = parse_count("flip_cycles", get(raw, "flip_cycles", "10"), 1);
    cfg.converge_fraction = q("converge_fraction", "", 0.99);
    if (!(cfg.converge_fraction > 0.0 && cfg.converge_fraction < 1.0))
        throw ConfigError("converge_fraction", "must be in (0, 1)");
    if (const auto it = raw.find("sweep_ct_ratios"); it != raw.end())
        cfg.sweep_ct_ratios = parse_list("sweep_ct_ratios", it->second, "");
    if (const auto it = raw.find("sweep_vs"); it != raw.end() && it->second != "auto")
        cfg.sweep_vs = parse_list("sweep_vs", it->second, "V");

    try {
        sim.validate();
    } catch (const ModelError& e) {
        const std::string what = e.what();
        throw ConfigError(what.substr(0, what.find_first_of(" :")), what);
    }
    return cfg;
}

RawConfig to_raw(const RunConfig& cfg) {
    const SimConfig& sim = cfg.sim;
    RawConfig raw;
    raw["amplitude_ip"] = fmt17(sim.src.amplitude_ip);
    raw["frequency"] = fmt17(sim.src.frequency);
    raw["cap_cp"] = fmt17(sim.src.cap_cp);
    raw["res_rp"] = sim.src.res_rp ? fmt17(*sim.src.res_rp) : "inf";
    raw["diode_drop_vd"] = fmt17(sim.stage.diode_drop_vd);
    raw["vs"] = fmt17(sim.stage.initial_vs());
    if (const auto* cap = std::get_if<FiniteCap>(&sim.stage.storage)) {
        raw["storage"] = "cap";
        raw["cap_cs"] = fmt17(cap->cs);
    } else {
        raw["storage"] = "fixed";
    }
    if (sim.sshc) {
        raw["cap_ct"] = fmt17(sim.sshc->cap_ct);
        raw["vt_initial"] = fmt17(sim.sshc->volt_vt);
    } else {
        raw["cap_ct"] = "none";
    }
    raw["dt"] = fmt17(sim.dt);
    raw["n_cycles"] = std::to_string(sim.n_cycles);
    raw["phase_pulse_width"] = fmt17(sim.phase_pulse_width);
    raw["phase_gap"] = fmt17(sim.phase_gap);
    raw["initial_vpt"] = fmt17(sim.initial_vpt);
    raw["ordering"] = sim.ordering == PhaseOrdering::PolarityMatched ? "polarity" : "phin-first";
    raw["waveform_stride"] = std::to_string(sim.waveform_stride);
    raw["flip_cycles"] = std::to_string(cfg.flip_cycles);
    raw["converge_fraction"] = fmt17(cfg.converge_fraction);
    raw["sweep_ct_ratios"] = join(cfg.sweep_ct_ratios);
    raw["sweep_vs"] = cfg.sweep_vs.empty() ? "auto" : join(cfg.sweep_vs);
    return raw;
}

std::string to_config_text(const RunConfig& cfg) {
    const RawConfig raw = to_raw(cfg);
    std::string out;
    for (const auto& key : known_keys()) {
        const auto it = raw.find(key);
        if (it != raw.end()) out += key + " = " + it->second + "\n";
    }
    return out;
}

}  // namespace sshc::cli

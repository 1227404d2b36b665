#include "sshc/cli/commands.hpp"

#include <CLI11.hpp>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>

#include "sshc/batch.hpp"
#include "sshc/cli/csv.hpp"
#include "sshc/cli/svg.hpp"
#include "sshc/flip_analytics.hpp"
#include "sshc/harvest_compare.hpp"
#include "sshc/transient_sim.hpp"

namespace sshc::cli {

namespace fs = std::filesystem;

namespace {

class Outputs {
public:
    Outputs(const CommandContext& ctx, std::string subcommand) : dir_(ctx.out_dir) {
        fs::create_directories(dir_);
        manifest_.config_echo = to_raw(ctx.config);
        manifest_.subcommand = std::move(subcommand);
    }

    void write(const std::string& name, const std::string& text) {
        write_file((dir_ / name).string(), text);
        manifest_.output_paths.push_back(name);
    }

    RunManifest finish() {
        manifest_.output_paths.push_back("manifest.json");
        write_file((dir_ / "manifest.json").string(), manifest_json(manifest_));
        return manifest_;
    }

private:
    fs::path dir_;
    RunManifest manifest_;
};

FlipRatios ratios_of(const SimConfig& sim) {
    if (!sim.sshc) throw ConfigError("cap_ct", "this command needs an SSHC network (cap_ct != none)");
    return FlipRatios::from_caps(sim.src.cap_cp, sim.sshc->cap_ct);
}

double ct_ratio_or_one(const SimConfig& sim) {
    return sim.sshc ? sim.sshc->cap_ct / sim.src.cap_cp : 1.0;
}

std::string fixed(double x, int digits = 6) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*f", digits, x);
    return buf;
}

std::string sci(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.4e", x);
    return buf;
}

std::vector<std::size_t> svg_indices(const Waveform& w, std::size_t max_points) {
    std::vector<std::size_t> keep;
    const auto& s = w.samples;
    const std::size_t stride = std::max<std::size_t>(1, s.size() / max_points);
    for (std::size_t i = 0; i < s.size(); ++i) {
        const bool switching = s[i].phase != Phase::Idle || (i > 0 && s[i - 1].phase != Phase::Idle) ||
                               (i + 1 < s.size() && s[i + 1].phase != Phase::Idle);
        if (i % stride == 0 || switching || i + 1 == s.size()) keep.push_back(i);
    }
    return keep;
}

std::string efficiency_svg(const std::vector<double>& eta, double limit, const std::string& title) {
    Series s{"efficiency", {}, eta};
    for (std::size_t i = 0; i < eta.size(); ++i) s.x.push_back(static_cast<double>(i + 1));
    Series lim{"steady state " + fixed(limit, 4), {1.0, static_cast<double>(eta.size())}, {limit, limit}};
    return line_chart_svg({title, "flip cycle", "voltage flip efficiency", 800, 360, eta.size() <= 50},
                          {s, lim});
}

HarvestReport measured_report(const SimConfig& sim, const SimResult& r) {
    HarvestReport rep;
    rep.q_generated_halfcycle = half_cycle_charge(sim.src);
    rep.q_harvested_halfcycle = r.q_harvested_per_half_cycle.empty() ? 0.0 : r.q_harvested_per_half_cycle.back();
    rep.q_wasted_halfcycle = rep.q_generated_halfcycle - rep.q_harvested_halfcycle;
    rep.power_out = 2.0 * sim.src.frequency * rep.q_harvested_halfcycle * r.final_state.vs;
    rep.flip_efficiency_used = r.flips.empty() ? 0.0 : r.flips.back().efficiency;
    return rep;
}

std::string report_row(const std::string& frontend, const std::string& source, const HarvestReport& r) {
    return frontend + "," + source + "," + format_number(r.q_generated_halfcycle) + "," +
           format_number(r.q_wasted_halfcycle) + "," + format_number(r.q_harvested_halfcycle) + "," +
           format_number(r.power_out) + "," + format_number(r.flip_efficiency_used) + "\n";
}

}  // namespace

RunManifest cmd_analyze(const CommandContext& ctx, std::ostream& out, std::ostream& err) {
    const SimConfig& sim = ctx.config.sim;
    const FlipRatios ratios = ratios_of(sim);
    const double v0 = conduction_threshold(sim.stage);
    if (!(v0 > 0.0)) throw ConfigError("vs", "V_S + 2 V_D must be > 0 for flip analysis");
    const FlipSeries series = flip_efficiency_series(ratios, v0, ctx.config.flip_cycles);
    const std::size_t converge = cycles_to_converge(ratios, ctx.config.converge_fraction);
    // the recurrence assumes V_PT re-reaches V_0 before every flip
    const bool plateau = half_cycle_charge(sim.src) >= sim.src.cap_cp * v0 * (1.0 - first_flip_efficiency(ratios));
    if (!plateau)
        err << "warning: excitation too weak to re-reach V_S + 2 V_D each half cycle; "
               "the series overstates the flip efficiency\n";

    Outputs files(ctx, "analyze");
    files.write("analyze_series.csv", series_csv(series, ratios));
    std::string summary = "quantity,value\n";
    summary += "v0_V," + format_number(v0) + "\n";
    summary += "ct_over_cp," + format_number(sim.sshc->cap_ct / sim.src.cap_cp) + "\n";
    summary += "alpha," + format_number(ratios.alpha) + "\n";
    summary += "beta," + format_number(ratios.beta) + "\n";
    summary += "first_flip_efficiency," + format_number(first_flip_efficiency(ratios)) + "\n";
    summary += "steady_state_efficiency," + format_number(series.limit) + "\n";
    summary += "optimal_single_flip_ct_F," + format_number(optimal_single_flip_ct(sim.src.cap_cp)) + "\n";
    summary += "converge_fraction," + format_number(ctx.config.converge_fraction) + "\n";
    summary += "cycles_to_converge," + std::to_string(converge) + "\n";
    summary += "plateau_supported," + std::string(plateau ? "1" : "0") + "\n";
    files.write("analyze_summary.csv", summary);
    if (ctx.svg) files.write("efficiency.svg", efficiency_svg(series.efficiencies, series.limit, "Flip efficiency series"));

    out << "cycle  efficiency    |V_T| [V]\n";
    for (std::size_t i = 0; i < series.efficiencies.size(); ++i)
        out << std::to_string(i + 1) << "  " << fixed(series.efficiencies[i], 10) << "  "
            << fixed(series.vt_trajectory[i], 6) << "\n";
    out << "steady state " << fixed(series.limit, 10) << ", " << converge << " cycles to "
        << fixed(100.0 * ctx.config.converge_fraction, 2) << "% of it\n";
    return files.finish();
}

RunManifest cmd_simulate(const CommandContext& ctx, std::ostream& out, std::ostream&) {
    SimConfig sim = ctx.config.sim;
    const SimResult r = run(sim);

    Outputs files(ctx, "simulate");
    files.write("waveform.csv", waveform_csv(r.waveform));
    files.write("flips.csv", flips_csv(r.flips));
    if (ctx.svg) {
        Series vpt{"V_PT", {}, {}}, vt{"V_T", {}, {}};
        for (std::size_t i : svg_indices(r.waveform, 4000)) {
            const auto& s = r.waveform.samples[i];
            vpt.x.push_back(s.t * 1e3);
            vpt.y.push_back(s.vpt);
            vt.x.push_back(s.t * 1e3);
            vt.y.push_back(s.vt);
        }
        std::vector<Series> series{vpt};
        if (sim.sshc) series.push_back(vt);
        files.write("waveform.svg", line_chart_svg({"Transient waveform", "time [ms]", "voltage [V]"}, series));
        if (!r.flips.empty()) {
            const double limit = steady_state_efficiency(ratios_of(sim));
            files.write("efficiency.svg",
                        efficiency_svg(extract_efficiency_trajectory(r.flips), limit, "Simulated flip efficiency"));
        }
    }

    out << "flips: " << r.flips.size() << "\n";
    if (!r.flips.empty()) {
        const auto& last = r.flips.back();
        out << "last flip: " << fixed(last.v_before, 4) << " V -> " << fixed(last.v_after, 4)
            << " V, efficiency " << fixed(last.efficiency, 6) << "\n";
    }
    out << "harvested charge: " << sci(r.final_state.q_harvested) << " C\n";
    out << "charge ledger residual: " << sci(ledger_residual(r, sim)) << "\n";
    return files.finish();
}

RunManifest cmd_sweep(const CommandContext& ctx, std::ostream& out, std::ostream&) {
    const SimConfig& sim = ctx.config.sim;
    Outputs files(ctx, "sweep");
    const auto power_svg = [&](const std::string& title, const std::string& xlabel,
                               const std::vector<std::pair<std::string, SweepResult>>& sweeps) {
        std::vector<Series> series;
        for (const auto& [name, sw] : sweeps) {
            Series s{name, sw.axis_values, {}};
            for (const auto& rep : sw.reports) s.y.push_back(rep.power_out * 1e6);
            series.push_back(std::move(s));
        }
        return line_chart_svg({title, xlabel, "output power [uW]"}, series);
    };

    if (ctx.axis == "ct") {
        const SweepResult sw = sweep_ct_ratio(sim.src, sim.stage, ctx.config.sweep_ct_ratios);
        files.write("sweep_ct_ratio.csv", sweep_csv(sw));
        if (ctx.svg) files.write("sweep_ct_ratio.svg", power_svg("Power vs C_T/C_P", "C_T / C_P", {{"SSHC", sw}}));
        out << "ratio  eta  power [W]\n";
        for (std::size_t i = 0; i < sw.reports.size(); ++i)
            out << format_number(sw.axis_values[i]) << "  " << fixed(sw.reports[i].flip_efficiency_used, 6) << "  "
                << sci(sw.reports[i].power_out) << "\n";
    } else if (ctx.axis == "vs") {
        const double vd = sim.stage.diode_drop_vd;
        const EtaMode sshc_mode = EtaMode::sshc_steady(ct_ratio_or_one(sim));
        std::vector<double> vs = ctx.config.sweep_vs;
        if (vs.empty()) {
            const double top = 1.2 * std::max(storage_voltage_cutoff(sim.src, vd, EtaMode::full_bridge()),
                                               storage_voltage_cutoff(sim.src, vd, sshc_mode));
            for (int i = 0; i <= 60; ++i) vs.push_back(top * i / 60.0);
        }
        const SweepResult fb = sweep_storage_voltage(sim.src, vd, vs, EtaMode::full_bridge());
        const SweepResult ss = sweep_storage_voltage(sim.src, vd, vs, sshc_mode);
        files.write("sweep_vs_fullbridge.csv", sweep_csv(fb));
        files.write("sweep_vs_sshc.csv", sweep_csv(ss));
        if (ctx.svg)
            files.write("sweep_vs.svg", power_svg("Power vs storage voltage", "V_S [V]", {{"full bridge", fb}, {"SSHC", ss}}));
        out << "cutoff V_S: full bridge " << fixed(storage_voltage_cutoff(sim.src, vd, EtaMode::full_bridge()), 4)
            << " V, SSHC " << fixed(storage_voltage_cutoff(sim.src, vd, sshc_mode), 4) << " V\n";
    } else {
        throw ConfigError("axis", "expected 'ct' or 'vs'");
    }
    return files.finish();
}

RunManifest cmd_compare(const CommandContext& ctx, std::ostream& out, std::ostream&) {
    SimConfig sshc_cfg = ctx.config.sim;
    if (!sshc_cfg.sshc) sshc_cfg.sshc = SshcNetwork{sshc_cfg.src.cap_cp, 0.0};
    sshc_cfg.record_waveform = false;
    SimConfig fb_cfg = sshc_cfg;
    fb_cfg.sshc.reset();

    const double eta = steady_state_efficiency(ratios_of(sshc_cfg));
    const HarvestReport fb = harvest_report(fb_cfg.src, fb_cfg.stage, 0.0);
    const HarvestReport ss = harvest_report(sshc_cfg.src, sshc_cfg.stage, eta);
    const std::vector<SimConfig> runs{fb_cfg, sshc_cfg};
    const auto results = run_batch(runs);
    const HarvestReport fb_sim = measured_report(fb_cfg, results[0]);
    const HarvestReport ss_sim = measured_report(sshc_cfg, results[1]);

    Outputs files(ctx, "compare");
    std::string csv = "frontend,source,q_gen_C,q_wasted_C,q_harvested_C,power_W,eta\n";
    csv += report_row("full_bridge", "analytic", fb);
    csv += report_row("sshc", "analytic", ss);
    csv += report_row("full_bridge", "transient", fb_sim);
    csv += report_row("sshc", "transient", ss_sim);
    files.write("compare.csv", csv);

    out << "                 full bridge     SSHC\n";
    out << "q_wasted [C]     " << sci(fb.q_wasted_halfcycle) << "     " << sci(ss.q_wasted_halfcycle) << "\n";
    out << "q_harvested [C]  " << sci(fb.q_harvested_halfcycle) << "     " << sci(ss.q_harvested_halfcycle) << "\n";
    out << "power [W]        " << sci(fb.power_out) << "     " << sci(ss.power_out) << "\n";
    out << "transient power  " << sci(fb_sim.power_out) << "     " << sci(ss_sim.power_out) << "\n";
    if (fb.power_out > 0.0) out << "gain: " << fixed(ss.power_out / fb.power_out, 3) << "x\n";
    return files.finish();
}

int run_cli(int argc, char** argv, std::ostream& out, std::ostream& err) {
    std::vector<std::string> args;
    for (int i = 1; i < argc; ++i) args.emplace_back(argv[i]);
    return run_cli(args, out, err);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"SSHC piezoelectric rectifier simulator and flip-efficiency analysis", "sshc"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);

    std::string config_path, out_dir = ".", axis = "ct", values;
    std::vector<std::string> overrides;
    bool svg = false, full_bridge = false;
    double ct_ratio = 0.0;
    std::size_t cycles = 0;

    const auto common = [&](CLI::App* sub) {
        sub->add_option("--config", config_path, "key = value config file")->check(CLI::ExistingFile);
        sub->add_option("--out-dir", out_dir, "directory for CSV/SVG/manifest output");
        sub->add_flag("--svg", svg, "also render SVG plots");
        sub->add_option("--set", overrides, "override a config key (key=value)");
        sub->add_option("--ct-ratio", ct_ratio, "C_T as a multiple of C_P");
    };
    auto* analyze = app.add_subcommand("analyze", "closed-form flip-efficiency series");
    common(analyze);
    analyze->add_option("--cycles", cycles, "number of flips");
    auto* simulate = app.add_subcommand("simulate", "transient waveform and flip events");
    common(simulate);
    simulate->add_option("--cycles", cycles, "vibration periods to simulate");
    simulate->add_flag("--full-bridge", full_bridge, "simulate without the SSHC network");
    auto* sweep = app.add_subcommand("sweep", "harvest sweeps over C_T/C_P or V_S");
    common(sweep);
    sweep->add_option("--axis", axis, "ct or vs")->check(CLI::IsMember({"ct", "vs"}));
    sweep->add_option("--values", values, "comma list or start:stop:count");
    auto* compare = app.add_subcommand("compare", "full bridge vs SSHC harvest reports");
    common(compare);
    compare->add_option("--cycles", cycles, "vibration periods for the transient cross-check");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kExitOk : kExitConfig;
    }

    auto* sub = app.get_subcommands().front();
    const std::string name = sub->get_name();
    try {
        RawConfig raw = config_path.empty() ? RawConfig{} : read_config_file(config_path);
        for (const auto& o : overrides) {
            auto [k, v] = parse_override(o);
            raw[k] = v;
        }
        if (ct_ratio != 0.0) raw["cap_ct"] = format_number(ct_ratio) + "x";
        if (full_bridge) raw["cap_ct"] = "none";
        if (cycles != 0) raw[name == "analyze" ? "flip_cycles" : "n_cycles"] = std::to_string(cycles);
        if (!values.empty()) raw[axis == "ct" ? "sweep_ct_ratios" : "sweep_vs"] = values;

        CommandContext ctx{resolve(raw), out_dir, svg, axis};
        if (name == "analyze") cmd_analyze(ctx, out, err);
        else if (name == "simulate") cmd_simulate(ctx, out, err);
        else if (name == "sweep") cmd_sweep(ctx, out, err);
        else cmd_compare(ctx, out, err);
    } catch (const ConfigError& e) {
        err << "error: kind=config key=" << e.key() << " message=\"" << e.message() << "\"\n";
        return kExitConfig;
    } catch (const ModelError& e) {
        err << "error: kind=config key=model message=\"" << e.what() << "\"\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        err << "error: kind=simulation message=\"" << e.what() << "\"\n";
        return kExitSimulation;
    }
    return kExitOk;
}

}  // namespace sshc::cli

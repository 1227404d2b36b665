#include "sshc/cli/csv.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace sshc::cli {

std::string format_number(double x) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

namespace {

template <class... Ts>
void row(std::string& out, const Ts&... cols) {
    bool first = true;
    ((out += (first ? "" : ","), out += cols, first = false), ...);
    out += '\n';
}

}  // namespace

std::string waveform_csv(const Waveform& w) {
    std::string out = std::string(kWaveformHeader) + "\n";
    out.reserve(w.samples.size() * 64);
    for (const auto& s : w.samples)
        row(out, format_number(s.t), format_number(s.vpt), format_number(s.vt), format_number(s.vs),
            std::string(phase_name(s.phase)));
    return out;
}

std::string flips_csv(const std::vector<FlipEvent>& flips) {
    std::string out = std::string(kFlipHeader) + "\n";
    for (const auto& f : flips)
        row(out, std::to_string(f.cycle_index), format_number(f.t), format_number(f.v_before),
            format_number(f.v_after), format_number(f.efficiency));
    return out;
}

std::string sweep_csv(const SweepResult& sweep) {
    std::string out = std::string(kSweepHeader) + "\n";
    for (std::size_t i = 0; i < sweep.reports.size(); ++i) {
        const auto& r = sweep.reports[i];
        row(out, format_number(sweep.axis_values[i]), format_number(r.q_generated_halfcycle),
            format_number(r.q_wasted_halfcycle), format_number(r.q_harvested_halfcycle),
            format_number(r.power_out), format_number(r.flip_efficiency_used));
    }
    return out;
}

std::string series_csv(const FlipSeries& series, const FlipRatios& ratios) {
    std::string out = std::string(kSeriesHeader) + "\n";
    for (std::size_t i = 0; i < series.efficiencies.size(); ++i)
        row(out, std::to_string(i + 1), format_number(series.efficiencies[i]),
            format_number(closed_form_efficiency(ratios, i + 1)), format_number(series.vt_trajectory[i]));
    return out;
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << text;
    if (!out) throw std::runtime_error("write failed for '" + path + "'");
}

}  // namespace sshc::cli

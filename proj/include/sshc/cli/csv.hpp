// CSV emission. Numbers use 12 significant digits, '\n' line endings.

#pragma once

#include <string>
#include <vector>

#include "sshc/flip_analytics.hpp"
#include "sshc/harvest_compare.hpp"
#include "sshc/transient_sim.hpp"

namespace sshc::cli {

inline constexpr const char* kWaveformHeader = "t_s,vpt_V,vt_V,vs_V,phase";
inline constexpr const char* kFlipHeader = "cycle,t_s,v_before_V,v_after_V,efficiency";
inline constexpr const char* kSweepHeader = "axis,q_gen_C,q_wasted_C,q_harvested_C,power_W,eta";
inline constexpr const char* kSeriesHeader = "cycle,efficiency,closed_form,vt_V";

std::string format_number(double x);

std::string waveform_csv(const Waveform& w);
std::string flips_csv(const std::vector<FlipEvent>& flips);
std::string sweep_csv(const SweepResult& sweep);
std::string series_csv(const FlipSeries& series, const FlipRatios& ratios);

/// Writes text verbatim (binary mode, no newline translation).
void write_file(const std::string& path, const std::string& text);

}  // namespace sshc::cli

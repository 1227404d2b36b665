// Minimal SVG line charts. Cosmetic only; the CSV files are the contract.

#pragma once

#include <string>
#include <vector>

namespace sshc::cli {

struct Series {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
    bool step = false;  // draw as a staircase (switch pulses)
};

struct ChartSpec {
    std::string title;
    std::string x_label;
    std::string y_label;
    int width = 800;
    int height = 360;
    bool markers = false;
};

std::string line_chart_svg(const ChartSpec& spec, const std::vector<Series>& series);

}  // namespace sshc::cli

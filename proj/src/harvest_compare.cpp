#include "sshc/harvest_compare.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "sshc/detail/parallel.hpp"
#include "sshc/flip_analytics.hpp"

namespace sshc {

namespace {

void require_increasing(std::span<const double> axis, const char* what) {
    for (std::size_t i = 1; i < axis.size(); ++i)
        if (!(axis[i] > axis[i - 1])) throw ModelError(std::string(what) + " must be strictly increasing");
}

void check_ratios(std::span<const double> ratios) {
    for (double r : ratios)
        if (!(r > 0.0) || !std::isfinite(r)) throw ModelError("ct ratios must be > 0");
    require_increasing(ratios, "ct ratios");
}

void check_vs(std::span<const double> vs_values) {
    for (double v : vs_values)
        if (!(v >= 0.0) || !std::isfinite(v)) throw ModelError("vs values must be >= 0");
    require_increasing(vs_values, "vs values");
}

double wasted_factor(double eta) { return eta == 0.0 ? 2.0 : 1.0 - eta; }

HarvestReport ct_point(const PiezoSource& src, const RectifierStage& stage, double ratio) {
    return harvest_report(src, stage, steady_state_efficiency(FlipRatios::from_ct_ratio(ratio)));
}

HarvestReport vs_point(const PiezoSource& src, double vd, double vs, double eta) {
    return harvest_report(src, RectifierStage{vd, FixedVoltage{vs}}, eta);
}

}  // namespace

HarvestReport harvest_report(const PiezoSource& src, const RectifierStage& stage, double eta) {
    if (!(eta >= 0.0 && eta < 1.0)) throw ModelError("eta must be in [0, 1)");
    src.validate();
    stage.validate();
    const double v0 = conduction_threshold(stage);
    HarvestReport r;
    r.flip_efficiency_used = eta;
    r.q_generated_halfcycle = half_cycle_charge(src);
    r.q_wasted_halfcycle = src.cap_cp * v0 * wasted_factor(eta);
    r.q_harvested_halfcycle = std::max(0.0, r.q_generated_halfcycle - r.q_wasted_halfcycle);
    r.power_out = 2.0 * src.frequency * r.q_harvested_halfcycle * stage.initial_vs();
    return r;
}

double mode_efficiency(const EtaMode& mode) {
    if (!mode.sshc) return 0.0;
    return steady_state_efficiency(FlipRatios::from_ct_ratio(mode.ct_ratio));
}

double storage_voltage_cutoff(const PiezoSource& src, double vd, const EtaMode& mode) {
    const double k = wasted_factor(mode_efficiency(mode));
    return std::max(0.0, half_cycle_charge(src) / (k * src.cap_cp) - 2.0 * vd);
}

SweepResult sweep_ct_ratio(const PiezoSource& src, const RectifierStage& stage,
                           std::span<const double> ratios) {
    check_ratios(ratios);
    SweepResult out{{ratios.begin(), ratios.end()}, std::vector<HarvestReport>(ratios.size())};
    detail::parallel_for(ratios.size(),
                         [&](std::size_t i) { out.reports[i] = ct_point(src, stage, ratios[i]); });
    return out;
}

SweepResult sweep_storage_voltage(const PiezoSource& src, double vd,
                                  std::span<const double> vs_values, const EtaMode& mode) {
    check_vs(vs_values);
    const double eta = mode_efficiency(mode);
    SweepResult out{{vs_values.begin(), vs_values.end()}, std::vector<HarvestReport>(vs_values.size())};
    detail::parallel_for(vs_values.size(),
                         [&](std::size_t i) { out.reports[i] = vs_point(src, vd, vs_values[i], eta); });
    return out;
}

namespace serial {

SweepResult sweep_ct_ratio(const PiezoSource& src, const RectifierStage& stage,
                           std::span<const double> ratios) {
    check_ratios(ratios);
    SweepResult out;
    for (double r : ratios) {
        out.axis_values.push_back(r);
        out.reports.push_back(ct_point(src, stage, r));
    }
    return out;
}

SweepResult sweep_storage_voltage(const PiezoSource& src, double vd,
                                  std::span<const double> vs_values, const EtaMode& mode) {
    check_vs(vs_values);
    const double eta = mode_efficiency(mode);
    SweepResult out;
    for (double vs : vs_values) {
        out.axis_values.push_back(vs);
        out.reports.push_back(vs_point(src, vd, vs, eta));
    }
    return out;
}

}  // namespace serial

}  // namespace sshc

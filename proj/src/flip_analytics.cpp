#include "sshc/flip_analytics.hpp"

#include <cmath>

#include "sshc/harvester_model.hpp"

namespace sshc {

FlipRatios FlipRatios::from_caps(double cap_cp, double cap_ct) {
    if (!(cap_cp > 0.0) || !(cap_ct > 0.0) || !std::isfinite(cap_cp) || !std::isfinite(cap_ct))
        throw ModelError("flip ratios need positive finite capacitances");
    const double total = cap_cp + cap_ct;
    return FlipRatios{cap_cp / total, cap_ct / total};
}

FlipRatios FlipRatios::from_ct_ratio(double ct_over_cp) {
    return from_caps(1.0, ct_over_cp);
}

double charge_share(double va, double ca, double vb, double cb) {
    if (!(ca > 0.0) || !(cb > 0.0))
        throw ModelError("charge_share: capacitances must be > 0");
    return (ca * va + cb * vb) / (ca + cb);
}

FlipStep flip_step(double v0, double vt_in, const FlipRatios& ratios, FlipDirection dir) {
    if (v0 < 0.0) throw ModelError("flip_step: v0 must be >= 0");
    // absorb, then clear C_P, then dump back reversed into the empty C_P
    const double vt_absorbed = ratios.alpha * v0 + ratios.beta * vt_in;
    const double vt_out = ratios.beta * vt_absorbed;
    const double sign = dir == FlipDirection::PosToNeg ? -1.0 : 1.0;
    return FlipStep{sign * vt_out, vt_out};
}

FlipSeries flip_efficiency_series(const FlipRatios& ratios, double v0, std::size_t n_cycles) {
    if (n_cycles < 1) throw ModelError("flip_efficiency_series: n_cycles must be >= 1");
    if (!(v0 > 0.0)) throw ModelError("flip_efficiency_series: v0 must be > 0");
    FlipSeries series;
    series.efficiencies.reserve(n_cycles);
    series.vt_trajectory.reserve(n_cycles);
    series.limit = steady_state_efficiency(ratios);
    double vt = 0.0;
    FlipDirection dir = FlipDirection::PosToNeg;
    for (std::size_t n = 0; n < n_cycles; ++n) {
        const FlipStep s = flip_step(v0, vt, ratios, dir);
        vt = s.vt_out;
        series.efficiencies.push_back(std::abs(s.vpt_out) / v0);
        series.vt_trajectory.push_back(vt);
        dir = opposite(dir);
    }
    return series;
}

double ipow(double x, std::uint64_t n) {
    double result = 1.0;
    while (n) {
        if (n & 1u) result *= x;
        x *= x;
        n >>= 1u;
    }
    return result;
}

double closed_form_efficiency(const FlipRatios& ratios, std::uint64_t n) {
    const double b = ratios.beta;
    return b * (1.0 - ipow(b, 2 * n)) / (1.0 + b);
}

double steady_state_efficiency(const FlipRatios& ratios) {
    return ratios.beta / (1.0 + ratios.beta);
}

double first_flip_efficiency(const FlipRatios& ratios) {
    return ratios.alpha * ratios.beta;
}

double optimal_single_flip_ct(double cap_cp) {
    if (!(cap_cp > 0.0)) throw ModelError("optimal_single_flip_ct: cap_cp must be > 0");
    // d/dC_T [C_P C_T / (C_P + C_T)^2] = C_P (C_P - C_T) / (C_P + C_T)^3
    return cap_cp;
}

std::size_t cycles_to_converge(const FlipRatios& ratios, double fraction) {
    if (!(fraction > 0.0 && fraction < 1.0))
        throw ModelError("cycles_to_converge: fraction must be in (0, 1)");
    // eta_n / eta_inf = 1 - beta^(2n)
    const double estimate = std::log1p(-fraction) / (2.0 * std::log(ratios.beta));
    std::uint64_t n = estimate < 1.0 ? 1 : static_cast<std::uint64_t>(std::ceil(estimate));
    const double target = fraction * steady_state_efficiency(ratios);
    // the ceil may land one off at boundaries; settle against the series itself
    while (n > 1 && closed_form_efficiency(ratios, n - 1) >= target) --n;
    while (closed_form_efficiency(ratios, n) < target) ++n;
    return static_cast<std::size_t>(n);
}

}  // namespace sshc

#include "sshc/harvester_model.hpp"

#include <cmath>

namespace sshc {

namespace {

void require(bool ok, const char* what) {
    if (!ok) throw ModelError(what);
}

bool finite_positive(double x) { return std::isfinite(x) && x > 0.0; }

}  // namespace

double PiezoSource::current(double t) const {
    return amplitude_ip * std::sin(omega() * t);
}

double PiezoSource::charge_between(double t0, double t1) const {
    // cos(a) - cos(b) in product form keeps precision for short intervals.
    const double w = omega();
    return amplitude_ip / w * 2.0 * std::sin(0.5 * w * (t0 + t1)) * std::sin(0.5 * w * (t1 - t0));
}

void PiezoSource::validate() const {
    require(finite_positive(amplitude_ip), "amplitude_ip must be > 0");
    require(finite_positive(frequency), "frequency must be > 0");
    require(finite_positive(cap_cp), "cap_cp must be > 0");
    if (res_rp) require(finite_positive(*res_rp), "res_rp must be > 0 or infinite");
}

double RectifierStage::initial_vs() const {
    if (const auto* fixed = std::get_if<FixedVoltage>(&storage)) return fixed->vs;
    return std::get<FiniteCap>(storage).vs_initial;
}

void RectifierStage::validate() const {
    require(std::isfinite(diode_drop_vd) && diode_drop_vd >= 0.0, "diode_drop_vd must be >= 0");
    if (const auto* fixed = std::get_if<FixedVoltage>(&storage)) {
        require(std::isfinite(fixed->vs) && fixed->vs >= 0.0, "vs must be >= 0");
    } else {
        const auto& cap = std::get<FiniteCap>(storage);
        require(finite_positive(cap.cs), "cap_cs must be > 0");
        require(std::isfinite(cap.vs_initial) && cap.vs_initial >= 0.0, "vs must be >= 0");
    }
}

void SshcNetwork::validate() const {
    require(finite_positive(cap_ct), "cap_ct must be > 0");
    require(std::isfinite(volt_vt), "volt_vt must be finite");
}

double conduction_threshold(double vs, double vd) { return vs + 2.0 * vd; }

double conduction_threshold(const RectifierStage& stage) {
    return conduction_threshold(stage.initial_vs(), stage.diode_drop_vd);
}

double wasted_charge_fullbridge(const PiezoSource& src, const RectifierStage& stage) {
    return 2.0 * src.cap_cp * conduction_threshold(stage);
}

double half_cycle_charge(const PiezoSource& src) {
    return 2.0 * src.amplitude_ip / src.omega();
}

double open_circuit_vpp(const PiezoSource& src) {
    if (src.has_leakage())
        throw ModelError("open_circuit_vpp requires res_rp infinite");
    return half_cycle_charge(src) / src.cap_cp;
}

bool fullbridge_conducts(const PiezoSource& src, const RectifierStage& stage) {
    return half_cycle_charge(src) / src.cap_cp > 2.0 * conduction_threshold(stage);
}

}  // namespace sshc

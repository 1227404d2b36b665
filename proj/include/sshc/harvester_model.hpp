// Electrical model of a piezoelectric harvester and its rectifier front end.
//
// The transducer is an ideal sinusoidal current source I_P = Ip*sin(2*pi*f*t)
// in parallel with its plate capacitance C_P and an optional leakage
// resistance R_P. Diodes are ideal threshold devices with a constant drop V_D.
// All voltages are signed, V_PT = V_P - V_N.

#pragma once

#include <numbers>
#include <optional>
#include <variant>

#include "sshc/errors.hpp"

namespace sshc {

struct PiezoSource {
    double amplitude_ip = 0.0;       // A
    double frequency = 0.0;          // Hz
    double cap_cp = 0.0;             // F
    std::optional<double> res_rp;    // Ohm, nullopt = no leakage

    double omega() const { return 2.0 * std::numbers::pi * frequency; }
    double period() const { return 1.0 / frequency; }
    bool has_leakage() const { return res_rp.has_value(); }

    /// Instantaneous source current at time t.
    double current(double t) const;

    /// Exact charge delivered by the source over [t0, t1].
    double charge_between(double t0, double t1) const;

    void validate() const;
    bool operator==(const PiezoSource&) const = default;
};

struct FixedVoltage {
    double vs = 0.0;
    bool operator==(const FixedVoltage&) const = default;
};

struct FiniteCap {
    double cs = 0.0;
    double vs_initial = 0.0;
    bool operator==(const FiniteCap&) const = default;
};

using Storage = std::variant<FixedVoltage, FiniteCap>;

struct RectifierStage {
    double diode_drop_vd = 0.0;
    Storage storage = FixedVoltage{};

    /// Storage voltage at the start of a run.
    double initial_vs() const;
    bool fixed_storage() const { return std::holds_alternative<FixedVoltage>(storage); }

    void validate() const;
    bool operator==(const RectifierStage&) const = default;
};

struct SshcNetwork {
    double cap_ct = 0.0;
    // Voltage of the C_T plate that meets V_P during phi_p, relative to the other plate.
    double volt_vt = 0.0;

    void validate() const;
    bool operator==(const SshcNetwork&) const = default;
};

/// V_S + 2 V_D at a given storage voltage.
double conduction_threshold(double vs, double vd);
double conduction_threshold(const RectifierStage& stage);

/// Charge lost recharging C_P between the two thresholds each half cycle
/// of a plain full-bridge rectifier: 2 C_P (V_S + 2 V_D).
double wasted_charge_fullbridge(const PiezoSource& src, const RectifierStage& stage);

/// Charge delivered by the source over one half cycle: 2 Ip / omega.
double half_cycle_charge(const PiezoSource& src);

/// Peak-to-peak open-circuit voltage 2 Ip / (omega C_P). Requires R_P infinite.
double open_circuit_vpp(const PiezoSource& src);

/// True when the open-circuit swing exceeds 2 (V_S + 2 V_D), i.e. a plain
/// full bridge can ever conduct in steady state.
bool fullbridge_conducts(const PiezoSource& src, const RectifierStage& stage);

}  // namespace sshc

// Charge and power bookkeeping per half cycle for the full bridge and for the
// SSHC front end, plus sweeps over C_T/C_P and the storage voltage.
//
// The sweeps are evaluated point-parallel with OpenMP. The serial namespace
// holds the reference loops the parallel kernels are tested against.

#pragma once

#include <span>
#include <vector>

#include "sshc/harvester_model.hpp"

namespace sshc {

struct HarvestReport {
    double q_generated_halfcycle = 0.0;
    double q_wasted_halfcycle = 0.0;
    double q_harvested_halfcycle = 0.0;
    double power_out = 0.0;
    double flip_efficiency_used = 0.0;

    bool operator==(const HarvestReport&) const = default;
};

struct SweepResult {
    std::vector<double> axis_values;
    std::vector<HarvestReport> reports;

    bool operator==(const SweepResult&) const = default;
};

/// Front end used for a storage-voltage sweep.
struct EtaMode {
    bool sshc = false;
    double ct_ratio = 1.0;  // C_T / C_P, used when sshc is set

    static EtaMode full_bridge() { return {}; }
    static EtaMode sshc_steady(double ratio) { return {true, ratio}; }
};

/// eta = 0 selects the full bridge, where C_P swings across both thresholds.
/// For 0 < eta < 1 the flip lands at -eta V_0 and only (1 - eta) C_P V_0 is
/// spent recharging C_P.
HarvestReport harvest_report(const PiezoSource& src, const RectifierStage& stage, double eta);

/// Flip efficiency an EtaMode implies: 0 or the steady-state value.
double mode_efficiency(const EtaMode& mode);

/// Storage voltage above which the front end no longer harvests.
double storage_voltage_cutoff(const PiezoSource& src, double vd, const EtaMode& mode);

SweepResult sweep_ct_ratio(const PiezoSource& src, const RectifierStage& stage,
                           std::span<const double> ratios);

SweepResult sweep_storage_voltage(const PiezoSource& src, double vd,
                                  std::span<const double> vs_values, const EtaMode& mode);

namespace serial {

SweepResult sweep_ct_ratio(const PiezoSource& src, const RectifierStage& stage,
                           std::span<const double> ratios);

SweepResult sweep_storage_voltage(const PiezoSource& src, double vd,
                                  std::span<const double> vs_values, const EtaMode& mode);

}  // namespace serial

}  // namespace sshc

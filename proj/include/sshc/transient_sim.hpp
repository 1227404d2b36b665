// Fixed-step transient simulation of a piezoelectric harvester driving either
// a plain full bridge or a one-stage SSHC flip network.
//
// The source current is integrated exactly over each sub-interval. Diode
// conduction is handled by projecting V_PT back onto the conduction threshold
// and routing the excess charge to storage. At each current zero crossing the
// three switch phases are scheduled on the timeline; each closing is an
// instantaneous charge share, and between closings the source charge goes to
// whatever capacitance the closed switches present.

#pragma once

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

#include "sshc/flip_analytics.hpp"
#include "sshc/harvester_model.hpp"

namespace sshc {

enum class Phase { Idle, PhiP, Phi0, PhiN };

std::string_view phase_name(Phase p);

/// How switch phases are ordered at each crossing.
enum class PhaseOrdering {
    PolarityMatched,   // phi_p, phi_0, phi_n for V_PT > 0, mirrored for V_PT < 0
    AlwaysPhiNFirst,   // ignores polarity; fault injection for ordering tests
};

struct SimConfig {
    PiezoSource src;
    RectifierStage stage;
    std::optional<SshcNetwork> sshc;  // nullopt = full-bridge baseline
    double dt = 0.0;
    std::size_t n_cycles = 1;
    double phase_pulse_width = 0.0;
    double phase_gap = 0.0;
    double initial_vpt = 0.0;
    PhaseOrdering ordering = PhaseOrdering::PolarityMatched;
    bool record_waveform = true;
    std::size_t waveform_stride = 1;  // keep every k-th grid sample

    void validate() const;
    bool operator==(const SimConfig&) const = default;
};

/// Where the source charge went since t = 0. Charges in coulombs.
struct ChargeLedger {
    double q_source = 0.0;    // sum of per-interval source charge
    double q_network = 0.0;   // net charge from node V_P into the C_T network
    double q_shorted = 0.0;   // charge dumped through the phi_0 switch
    double q_leak = 0.0;      // charge lost through R_P
    double q_bridge = 0.0;    // signed charge out of node V_P through the rectifier
};

struct CircuitState {
    double t = 0.0;
    double vpt = 0.0;
    double vt = 0.0;
    double vs = 0.0;
    double q_harvested = 0.0;
    Phase phase = Phase::Idle;
    bool conducting = false;
    // flip bookkeeping: phases completed in the current flip and its direction
    int flip_stage = 0;
    std::optional<FlipDirection> flip_dir;
    ChargeLedger ledger;
};

struct FlipEvent {
    std::size_t cycle_index = 0;  // 1-based flip count
    double t = 0.0;
    double v_before = 0.0;
    double v_after = 0.0;
    double efficiency = 0.0;
    FlipDirection direction = FlipDirection::PosToNeg;
};

struct WaveformSample {
    double t;
    double vpt;
    double vt;
    double vs;
    Phase phase;
};

struct Waveform {
    std::vector<WaveformSample> samples;
};

/// Capacitive energy across one switch closing.
struct PhaseRecord {
    double t = 0.0;
    Phase phase = Phase::Idle;
    double energy_before = 0.0;
    double energy_after = 0.0;
};

struct SimResult {
    Waveform waveform;
    std::vector<FlipEvent> flips;
    std::vector<PhaseRecord> phase_log;
    CircuitState final_state;
    CircuitState initial_state;
    // charge into storage during each half cycle, k = 1..2*n_cycles
    std::vector<double> q_harvested_per_half_cycle;
};

struct ZeroCrossing {
    double t = 0.0;
    FlipDirection direction = FlipDirection::PosToNeg;
};

/// Defaults that put the pre-flip plateau at V_S + 2 V_D = 2.4 V with C_T = C_P:
/// Ip = 14 uA at 100 Hz, C_P = 10 nF, V_S = 2.0 V, V_D = 0.2 V, dt = T/10^4,
/// 10 ns pulses with 10 ns gaps, 10 cycles.
SimConfig default_sim_config();

/// Source current zero crossings t_k = k / (2 f), k = 1 .. 2 n_cycles.
std::vector<ZeroCrossing> zero_crossing_times(const PiezoSource& src, std::size_t n_cycles);

/// The three closings of a flip, in the order dictated by direction and ordering.
std::vector<Phase> phase_sequence(FlipDirection dir, PhaseOrdering ordering);

CircuitState initial_state(const SimConfig& cfg);

/// Closes the switches of `phase` (instantaneous share) or, for Phase::Idle,
/// opens the currently closed switches. Throws SimulationError when the phase
/// breaks the configured ordering.
CircuitState apply_phase(const CircuitState& state, Phase phase, const SimConfig& cfg);

/// Injects charge dq over an interval of length h under the currently closed
/// switches, applying R_P decay first and the diode clamp after.
CircuitState step_with_charge(const CircuitState& state, double dq, double h, const SimConfig& cfg);

/// Advances the state from state.t to t1 with the exact source charge.
CircuitState advance_to(const CircuitState& state, double t1, const SimConfig& cfg);

/// One grid step of length cfg.dt.
CircuitState step(const CircuitState& state, const SimConfig& cfg);

SimResult run(const SimConfig& cfg);

std::vector<double> extract_efficiency_trajectory(const std::vector<FlipEvent>& events);

/// Capacitive energy 1/2 C_P V_PT^2 + 1/2 C_T V_T^2.
double capacitive_energy(const CircuitState& state, const SimConfig& cfg);

/// Closed-form source charge minus every ledger sink, relative to the charge
/// throughput of the run.
double ledger_residual(const SimResult& result, const SimConfig& cfg);

}  // namespace sshc

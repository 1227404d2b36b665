#include "sshc/transient_sim.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace sshc {

namespace {

enum class EventKind { Crossing, Close, Open };

struct Event {
    double t;
    EventKind kind;
    std::size_t crossing;  // 1-based
};

double cap_ct_of(const SimConfig& cfg) { return cfg.sshc ? cfg.sshc->cap_ct : 0.0; }

double threshold(const CircuitState& s, const SimConfig& cfg) {
    return conduction_threshold(s.vs, cfg.stage.diode_drop_vd);
}

double sign_of(double x) { return x < 0.0 ? -1.0 : 1.0; }

std::vector<Event> build_events(const SimConfig& cfg) {
    std::vector<Event> events;
    const double w = cfg.phase_pulse_width;
    const double g = cfg.phase_gap;
    const auto crossings = zero_crossing_times(cfg.src, cfg.n_cycles);
    events.reserve(crossings.size() * 7);
    for (std::size_t k = 0; k < crossings.size(); ++k) {
        const double t0 = crossings[k].t;
        events.push_back({t0, EventKind::Crossing, k + 1});
        if (!cfg.sshc) continue;
        // phase kinds are resolved at run time from V_PT polarity
        for (int p = 0; p < 3; ++p) {
            const double start = t0 + p * (w + g);
            events.push_back({start, EventKind::Close, k + 1});
            events.push_back({start + w, EventKind::Open, k + 1});
        }
    }
    return events;
}

}  // namespace

std::string_view phase_name(Phase p) {
    switch (p) {
        case Phase::Idle: return "Idle";
        case Phase::PhiP: return "PhiP";
        case Phase::Phi0: return "Phi0";
        case Phase::PhiN: return "PhiN";
    }
    return "Idle";
}

void SimConfig::validate() const {
    src.validate();
    stage.validate();
    if (sshc) sshc->validate();
    const double period = src.period();
    if (!(dt > 0.0) || !std::isfinite(dt)) throw ModelError("dt must be > 0");
    if (dt > period / 1000.0 * (1.0 + 1e-12)) throw ModelError("dt must be <= period/1000");
    if (n_cycles < 1) throw ModelError("n_cycles must be >= 1");
    if (!(phase_pulse_width > 0.0)) throw ModelError("phase_pulse_width must be > 0");
    if (!(phase_gap >= 0.0)) throw ModelError("phase_gap must be >= 0");
    if (!(3.0 * phase_pulse_width + 2.0 * phase_gap < 0.02 * period))
        throw ModelError("phase_pulse_width: switching window must be < 2% of the period");
    if (waveform_stride < 1) throw ModelError("waveform_stride must be >= 1");
    if (!std::isfinite(initial_vpt)) throw ModelError("initial_vpt must be finite");
}

SimConfig default_sim_config() {
    SimConfig cfg;
    cfg.src = PiezoSource{14e-6, 100.0, 10e-9, std::nullopt};
    cfg.stage = RectifierStage{0.2, FixedVoltage{2.0}};
    cfg.sshc = SshcNetwork{10e-9, 0.0};
    cfg.dt = cfg.src.period() / 1e4;
    cfg.n_cycles = 10;
    cfg.phase_pulse_width = 10e-9;
    cfg.phase_gap = 10e-9;
    return cfg;
}

std::vector<ZeroCrossing> zero_crossing_times(const PiezoSource& src, std::size_t n_cycles) {
    if (n_cycles < 1) throw ModelError("zero_crossing_times: n_cycles must be >= 1");
    std::vector<ZeroCrossing> out;
    out.reserve(2 * n_cycles);
    for (std::size_t k = 1; k <= 2 * n_cycles; ++k) {
        // odd k ends a positive half sine
        out.push_back({static_cast<double>(k) / (2.0 * src.frequency),
                       k % 2 == 1 ? FlipDirection::PosToNeg : FlipDirection::NegToPos});
    }
    return out;
}

std::vector<Phase> phase_sequence(FlipDirection dir, PhaseOrdering ordering) {
    if (ordering == PhaseOrdering::AlwaysPhiNFirst) return {Phase::PhiN, Phase::Phi0, Phase::PhiP};
    if (dir == FlipDirection::PosToNeg) return {Phase::PhiP, Phase::Phi0, Phase::PhiN};
    return {Phase::PhiN, Phase::Phi0, Phase::PhiP};
}

CircuitState initial_state(const SimConfig& cfg) {
    CircuitState s;
    s.vpt = cfg.initial_vpt;
    s.vt = cfg.sshc ? cfg.sshc->volt_vt : 0.0;
    s.vs = cfg.stage.initial_vs();
    return s;
}

double capacitive_energy(const CircuitState& state, const SimConfig& cfg) {
    return 0.5 * cfg.src.cap_cp * state.vpt * state.vpt +
           0.5 * cap_ct_of(cfg) * state.vt * state.vt;
}

CircuitState apply_phase(const CircuitState& state, Phase phase, const SimConfig& cfg) {
    if (!cfg.sshc) throw SimulationError("apply_phase: no SSHC network configured");
    CircuitState s = state;
    s.conducting = false;

    if (phase == Phase::Idle) {
        if (state.phase == Phase::Idle) throw SimulationError("apply_phase: no switch is closed");
        s.phase = Phase::Idle;
        if (s.flip_stage == 3) {
            s.flip_stage = 0;
            s.flip_dir.reset();
        }
        return s;
    }

    if (state.phase != Phase::Idle)
        throw SimulationError("apply_phase: phases overlap (" + std::string(phase_name(state.phase)) +
                              " still closed)");
    if (s.flip_stage == 0 && !s.flip_dir)
        s.flip_dir = s.vpt >= 0.0 ? FlipDirection::PosToNeg : FlipDirection::NegToPos;
    const auto expected = phase_sequence(*s.flip_dir, cfg.ordering);
    if (s.flip_stage >= 3 || expected[s.flip_stage] != phase)
        throw SimulationError("apply_phase: " + std::string(phase_name(phase)) +
                              " out of order for this flip");

    const double cp = cfg.src.cap_cp;
    const double ct = cfg.sshc->cap_ct;
    switch (phase) {
        case Phase::PhiP: {
            const double v = charge_share(s.vpt, cp, s.vt, ct);
            s.ledger.q_network += ct * (v - s.vt);
            s.vpt = v;
            s.vt = v;
            break;
        }
        case Phase::Phi0:
            s.ledger.q_shorted += cp * s.vpt;
            s.vpt = 0.0;
            break;
        case Phase::PhiN: {
            // C_T reversed: V_PT = -V_T once settled
            const double v = charge_share(s.vpt, cp, -s.vt, ct);
            s.ledger.q_network += ct * (v + s.vt);
            s.vpt = v;
            s.vt = -v;
            break;
        }
        case Phase::Idle: break;
    }
    s.phase = phase;
    s.flip_stage += 1;
    return s;
}

CircuitState step_with_charge(const CircuitState& state, double dq, double h, const SimConfig& cfg) {
    CircuitState s = state;
    s.ledger.q_source += dq;
    s.conducting = false;

    if (s.phase == Phase::Phi0) {
        // C_P is shorted; the source current circulates through the switch
        s.ledger.q_shorted += dq;
        return s;
    }

    const bool connected = s.phase == Phase::PhiP || s.phase == Phase::PhiN;
    const double ct = connected ? cfg.sshc->cap_ct : 0.0;
    const double c_eff = cfg.src.cap_cp + ct;
    const double v_start = s.vpt;

    double v = s.vpt;
    if (cfg.src.res_rp && h > 0.0) {
        const double decayed = v * std::exp(-h / (*cfg.src.res_rp * c_eff));
        s.ledger.q_leak += c_eff * (v - decayed);
        v = decayed;
    }
    v += dq / c_eff;

    const double th = threshold(s, cfg);
    if (std::abs(v) > th) {
        const double excess = c_eff * (std::abs(v) - th);
        double delivered = excess;
        if (const auto* cap = std::get_if<FiniteCap>(&cfg.stage.storage)) {
            // storage and V_PT rise together while the bridge conducts
            delivered = excess * cap->cs / (cap->cs + c_eff);
            s.vs += delivered / cap->cs;
        }
        s.q_harvested += delivered;
        s.ledger.q_bridge += sign_of(v) * delivered;
        v = sign_of(v) * threshold(s, cfg);
        s.conducting = true;
    }

    if (connected) {
        s.ledger.q_network += ct * (v - v_start);
        s.vt = s.phase == Phase::PhiP ? v : -v;
    }
    s.vpt = v;
    return s;
}

CircuitState advance_to(const CircuitState& state, double t1, const SimConfig& cfg) {
    if (!(t1 > state.t)) return state;
    CircuitState s = step_with_charge(state, cfg.src.charge_between(state.t, t1), t1 - state.t, cfg);
    s.t = t1;
    return s;
}

CircuitState step(const CircuitState& state, const SimConfig& cfg) {
    return advance_to(state, state.t + cfg.dt, cfg);
}

SimResult run(const SimConfig& cfg) {
    cfg.validate();

    SimResult result;
    CircuitState s = initial_state(cfg);
    result.initial_state = s;

    const double t_end = static_cast<double>(cfg.n_cycles) * cfg.src.period();
    const auto n_grid = static_cast<std::size_t>(std::ceil(t_end / cfg.dt - 1e-9));
    const auto grid_time = [&](std::size_t i) {
        return i >= n_grid ? t_end : static_cast<double>(i) * cfg.dt;
    };
    const double tol = 1e-9 * cfg.dt;
    constexpr double inf = std::numeric_limits<double>::infinity();

    const std::vector<Event> events = build_events(cfg);
    const auto record = [&](const CircuitState& st) {
        if (!cfg.record_waveform) return;
        auto& samples = result.waveform.samples;
        if (!samples.empty() && !(st.t > samples.back().t)) {
            samples.back() = {st.t, st.vpt, st.vt, st.vs, st.phase};
            return;
        }
        samples.push_back({st.t, st.vpt, st.vt, st.vs, st.phase});
    };
    if (cfg.record_waveform) result.waveform.samples.reserve(n_grid / cfg.waveform_stride + events.size() + 2);
    result.q_harvested_per_half_cycle.reserve(2 * cfg.n_cycles);
    record(s);

    std::size_t grid = 0;
    std::size_t next_event = 0;
    double q_at_last_crossing = s.q_harvested;
    FlipEvent pending{};
    std::vector<Phase> sequence;
    int closings = 0;

    while (grid < n_grid || next_event < events.size()) {
        const double t_grid = grid < n_grid ? grid_time(grid + 1) : inf;
        const double t_event = next_event < events.size() ? events[next_event].t : inf;

        if (t_event > t_grid + tol) {
            s = advance_to(s, t_grid, cfg);
            ++grid;
            if (grid % cfg.waveform_stride == 0 || grid == n_grid) record(s);
            continue;
        }

        double target = t_event;
        const bool on_grid = std::abs(t_event - t_grid) <= tol;
        if (on_grid) target = t_grid;
        s = advance_to(s, target, cfg);
        if (on_grid) ++grid;

        while (next_event < events.size() && events[next_event].t <= target + tol) {
            const Event& ev = events[next_event++];
            switch (ev.kind) {
                case EventKind::Crossing:
                    result.q_harvested_per_half_cycle.push_back(s.q_harvested - q_at_last_crossing);
                    q_at_last_crossing = s.q_harvested;
                    pending = FlipEvent{};
                    pending.cycle_index = ev.crossing;
                    pending.t = s.t;
                    pending.v_before = s.vpt;
                    pending.direction = s.vpt >= 0.0 ? FlipDirection::PosToNeg : FlipDirection::NegToPos;
                    sequence = phase_sequence(pending.direction, cfg.ordering);
                    closings = 0;
                    break;
                case EventKind::Close: {
                    const Phase phase = sequence.at(static_cast<std::size_t>(closings++));
                    PhaseRecord rec{s.t, phase, capacitive_energy(s, cfg), 0.0};
                    s = apply_phase(s, phase, cfg);
                    rec.energy_after = capacitive_energy(s, cfg);
                    result.phase_log.push_back(rec);
                    break;
                }
                case EventKind::Open:
                    s = apply_phase(s, Phase::Idle, cfg);
                    if (closings == 3) {
                        pending.v_after = s.vpt;
                        pending.efficiency = pending.v_before == 0.0
                                                 ? 0.0
                                                 : std::abs(s.vpt) / std::abs(pending.v_before);
                        result.flips.push_back(pending);
                    }
                    break;
            }
            record(s);
        }
    }

    result.final_state = s;
    return result;
}

std::vector<double> extract_efficiency_trajectory(const std::vector<FlipEvent>& events) {
    if (events.empty()) throw SimulationError("extract_efficiency_trajectory: no flip events");
    std::vector<double> out;
    out.reserve(events.size());
    for (const auto& e : events) out.push_back(e.efficiency);
    return out;
}

double ledger_residual(const SimResult& result, const SimConfig& cfg) {
    const CircuitState& a = result.initial_state;
    const CircuitState& b = result.final_state;
    const double q_src = cfg.src.charge_between(a.t, b.t);
    const double d_cp = cfg.src.cap_cp * (b.vpt - a.vpt);
    const ChargeLedger& l = b.ledger;
    const double sinks = d_cp + l.q_network + l.q_shorted + l.q_bridge + l.q_leak;
    const double scale = std::abs(q_src) + std::abs(d_cp) + std::abs(l.q_network) +
                         std::abs(l.q_shorted) + std::abs(l.q_bridge) + std::abs(l.q_leak) +
                         half_cycle_charge(cfg.src);
    return std::abs(q_src - sinks) / scale;
}

}  // namespace sshc

// Closed-form charge-inversion algebra for a one-stage switched-capacitor
// flip. Each flip runs three phases: C_P shares charge with C_T in like
// polarity, C_P is shorted, then C_T is reconnected reversed so C_P lands at
// the opposite sign. The engine works on magnitudes plus a direction token.

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace sshc {

enum class FlipDirection { PosToNeg, NegToPos };

inline FlipDirection opposite(FlipDirection d) {
    return d == FlipDirection::PosToNeg ? FlipDirection::NegToPos : FlipDirection::PosToNeg;
}

/// Sharing ratios alpha = C_P/(C_P+C_T), beta = C_T/(C_P+C_T).
struct FlipRatios {
    double alpha = 0.5;
    double beta = 0.5;

    static FlipRatios from_caps(double cap_cp, double cap_ct);
    static FlipRatios from_ct_ratio(double ct_over_cp);
};

struct FlipStep {
    double vpt_out = 0.0;  // signed per direction
    double vt_out = 0.0;   // magnitude carried into the next flip
};

struct FlipSeries {
    std::vector<double> efficiencies;   // eta_n, n = 1..N
    std::vector<double> vt_trajectory;  // |V_T| after each flip
    double limit = 0.0;
};

/// Voltage after connecting two capacitors in parallel.
double charge_share(double va, double ca, double vb, double cb);

/// One three-phase flip starting from |V_PT| = v0 with |V_T| = vt_in.
FlipStep flip_step(double v0, double vt_in, const FlipRatios& ratios,
                   FlipDirection dir = FlipDirection::PosToNeg);

/// Iterated flips at constant v0, starting from an empty C_T.
FlipSeries flip_efficiency_series(const FlipRatios& ratios, double v0, std::size_t n_cycles);

/// eta_n = beta (1 - beta^(2n)) / (1 + beta).
double closed_form_efficiency(const FlipRatios& ratios, std::uint64_t n);

/// Fixed point of the flip recurrence, beta / (1 + beta).
double steady_state_efficiency(const FlipRatios& ratios);

/// First-flip efficiency alpha * beta.
double first_flip_efficiency(const FlipRatios& ratios);

/// C_T maximizing the first-flip efficiency for a given C_P.
double optimal_single_flip_ct(double cap_cp);

/// Smallest n with eta_n >= fraction * eta_inf.
std::size_t cycles_to_converge(const FlipRatios& ratios, double fraction);

/// x^n by repeated squaring.
double ipow(double x, std::uint64_t n);

}  // namespace sshc

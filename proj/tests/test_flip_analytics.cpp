#include <gtest/gtest.h>

#include <cmath>

#include "oracles.hpp"
#include "sshc/flip_analytics.hpp"
#include "sshc/harvester_model.hpp"

using namespace sshc;

namespace {

const FlipRatios kEqual = FlipRatios::from_ct_ratio(1.0);
const FlipRatios kHundred = FlipRatios::from_ct_ratio(100.0);

double energy(double c1, double v1, double c2, double v2) { return 0.5 * (c1 * v1 * v1 + c2 * v2 * v2); }

}  // namespace

TEST(FlipRatios, SumToOne) {
    for (int i = 0; i < 500; ++i) {
        const auto r = FlipRatios::from_caps(oracle::log_uniform(1e-12, 1e-3), oracle::log_uniform(1e-12, 1e-3));
        EXPECT_GT(r.alpha, 0.0);
        EXPECT_LT(r.alpha, 1.0);
        EXPECT_NEAR(r.alpha + r.beta, 1.0, 1e-15);
    }
    EXPECT_THROW(FlipRatios::from_caps(0.0, 1.0), ModelError);
    EXPECT_THROW(FlipRatios::from_caps(1.0, -1.0), ModelError);
}

TEST(ChargeShare, EqualCapsAverage) {
    EXPECT_DOUBLE_EQ(charge_share(2.0, 1.0, 0.0, 1.0), 1.0);
}

TEST(ChargeShare, FirstPhaseFormula) {
    const double v0 = 2.4, cp = 10e-9, ct = 33e-9;
    EXPECT_NEAR(charge_share(v0, cp, 0.0, ct), cp * v0 / (cp + ct), 1e-15);
}

TEST(ChargeShare, RejectsNonPositiveCapacitance) {
    EXPECT_THROW(charge_share(1.0, 0.0, 1.0, 1.0), ModelError);
    EXPECT_THROW(charge_share(1.0, 1.0, 1.0, -1e-9), ModelError);
}

TEST(ChargeShare, ConservesChargeAndDissipatesEnergy) {
    for (int i = 0; i < 1000; ++i) {
        const double ca = oracle::log_uniform(1e-12, 1e-5), cb = oracle::log_uniform(1e-12, 1e-5);
        const double va = oracle::uniform(-5, 5), vb = oracle::uniform(-5, 5);
        const double v = charge_share(va, ca, vb, cb);
        const double before = ca * va + cb * vb;
        const double after = (ca + cb) * v;
        EXPECT_NEAR(after, before, 1e-12 * (std::abs(ca * va) + std::abs(cb * vb)));
        const double e0 = energy(ca, va, cb, vb), e1 = energy(ca, v, cb, v);
        EXPECT_LE(e1, e0 * (1 + 1e-12));
        if (std::abs(va - vb) > 1e-3) EXPECT_LT(e1, e0);
    }
}

TEST(FlipStep, FirstFlipQuarter) {
    const FlipStep s = flip_step(2.4, 0.0, kEqual);
    EXPECT_NEAR(s.vpt_out, -2.4 / 4.0, 1e-15);
    EXPECT_NEAR(s.vt_out, 0.6, 1e-15);
}

TEST(FlipStep, SecondFlipFiveSixteenths) {
    const FlipStep s = flip_step(1.0, 0.25, kEqual, FlipDirection::NegToPos);
    EXPECT_NEAR(s.vpt_out, 5.0 / 16.0, 1e-15);
}

TEST(FlipStep, FixedPointIsStationary) {
    for (double ratio : {0.1, 1.0, 3.7, 100.0}) {
        const auto r = FlipRatios::from_ct_ratio(ratio);
        // vt = beta (alpha v0 + beta vt)  =>  vt = alpha beta v0 / (1 - beta^2) = beta v0 / (1 + beta)
        const double vt_star = r.beta * 2.4 / (1.0 + r.beta);
        EXPECT_NEAR(flip_step(2.4, vt_star, r).vt_out, vt_star, 1e-14);
    }
}

TEST(FlipStep, RejectsNegativeV0) {
    EXPECT_THROW(flip_step(-1.0, 0.0, kEqual), ModelError);
}

TEST(FlipStep, MatchesPerPhaseEnumeration) {
    for (double ratio : {0.05, 1.0, 10.0, 100.0}) {
        const auto ref = oracle::enumerate_flips(1.0, ratio, 50);
        const auto series = flip_efficiency_series(FlipRatios::from_ct_ratio(ratio), 1.0, 50);
        for (std::size_t i = 0; i < ref.size(); ++i) EXPECT_NEAR(series.efficiencies[i], ref[i], 1e-14);
    }
}

TEST(FlipStep, EnergyNeverIncreasesAcrossPhases) {
    for (int i = 0; i < 300; ++i) {
        const double cp = oracle::log_uniform(1e-10, 1e-7), ct = oracle::log_uniform(1e-10, 1e-5);
        const double v0 = oracle::uniform(0.1, 5.0), vt = oracle::uniform(0.0, 0.5) * v0;
        const double e0 = energy(cp, v0, ct, vt);
        const double v1 = charge_share(v0, cp, vt, ct);
        const double e1 = energy(cp, v1, ct, v1);
        const double e2 = energy(cp, 0.0, ct, v1);
        const double v3 = charge_share(0.0, cp, -v1, ct);
        const double e3 = energy(cp, v3, ct, v3);
        EXPECT_LT(e1, e0);
        EXPECT_LT(e2, e1);
        EXPECT_LT(e3, e2);
        EXPECT_NEAR(-v3, flip_step(v0, vt, FlipRatios::from_caps(cp, ct)).vt_out, 1e-12 * v0);
    }
}

TEST(FlipSeries, EqualCapsLeadingTerms) {
    const FlipSeries s = flip_efficiency_series(kEqual, 2.4, 10);
    ASSERT_EQ(s.efficiencies.size(), 10u);
    EXPECT_NEAR(s.efficiencies[0], 0.25, 1e-15);
    EXPECT_NEAR(s.efficiencies[1], 5.0 / 16.0, 1e-15);
    EXPECT_NEAR(s.efficiencies[9], 1.0 / 3.0, 1e-6);
    for (std::size_t n = 1; n <= 10; ++n)
        EXPECT_NEAR(s.efficiencies[n - 1], (1.0 - std::pow(0.25, static_cast<double>(n))) / 3.0, 1e-15);
    EXPECT_DOUBLE_EQ(s.limit, 1.0 / 3.0);
}

TEST(FlipSeries, HundredTimesCp) {
    const FlipSeries s = flip_efficiency_series(kHundred, 1.0, 300);
    // frozen from an exact rational enumeration of the recurrence
    EXPECT_NEAR(s.efficiencies[0], 0.009802960494069209, 1e-15);
    EXPECT_NEAR(s.efficiencies[9], 0.08977887047895743, 1e-14);
    EXPECT_NEAR(s.efficiencies[299], 0.4962419231731354, 1e-12);
    EXPECT_LT(std::abs(s.efficiencies[299] - 100.0 / 201.0) / (100.0 / 201.0), 0.005);
}

TEST(FlipSeries, Invariants) {
    for (double ratio : {0.01, 0.3, 1.0, 7.0, 100.0, 1e4}) {
        const auto r = FlipRatios::from_ct_ratio(ratio);
        const FlipSeries s = flip_efficiency_series(r, 3.0, 500);
        EXPECT_LT(s.limit, 0.5);
        for (std::size_t i = 0; i < s.efficiencies.size(); ++i) {
            if (i) EXPECT_GE(s.efficiencies[i], s.efficiencies[i - 1]);
            EXPECT_LT(s.efficiencies[i], s.limit + 1e-12);
            EXPECT_GE(s.efficiencies[i], 0.0);
        }
    }
}

TEST(FlipSeries, ClosedFormAgreesWithIteration) {
    for (int trial = 0; trial < 20; ++trial) {
        const auto r = FlipRatios::from_ct_ratio(oracle::log_uniform(0.01, 1000.0));
        const FlipSeries s = flip_efficiency_series(r, 1.0, 10000);
        for (std::size_t n = 1; n <= s.efficiencies.size(); ++n) {
            const double cf = closed_form_efficiency(r, n);
            ASSERT_NEAR(s.efficiencies[n - 1], cf, 1e-10 * cf) << "beta=" << r.beta << " n=" << n;
        }
    }
}

TEST(FlipSeries, ContractsTowardFixedPoint) {
    const auto r = FlipRatios::from_ct_ratio(4.0);
    const FlipSeries s = flip_efficiency_series(r, 1.0, 30);
    const double vt_star = r.beta / (1.0 + r.beta);
    for (std::size_t n = 1; n < s.vt_trajectory.size(); ++n) {
        const double prev = vt_star - s.vt_trajectory[n - 1];
        const double next = vt_star - s.vt_trajectory[n];
        EXPECT_NEAR(next / prev, r.beta * r.beta, 1e-8);
    }
}

TEST(FlipSeries, RejectsZeroCycles) {
    EXPECT_THROW(flip_efficiency_series(kEqual, 1.0, 0), ModelError);
}

TEST(SteadyState, KnownValues) {
    EXPECT_DOUBLE_EQ(steady_state_efficiency(kEqual), 1.0 / 3.0);
    EXPECT_NEAR(steady_state_efficiency(kHundred), 100.0 / 201.0, 1e-15);
    EXPECT_NEAR(steady_state_efficiency(FlipRatios::from_ct_ratio(1e12)), 0.5, 1e-12);
    const FlipSeries s = flip_efficiency_series(kHundred, 1.0, 100000);
    EXPECT_NEAR(s.efficiencies.back(), 100.0 / 201.0, 1e-12);
}

TEST(SteadyState, StrictlyIncreasingInCt) {
    double prev = 0.0;
    for (double ratio = 1e-3; ratio < 1e5; ratio *= 1.3) {
        const double eta = steady_state_efficiency(FlipRatios::from_ct_ratio(ratio));
        EXPECT_GT(eta, prev);
        EXPECT_LT(eta, 0.5);
        prev = eta;
    }
}

TEST(OptimalSingleFlip, EqualsCp) {
    EXPECT_DOUBLE_EQ(optimal_single_flip_ct(1e-9), 1e-9);
    const double cp = 4.7e-9;
    EXPECT_DOUBLE_EQ(first_flip_efficiency(FlipRatios::from_caps(cp, optimal_single_flip_ct(cp))), 0.25);
    EXPECT_THROW(optimal_single_flip_ct(0.0), ModelError);
}

TEST(OptimalSingleFlip, GridSearchPeaksAtUnity) {
    const auto peak = oracle::first_flip_grid_peak(0.01, 100.0, 10000);
    EXPECT_LT(std::abs(std::log(peak.ratio)), peak.log_step * 1.0001);
    EXPECT_NEAR(peak.value, 0.25, 1e-7);
}

TEST(OptimalSingleFlip, UnimodalInCt) {
    // discrete derivative of alpha*beta changes sign exactly once, at C_T = C_P
    int sign_changes = 0;
    double prev_slope = 1.0, prev = 0.0, where = 0.0;
    for (int i = 0; i <= 2000; ++i) {
        const double ratio = std::exp(std::log(0.01) + i * (std::log(1e4) / 2000.0));
        const double v = first_flip_efficiency(FlipRatios::from_ct_ratio(ratio));
        if (i) {
            const double slope = v - prev;
            if ((slope < 0) != (prev_slope < 0)) ++sign_changes, where = ratio;
            prev_slope = slope;
        }
        prev = v;
    }
    EXPECT_EQ(sign_changes, 1);
    EXPECT_NEAR(where, 1.0, 0.01);
}

TEST(CyclesToConverge, EqualCapsScan) {
    // exact scan: eta_3 = 21/64 < 0.99/3 <= eta_4 = 85/256
    EXPECT_EQ(cycles_to_converge(kEqual, 0.99), 4u);
    const FlipSeries s = flip_efficiency_series(kEqual, 1.0, 10);
    std::size_t scan = 0;
    while (s.efficiencies[scan] < 0.99 * s.limit) ++scan;
    EXPECT_EQ(scan + 1, 4u);
}

TEST(CyclesToConverge, HundredTimesCp) {
    const std::size_t n = cycles_to_converge(kHundred, 0.99);
    EXPECT_EQ(n, 232u);
    const FlipSeries s = flip_efficiency_series(kHundred, 1.0, 400);
    EXPECT_GE(s.efficiencies[n - 1], 0.99 * s.limit);
    EXPECT_LT(s.efficiencies[n - 2], 0.99 * s.limit);
}

TEST(CyclesToConverge, MatchesScanForRandomInputs) {
    for (int i = 0; i < 200; ++i) {
        const auto r = FlipRatios::from_ct_ratio(oracle::log_uniform(0.01, 300.0));
        const double fraction = oracle::uniform(0.01, 0.999);
        const std::size_t n = cycles_to_converge(r, fraction);
        const FlipSeries s = flip_efficiency_series(r, 1.0, n + 1);
        EXPECT_GE(s.efficiencies[n - 1], fraction * s.limit);
        if (n > 1) EXPECT_LT(s.efficiencies[n - 2], fraction * s.limit);
    }
}

TEST(CyclesToConverge, TinyFractionIsOne) {
    EXPECT_EQ(cycles_to_converge(kHundred, 1e-12), 1u);
    EXPECT_THROW(cycles_to_converge(kEqual, 0.0), ModelError);
    EXPECT_THROW(cycles_to_converge(kEqual, 1.0), ModelError);
}

TEST(Ipow, MatchesStdPow) {
    EXPECT_EQ(ipow(2.0, 10), 1024.0);
    EXPECT_EQ(ipow(0.5, 0), 1.0);
    EXPECT_NEAR(ipow(100.0 / 101.0, 600), std::pow(100.0 / 101.0, 600), 1e-15);
}

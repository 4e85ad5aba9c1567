#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>

#include "mottlc/critical.hpp"
#include "mottlc/gutzwiller.hpp"

using namespace mottlc;

namespace {

ModelParams fig1(double J = 0.0)
{
    ModelParams p;
    p.kappa = 1e-3;
    p.r = 100.0;
    p.mu_eff = 0.5;
    p.J = J;
    return p;
}

TrajectoryRecord synthetic(const std::function<cplx(double)>& a, double t_end, double dt,
                           double kappa = 1e-3)
{
    TrajectoryRecord tr;
    tr.kappa = kappa;
    for (double t = 0.0; t <= t_end; t += dt) {
        tr.times.push_back(t);
        tr.order_parameter.push_back(a(t));
    }
    return tr;
}

} // namespace

TEST(Evolve, NoSeedNoOrderParameter)
{
    const auto p = fig1(0.12);
    const FockSpace s(6);
    const auto L0 = build_generator(s, fig1(), ReservoirSpec::square(p));
    DensityMatrix rho0 = DensityMatrix::Zero(7, 7);
    rho0(0, 0) = 0.3;
    rho0(1, 1) = 0.7;
    EvolveControls c;
    c.sample_dt = 5.0;
    const auto tr = evolve(L0, p, rho0, 2000.0, c);
    for (const auto& a : tr.order_parameter) EXPECT_EQ(std::abs(a), 0.0);
}

TEST(Evolve, TraceConservation)
{
    const auto p = fig1(0.12);
    const FockSpace s(6);
    const auto L0 = build_generator(s, fig1(), ReservoirSpec::square(p));
    const auto tr = evolve(L0, p, coherent_state(s, 0.3), 3000.0);
    for (double t : tr.trace) EXPECT_NEAR(t, 1.0, 1e-8);
    for (double m : tr.min_eigenvalue) EXPECT_GE(m, -1e-8);
    EXPECT_FALSE(has_warning(tr.warnings, WarningKind::PositivityLoss));
}

TEST(Evolve, U1Covariance)
{
    const auto p = fig1(0.1);
    const FockSpace s(6);
    const auto L0 = build_generator(s, fig1(), ReservoirSpec::square(p));
    const cplx phase = std::polar(1.0, 0.7);
    EvolveControls c;
    c.rtol = 1e-11;
    c.atol = 1e-13;
    const auto a = evolve(L0, p, coherent_state(s, 0.05), 2000.0, c);
    const auto b = evolve(L0, p, coherent_state(s, 0.05 * phase), 2000.0, c);
    ASSERT_EQ(a.size(), b.size());
    double worst = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        worst = std::max(worst, std::abs(b.order_parameter[i] - phase * a.order_parameter[i]));
    }
    EXPECT_LT(worst, 1e-8);
}

TEST(Evolve, BelowCriticalDecaysToMott)
{
    const auto p = fig1(0.5 * 0.094);
    const FockSpace s(6);
    const auto L0 = build_generator(s, fig1(), ReservoirSpec::square(p));
    const auto tr = evolve(L0, p, coherent_state(s, 0.01), 15.0 / p.kappa);
    EXPECT_LT(std::abs(tr.order_parameter.back()), 1e-6);
    EXPECT_EQ(classify_phase(tr).phase, Phase::Mott);
}

TEST(Evolve, SnapshotsAndScaledTimes)
{
    const auto p = fig1(0.05);
    const FockSpace s(4);
    const auto L0 = build_generator(s, fig1(), ReservoirSpec::square(p));
    EvolveControls c;
    c.snapshot_times = {0.0, 12.3, 50.0};
    const auto tr = evolve(L0, p, coherent_state(s, 0.1), 100.0, c);
    ASSERT_EQ(tr.snapshots.size(), 3u);
    EXPECT_DOUBLE_EQ(tr.snapshots[1].first, 12.3);
    EXPECT_NEAR(tr.snapshots[1].second.trace().real(), 1.0, 1e-8);
    EXPECT_NEAR(tr.scaled_times().back(), 100.0 * p.kappa, 1e-12);
    EXPECT_NEAR(tr.times[1], c.sample_dt, 1e-12);
}

TEST(Evolve, StepFailureOnImpossibleMinimumStep)
{
    const auto p = fig1(0.05);
    const FockSpace s(4);
    const auto L0 = build_generator(s, fig1(), ReservoirSpec::square(p));
    EvolveControls c;
    c.h_min = 1e3;
    EXPECT_THROW(evolve(L0, p, coherent_state(s, 0.1), 10.0, c), StepFailure);
}

TEST(Evolve, RedfieldPositivityIsMonitored)
{
    // the Redfield generator is not completely positive: a coherent seed
    // acquires small negative eigenvalues even below the instability
    const auto p0 = fig1();
    const FockSpace s(6);
    const auto L0 = build_generator(s, p0, ReservoirSpec::redfield(p0));
    auto p = p0;
    p.J = 0.008;
    const auto tr = evolve(L0, p, coherent_state(s, 0.01), 2000.0);
    const double lowest = *std::min_element(tr.min_eigenvalue.begin(), tr.min_eigenvalue.end());
    EXPECT_LT(lowest, -1e-6);
    EXPECT_TRUE(has_warning(tr.warnings, WarningKind::PositivityLoss));
    EXPECT_TRUE(std::isfinite(lowest));
    for (double t : tr.trace) EXPECT_NEAR(t, 1.0, 1e-8);
}

TEST(Evolve, RedfieldRunawayIsAStepFailure)
{
    const auto p0 = fig1();
    const FockSpace s(6);
    const auto L0 = build_generator(s, p0, ReservoirSpec::redfield(p0));
    auto p = p0;
    p.J = 0.2;
    EXPECT_THROW(evolve(L0, p, coherent_state(s, 0.01), 8.0 / p.kappa), StepFailure);
}

TEST(Classify, SyntheticLimitCycle)
{
    // <a> ~ exp(-i w t) carries the positive frequency w (see README)
    const auto tr = synthetic([](double t) { return 0.3 * std::exp(cplx(0.0, -0.95 * t)); },
                              2000.0, 0.25);
    const auto rep = classify_phase(tr);
    EXPECT_EQ(rep.phase, Phase::LimitCycle);
    EXPECT_NEAR(rep.amplitude, 0.3, 1e-12);
    EXPECT_NEAR(rep.frequency, 0.95, 1e-9);
    EXPECT_LT(rep.drift, 1e-12);
}

TEST(Classify, SyntheticDecay)
{
    const double kappa = 1e-3;
    const auto tr = synthetic(
        [&](double t) { return 0.01 * std::exp(-kappa * t) * std::exp(cplx(0.0, -0.8 * t)); },
        20.0 / kappa, 0.25);
    const auto rep = classify_phase(tr);
    EXPECT_EQ(rep.phase, Phase::Mott);
    EXPECT_NEAR(rep.growth_rate, -kappa, 1e-9);
    EXPECT_FALSE(is_unstable(tr, rep));
}

TEST(Classify, GrowingButUndecided)
{
    const double kappa = 1e-3;
    const auto tr = synthetic([&](double t) { return 1e-3 * std::exp(0.1 * kappa * t); },
                              20.0 / kappa, 1.0);
    const auto rep = classify_phase(tr);
    EXPECT_EQ(rep.phase, Phase::Undecided);
    EXPECT_TRUE(is_unstable(tr, rep));
}

TEST(Classify, FrequencyMatchesRpaJustAboveThreshold)
{
    const auto p0 = fig1();
    const auto cp = rpa_critical(p0, ReservoirSpec::square(p0), 6);
    const FockSpace s(6);
    const auto L0 = build_generator(s, p0, ReservoirSpec::square(p0));
    auto p = p0;
    p.J = 1.05 * cp.J_c;
    const auto tr = evolve(L0, p, coherent_state(s, 0.01), 12.0 / p.kappa);
    const auto rep = classify_phase(tr);
    EXPECT_TRUE(is_unstable(tr, rep));
    EXPECT_NEAR(rep.frequency, cp.omega_c, 0.05 * cp.omega_c);
}

#include <gtest/gtest.h>

#include <boost/math/tools/minima.hpp>

#include "mottlc/critical.hpp"
#include "oracles.hpp"

using namespace mottlc;

namespace {

ModelParams params(double kappa, double r, double mu)
{
    ModelParams p;
    p.kappa = kappa;
    p.r = r;
    p.mu_eff = mu;
    return p;
}

// f(w) = b (1 - i g a) / ((w - c) + i g) as a single pole
GreensFunction synthetic(double a, double b, double g, double c)
{
    return greens_from_poles({{{-g, -c}, {b, -b * g * a}}}, {});
}

} // namespace

TEST(CriticalFrequency, SyntheticAntiLorentzianZero)
{
    const double a = 10.0, c = 1.0;
    const auto G = synthetic(a, 2.0, 1e-3, c);
    const double w = find_critical_frequency(G, {0.5, 1.2});
    EXPECT_NEAR(w, c - 1.0 / a, 1e-10);
}

TEST(CriticalFrequency, NoRootWithoutSignChange)
{
    const auto G = synthetic(0.0, 1.0, 1e-3, 1.0);
    EXPECT_THROW(find_critical_frequency(G, {0.5, 1.5}), NoRoot);
}

TEST(CriticalFrequency, GroundStateZeroBetweenPoles)
{
    // Im of the broadened ground-state form vanishes once between holon and
    // doublon, at U (N - 1) + U / (1 + sqrt((N + 1) / N))
    const auto G = greens_groundstate(1, 1.0, 0.5, 1e-6, {});
    const auto zeros = imaginary_zeros(G, {0.05, 0.95});
    ASSERT_EQ(zeros.size(), 1u);
    EXPECT_NEAR(zeros[0], 1.0 / (1.0 + std::sqrt(2.0)), 1e-8);
    EXPECT_THROW(find_critical_frequency(G, {0.5, 0.95}), NoRoot);
    EXPECT_THROW(find_critical_frequency(G, {1.05, 3.0}), NoRoot);
}

TEST(CriticalFrequency, SelectionPrefersSmallestHopping)
{
    // two anti-Lorentzian zeros; the deeper Re G wins
    const auto G = greens_from_poles({{{-1e-3, -1.0}, {2.0, -2.0 * 1e-3 * 50.0}},
                                      {{-1e-3, -3.0}, {1.0, -1e-3 * 50.0}}},
                                     {});
    const auto zeros = imaginary_zeros(G, {0.5, 3.5});
    ASSERT_GE(zeros.size(), 2u);
    const double w = find_critical_frequency(G, {0.5, 3.5});
    double best = 1e300;
    for (double z : zeros) {
        const double re = G.evaluate(z).real();
        if (re < 0.0) best = std::min(best, -1.0 / re);
    }
    EXPECT_NEAR(critical_hopping(G, w), best, 1e-12);
}

TEST(CriticalHopping, Reciprocal)
{
    // w / (omega + i g) = -10 at omega = 0 for w = -10 i g
    const double g = 0.01;
    const auto G = greens_from_poles({{{-g, 0.0}, {0.0, -10.0 * g}}}, {});
    EXPECT_NEAR(G.evaluate(0.0).real(), -10.0, 1e-12);
    EXPECT_NEAR(critical_hopping(G, 0.0), 0.1, 1e-12);
    const auto H = greens_from_poles({{{-g, 0.0}, {0.0, 10.0 * g}}}, {});
    EXPECT_THROW(critical_hopping(H, 0.0), WrongSign);
}

TEST(CriticalHopping, GroundStateHalfFilling)
{
    const auto cp = ground_state_critical(1, 1.0, 0.5);
    EXPECT_NEAR(cp.J_c, 1.0 / 6.0, 1e-8);
    EXPECT_EQ(cp.omega_c, 0.5);
    EXPECT_EQ(cp.method, CriticalMethod::GroundState);
}

TEST(CriticalHopping, SteadyStateFig1)
{
    const auto p = params(1e-3, 100.0, 0.5);
    const auto cp = rpa_critical(p, ReservoirSpec::square(p), 6);
    EXPECT_NEAR(cp.J_c, 0.094, 0.002);
    EXPECT_EQ(cp.N, 1);
    const auto resp = steady_response(p, ReservoirSpec::square(p), 6);
    EXPECT_LT(std::abs(resp.greens.evaluate(cp.omega_c).imag()), 1e-8);
    EXPECT_LT(resp.greens.evaluate(cp.omega_c).real(), 0.0);
    EXPECT_LT(cp.J_c, ground_state_critical(1, 1.0, 0.5).J_c);
}

TEST(Lobe, MatchesClosedForm)
{
    std::vector<double> mus;
    for (int k = 1; k <= 20; ++k) mus.push_back(k / 21.0);
    const auto lobe = ground_state_lobe(1, 1.0, mus);
    for (const auto& pt : lobe) {
        EXPECT_NEAR(pt.J_c, oracle::ground_state_jc(1, 1.0, pt.mu), 1e-8 * pt.J_c);
    }
}

TEST(Lobe, ClosesAtEdges)
{
    const std::vector<double> mus{1.0 - 1e-7, 1e-7, 0.0, 1.0, 1.4};
    const auto lobe = ground_state_lobe(1, 1.0, mus);
    // finite broadening eta keeps J_c of order eta next to the edges
    EXPECT_LT(lobe[0].J_c, 1e-4);
    EXPECT_LT(lobe[1].J_c, 1e-4);
    EXPECT_EQ(lobe[2].J_c, 0.0);
    EXPECT_EQ(lobe[3].J_c, 0.0);
    EXPECT_EQ(lobe[4].J_c, 0.0);
}

TEST(Lobe, MaximumLocation)
{
    std::vector<double> mus;
    for (int k = 1; k < 2000; ++k) mus.push_back(k / 2000.0);
    const auto lobe = ground_state_lobe(1, 1.0, mus);
    const auto top = *std::max_element(lobe.begin(), lobe.end(),
                                       [](auto a, auto b) { return a.J_c < b.J_c; });
    const auto [mu_star, neg_j] = boost::math::tools::brent_find_minima(
        [](double mu) { return -oracle::ground_state_jc(1, 1.0, mu); }, 0.01, 0.99, 50);
    EXPECT_NEAR(top.mu, mu_star, 1e-3);
    EXPECT_NEAR(top.J_c, -neg_j, 1e-6);
}

TEST(Dmft, InfiniteCoordinationReducesToRpa)
{
    const auto p = params(1e-3, 100.0, 0.5);
    const auto resp = steady_response(p, ReservoirSpec::square(p), 6);
    const auto rpa = rpa_critical(resp, p);
    const auto cb = [&](double w, double) { return resp.greens.evaluate(w); };
    DmftOptions opts;
    opts.scan_points = 20001;
    const auto d = dmft_critical(cb, std::numeric_limits<double>::infinity(),
                                 {0.6, 1.0 + 20 * p.kappa}, opts);
    EXPECT_NEAR(d.J_c, rpa.J_c, 1e-8 * rpa.J_c);
    EXPECT_NEAR(d.omega_c, rpa.omega_c, 1e-8);
    EXPECT_EQ(d.method, CriticalMethod::DMFT);
}

TEST(Dmft, QuadraticRootAtFiniteCoordination)
{
    const auto G = synthetic(10.0, 2.0, 1e-3, 1.0);
    const double z = 20.0;
    const auto cb = [&](double w, double) { return G.evaluate(w); };
    const auto d = dmft_critical(cb, z, {0.5, 1.2});
    const double re = G.evaluate(0.9).real();
    // (re^2 / z) J^2 + re J + 1 = 0, smaller positive root
    const double A = re * re / z, B = re, C = 1.0;
    const double roots[] = {(-B - std::sqrt(B * B - 4 * A * C)) / (2 * A),
                            (-B + std::sqrt(B * B - 4 * A * C)) / (2 * A)};
    EXPECT_NEAR(d.omega_c, 0.9, 1e-9);
    EXPECT_NEAR(d.J_c, std::min(roots[0], roots[1]), 1e-10);
}

TEST(Dmft, SelfConsistentWithJDependentSusceptibility)
{
    // peak center drifts with J, so the frequency root moves every iteration
    const double z = 12.0;
    const auto cb = [](double w, double J) {
        const double c = 1.0 + 0.3 * J, a = 10.0, b = 2.0, g = 1e-3;
        return b * cplx(1.0, -g * a) / cplx(w - c, g);
    };
    const auto d = dmft_critical(cb, z, {0.5, 1.5});
    const cplx g = cb(d.omega_c, d.J_c);
    EXPECT_LT(std::abs(g.imag()), 1e-7);
    EXPECT_LT(std::abs(1.0 / d.J_c + g.real() + d.J_c / z * g.real() * g.real()), 1e-7);
}

TEST(Dmft, FailureModes)
{
    const auto G = synthetic(10.0, 2.0, 1e-3, 1.0);
    const auto cb = [&](double w, double) { return G.evaluate(w); };
    EXPECT_THROW(dmft_critical(cb, 3.0, {0.5, 1.2}), NoConvergence);
    EXPECT_THROW(dmft_critical(cb, 20.0, {1.05, 1.2}), NoConvergence);
    EXPECT_THROW(dmft_critical(cb, 0.5, {0.5, 1.2}), InvalidParameter);
}

TEST(LobeScan, HalfFillingAndTrends)
{
    auto p = params(1e-5, 100.0, 0.5);
    const std::vector<double> mus{0.1, 0.3, 0.5, 0.7, 0.9};
    const std::vector<double> rs{10.0, 100.0};
    const auto rows = lobe_scan(p, mus, rs);
    ASSERT_EQ(rows.size(), 10u);
    for (const auto& r : rows) {
        EXPECT_EQ(r.N, 1);
        ASSERT_TRUE(r.J_c.has_value()) << r.note;
        ASSERT_TRUE(r.J_c_gs.has_value());
        EXPECT_NEAR(*r.J_c_gs, oracle::ground_state_jc(1, 1.0, r.mu_eff), 1e-8);
    }
    EXPECT_TRUE(lobes_flat(rows, 1e-8));
    // mu = 0.5 rows: r = 10 then r = 100
    EXPECT_LT(*rows[5].J_c, *rows[4].J_c);
}

TEST(LobeScan, BoundaryRowsCarryNotes)
{
    const auto p = params(1e-3, 100.0, 0.5);
    const std::vector<double> mus{1.0, 1.5};
    const std::vector<double> rs{100.0};
    LobeScanOptions opts;
    opts.workers = 2;
    const auto rows = lobe_scan(p, mus, rs, opts);
    EXPECT_FALSE(rows[0].note.empty());
    EXPECT_FALSE(rows[0].J_c.has_value());
    EXPECT_EQ(rows[1].N, 2);
    EXPECT_TRUE(rows[1].J_c.has_value());
}

TEST(LobeScan, ParallelMatchesSerial)
{
    const auto p = params(1e-3, 100.0, 0.5);
    const std::vector<double> mus{0.2, 0.6, 1.3, 1.8};
    const std::vector<double> rs{30.0, 100.0};
    LobeScanOptions serial, par;
    par.workers = 3;
    const auto a = lobe_scan(p, mus, rs, serial);
    const auto b = lobe_scan(p, mus, rs, par);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].J_c, b[i].J_c);
        EXPECT_EQ(a[i].omega_c, b[i].omega_c);
    }
}

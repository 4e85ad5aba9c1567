#include <gtest/gtest.h>

#include <random>

#include "mottlc/liouvillian.hpp"
#include "mottlc/spectral.hpp"
#include "oracles.hpp"

using namespace mottlc;

namespace {

ModelParams fig1()
{
    ModelParams p;
    p.kappa = 1e-3;
    p.r = 100.0;
    p.mu_eff = 0.5;
    return p;
}

Eigen::MatrixXcd random_matrix(int d, unsigned seed)
{
    std::mt19937 rng(seed);
    std::normal_distribution<double> g;
    Eigen::MatrixXcd m(d, d);
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) m(i, j) = {g(rng), g(rng)};
    return m;
}

Eigen::RowVectorXcd trace_row(int d)
{
    return vec(Eigen::MatrixXcd::Identity(d, d)).transpose();
}

} // namespace

TEST(Vectorization, RoundTrip)
{
    const auto m = random_matrix(5, 1);
    EXPECT_EQ(unvec(vec(m), 5), m);
    EXPECT_EQ(vec(m)(1), m(1, 0)); // column stacking
}

TEST(Vectorization, LeftRightProducts)
{
    const auto a = random_matrix(4, 2), b = random_matrix(4, 3), r = random_matrix(4, 4);
    EXPECT_LT((left_superop(a) * vec(r) - vec(a * r)).norm(), 1e-12);
    EXPECT_LT((right_superop(b) * vec(r) - vec(r * b)).norm(), 1e-12);
}

TEST(Lindblad, MatchesDirectMasterEquation)
{
    const auto p = fig1();
    const FockSpace s(5);
    const auto L = build_lindblad(s, p, ReservoirSpec::square(p));
    const auto a = oracle::lowering(6);
    Eigen::MatrixXcd H = Eigen::MatrixXcd::Zero(6, 6);
    for (int n = 0; n < 6; ++n) H(n, n) = 0.5 * n * (n - 1);
    Eigen::MatrixXcd pump0 = Eigen::MatrixXcd::Zero(6, 6);
    pump0(1, 0) = 1.0;
    const std::vector<std::pair<double, Eigen::MatrixXcd>> jumps{{p.kappa, a},
                                                                 {p.r * p.kappa, pump0}};
    const auto rho = random_matrix(6, 7);
    EXPECT_LT((L.apply(rho) - oracle::lindblad_rhs(H, jumps, rho)).norm(), 1e-12);
    EXPECT_EQ(L.kind, GeneratorKind::Lindblad);
}

TEST(Lindblad, LossOnlyDecaysToVacuum)
{
    auto p = fig1();
    p.r = 0.0;
    const auto L = build_lindblad(FockSpace(4), p, ReservoirSpec::square(p));
    const auto rho = steady_state(L);
    EXPECT_NEAR(rho(0, 0).real(), 1.0, 1e-12);
    EXPECT_NEAR(rho.norm(), 1.0, 1e-12);
}

TEST(Lindblad, OnlyVacuumChannelOpenAtHalfFilling)
{
    const auto p = fig1();
    const auto s = ReservoirSpec::square(p);
    EXPECT_DOUBLE_EQ(rate(s, channel_frequency(s, p, 0)), p.r * p.kappa);
    EXPECT_DOUBLE_EQ(rate(s, channel_frequency(s, p, 1)), 0.0);
}

TEST(Lindblad, SpectralGap)
{
    const auto p = fig1();
    const auto L = build_lindblad(FockSpace(6), p, ReservoirSpec::square(p));
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(L.matrix);
    int nulls = 0;
    for (int k = 0; k < es.eigenvalues().size(); ++k) {
        const auto l = es.eigenvalues()(k);
        if (std::abs(l) < 1e-10) {
            ++nulls;
            continue;
        }
        EXPECT_LE(l.real(), -p.kappa / 2 + 1e-12);
    }
    EXPECT_EQ(nulls, 1);
}

TEST(Lindblad, TracePreservationAndHermiticity)
{
    const auto p = fig1();
    for (const auto& spec : {ReservoirSpec::square(p), ReservoirSpec::lorentzian(p, 1.0, 1e-3, 1.0)}) {
        const auto L = build_lindblad(FockSpace(5), p, spec);
        EXPECT_LT((trace_row(6) * L.matrix).norm(), 1e-10 * L.matrix.norm());
        const auto rho = random_matrix(6, 11);
        const Eigen::MatrixXcd lhs = L.apply(rho.adjoint()).adjoint();
        EXPECT_LT((lhs - L.apply(rho)).norm(), 1e-12);
    }
}

TEST(Lindblad, RejectsRedfieldSpec)
{
    const auto p = fig1();
    EXPECT_THROW(build_lindblad(FockSpace(4), p, ReservoirSpec::redfield(p)), InvalidParameter);
    EXPECT_THROW(build_redfield(FockSpace(4), p, ReservoirSpec::square(p)), InvalidParameter);
}

TEST(Lindblad, TruncationWarningWhenPumpReachesCutoff)
{
    auto p = fig1();
    p.mu_eff = 3.5; // channels up to 3U open
    const auto spec = ReservoirSpec::square(p);
    EXPECT_TRUE(has_warning(build_lindblad(FockSpace(3), p, spec).warnings, WarningKind::Truncation));
    EXPECT_FALSE(has_warning(build_lindblad(FockSpace(9), p, spec).warnings, WarningKind::Truncation));
}

TEST(Redfield, TracePreservationAndHermiticity)
{
    const auto p = fig1();
    const auto L = build_redfield(FockSpace(5), p, ReservoirSpec::redfield(p));
    EXPECT_LT((trace_row(6) * L.matrix).norm(), 1e-10 * L.matrix.norm());
    const auto rho = random_matrix(6, 5);
    EXPECT_LT((L.apply(rho.adjoint()).adjoint() - L.apply(rho)).norm(), 1e-12);
    EXPECT_EQ(L.kind, GeneratorKind::Redfield);
}

TEST(Redfield, FilteredOperatorEntries)
{
    const auto p = fig1();
    const auto spec = ReservoirSpec::redfield(p);
    const auto x = filtered_annihilation(FockSpace(4), p, spec);
    EXPECT_EQ(x(0, 1), response(spec, 0.0));
    EXPECT_NEAR(std::abs(x(1, 2) - response(spec, 1.0) * std::sqrt(2.0)), 0.0, 1e-16);
    EXPECT_EQ(response(spec, 1.0).real(), 0.0);
    EXPECT_NE(response(spec, 1.0).imag(), 0.0);
}

TEST(Redfield, SecularProjectionIsLindbladWithoutLambShift)
{
    const auto p = fig1();
    const FockSpace s(5);
    std::vector<double> energies;
    for (int n = 0; n <= 5; ++n) energies.push_back(site_energy(p, n));
    const auto red = build_redfield(s, p, ReservoirSpec::redfield(p, false));
    const auto lin = build_lindblad(s, p, ReservoirSpec::square(p));
    // the full-a loss also couples coherences of unequal Bohr frequency, so
    // both sides are projected
    const auto sec = oracle::secular_projection(red.matrix, energies);
    const auto ref = oracle::secular_projection(lin.matrix, energies);
    EXPECT_LT((sec - ref).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Redfield, SecularProjectionWithLambShift)
{
    const auto p = fig1();
    const FockSpace s(5);
    std::vector<double> energies;
    for (int n = 0; n <= 5; ++n) energies.push_back(site_energy(p, n));
    const auto spec = ReservoirSpec::redfield(p, true);
    const auto red = build_redfield(s, p, spec);
    const auto lin = build_lindblad(s, p, ReservoirSpec::square(p));
    const Eigen::MatrixXcd expected =
        oracle::secular_projection(lin.matrix, energies) +
        hamiltonian_superop(lamb_shift_hamiltonian(s, p, spec));
    const auto sec = oracle::secular_projection(red.matrix, energies);
    EXPECT_LT((sec - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Drive, ZeroDriveIsIdentity)
{
    const auto p = fig1();
    const auto L = build_lindblad(FockSpace(4), p, ReservoirSpec::square(p));
    EXPECT_EQ(add_drive(L, {}).matrix, L.matrix);
}

TEST(Drive, VacuumSource)
{
    const FockSpace s(4);
    const cplx phi{0.02, -0.01};
    const auto D = drive_superop(s, {phi});
    const auto drho = unvec(D * vec(fock_state(s, 0)), 5);
    // d<a>/dt = tr(a drho) = -i phi at the vacuum
    const cplx da = (annihilation(s) * drho).trace();
    EXPECT_NEAR(std::abs(da - cplx(0.0, -1.0) * phi), 0.0, 1e-15);
}

TEST(Drive, LinearInField)
{
    const auto p = fig1();
    const auto L = build_lindblad(FockSpace(4), p, ReservoirSpec::square(p));
    const cplx phi{0.3, 0.1};
    const Eigen::MatrixXcd d1 = add_drive(L, {phi}).matrix - L.matrix;
    const Eigen::MatrixXcd d2 = add_drive(L, {2.0 * phi}).matrix - L.matrix;
    EXPECT_LT((d2 - 2.0 * d1).norm(), 1e-14);
    const auto copy = L.matrix;
    (void)add_drive(L, {phi});
    EXPECT_EQ(L.matrix, copy);
}

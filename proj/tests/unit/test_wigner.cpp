#include <gtest/gtest.h>

#include <cmath>
#include <unsupported/Eigen/MatrixFunctions>

#include "mottlc/wigner.hpp"

using namespace mottlc;

TEST(Wigner, VacuumPeak)
{
    EXPECT_NEAR(wigner_point(fock_state(FockSpace(4), 0), 0.0, 0.0), 1.0 / M_PI, 1e-14);
}

TEST(Wigner, OnePhotonParity)
{
    EXPECT_NEAR(wigner_point(fock_state(FockSpace(4), 1), 0.0, 0.0), -1.0 / M_PI, 1e-14);
}

TEST(Wigner, CoherentStateGaussian)
{
    const double x0 = 0.8, p0 = -0.4;
    const FockSpace s(30);
    const auto rho = coherent_state(s, cplx(x0, p0) / std::sqrt(2.0));
    for (double x : {-0.5, 0.3, 0.8, 1.7}) {
        for (double p : {-1.0, -0.4, 0.6}) {
            const double expected =
                std::exp(-(x - x0) * (x - x0) - (p - p0) * (p - p0)) / M_PI;
            EXPECT_NEAR(wigner_point(rho, x, p), expected, 1e-12);
        }
    }
}

TEST(Wigner, DisplacementMatchesMatrixExponential)
{
    const int big = 60;
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(big, big);
    for (int n = 1; n < big; ++n) a(n - 1, n) = std::sqrt(double(n));
    const cplx beta{0.7, -0.5};
    const Eigen::MatrixXcd D = (beta * a.adjoint() - std::conj(beta) * a).exp();
    for (int n = 0; n < 8; ++n) {
        for (int m = 0; m < 8; ++m) {
            EXPECT_NEAR(std::abs(displacement_element(n, m, beta) - D(n, m)), 0.0, 1e-12);
        }
    }
}

TEST(Wigner, NormalizationByQuadrature)
{
    const FockSpace s(8);
    DensityMatrix rho = 0.5 * fock_state(s, 1) + 0.5 * coherent_state(s, {0.4, 0.2});
    const auto g = wigner(rho, {-5, 5, -5, 5, 121});
    EXPECT_NEAR(g.integral(), 1.0, 0.01);
    EXPECT_LT(g.min(), 0.0);
}

TEST(Wigner, TruncationWarning)
{
    const FockSpace s(4);
    EXPECT_TRUE(has_warning(wigner(fock_state(s, 0), {-3, 3, -3, 3, 11}).warnings,
                            WarningKind::Truncation));
    EXPECT_FALSE(has_warning(wigner(fock_state(s, 0), {-1, 1, -1, 1, 11}).warnings,
                             WarningKind::Truncation));
    EXPECT_THROW(wigner(fock_state(s, 0), {1, -1, -1, 1, 11}), InvalidParameter);
}

TEST(Wigner, RotationalSymmetry)
{
    const FockSpace s(8);
    const WignerAxes axes{-2, 2, -2, 2, 21};
    EXPECT_LT(rotational_asymmetry(fock_state(s, 2), axes), 1e-13);
    EXPECT_GT(rotational_asymmetry(coherent_state(s, 0.5), axes), 1e-3);
}

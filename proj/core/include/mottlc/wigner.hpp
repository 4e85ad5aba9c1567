// wigner.hpp — Wigner function of a single-mode density matrix from
// displaced parity, W(x,p) = (1/pi) tr[D(2 beta) P rho], beta = (x + i p)/sqrt 2

#pragma once

#include <vector>

#include "mottlc/errors.hpp"
#include "mottlc/fockspace.hpp"

namespace mottlc {

struct WignerAxes {
    double x_min{-3.0};
    double x_max{3.0};
    double p_min{-3.0};
    double p_max{3.0};
    int resolution{101};
};

struct WignerGrid {
    std::vector<double> xs;
    std::vector<double> ps;
    Eigen::MatrixXd values; // values(i, j) = W(xs[i], ps[j])
    Warnings warnings;

    double min() const { return values.minCoeff(); }
    // Trapezoidal integral over the grid; 1 for a state contained in it.
    double integral() const;
};

// <n| D(beta) |m> for the full (untruncated) displacement operator.
cplx displacement_element(int n, int m, cplx beta);

double wigner_point(const DensityMatrix& rho, double x, double p);

// Truncation warning when |beta|^2 > nmax/2 somewhere on the grid.
WignerGrid wigner(const DensityMatrix& rho, const WignerAxes& axes = {});

// max over rotation angles theta of max |W(R_theta (x, p)) - W(x, p)| on
// the grid points inside the inscribed disc.
double rotational_asymmetry(const DensityMatrix& rho, const WignerAxes& axes = {},
                            int angles = 24);

} // namespace mottlc

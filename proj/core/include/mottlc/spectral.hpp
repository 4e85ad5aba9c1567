// spectral.hpp — steady states, Liouvillian eigendecomposition and retarded
// Green's functions (Lehmann form, resolvent form, ground-state form)

#pragma once

#include <complex>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "mottlc/liouvillian.hpp"

namespace mottlc {

// Unique null vector of L, trace one, Hermitian. Throws
// DegenerateSteadyState if two or more eigenvalues satisfy |lambda| < 1e-10 U.
DensityMatrix steady_state(const Superoperator& L);

// p_n = r^n (1 - r) / (1 - r^{N+1}) for n <= N, zero above, padded to nmax + 1.
// Only valid for the square bath at J = 0. Throws InvalidFilling when N does
// not satisfy N - 1 < mu/U < N.
std::vector<double> analytic_populations(const ModelParams& params, int N, int nmax);

// Biorthonormal eigensystem: column alpha of `rights` / `lefts` holds
// vec(r_alpha) / vec(l_alpha) with vec(l_alpha)^H vec(r_beta) = delta.
// Ordered by Im lambda (ties by Re lambda). The null mode is scaled so that
// its right vector has unit trace.
struct EigenSystem {
    int dim{0};
    Eigen::VectorXcd lambdas;
    Eigen::MatrixXcd rights;
    Eigen::MatrixXcd lefts;

    int size() const { return static_cast<int>(lambdas.size()); }
    Eigen::MatrixXcd right(int alpha) const;
    Eigen::MatrixXcd left(int alpha) const;
    int null_index() const;
    // max |vec(l)^H vec(r) - delta|
    double biorthonormality_residual() const;
};

// Throws IllConditioned if the biorthonormality residual exceeds 1e-6.
EigenSystem eigendecompose(const Superoperator& L);

struct Pole {
    std::complex<double> lambda;
    std::complex<double> weight;
};

// Lorentzian and anti-Lorentzian pieces of Im[w / (omega + Im l - i Re l)].
struct ImSplit {
    double lorentzian{0.0};
    double anti_lorentzian{0.0};
};

ImSplit split_imaginary(const Pole& pole, double omega);

struct GreensFunction {
    std::vector<double> omegas;
    std::vector<std::complex<double>> values;
    std::vector<Pole> poles;

    // sum_alpha w / (omega + Im lambda - i Re lambda)
    std::complex<double> evaluate(double omega) const;
    std::complex<double> weight_sum() const;
};

GreensFunction greens_from_poles(std::vector<Pole> poles, std::span<const double> omegas);

// Lehmann form with w_alpha = tr(a r_alpha) tr(l_alpha^dag [a^dag, rho]).
GreensFunction greens_retarded(const EigenSystem& sys, const DensityMatrix& rho_ss,
                               std::span<const double> omegas);

// Same quantity from linear solves: G(omega) = i tr(a (L + i omega)^{-1} [a^dag, rho]).
std::vector<std::complex<double>> greens_resolvent(const Superoperator& L,
                                                   const DensityMatrix& rho_ss,
                                                   std::span<const double> omegas);

// (N+1)/(omega - U N + i eta) - N/(omega - U(N-1) + i eta), rotating frame.
GreensFunction greens_groundstate(int N, double U, double mu_eff, double eta,
                                  std::span<const double> omegas);

inline constexpr double kGroundStateEta = 1e-6; // in units of U

// Steady-state susceptibility for a parameter set: builds the generator,
// the steady state and the Lehmann sum.
struct SteadyResponse {
    Superoperator generator;
    DensityMatrix rho;
    EigenSystem eigen;
    GreensFunction greens;
};

SteadyResponse steady_response(const ModelParams& params, const ReservoirSpec& spec,
                               int nmax, std::span<const double> omegas = {});

} // namespace mottlc

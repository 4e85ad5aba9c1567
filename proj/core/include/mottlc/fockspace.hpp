// fockspace.hpp — truncated bosonic Fock space, ladder operators and the
// single-site Bose-Hubbard Hamiltonian in the rotating frame

#pragma once

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace mottlc {

using cplx = std::complex<double>;
using Operator = Eigen::MatrixXcd;
using DensityMatrix = Eigen::MatrixXcd;

// Occupations 0..nmax; immutable once built.
class FockSpace {
public:
    explicit FockSpace(int nmax);

    int nmax() const noexcept { return nmax_; }
    int dim() const noexcept { return nmax_ + 1; }

    bool operator==(const FockSpace&) const = default;

private:
    int nmax_;
};

// Physical couplings. Energies are in units where U carries the scale
// (U = 1 by default); every rate shares those units.
struct ModelParams {
    double U{1.0};
    double J{0.0};        // hopping rate (mean-field phi = -J <a>)
    int z{1};             // lattice coordination
    double kappa{1e-3};   // loss rate
    double r{100.0};      // pump / loss ratio
    double mu_eff{0.5};   // effective chemical potential
    double omega0{10.0};  // bare frequency; enters the Redfield Lamb shift only

    // Throws InvalidParameter unless U > 0, kappa > 0, r >= 0, z >= 1, J >= 0.
    void validate() const;
};

Operator annihilation(const FockSpace& space);
Operator creation(const FockSpace& space);
Operator number(const FockSpace& space);
Operator identity(const FockSpace& space);

// Diagonal E_n = U n (n - 1) / 2.
Operator hamiltonian_site(const FockSpace& space, const ModelParams& params);
double site_energy(const ModelParams& params, int n);

// Integer filling N with N - 1 < mu/U < N. Non-positive mu gives N = 0.
// Throws InvalidFilling when mu/U is an integer > 0 (lobe boundary).
int filling(const ModelParams& params);

// Default truncation N + 5.
int default_nmax(const ModelParams& params);

// Coherent state |alpha><alpha| projected on the space and renormalized.
DensityMatrix coherent_state(const FockSpace& space, cplx alpha);
DensityMatrix fock_state(const FockSpace& space, int n);

// Repeats a computation at nmax and nmax + 2 and compares the observables
// (relative difference, on an absolute scale of 1e-4 for small values).
struct TruncationCheck {
    int nmax{0};
    int nmax_refined{0};
    double max_rel_diff{0.0};
    bool converged{false};
};

TruncationCheck check_truncation(
    const std::function<std::vector<double>(int nmax)>& observables,
    int nmax, double rel_tol = 1e-8);

} // namespace mottlc

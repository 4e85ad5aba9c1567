// liouvillian.hpp — single-site Lindblad and Redfield generators as dense
// superoperators on column-stacked density matrices
//
// Vectorization is column stacking throughout the project:
//   vec(A rho)  = (I (x) A)   vec(rho)
//   vec(rho B)  = (B^T (x) I) vec(rho)

#pragma once

#include <complex>

#include <Eigen/Dense>

#include "mottlc/errors.hpp"
#include "mottlc/fockspace.hpp"
#include "mottlc/reservoir.hpp"

namespace mottlc {

enum class GeneratorKind { Lindblad, Redfield };

struct Superoperator {
    FockSpace space{1};
    Eigen::MatrixXcd matrix;
    GeneratorKind kind{GeneratorKind::Lindblad};
    double energy_scale{1.0}; // U, used for null-eigenvalue thresholds
    Warnings warnings;

    int dim() const { return space.dim(); }
    DensityMatrix apply(const DensityMatrix& rho) const;
};

// Mean-field coherent field phi = -J <a>.
struct DriveField {
    std::complex<double> phi{0.0, 0.0};
};

Eigen::VectorXcd vec(const Eigen::MatrixXcd& m);
Eigen::MatrixXcd unvec(const Eigen::VectorXcd& v, int dim);

Eigen::MatrixXcd left_superop(const Eigen::MatrixXcd& a);
Eigen::MatrixXcd right_superop(const Eigen::MatrixXcd& b);
// -i [H, .]
Eigen::MatrixXcd hamiltonian_superop(const Eigen::MatrixXcd& h);
// rate * (O . O^dag - {O^dag O, .} / 2)
Eigen::MatrixXcd dissipator_superop(const Eigen::MatrixXcd& o, double rate);

// -i[H,.] + kappa D[a] + sum_n rate(omega_n) D[sqrt(n+1)|n+1><n|]; channels
// leaving the space are dropped (Truncation warning if they carry weight).
// Requires a Square or Lorentzian spec.
Superoperator build_lindblad(const FockSpace& space, const ModelParams& params,
                             const ReservoirSpec& spec);

// -i[H,.] + kappa D[a] + (a^dag rho X + X^dag rho a - a X^dag rho - rho X a^dag)
// with X = sum_n rkS^R(E_n - E_{n-1}) sqrt(n) |n-1><n| the filtered
// operator (r kappa absorbed into X). Requires a RedfieldSquare spec.
Superoperator build_redfield(const FockSpace& space, const ModelParams& params,
                             const ReservoirSpec& spec);

// r kappa-scaled filtered operator used by build_redfield.
Operator filtered_annihilation(const FockSpace& space, const ModelParams& params,
                               const ReservoirSpec& spec);

// Hamiltonian generated by the imaginary part of the response on the
// secular terms: -sum_n Im(rkS^R(omega_n)) A_n^dag A_n.
Operator lamb_shift_hamiltonian(const FockSpace& space, const ModelParams& params,
                                const ReservoirSpec& spec);

// -i [phi* a + phi a^dag, .]
Eigen::MatrixXcd drive_superop(const FockSpace& space, DriveField drive);

// New generator L - i[phi* a + phi a^dag, .]; L is left untouched.
Superoperator add_drive(const Superoperator& L, DriveField drive);

Superoperator build_generator(const FockSpace& space, const ModelParams& params,
                              const ReservoirSpec& spec);

} // namespace mottlc

// perturb.hpp — first-order perturbation theory in the dissipator for the
// (n+1, n) coherence sector, the single-peak doublon approximation, and
// the anti-Lorentzian peak fit f(w) = b (1 - i gamma a) / (w + i gamma)

#pragma once

#include <complex>
#include <span>
#include <vector>

#include "mottlc/critical.hpp"

namespace mottlc {

enum class PerturbVariant { Redfield, Lindblad };

struct CoherencePair {
    int n{0};          // pair |n+1><n|
    cplx lambda;       // first-order eigenvalue
    Operator right;    // r_{n+1,n}
    Operator left;     // l_{n+1,n}
};

struct PerturbativeSystem {
    FockSpace space{1};
    std::vector<CoherencePair> pairs; // n = 0 .. nmax-1
    Warnings warnings;                // WeakCoupling when r kappa / U > 0.05
};

// Corrections use r k S^R = response(spec, channel) for every transition.
// The Lindblad variant keeps the eigenvalues and drops the pump-induced
// eigenvector corrections.
PerturbativeSystem first_order_eigs(const ModelParams& params, const ReservoirSpec& spec,
                                    PerturbVariant variant, int nmax);

// w = tr(a r) tr(l^dag [a^dag, rho]) for one pair.
cplx pair_weight(const CoherencePair& pair, const DensityMatrix& rho);

// Exact eigenvalues of the generator restricted to the (n+1, n) sector,
// indexed by n (pairing through the sector structure, not by sorting).
std::vector<cplx> coherence_sector_eigenvalues(const Superoperator& L);

// max_n |lambda_pert - lambda_exact| over the sector.
double first_order_error(const PerturbativeSystem& pt, const Superoperator& L);

enum class SinglePeakForm {
    PoleTerm,  // the (N+1, N) term of the first-order Lehmann sum
    AsPrinted, // closed form with the printed anti-Lorentzian weight
};

// Doublon-peak approximation with p_n = delta_{nN}. The pole term uses the
// same reservoir as the full solver; AsPrinted uses only params.
GreensFunction single_peak_greens(const ModelParams& params, const ReservoirSpec& spec, int N,
                                  std::span<const double> omegas,
                                  SinglePeakForm form = SinglePeakForm::PoleTerm,
                                  bool include_pump_term = true);

struct PeakFit {
    double a{0.0};
    double b{0.0};
    double gamma{0.0};
    double center{0.0};
    double residual{0.0}; // rms of the Im residual over the peak height

    double predicted_omega_c() const { return center - 1.0 / a; }
    double predicted_J_c() const { return 1.0 / (a * b); }
    cplx evaluate(double omega) const;
};

// (U N - 20 kappa, U N + 20 kappa)
FrequencyWindow doublon_window(const ModelParams& params);

// Least-squares fit of Im f(w - center) to Im G on `samples` window points,
// started from the dominant pole in the window. FitFailure if the
// residual exceeds 5% of the peak height.
PeakFit antilorentzian_fit(const GreensFunction& G, FrequencyWindow window, int samples = 801);

} // namespace mottlc

// critical.hpp — critical-point equations: Im G(omega_c) = 0 and
// 1/J_c = -Re G(omega_c), ground-state lobes, and the Bethe-lattice DMFT
// variant driven by an external susceptibility

#pragma once

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mottlc/spectral.hpp"

namespace mottlc {

enum class CriticalMethod { RPA, GroundState, DMFT, Dynamics };

std::string to_string(CriticalMethod m);

struct CriticalPoint {
    double omega_c{0.0};
    double J_c{0.0};
    CriticalMethod method{CriticalMethod::RPA};
    int N{0};
};

struct FrequencyWindow {
    double lo{0.0};
    double hi{0.0};
};

// (U (N - 1), U N + 20 kappa): from the holon to just past the doublon.
FrequencyWindow default_window(const ModelParams& params);

inline constexpr double kRootTolerance = 1e-10; // in units of U

// Every zero of Im G in the window, bracketed on a pole-adapted grid and
// refined by bisection to `tol`.
std::vector<double> imaginary_zeros(const GreensFunction& G, FrequencyWindow window,
                                    double tol = kRootTolerance);

// The zero selected as the critical frequency: among zeros with Re G < 0 the
// one of smallest J_c. Throws NoRoot without any zero in the window; if no
// zero has Re G < 0 the first zero is returned (critical_hopping then
// reports WrongSign).
double find_critical_frequency(const GreensFunction& G, FrequencyWindow window,
                               double tol = kRootTolerance);

// J_c = -1 / Re G(omega_c); throws WrongSign when Re G(omega_c) >= 0.
double critical_hopping(const GreensFunction& G, double omega_c);

// Steady-state RPA critical point of the single-site generator.
CriticalPoint rpa_critical(const ModelParams& params, const ReservoirSpec& spec,
                           int nmax, std::optional<FrequencyWindow> window = {});
CriticalPoint rpa_critical(const SteadyResponse& response, const ModelParams& params,
                           std::optional<FrequencyWindow> window = {});

// Ground-state transition: omega_c = mu, J_c = -1/Re G_gs(mu).
CriticalPoint ground_state_critical(int N, double U, double mu);

struct LobePoint {
    double mu{0.0};
    double J_c{0.0};
};

// J_c^gs along mu; points on or outside the lobe edges give J_c = 0.
std::vector<LobePoint> ground_state_lobe(int N, double U, std::span<const double> mu_grid);

// Equilibrium-like boundary on the dissipative susceptibility: omega fixed to mu.
double ground_state_like_hopping(const GreensFunction& G, double mu_eff);

using SusceptibilityCallback = std::function<std::complex<double>(double omega, double J)>;

struct DmftOptions {
    int max_iterations{200};
    double rel_tol{1e-8};
    int scan_points{4001};
    double J_start{0.0};
};

// Solves Im G(w, J) = 0 and 1/J + Re G + (J/z) (Re G)^2 = 0 by alternating a
// frequency root find at fixed J with the smaller positive root of the
// quadratic in J. z may be +inf. Throws NoConvergence.
CriticalPoint dmft_critical(const SusceptibilityCallback& G, double z,
                            FrequencyWindow bracket, const DmftOptions& options = {});

struct PhaseRow {
    double mu_eff{0.0};
    double r{0.0};
    int N{0};
    std::optional<double> omega_c;
    std::optional<double> J_c;
    std::optional<double> J_c_gs;
    std::optional<double> J_c_gslike;
    std::optional<double> J_c_redfield;
    std::optional<double> omega_c_redfield;
    std::string note; // first failure message, if any
};

struct LobeScanOptions {
    bool redfield_column{false};
    bool lamb_shift{true};
    int nmax{0}; // 0: N + 5 per point
    unsigned workers{1};
};

// One row per (mu, r), mu-major. Failed solves leave empty cells.
std::vector<PhaseRow> lobe_scan(const ModelParams& base, std::span<const double> mu_grid,
                                std::span<const double> r_list,
                                const LobeScanOptions& options = {});

// True when J_c is identical (to rel_tol) across all rows sharing (N, r).
bool lobes_flat(const std::vector<PhaseRow>& rows, double rel_tol = 1e-10);

} // namespace mottlc

// gutzwiller.hpp — self-consistent single-site mean-field dynamics,
// Mott / limit-cycle classification and the dynamical critical hopping

#pragma once

#include <complex>
#include <limits>
#include <utility>
#include <vector>

#include "mottlc/liouvillian.hpp"
#include "mottlc/wigner.hpp"

namespace mottlc {

// All times are in units of 1/U (the energy unit); multiply by kappa for
// the t*kappa axis used in the exports.
struct EvolveControls {
    double rtol{1e-8};
    double atol{1e-10};
    double sample_dt{0.25};   // must stay below pi / omega to resolve the phase
    double dt_initial{1e-2};
    double h_min{1e-12};
    double max_entry{2.0}; // |rho_ij| above this is a runaway (physical bound is 1)
    double stop_amplitude{std::numeric_limits<double>::infinity()};
    std::vector<double> snapshot_times;
};

struct TrajectoryRecord {
    double kappa{0.0};
    std::vector<double> times;
    std::vector<std::complex<double>> order_parameter;
    std::vector<double> density;
    std::vector<std::vector<double>> populations;
    std::vector<double> min_eigenvalue;
    std::vector<double> trace;
    std::vector<std::pair<double, DensityMatrix>> snapshots;
    DensityMatrix final_state;
    bool stopped_early{false}; // |<a>| crossed stop_amplitude
    Warnings warnings;

    std::size_t size() const { return times.size(); }
    std::vector<double> scaled_times() const; // t * kappa
};

// d rho/dt = L0 rho - i [phi* a + phi a^dag, rho] with phi = -J tr(a rho),
// the field updated at every Runge-Kutta stage. L0 must be built at J = 0.
TrajectoryRecord evolve(const Superoperator& L0, const ModelParams& params,
                        const DensityMatrix& rho0, double t_end,
                        const EvolveControls& controls = {});

enum class Phase { Mott, LimitCycle, Undecided };

const char* to_string(Phase p);

struct ClassifyControls {
    double amplitude_floor{1e-4};
    double drift_tol{1e-2};
    double window_fraction{0.25};
};

struct LimitCycleReport {
    Phase phase{Phase::Undecided};
    double amplitude{0.0};     // mean |<a>| over the trailing window
    double frequency{0.0};     // <a> ~ exp(-i frequency t), rotating frame
    double transient_end{0.0};
    double growth_rate{0.0};   // d log|<a>| / dt over the trailing window
    double drift{0.0};         // std / mean of |<a>| over the trailing window
};

LimitCycleReport classify_phase(const TrajectoryRecord& traj,
                                const ClassifyControls& controls = {});

// Unstable: a limit cycle, or a nonzero seed whose amplitude still grows.
bool is_unstable(const TrajectoryRecord& traj, const LimitCycleReport& report);

struct DynamicsCriticalOptions {
    double J_lo{0.05};
    double J_hi{0.15};
    int iterations{12};
    double t_end_kappa{20.0};        // t_end = t_end_kappa / kappa
    std::complex<double> seed{0.01}; // coherent seed amplitude
    EvolveControls evolve{};
    ClassifyControls classify{};
};

struct DynamicsCritical {
    double J_c{0.0};     // bracket midpoint
    double J_lo{0.0};    // last stable hopping
    double J_hi{0.0};    // last unstable hopping
    double uncertainty{0.0};
    int trajectories{0};
};

// Bisection on J over the dynamical classification; J in absolute units
// (bracket given as multiples of U).
DynamicsCritical dynamics_critical_hopping(const ModelParams& params, const ReservoirSpec& spec,
                                           int nmax, const DynamicsCriticalOptions& options = {});

} // namespace mottlc

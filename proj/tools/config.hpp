// config.hpp — strict JSON run configuration for the mottlc tool

#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "mottlc/critical.hpp"
#include "mottlc/gutzwiller.hpp"

namespace mottlc::cli {

// Malformed file, unknown key, or out-of-range value: exit code 1.
struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ReservoirKind { Square, Lorentzian, Redfield };

struct ModelBlock {
    double kappa_over_U{1e-3};
    double r{100.0};
    double mu_eff_over_U{0.5};
    double J_over_U{0.0};
    int z{1};
    double omega0_over_U{10.0};
};

struct ReservoirBlock {
    ReservoirKind kind{ReservoirKind::Square};
    double omega_res_over_U{1.0};
    double gamma_over_U{1e-3};
    double frame_offset_over_U{1.0};
    bool lamb_shift{true};
};

struct SteadyBlock {
    std::vector<double> r_list; // empty: model.r only
};

struct GreensBlock {
    double omega_min{-1.0};
    double omega_max{2.0};
    int points{3001};
};

struct CriticalBlock {
    std::optional<double> window_lo;
    std::optional<double> window_hi;
};

struct PhaseDiagramBlock {
    std::vector<double> mu_grid{0.1, 0.3, 0.5, 0.7, 0.9, 1.1, 1.3, 1.5, 1.7, 1.9};
    std::vector<double> r_list{100.0};
    bool redfield_column{false};
};

struct DynamicsBlock {
    double t_end_kappa{20.0};
    double seed_re{0.01};
    double seed_im{0.0};
    double sample_dt{0.25};
    double rtol{1e-8};
    double atol{1e-10};
    std::vector<double> snapshot_t_kappa{};
    double wigner_range{3.0};
    int wigner_resolution{61};
    bool bisect{false};
    double J_lo_over_U{0.05};
    double J_hi_over_U{0.15};
    int iterations{12};
};

struct PerturbBlock {
    bool fit{true};
};

struct RunConfig {
    ModelBlock model;
    ReservoirBlock reservoir;
    int nmax{0}; // 0: N + 5
    SteadyBlock steady;
    GreensBlock greens;
    CriticalBlock critical;
    PhaseDiagramBlock phase_diagram;
    DynamicsBlock dynamics;
    PerturbBlock perturb;

    ModelParams params() const;
    ReservoirSpec spec(const ModelParams& p) const;
    int resolved_nmax(const ModelParams& p) const;
};

RunConfig parse_config(const nlohmann::json& j);
RunConfig load_config(const std::string& path);
nlohmann::json to_json(const RunConfig& c);

} // namespace mottlc::cli

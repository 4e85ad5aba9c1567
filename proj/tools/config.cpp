// config.cpp — schema, strict parsing and range checks

#include "config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace mottlc::cli {

using nlohmann::json;

namespace {

void reject_unknown(const json& j, const std::string& where, std::set<std::string> known)
{
    if (!j.is_object()) throw ConfigError(where + ": expected an object");
    for (const auto& [key, _] : j.items()) {
        if (!known.count(key)) throw ConfigError(where + ": unknown key '" + key + "'");
    }
}

template <class T>
void read(const json& j, const char* key, T& out, const std::string& where)
{
    if (!j.contains(key)) return;
    try {
        out = j.at(key).get<T>();
    } catch (const json::exception&) {
        throw ConfigError(where + "." + key + ": wrong type");
    }
}

void read_opt(const json& j, const char* key, std::optional<double>& out, const std::string& where)
{
    if (!j.contains(key)) return;
    double v = 0.0;
    read(j, key, v, where);
    out = v;
}

void require(bool ok, const std::string& what)
{
    if (!ok) throw ConfigError(what);
}

bool finite(double x) { return std::isfinite(x); }

bool all_finite(const std::vector<double>& v)
{
    for (double x : v) {
        if (!finite(x)) return false;
    }
    return true;
}

const char* kind_name(ReservoirKind k)
{
    switch (k) {
    case ReservoirKind::Square: return "square";
    case ReservoirKind::Lorentzian: return "lorentzian";
    case ReservoirKind::Redfield: return "redfield";
    }
    return "square";
}

} // namespace

RunConfig parse_config(const json& j)
{
    RunConfig c;
    reject_unknown(j, "config", {"model", "reservoir", "nmax", "steady", "greens", "critical",
                                 "phase_diagram", "dynamics", "perturb"});
    if (j.contains("model")) {
        const auto& m = j["model"];
        reject_unknown(m, "model", {"kappa_over_U", "r", "mu_eff_over_U", "J_over_U", "z",
                                    "omega0_over_U"});
        read(m, "kappa_over_U", c.model.kappa_over_U, "model");
        read(m, "r", c.model.r, "model");
        read(m, "mu_eff_over_U", c.model.mu_eff_over_U, "model");
        read(m, "J_over_U", c.model.J_over_U, "model");
        read(m, "z", c.model.z, "model");
        read(m, "omega0_over_U", c.model.omega0_over_U, "model");
    }
    if (j.contains("reservoir")) {
        const auto& r = j["reservoir"];
        reject_unknown(r, "reservoir", {"kind", "omega_res_over_U", "gamma_over_U",
                                        "frame_offset_over_U", "lamb_shift"});
        std::string kind = "square";
        read(r, "kind", kind, "reservoir");
        if (kind == "square") c.reservoir.kind = ReservoirKind::Square;
        else if (kind == "lorentzian") c.reservoir.kind = ReservoirKind::Lorentzian;
        else if (kind == "redfield") c.reservoir.kind = ReservoirKind::Redfield;
        else throw ConfigError("reservoir.kind: expected square, lorentzian or redfield");
        read(r, "omega_res_over_U", c.reservoir.omega_res_over_U, "reservoir");
        read(r, "gamma_over_U", c.reservoir.gamma_over_U, "reservoir");
        read(r, "frame_offset_over_U", c.reservoir.frame_offset_over_U, "reservoir");
        read(r, "lamb_shift", c.reservoir.lamb_shift, "reservoir");
    }
    read(j, "nmax", c.nmax, "config");
    if (j.contains("steady")) {
        reject_unknown(j["steady"], "steady", {"r_list"});
        read(j["steady"], "r_list", c.steady.r_list, "steady");
    }
    if (j.contains("greens")) {
        const auto& g = j["greens"];
        reject_unknown(g, "greens", {"omega_min", "omega_max", "points"});
        read(g, "omega_min", c.greens.omega_min, "greens");
        read(g, "omega_max", c.greens.omega_max, "greens");
        read(g, "points", c.greens.points, "greens");
    }
    if (j.contains("critical")) {
        reject_unknown(j["critical"], "critical", {"window_lo", "window_hi"});
        read_opt(j["critical"], "window_lo", c.critical.window_lo, "critical");
        read_opt(j["critical"], "window_hi", c.critical.window_hi, "critical");
    }
    if (j.contains("phase_diagram")) {
        const auto& p = j["phase_diagram"];
        reject_unknown(p, "phase_diagram", {"mu_grid", "r_list", "redfield_column"});
        read(p, "mu_grid", c.phase_diagram.mu_grid, "phase_diagram");
        read(p, "r_list", c.phase_diagram.r_list, "phase_diagram");
        read(p, "redfield_column", c.phase_diagram.redfield_column, "phase_diagram");
    }
    if (j.contains("dynamics")) {
        const auto& d = j["dynamics"];
        reject_unknown(d, "dynamics", {"t_end_kappa", "seed_re", "seed_im", "sample_dt", "rtol",
                                       "atol", "snapshot_t_kappa", "wigner_range",
                                       "wigner_resolution", "bisect", "J_lo_over_U",
                                       "J_hi_over_U", "iterations"});
        auto& b = c.dynamics;
        read(d, "t_end_kappa", b.t_end_kappa, "dynamics");
        read(d, "seed_re", b.seed_re, "dynamics");
        read(d, "seed_im", b.seed_im, "dynamics");
        read(d, "sample_dt", b.sample_dt, "dynamics");
        read(d, "rtol", b.rtol, "dynamics");
        read(d, "atol", b.atol, "dynamics");
        read(d, "snapshot_t_kappa", b.snapshot_t_kappa, "dynamics");
        read(d, "wigner_range", b.wigner_range, "dynamics");
        read(d, "wigner_resolution", b.wigner_resolution, "dynamics");
        read(d, "bisect", b.bisect, "dynamics");
        read(d, "J_lo_over_U", b.J_lo_over_U, "dynamics");
        read(d, "J_hi_over_U", b.J_hi_over_U, "dynamics");
        read(d, "iterations", b.iterations, "dynamics");
    }
    if (j.contains("perturb")) {
        reject_unknown(j["perturb"], "perturb", {"fit"});
        read(j["perturb"], "fit", c.perturb.fit, "perturb");
    }

    const auto& m = c.model;
    require(finite(m.kappa_over_U) && m.kappa_over_U > 0.0 && m.kappa_over_U <= 0.1,
            "model.kappa_over_U must lie in (0, 0.1]");
    require(finite(m.r) && m.r >= 0.0 && m.r <= 1e6, "model.r must lie in [0, 1e6]");
    require(finite(m.mu_eff_over_U) && std::abs(m.mu_eff_over_U) <= 10.0,
            "model.mu_eff_over_U must lie in [-10, 10]");
    require(finite(m.J_over_U) && m.J_over_U >= 0.0 && m.J_over_U <= 10.0,
            "model.J_over_U must lie in [0, 10]");
    require(m.z >= 1, "model.z must be >= 1");
    require(finite(m.omega0_over_U) && m.omega0_over_U > 0.0, "model.omega0_over_U must be > 0");
    const auto& r = c.reservoir;
    require(finite(r.omega_res_over_U), "reservoir.omega_res_over_U must be finite");
    require(finite(r.gamma_over_U) && r.gamma_over_U > 0.0, "reservoir.gamma_over_U must be > 0");
    require(finite(r.frame_offset_over_U), "reservoir.frame_offset_over_U must be finite");
    require(c.nmax == 0 || (c.nmax >= 1 && c.nmax <= 12), "nmax must be 0 (auto) or in [1, 12]");
    require(all_finite(c.steady.r_list), "steady.r_list must be finite");
    for (double x : c.steady.r_list) require(x >= 0.0, "steady.r_list entries must be >= 0");
    require(finite(c.greens.omega_min) && finite(c.greens.omega_max) &&
                c.greens.omega_max > c.greens.omega_min,
            "greens: omega_max must exceed omega_min");
    require(c.greens.points >= 2 && c.greens.points <= 1000000, "greens.points in [2, 1e6]");
    require(c.critical.window_lo.has_value() == c.critical.window_hi.has_value(),
            "critical: give both window_lo and window_hi or neither");
    if (c.critical.window_lo) {
        require(finite(*c.critical.window_lo) && finite(*c.critical.window_hi) &&
                    *c.critical.window_hi > *c.critical.window_lo,
                "critical: window_hi must exceed window_lo");
    }
    require(!c.phase_diagram.mu_grid.empty() && all_finite(c.phase_diagram.mu_grid),
            "phase_diagram.mu_grid must be a non-empty finite list");
    require(!c.phase_diagram.r_list.empty() && all_finite(c.phase_diagram.r_list),
            "phase_diagram.r_list must be a non-empty finite list");
    const auto& d = c.dynamics;
    require(finite(d.t_end_kappa) && d.t_end_kappa > 0.0, "dynamics.t_end_kappa must be > 0");
    require(finite(d.seed_re) && finite(d.seed_im), "dynamics seed must be finite");
    require(finite(d.sample_dt) && d.sample_dt > 0.0, "dynamics.sample_dt must be > 0");
    require(d.rtol > 0.0 && d.atol > 0.0, "dynamics tolerances must be > 0");
    require(all_finite(d.snapshot_t_kappa), "dynamics.snapshot_t_kappa must be finite");
    require(finite(d.wigner_range) && d.wigner_range > 0.0, "dynamics.wigner_range must be > 0");
    require(d.wigner_resolution >= 2 && d.wigner_resolution <= 1001,
            "dynamics.wigner_resolution in [2, 1001]");
    require(d.J_hi_over_U > d.J_lo_over_U && d.J_lo_over_U >= 0.0,
            "dynamics: J_hi_over_U must exceed J_lo_over_U >= 0");
    require(d.iterations >= 1 && d.iterations <= 60, "dynamics.iterations in [1, 60]");
    return c;
}

RunConfig load_config(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path);
    json j;
    try {
        j = json::parse(in, nullptr, true, /*ignore_comments=*/true);
    } catch (const json::parse_error& e) {
        throw ConfigError(std::string("config parse error: ") + e.what());
    }
    return parse_config(j);
}

ModelParams RunConfig::params() const
{
    ModelParams p;
    p.U = 1.0;
    p.kappa = model.kappa_over_U;
    p.r = model.r;
    p.mu_eff = model.mu_eff_over_U;
    p.J = model.J_over_U;
    p.z = model.z;
    p.omega0 = model.omega0_over_U;
    return p;
}

ReservoirSpec RunConfig::spec(const ModelParams& p) const
{
    switch (reservoir.kind) {
    case ReservoirKind::Square: return ReservoirSpec::square(p);
    case ReservoirKind::Lorentzian:
        return ReservoirSpec::lorentzian(p, reservoir.omega_res_over_U, reservoir.gamma_over_U,
                                         reservoir.frame_offset_over_U);
    case ReservoirKind::Redfield: return ReservoirSpec::redfield(p, reservoir.lamb_shift);
    }
    return ReservoirSpec::square(p);
}

int RunConfig::resolved_nmax(const ModelParams& p) const
{
    if (nmax > 0) return nmax;
    // the Lorentzian has no filling window; its tails pump every level
    if (reservoir.kind == ReservoirKind::Lorentzian) return 6;
    return default_nmax(p);
}

json to_json(const RunConfig& c)
{
    json j;
    j["model"] = {{"kappa_over_U", c.model.kappa_over_U},
                  {"r", c.model.r},
                  {"mu_eff_over_U", c.model.mu_eff_over_U},
                  {"J_over_U", c.model.J_over_U},
                  {"z", c.model.z},
                  {"omega0_over_U", c.model.omega0_over_U}};
    j["reservoir"] = {{"kind", kind_name(c.reservoir.kind)},
                      {"omega_res_over_U", c.reservoir.omega_res_over_U},
                      {"gamma_over_U", c.reservoir.gamma_over_U},
                      {"frame_offset_over_U", c.reservoir.frame_offset_over_U},
                      {"lamb_shift", c.reservoir.lamb_shift}};
    j["nmax"] = c.nmax;
    j["steady"] = {{"r_list", c.steady.r_list}};
    j["greens"] = {{"omega_min", c.greens.omega_min},
                   {"omega_max", c.greens.omega_max},
                   {"points", c.greens.points}};
    j["critical"] = json::object();
    if (c.critical.window_lo) {
        j["critical"]["window_lo"] = *c.critical.window_lo;
        j["critical"]["window_hi"] = *c.critical.window_hi;
    }
    j["phase_diagram"] = {{"mu_grid", c.phase_diagram.mu_grid},
                          {"r_list", c.phase_diagram.r_list},
                          {"redfield_column", c.phase_diagram.redfield_column}};
    const auto& d = c.dynamics;
    j["dynamics"] = {{"t_end_kappa", d.t_end_kappa},
                     {"seed_re", d.seed_re},
                     {"seed_im", d.seed_im},
                     {"sample_dt", d.sample_dt},
                     {"rtol", d.rtol},
                     {"atol", d.atol},
                     {"snapshot_t_kappa", d.snapshot_t_kappa},
                     {"wigner_range", d.wigner_range},
                     {"wigner_resolution", d.wigner_resolution},
                     {"bisect", d.bisect},
                     {"J_lo_over_U", d.J_lo_over_U},
                     {"J_hi_over_U", d.J_hi_over_U},
                     {"iterations", d.iterations}};
    j["perturb"] = {{"fit", c.perturb.fit}};
    return j;
}

} // namespace mottlc::cli

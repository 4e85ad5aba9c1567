// commands.cpp — steady, greens, critical, phase-diagram, dynamics, perturb

#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <tuple>

#include <CLI11.hpp>

#include "mottlc/perturb.hpp"

#ifndef MOTTLC_VERSION
#define MOTTLC_VERSION "unknown"
#endif

namespace mottlc::cli {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string fmt(double x)
{
    std::ostringstream s;
    s << std::setprecision(17) << x;
    return s.str();
}

std::string fmt(const std::optional<double>& x) { return x ? fmt(*x) : std::string{}; }

class CsvWriter {
public:
    explicit CsvWriter(const fs::path& path) : out_(path)
    {
        if (!out_) throw std::runtime_error("cannot write " + path.string());
    }
    template <class... Ts>
    void row(const Ts&... cells)
    {
        bool first = true;
        ((out_ << (first ? "" : ",") << cell(cells), first = false), ...);
        out_ << '\n';
    }
    void row(const std::vector<std::string>& cells)
    {
        for (std::size_t i = 0; i < cells.size(); ++i) out_ << (i ? "," : "") << cells[i];
        out_ << '\n';
    }

private:
    static std::string cell(const std::string& s) { return s; }
    static std::string cell(const char* s) { return s; }
    static std::string cell(double x) { return fmt(x); }
    static std::string cell(int x) { return std::to_string(x); }
    static std::string cell(const std::optional<double>& x) { return fmt(x); }
    std::ofstream out_;
};

void write_json(const fs::path& path, const json& j)
{
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
}

json warnings_json(const Warnings& ws)
{
    json arr = json::array();
    for (const auto& w : ws) {
        const char* kind = w.kind == WarningKind::Truncation       ? "truncation"
                           : w.kind == WarningKind::PositivityLoss ? "positivity_loss"
                                                                   : "weak_coupling";
        arr.push_back({{"kind", kind}, {"message", w.message}});
    }
    return arr;
}

json truncation_json(const TruncationCheck& t)
{
    return {{"nmax", t.nmax},
            {"nmax_refined", t.nmax_refined},
            {"max_rel_diff", t.max_rel_diff},
            {"converged", t.converged}};
}

json cplx_json(cplx z) { return json::array({z.real(), z.imag()}); }

json base_manifest(const RunContext& ctx, const char* command)
{
    return {{"command", command},
            {"version", MOTTLC_VERSION},
            {"config", to_json(ctx.config)},
            {"workers", ctx.workers},
            {"seed", ctx.seed},
            {"outputs", json::array()}};
}

std::vector<double> steady_observables(const RunContext& ctx, const ModelParams& p, int nmax,
                                       int keep)
{
    const FockSpace space(nmax);
    const auto L = build_generator(space, p, ctx.config.spec(p));
    const auto rho = steady_state(L);
    std::vector<double> obs;
    for (int n = 0; n <= keep; ++n) obs.push_back(rho(n, n).real());
    return obs;
}

std::vector<double> linspace(double lo, double hi, int n)
{
    std::vector<double> v(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

} // namespace

json cmd_steady(const RunContext& ctx)
{
    auto manifest = base_manifest(ctx, "steady");
    const ModelParams base = ctx.config.params();
    const int nmax = ctx.config.resolved_nmax(base);
    std::vector<double> rs = ctx.config.steady.r_list;
    if (rs.empty()) rs.push_back(base.r);

    CsvWriter csv(ctx.out_dir / "steady.csv");
    std::vector<std::string> header{"r", "n_mean", "purity"};
    for (int n = 0; n <= nmax; ++n) header.push_back("p" + std::to_string(n));
    csv.row(header);
    Warnings warnings;
    json rows = json::array();
    for (double r : rs) {
        ModelParams p = base;
        p.r = r;
        const FockSpace space(nmax);
        const auto L = build_generator(space, p, ctx.config.spec(p));
        warnings.insert(warnings.end(), L.warnings.begin(), L.warnings.end());
        const auto rho = steady_state(L);
        double nbar = 0.0;
        std::vector<std::string> cells{fmt(r), "", fmt((rho * rho).trace().real())};
        for (int n = 0; n <= nmax; ++n) {
            nbar += n * rho(n, n).real();
            cells.push_back(fmt(rho(n, n).real()));
        }
        cells[1] = fmt(nbar);
        csv.row(cells);
        rows.push_back({{"r", r}, {"n_mean", nbar}, {"purity", (rho * rho).trace().real()}});
    }
    ModelParams p = base;
    p.r = rs.front();
    manifest["truncation"] = truncation_json(check_truncation(
        [&](int nm) { return steady_observables(ctx, p, nm, nmax); }, nmax));
    manifest["summary"] = rows;
    manifest["warnings"] = warnings_json(warnings);
    manifest["outputs"].push_back("steady.csv");
    return manifest;
}

json cmd_greens(const RunContext& ctx)
{
    auto manifest = base_manifest(ctx, "greens");
    const ModelParams p = ctx.config.params();
    const int nmax = ctx.config.resolved_nmax(p);
    const auto& g = ctx.config.greens;
    const auto omegas = linspace(g.omega_min, g.omega_max, g.points);
    const auto resp = steady_response(p, ctx.config.spec(p), nmax, omegas);

    CsvWriter csv(ctx.out_dir / "greens.csv");
    csv.row("omega", "re", "im");
    for (std::size_t i = 0; i < omegas.size(); ++i) {
        csv.row(omegas[i], resp.greens.values[i].real(), resp.greens.values[i].imag());
    }
    json poles = json::array();
    for (const auto& pole : resp.greens.poles) {
        if (pole.weight == cplx{}) continue;
        poles.push_back({{"lambda", cplx_json(pole.lambda)}, {"weight", cplx_json(pole.weight)}});
    }
    write_json(ctx.out_dir / "poles.json", {{"poles", poles},
                                            {"weight_sum", cplx_json(resp.greens.weight_sum())}});
    manifest["truncation"] = truncation_json(check_truncation(
        [&](int nm) { return steady_observables(ctx, p, nm, nmax); }, nmax));
    manifest["warnings"] = warnings_json(resp.generator.warnings);
    manifest["outputs"] = {"greens.csv", "poles.json"};
    return manifest;
}

json cmd_critical(const RunContext& ctx)
{
    auto manifest = base_manifest(ctx, "critical");
    const ModelParams p = ctx.config.params();
    const int nmax = ctx.config.resolved_nmax(p);
    std::optional<FrequencyWindow> window;
    if (ctx.config.critical.window_lo) {
        window = FrequencyWindow{*ctx.config.critical.window_lo, *ctx.config.critical.window_hi};
    }
    const auto spec = ctx.config.spec(p);
    const auto resp = steady_response(p, spec, nmax);
    const auto cp = rpa_critical(resp, p, window);
    json out = {{"method", to_string(cp.method)},
                {"N", cp.N},
                {"omega_c", cp.omega_c},
                {"J_c", cp.J_c},
                {"z", p.z}};
    if (!spec.is_lorentzian()) {
        const int N = filling(p);
        if (N >= 1) {
            out["J_c_gs"] = ground_state_critical(N, p.U, p.mu_eff).J_c;
            try {
                out["J_c_gslike"] = ground_state_like_hopping(resp.greens, p.mu_eff);
            } catch (const WrongSign& e) {
                out["J_c_gslike"] = nullptr;
                out["gslike_note"] = e.what();
            }
        }
    }
    write_json(ctx.out_dir / "critical.json", out);
    manifest["truncation"] = truncation_json(check_truncation(
        [&](int nm) {
            const auto c = rpa_critical(p, spec, nm, window);
            return std::vector<double>{c.omega_c, c.J_c};
        },
        nmax, 1e-6));
    manifest["summary"] = out;
    manifest["warnings"] = warnings_json(resp.generator.warnings);
    manifest["outputs"] = {"critical.json"};
    return manifest;
}

json cmd_phase_diagram(const RunContext& ctx)
{
    auto manifest = base_manifest(ctx, "phase-diagram");
    const ModelParams base = ctx.config.params();
    const auto& pd = ctx.config.phase_diagram;
    LobeScanOptions opts;
    opts.redfield_column = pd.redfield_column;
    opts.lamb_shift = ctx.config.reservoir.lamb_shift;
    opts.nmax = ctx.config.nmax;
    opts.workers = ctx.workers;
    auto rows = lobe_scan(base, pd.mu_grid, pd.r_list, opts);
    if (ctx.sort_output) {
        std::stable_sort(rows.begin(), rows.end(), [](const PhaseRow& a, const PhaseRow& b) {
            return std::tie(a.mu_eff, a.r) < std::tie(b.mu_eff, b.r);
        });
    }
    CsvWriter csv(ctx.out_dir / "phase_diagram.csv");
    std::vector<std::string> header{"mu_eff", "r", "N", "omega_c", "J_c", "J_c_gs", "J_c_gslike"};
    if (pd.redfield_column) {
        header.push_back("omega_c_redfield");
        header.push_back("J_c_redfield");
    }
    header.push_back("note");
    csv.row(header);
    int failed = 0;
    for (const auto& r : rows) {
        std::vector<std::string> cells{fmt(r.mu_eff), fmt(r.r), std::to_string(r.N),
                                       fmt(r.omega_c), fmt(r.J_c), fmt(r.J_c_gs),
                                       fmt(r.J_c_gslike)};
        if (pd.redfield_column) {
            cells.push_back(fmt(r.omega_c_redfield));
            cells.push_back(fmt(r.J_c_redfield));
        }
        std::string note = r.note;
        std::replace(note.begin(), note.end(), ',', ';');
        cells.push_back("\"" + note + "\"");
        csv.row(cells);
        if (!r.note.empty()) ++failed;
    }
    manifest["summary"] = {{"rows", rows.size()},
                           {"rows_with_notes", failed},
                           {"steady_lobes_flat", lobes_flat(rows, 1e-8)}};
    manifest["outputs"] = {"phase_diagram.csv"};
    return manifest;
}

json cmd_dynamics(const RunContext& ctx)
{
    auto manifest = base_manifest(ctx, "dynamics");
    const ModelParams p = ctx.config.params();
    const int nmax = ctx.config.resolved_nmax(p);
    const auto& d = ctx.config.dynamics;
    const FockSpace space(nmax);
    ModelParams p0 = p;
    p0.J = 0.0;
    const auto spec = ctx.config.spec(p0);
    const auto L0 = build_generator(space, p0, spec);
    const cplx seed{d.seed_re, d.seed_im};

    EvolveControls ec;
    ec.rtol = d.rtol;
    ec.atol = d.atol;
    ec.sample_dt = d.sample_dt;
    for (double tk : d.snapshot_t_kappa) ec.snapshot_times.push_back(tk / p.kappa);
    const auto traj = evolve(L0, p, coherent_state(space, seed), d.t_end_kappa / p.kappa, ec);
    const auto rep = classify_phase(traj);

    CsvWriter csv(ctx.out_dir / "trajectory.csv");
    std::vector<std::string> header{"t", "re_a", "im_a", "n"};
    for (int n = 0; n <= nmax; ++n) header.push_back("p" + std::to_string(n));
    header.push_back("min_eig");
    csv.row(header);
    for (std::size_t i = 0; i < traj.size(); ++i) {
        std::vector<std::string> cells{fmt(traj.times[i] * p.kappa),
                                       fmt(traj.order_parameter[i].real()),
                                       fmt(traj.order_parameter[i].imag()),
                                       fmt(traj.density[i])};
        for (double pn : traj.populations[i]) cells.push_back(fmt(pn));
        cells.push_back(fmt(traj.min_eigenvalue[i]));
        csv.row(cells);
    }
    manifest["outputs"].push_back("trajectory.csv");

    json snaps = json::array();
    Warnings warnings = traj.warnings;
    const WignerAxes axes{-d.wigner_range, d.wigner_range, -d.wigner_range, d.wigner_range,
                          d.wigner_resolution};
    for (std::size_t k = 0; k < traj.snapshots.size(); ++k) {
        const auto& [t, rho] = traj.snapshots[k];
        const auto w = wigner(rho, axes);
        warnings.insert(warnings.end(), w.warnings.begin(), w.warnings.end());
        const std::string stem = "wigner_" + std::to_string(k);
        CsvWriter m(ctx.out_dir / (stem + ".csv"));
        for (int i = 0; i < w.values.rows(); ++i) {
            std::vector<std::string> cells;
            for (int j = 0; j < w.values.cols(); ++j) cells.push_back(fmt(w.values(i, j)));
            m.row(cells);
        }
        if (k == 0) {
            CsvWriter xs(ctx.out_dir / "wigner_x.csv"), ps(ctx.out_dir / "wigner_p.csv");
            xs.row("x");
            ps.row("p");
            for (double x : w.xs) xs.row(x);
            for (double q : w.ps) ps.row(q);
            manifest["outputs"].push_back("wigner_x.csv");
            manifest["outputs"].push_back("wigner_p.csv");
        }
        manifest["outputs"].push_back(stem + ".csv");
        snaps.push_back({{"t_kappa", t * p.kappa},
                         {"file", stem + ".csv"},
                         {"min_w", w.min()},
                         {"integral", w.integral()},
                         {"rotational_asymmetry", rotational_asymmetry(rho, axes, 12)}});
    }

    json report = {{"phase", to_string(rep.phase)},
                   {"amplitude", rep.amplitude},
                   {"frequency", rep.frequency},
                   {"transient_end_t_kappa", rep.transient_end * p.kappa},
                   {"growth_rate", rep.growth_rate},
                   {"drift", rep.drift},
                   {"snapshots", snaps}};
    if (d.bisect) {
        DynamicsCriticalOptions opts;
        opts.J_lo = d.J_lo_over_U;
        opts.J_hi = d.J_hi_over_U;
        opts.iterations = d.iterations;
        opts.t_end_kappa = d.t_end_kappa;
        opts.seed = seed;
        opts.evolve.rtol = d.rtol;
        opts.evolve.atol = d.atol;
        opts.evolve.sample_dt = d.sample_dt;
        const auto dc = dynamics_critical_hopping(p0, spec, nmax, opts);
        report["dynamics_critical"] = {{"J_c", dc.J_c},
                                       {"J_lo", dc.J_lo},
                                       {"J_hi", dc.J_hi},
                                       {"uncertainty", dc.uncertainty},
                                       {"trajectories", dc.trajectories}};
    }
    write_json(ctx.out_dir / "limit_cycle.json", report);
    manifest["outputs"].push_back("limit_cycle.json");
    manifest["summary"] = report;
    manifest["warnings"] = warnings_json(warnings);
    return manifest;
}

json cmd_perturb(const RunContext& ctx)
{
    auto manifest = base_manifest(ctx, "perturb");
    const ModelParams p = ctx.config.params();
    const int nmax = ctx.config.resolved_nmax(p);
    const auto spec = ctx.config.spec(p);
    const auto variant = spec.is_redfield() ? PerturbVariant::Redfield : PerturbVariant::Lindblad;
    const auto pt = first_order_eigs(p, spec, variant, nmax);
    const auto resp = steady_response(p, spec, nmax);
    const auto exact = coherence_sector_eigenvalues(resp.generator);

    json pairs = json::array();
    for (const auto& pr : pt.pairs) {
        pairs.push_back({{"n", pr.n},
                         {"lambda_first_order", cplx_json(pr.lambda)},
                         {"lambda_exact", cplx_json(exact[pr.n])},
                         {"weight_first_order", cplx_json(pair_weight(pr, resp.rho))}});
    }
    json out = {{"variant", variant == PerturbVariant::Redfield ? "redfield" : "lindblad"},
                {"pairs", pairs},
                {"max_error", first_order_error(pt, resp.generator)}};

    const int N = spec.is_lorentzian() ? 1 : filling(p);
    if (N >= 1 && nmax >= N + 2) {
        const auto win = doublon_window(p);
        const auto search = default_window(p);
        json peaks = json::object();
        for (auto [form, name] : {std::pair{SinglePeakForm::PoleTerm, "pole_term"},
                                  std::pair{SinglePeakForm::AsPrinted, "as_printed"}}) {
            const auto g = single_peak_greens(p, spec, N, {}, form);
            try {
                const double wc = find_critical_frequency(g, search);
                peaks[name] = {{"omega_c", wc}, {"J_c", critical_hopping(g, wc)}};
            } catch (const Error& e) {
                peaks[name] = {{"error", e.what()}};
            }
        }
        out["single_peak"] = peaks;
        if (ctx.config.perturb.fit) {
            try {
                const auto fit = antilorentzian_fit(resp.greens, win);
                out["fit"] = {{"a", fit.a},
                              {"b", fit.b},
                              {"gamma", fit.gamma},
                              {"center", fit.center},
                              {"residual", fit.residual},
                              {"predicted_omega_c", fit.predicted_omega_c()},
                              {"predicted_J_c", fit.predicted_J_c()}};
            } catch (const FitFailure& e) {
                out["fit"] = {{"error", e.what()}};
            }
        }
    }
    write_json(ctx.out_dir / "perturb.json", out);
    manifest["summary"] = out;
    manifest["warnings"] = warnings_json(pt.warnings);
    manifest["outputs"] = {"perturb.json"};
    return manifest;
}

int run(int argc, const char* const* argv)
{
    CLI::App app{"mottlc: dissipative Mott insulator simulator"};
    app.require_subcommand(1);
    app.fallthrough();
    std::string config_path;
    std::string out_dir = ".";
    unsigned workers = 1;
    if (const char* env = std::getenv("MOTTLC_WORKERS")) {
        workers = static_cast<unsigned>(std::max(1L, std::strtol(env, nullptr, 10)));
    }
    long seed = 0;
    bool sort_output = false;
    app.add_option("--config", config_path, "JSON run configuration")->check(CLI::ExistingFile);
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--workers", workers, "worker threads (default $MOTTLC_WORKERS or 1)")
        ->check(CLI::Range(1u, 1024u));
    app.add_option("--seed", seed, "reserved; affects nothing physical");
    app.add_flag("--sort-output", sort_output, "canonical row order for parallel runs");

    using Handler = json (*)(const RunContext&);
    const std::pair<const char*, Handler> table[] = {
        {"steady", cmd_steady},     {"greens", cmd_greens},   {"critical", cmd_critical},
        {"phase-diagram", cmd_phase_diagram}, {"dynamics", cmd_dynamics}, {"perturb", cmd_perturb},
    };
    for (const auto& [name, _] : table) app.add_subcommand(name);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        RunContext ctx;
        if (!config_path.empty()) ctx.config = load_config(config_path);
        ctx.out_dir = out_dir;
        ctx.workers = workers;
        ctx.seed = seed;
        ctx.sort_output = sort_output;
        fs::create_directories(ctx.out_dir);
        for (const auto& [name, handler] : table) {
            if (app.got_subcommand(name)) {
                auto manifest = handler(ctx);
                write_json(ctx.out_dir / "manifest.json", manifest);
                return 0;
            }
        }
        return 1;
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return 1;
    } catch (const InvalidParameter& e) {
        std::cerr << "invalid parameter: " << e.what() << '\n';
        return 1;
    } catch (const InvalidFilling& e) {
        std::cerr << "invalid filling: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << '\n';
        return 2;
    }
}

} // namespace mottlc::cli

// critical.cpp — root finding for the critical-point equations

#include "mottlc/critical.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mottlc/parallel.hpp"

namespace mottlc {

std::string to_string(CriticalMethod m)
{
    switch (m) {
    case CriticalMethod::RPA: return "RPA";
    case CriticalMethod::GroundState: return "GroundState";
    case CriticalMethod::DMFT: return "DMFT";
    case CriticalMethod::Dynamics: return "Dynamics";
    }
    return "unknown";
}

FrequencyWindow default_window(const ModelParams& params)
{
    const int N = filling(params);
    return {params.U * (N - 1), params.U * N + 20.0 * params.kappa};
}

namespace {

template <class F>
double bisect(const F& f, double lo, double hi, double flo, double tol)
{
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double fm = f(mid);
        if (fm == 0.0) return mid;
        if ((fm < 0.0) == (flo < 0.0)) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

template <class F>
std::vector<double> sign_changes(const F& f, std::vector<double> grid, double tol)
{
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    std::vector<double> roots;
    if (grid.size() < 2) return roots;
    double prev = f(grid[0]);
    for (std::size_t i = 1; i < grid.size(); ++i) {
        const double cur = f(grid[i]);
        if (prev == 0.0) {
            roots.push_back(grid[i - 1]);
        } else if ((prev < 0.0) != (cur < 0.0) && cur != 0.0) {
            roots.push_back(bisect(f, grid[i - 1], grid[i], prev, tol));
        }
        prev = cur;
    }
    return roots;
}

std::vector<double> pole_adapted_grid(const GreensFunction& G, FrequencyWindow w)
{
    constexpr int kUniform = 4001;
    std::vector<double> grid;
    grid.reserve(kUniform + 200 * G.poles.size());
    for (int i = 0; i < kUniform; ++i) {
        grid.push_back(w.lo + (w.hi - w.lo) * i / (kUniform - 1));
    }
    for (const auto& p : G.poles) {
        if (p.weight == std::complex<double>{}) continue;
        const double c = -p.lambda.imag();
        const double width = std::abs(p.lambda.real());
        if (width == 0.0) continue;
        // log-spaced offsets from 1e-3 to 1e4 widths on both sides
        for (int k = 0; k <= 70; ++k) {
            const double off = width * std::pow(10.0, -3.0 + 0.1 * k);
            for (double x : {c - off, c + off}) {
                if (x > w.lo && x < w.hi) grid.push_back(x);
            }
        }
        if (c > w.lo && c < w.hi) grid.push_back(c);
    }
    return grid;
}

} // namespace

std::vector<double> imaginary_zeros(const GreensFunction& G, FrequencyWindow window,
                                    double tol)
{
    if (!(window.hi > window.lo)) throw InvalidParameter("imaginary_zeros: empty window");
    const auto im = [&](double w) { return G.evaluate(w).imag(); };
    return sign_changes(im, pole_adapted_grid(G, window), tol);
}

double find_critical_frequency(const GreensFunction& G, FrequencyWindow window, double tol)
{
    const auto zeros = imaginary_zeros(G, window, tol);
    if (zeros.empty()) {
        std::ostringstream msg;
        msg << "no sign change of Im G in (" << window.lo << ", " << window.hi << ")";
        throw NoRoot(msg.str());
    }
    std::optional<double> best;
    double best_j = std::numeric_limits<double>::infinity();
    for (double w : zeros) {
        const double re = G.evaluate(w).real();
        if (re < 0.0 && -1.0 / re < best_j) {
            best_j = -1.0 / re;
            best = w;
        }
    }
    return best.value_or(zeros.front());
}

double critical_hopping(const GreensFunction& G, double omega_c)
{
    const double re = G.evaluate(omega_c).real();
    if (!(re < 0.0)) {
        std::ostringstream msg;
        msg << "Re G(" << omega_c << ") = " << re << " >= 0";
        throw WrongSign(msg.str());
    }
    return -1.0 / re;
}

CriticalPoint rpa_critical(const SteadyResponse& response, const ModelParams& params,
                           std::optional<FrequencyWindow> window)
{
    const auto w = window.value_or(default_window(params));
    CriticalPoint cp;
    cp.method = CriticalMethod::RPA;
    cp.N = filling(params);
    cp.omega_c = find_critical_frequency(response.greens, w);
    cp.J_c = critical_hopping(response.greens, cp.omega_c);
    return cp;
}

CriticalPoint rpa_critical(const ModelParams& params, const ReservoirSpec& spec, int nmax,
                           std::optional<FrequencyWindow> window)
{
    return rpa_critical(steady_response(params, spec, nmax), params, window);
}

CriticalPoint ground_state_critical(int N, double U, double mu)
{
    CriticalPoint cp;
    cp.method = CriticalMethod::GroundState;
    cp.N = N;
    cp.omega_c = mu;
    const double w[] = {mu};
    const auto g = greens_groundstate(N, U, mu, kGroundStateEta * U, w);
    cp.J_c = critical_hopping(g, mu);
    return cp;
}

std::vector<LobePoint> ground_state_lobe(int N, double U, std::span<const double> mu_grid)
{
    std::vector<LobePoint> out;
    out.reserve(mu_grid.size());
    for (double mu : mu_grid) {
        if (mu <= U * (N - 1) || mu >= U * N) {
            out.push_back({mu, 0.0});
        } else {
            out.push_back({mu, ground_state_critical(N, U, mu).J_c});
        }
    }
    return out;
}

double ground_state_like_hopping(const GreensFunction& G, double mu_eff)
{
    return critical_hopping(G, mu_eff);
}

namespace {

// Smaller positive root of 1 + R J + (R^2 / z) J^2 = 0 for R < 0.
double bethe_hopping(double re, double z)
{
    const double x = 4.0 / z;
    if (x > 1.0) {
        throw NoConvergence("dmft_critical: no real hopping solves the Bethe condition (z < 4)");
    }
    return 2.0 / (std::abs(re) * (1.0 + std::sqrt(1.0 - x)));
}

} // namespace

CriticalPoint dmft_critical(const SusceptibilityCallback& G, double z,
                            FrequencyWindow bracket, const DmftOptions& options)
{
    if (!(z >= 1.0)) throw InvalidParameter("dmft_critical: z >= 1");
    if (!(bracket.hi > bracket.lo)) throw InvalidParameter("dmft_critical: empty bracket");
    std::vector<double> grid(static_cast<std::size_t>(options.scan_points));
    for (int i = 0; i < options.scan_points; ++i) {
        grid[i] = bracket.lo + (bracket.hi - bracket.lo) * i / (options.scan_points - 1);
    }

    double J = options.J_start;
    for (int it = 0; it < options.max_iterations; ++it) {
        const auto im = [&](double w) { return G(w, J).imag(); };
        const auto zeros = sign_changes(im, grid, kRootTolerance);
        std::optional<double> omega;
        double J_next = std::numeric_limits<double>::infinity();
        for (double w : zeros) {
            const double re = G(w, J).real();
            if (re < 0.0) {
                const double cand = bethe_hopping(re, z);
                if (cand < J_next) {
                    J_next = cand;
                    omega = w;
                }
            }
        }
        if (!omega) {
            throw NoConvergence("dmft_critical: no zero of Im G with Re G < 0 in the bracket");
        }
        if (std::abs(J_next - J) <= options.rel_tol * J_next) {
            return {*omega, J_next, CriticalMethod::DMFT, 0};
        }
        J = J_next;
    }
    throw NoConvergence("dmft_critical: fixed-point iteration did not converge");
}

std::vector<PhaseRow> lobe_scan(const ModelParams& base, std::span<const double> mu_grid,
                                std::span<const double> r_list,
                                const LobeScanOptions& options)
{
    std::vector<PhaseRow> rows(mu_grid.size() * r_list.size());
    parallel_for(rows.size(), options.workers, [&](std::size_t idx) {
        PhaseRow& row = rows[idx];
        ModelParams p = base;
        p.mu_eff = mu_grid[idx / r_list.size()];
        p.r = r_list[idx % r_list.size()];
        row.mu_eff = p.mu_eff;
        row.r = p.r;
        const auto note = [&](const std::exception& e) {
            if (row.note.empty()) row.note = e.what();
        };
        try {
            row.N = filling(p);
        } catch (const Error& e) {
            note(e);
            return;
        }
        if (row.N < 1) {
            row.note = "empty lobe (mu_eff <= 0)";
            return;
        }
        const int nmax = options.nmax > 0 ? options.nmax : row.N + 5;
        try {
            row.J_c_gs = ground_state_critical(row.N, p.U, p.mu_eff).J_c;
        } catch (const Error& e) { note(e); }
        try {
            const auto resp = steady_response(p, ReservoirSpec::square(p), nmax);
            try {
                row.J_c_gslike = ground_state_like_hopping(resp.greens, p.mu_eff);
            } catch (const Error& e) { note(e); }
            const auto cp = rpa_critical(resp, p);
            row.omega_c = cp.omega_c;
            row.J_c = cp.J_c;
        } catch (const Error& e) { note(e); }
        if (options.redfield_column) {
            try {
                const auto cp = rpa_critical(p, ReservoirSpec::redfield(p, options.lamb_shift), nmax);
                row.omega_c_redfield = cp.omega_c;
                row.J_c_redfield = cp.J_c;
            } catch (const Error& e) { note(e); }
        }
    });
    return rows;
}

bool lobes_flat(const std::vector<PhaseRow>& rows, double rel_tol)
{
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = i + 1; j < rows.size(); ++j) {
            if (rows[i].N != rows[j].N || rows[i].r != rows[j].r) continue;
            if (rows[i].J_c.has_value() != rows[j].J_c.has_value()) return false;
            if (!rows[i].J_c) continue;
            const double a = *rows[i].J_c, b = *rows[j].J_c;
            if (std::abs(a - b) > rel_tol * std::max(std::abs(a), std::abs(b))) return false;
        }
    }
    return true;
}

} // namespace mottlc

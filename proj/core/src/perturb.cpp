// perturb.cpp — first-order coherence-sector eigenpairs and peak analysis

#include "mottlc/perturb.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

namespace mottlc {

namespace {

constexpr cplx I{0.0, 1.0};

// r k S^R of channel m -> m+1; channels outside [0, nmax) do not exist in
// the truncated generator and read as closed.
cplx channel_response(const ReservoirSpec& spec, const ModelParams& p, int m, int nmax)
{
    if (m < 0 || m >= nmax) return 0.0;
    return response(spec, channel_frequency(spec, p, m));
}

} // namespace

PerturbativeSystem first_order_eigs(const ModelParams& params, const ReservoirSpec& spec,
                                    PerturbVariant variant, int nmax)
{
    params.validate();
    PerturbativeSystem out;
    out.space = FockSpace(nmax);
    const double U = params.U, k = params.kappa;
    if (spec.pump_scale / U > 0.05) {
        std::ostringstream msg;
        msg << "r kappa / U = " << spec.pump_scale / U << " > 0.05";
        out.warnings.push_back({WarningKind::WeakCoupling, msg.str()});
    }
    const int d = out.space.dim();
    for (int n = 0; n < nmax; ++n) {
        const double dn = n;
        const cplx s_n = channel_response(spec, params, n, nmax);       // E_{n+1} - E_n
        const cplx s_up = channel_response(spec, params, n + 1, nmax);  // E_{n+2} - E_{n+1}
        const cplx s_dn = channel_response(spec, params, n - 1, nmax);  // E_n - E_{n-1}

        CoherencePair pr;
        pr.n = n;
        pr.lambda = -I * (site_energy(params, n + 1) - site_energy(params, n))
                  - 0.5 * k * (2.0 * dn + 1.0)
                  - (std::conj(s_up) * (dn + 2.0) + s_n * (dn + 1.0));
        pr.right = Operator::Zero(d, d);
        pr.left = Operator::Zero(d, d);
        pr.right(n + 1, n) = 1.0;
        pr.left(n + 1, n) = 1.0;
        if (n >= 1) {
            pr.right(n, n - 1) += I * (k / U) * std::sqrt((dn + 1.0) * dn);
        }
        if (n + 2 <= nmax) {
            pr.left(n + 2, n + 1) += I * (k / U) * std::sqrt((dn + 2.0) * (dn + 1.0));
        }
        if (variant == PerturbVariant::Redfield) {
            if (n + 2 <= nmax) {
                pr.right(n + 2, n + 1) -=
                    I / U * std::sqrt((dn + 2.0) * (dn + 1.0)) * (s_n + std::conj(s_up));
            }
            if (n >= 1) {
                pr.left(n, n - 1) -=
                    I / U * std::sqrt((dn + 1.0) * dn) * (s_n + std::conj(s_dn));
            }
        }
        out.pairs.push_back(std::move(pr));
    }
    return out;
}

cplx pair_weight(const CoherencePair& pair, const DensityMatrix& rho)
{
    const int d = static_cast<int>(rho.rows());
    const Operator a = annihilation(FockSpace(d - 1));
    const Operator ad = a.adjoint();
    const cplx ta = (a * pair.right).trace();
    const cplx tl = (pair.left.adjoint() * (ad * rho - rho * ad)).trace();
    return ta * tl;
}

std::vector<cplx> coherence_sector_eigenvalues(const Superoperator& L)
{
    const int d = L.dim();
    const int m = d - 1;
    // vec index of |i><j| is i + d j; the sector holds |n+1><n|
    Eigen::MatrixXcd block(m, m);
    for (int p = 0; p < m; ++p) {
        for (int q = 0; q < m; ++q) {
            block(p, q) = L.matrix((p + 1) + d * p, (q + 1) + d * q);
        }
    }
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(block);
    std::vector<cplx> evs(es.eigenvalues().data(), es.eigenvalues().data() + m);
    // each eigenvalue continues from exactly one -i(E_{n+1} - E_n) = -i n U
    std::vector<cplx> out(static_cast<std::size_t>(m));
    std::vector<bool> used(static_cast<std::size_t>(m), false);
    for (int n = 0; n < m; ++n) {
        const double target = -L.energy_scale * n;
        int best = -1;
        for (int j = 0; j < m; ++j) {
            if (used[j]) continue;
            if (best < 0 || std::abs(evs[j].imag() - target) < std::abs(evs[best].imag() - target)) {
                best = j;
            }
        }
        used[best] = true;
        out[n] = evs[best];
    }
    return out;
}

double first_order_error(const PerturbativeSystem& pt, const Superoperator& L)
{
    if (!(pt.space == L.space)) {
        throw InvalidParameter("first_order_error: spaces differ");
    }
    const auto exact = coherence_sector_eigenvalues(L);
    double err = 0.0;
    for (const auto& pr : pt.pairs) {
        err = std::max(err, std::abs(pr.lambda - exact[pr.n]));
    }
    return err;
}

GreensFunction single_peak_greens(const ModelParams& params, const ReservoirSpec& spec, int N,
                                  std::span<const double> omegas, SinglePeakForm form,
                                  bool include_pump_term)
{
    if (N < 1) throw InvalidParameter("single_peak_greens: N >= 1");
    const double U = params.U, k = params.kappa, dN = N;
    cplx weight;
    cplx lambda;
    if (form == SinglePeakForm::AsPrinted) {
        const double rk = include_pump_term ? params.r * k : 0.0;
        weight = (std::sqrt(dN + 1.0) + I * (k / U) * std::sqrt(dN + 1.0) * dN)
               * (std::sqrt(dN + 1.0) - I * (rk / U) * (dN + 1.0) * std::sqrt(dN));
        lambda = -I * (site_energy(params, N + 1) - site_energy(params, N))
               - 0.5 * k * (2.0 * dN + 1.0);
    } else {
        ModelParams q = params;
        ReservoirSpec s = spec;
        if (!include_pump_term) {
            q.r = 0.0;
            s = spec.is_redfield() ? ReservoirSpec::redfield(q) : ReservoirSpec::square(q);
        }
        const auto variant = spec.is_redfield() ? PerturbVariant::Redfield : PerturbVariant::Lindblad;
        const auto pt = first_order_eigs(q, s, variant, N + 2);
        DensityMatrix rho = DensityMatrix::Zero(N + 3, N + 3);
        rho(N, N) = 1.0;
        weight = pair_weight(pt.pairs[N], rho);
        lambda = pt.pairs[N].lambda;
    }
    return greens_from_poles({{lambda, weight}}, omegas);
}

cplx PeakFit::evaluate(double omega) const
{
    return b * (1.0 - I * gamma * a) / ((omega - center) + I * gamma);
}

FrequencyWindow doublon_window(const ModelParams& params)
{
    const double c = params.U * filling(params);
    return {c - 20.0 * params.kappa, c + 20.0 * params.kappa};
}

namespace {

struct ImResidual {
    using Scalar = double;
    using InputType = Eigen::VectorXd;
    using ValueType = Eigen::VectorXd;
    using JacobianType = Eigen::MatrixXd;
    enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };

    std::vector<double> w;
    std::vector<double> y;
    double scale; // frequency scale: parameters are (a*s, b/s, gamma/s, (center - c0)/s)
    double c0;

    int inputs() const { return 4; }
    int values() const { return static_cast<int>(w.size()); }

    int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& f) const
    {
        const PeakFit p = unpack(x);
        for (std::size_t i = 0; i < w.size(); ++i) f(i) = p.evaluate(w[i]).imag() - y[i];
        return 0;
    }

    PeakFit unpack(const Eigen::VectorXd& x) const
    {
        return {x(0) / scale, x(1) * scale, std::abs(x(2)) * scale, c0 + x(3) * scale, 0.0};
    }
};

} // namespace

PeakFit antilorentzian_fit(const GreensFunction& G, FrequencyWindow window, int samples)
{
    if (!(window.hi > window.lo) || samples < 8) {
        throw InvalidParameter("antilorentzian_fit: invalid window");
    }
    // start from the dominant pole inside the window
    const Pole* best = nullptr;
    double best_height = 0.0;
    for (const auto& p : G.poles) {
        const double c = -p.lambda.imag(), g = -p.lambda.real();
        if (c <= window.lo || c >= window.hi || !(g > 0.0)) continue;
        const double h = std::abs(p.weight) / g;
        if (h > best_height) {
            best_height = h;
            best = &p;
        }
    }
    if (!best) throw FitFailure("antilorentzian_fit: no pole inside the window");

    ImResidual fn;
    fn.c0 = -best->lambda.imag();
    fn.scale = -best->lambda.real();
    double peak = 0.0;
    for (int i = 0; i < samples; ++i) {
        const double w = window.lo + (window.hi - window.lo) * i / (samples - 1);
        fn.w.push_back(w);
        fn.y.push_back(G.evaluate(w).imag());
        peak = std::max(peak, std::abs(fn.y.back()));
    }
    // W = b (1 - i gamma a)  =>  b = Re W, a = -Im W / (gamma b)
    const double b0 = best->weight.real();
    const double a0 = b0 != 0.0 ? -best->weight.imag() / (fn.scale * b0) : 0.0;
    Eigen::VectorXd x(4);
    x << a0 * fn.scale, b0 / fn.scale, 1.0, 0.0;

    Eigen::NumericalDiff<ImResidual> nd(fn);
    Eigen::LevenbergMarquardt<Eigen::NumericalDiff<ImResidual>> lm(nd);
    lm.parameters.xtol = 1e-14;
    lm.parameters.ftol = 1e-14;
    lm.parameters.maxfev = 4000;
    lm.minimize(x);

    PeakFit out = fn.unpack(x);
    Eigen::VectorXd f(fn.values());
    fn(x, f);
    out.residual = std::sqrt(f.squaredNorm() / f.size()) / peak;
    if (!(out.residual <= 0.05) || !(out.gamma > 0.0)) {
        std::ostringstream msg;
        msg << "antilorentzian_fit: residual " << out.residual << " of peak height";
        throw FitFailure(msg.str());
    }
    return out;
}

} // namespace mottlc

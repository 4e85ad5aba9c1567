// gutzwiller.cpp — mean-field integrator and phase classification

#include "mottlc/gutzwiller.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Sparse>
#include <boost/numeric/odeint.hpp>

namespace mottlc {

namespace odeint = boost::numeric::odeint;

std::vector<double> TrajectoryRecord::scaled_times() const
{
    std::vector<double> out(times.size());
    std::transform(times.begin(), times.end(), out.begin(),
                   [k = kappa](double t) { return t * k; });
    return out;
}

namespace {

using State = std::vector<double>; // interleaved re/im of vec(rho)

DensityMatrix unpack(const State& x, int d)
{
    DensityMatrix rho(d, d);
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) {
            const std::size_t k = 2 * static_cast<std::size_t>(i + d * j);
            rho(i, j) = {x[k], x[k + 1]};
        }
    }
    return rho;
}

State pack(const DensityMatrix& rho)
{
    const int d = static_cast<int>(rho.rows());
    State x(2 * static_cast<std::size_t>(d * d));
    for (int j = 0; j < d; ++j) {
        for (int i = 0; i < d; ++i) {
            const std::size_t k = 2 * static_cast<std::size_t>(i + d * j);
            x[k] = rho(i, j).real();
            x[k + 1] = rho(i, j).imag();
        }
    }
    return x;
}

struct MeanFieldRhs {
    Eigen::SparseMatrix<cplx> L0;
    Operator a;
    Operator ad;
    double J;
    int d;

    void operator()(const State& x, State& dxdt, double /*t*/) const
    {
        const DensityMatrix rho = unpack(x, d);
        const cplx phi = -J * (a * rho).trace();
        const Eigen::Map<const Eigen::VectorXcd> v(rho.data(), d * d);
        Eigen::VectorXcd out = L0 * v;
        if (phi != cplx{}) {
            const Operator h = std::conj(phi) * a + phi * ad;
            const Operator c = cplx(0.0, -1.0) * (h * rho - rho * h);
            out += Eigen::Map<const Eigen::VectorXcd>(c.data(), d * d);
        }
        dxdt.resize(x.size());
        for (int k = 0; k < d * d; ++k) {
            dxdt[2 * k] = out(k).real();
            dxdt[2 * k + 1] = out(k).imag();
        }
    }
};

} // namespace

TrajectoryRecord evolve(const Superoperator& L0, const ModelParams& params,
                        const DensityMatrix& rho0, double t_end,
                        const EvolveControls& controls)
{
    params.validate();
    const int d = L0.dim();
    if (rho0.rows() != d || rho0.cols() != d) {
        throw InvalidParameter("evolve: rho0 does not match the generator space");
    }
    if (!(t_end > 0.0) || !(controls.sample_dt > 0.0)) {
        throw InvalidParameter("evolve: t_end and sample_dt must be positive");
    }

    MeanFieldRhs rhs{L0.matrix.sparseView(1.0, 1e-300), annihilation(L0.space), {}, params.J, d};
    rhs.ad = rhs.a.adjoint();

    TrajectoryRecord rec;
    rec.kappa = params.kappa;
    rec.warnings = L0.warnings;
    bool positivity_flagged = false;

    auto record = [&](double t, const DensityMatrix& rho) {
        rec.times.push_back(t);
        rec.order_parameter.push_back((rhs.a * rho).trace());
        std::vector<double> pops(static_cast<std::size_t>(d));
        double n = 0.0;
        for (int k = 0; k < d; ++k) {
            pops[k] = rho(k, k).real();
            n += k * pops[k];
        }
        rec.density.push_back(n);
        rec.populations.push_back(std::move(pops));
        rec.trace.push_back(rho.trace().real());
        const DensityMatrix herm = 0.5 * (rho + rho.adjoint());
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(herm, Eigen::EigenvaluesOnly);
        const double lmin = es.eigenvalues().minCoeff();
        rec.min_eigenvalue.push_back(lmin);
        if (lmin < -1e-6 && !positivity_flagged) {
            positivity_flagged = true;
            std::ostringstream msg;
            msg << "density matrix eigenvalue " << lmin << " at t = " << t;
            rec.warnings.push_back({WarningKind::PositivityLoss, msg.str()});
        }
    };

    std::vector<double> snaps = controls.snapshot_times;
    std::sort(snaps.begin(), snaps.end());
    std::size_t next_snap = 0;

    auto stepper = odeint::make_dense_output(controls.atol, controls.rtol,
                                             odeint::runge_kutta_dopri5<State>());
    State x = pack(rho0);
    stepper.initialize(x, 0.0, std::min(controls.dt_initial, t_end));
    record(0.0, rho0);
    while (next_snap < snaps.size() && snaps[next_snap] <= 0.0) {
        rec.snapshots.emplace_back(snaps[next_snap++], rho0);
    }

    long k = 1;
    State xs(x.size());
    while (stepper.current_time() < t_end) {
        stepper.do_step(std::cref(rhs));
        if (stepper.current_time_step() < controls.h_min) {
            std::ostringstream msg;
            msg << "step size " << stepper.current_time_step() << " below h_min at t = "
                << stepper.current_time();
            throw StepFailure(msg.str());
        }
        const State& cur = stepper.current_state();
        const auto worst = std::max_element(cur.begin(), cur.end(), [](double u, double v) {
            return std::abs(u) < std::abs(v);
        });
        if (!std::isfinite(*worst) || std::abs(*worst) > controls.max_entry) {
            std::ostringstream msg;
            msg << "evolve: runaway state (|rho_ij| ~ " << std::abs(*worst) << ") at t = "
                << stepper.current_time();
            throw StepFailure(msg.str());
        }
        const double tc = stepper.current_time();
        while (next_snap < snaps.size() && snaps[next_snap] <= std::min(tc, t_end)) {
            stepper.calc_state(snaps[next_snap], xs);
            rec.snapshots.emplace_back(snaps[next_snap++], unpack(xs, d));
        }
        for (double ts = k * controls.sample_dt; ts <= std::min(tc, t_end) + 1e-12 * t_end;
             ts = (++k) * controls.sample_dt) {
            stepper.calc_state(std::min(ts, tc), xs);
            const DensityMatrix rho = unpack(xs, d);
            if (!rho.allFinite()) throw StepFailure("evolve: state became non-finite");
            record(ts, rho);
            if (std::abs(rec.order_parameter.back()) > controls.stop_amplitude) {
                rec.stopped_early = true;
                rec.final_state = rho;
                return rec;
            }
        }
    }
    stepper.calc_state(t_end, xs);
    rec.final_state = unpack(xs, d);
    return rec;
}

const char* to_string(Phase p)
{
    switch (p) {
    case Phase::Mott: return "Mott";
    case Phase::LimitCycle: return "LimitCycle";
    case Phase::Undecided: return "Undecided";
    }
    return "unknown";
}

namespace {

// Least-squares slope of y against t.
double slope(const std::vector<double>& t, const std::vector<double>& y)
{
    const double n = static_cast<double>(t.size());
    const double tm = std::accumulate(t.begin(), t.end(), 0.0) / n;
    const double ym = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double num = 0.0, den = 0.0;
    for (std::size_t i = 0; i < t.size(); ++i) {
        num += (t[i] - tm) * (y[i] - ym);
        den += (t[i] - tm) * (t[i] - tm);
    }
    return den > 0.0 ? num / den : 0.0;
}

} // namespace

LimitCycleReport classify_phase(const TrajectoryRecord& traj, const ClassifyControls& controls)
{
    LimitCycleReport rep;
    const std::size_t n = traj.size();
    if (n < 4) return rep;
    const std::size_t start =
        std::min(n - 3, static_cast<std::size_t>(std::floor((1.0 - controls.window_fraction) * n)));

    std::vector<double> t, amp, logamp, phase;
    double prev_arg = std::arg(traj.order_parameter[start]);
    double unwrapped = prev_arg;
    for (std::size_t i = start; i < n; ++i) {
        const auto a = traj.order_parameter[i];
        const double arg = std::arg(a);
        double delta = arg - prev_arg;
        delta -= 2.0 * M_PI * std::round(delta / (2.0 * M_PI));
        unwrapped += delta;
        prev_arg = arg;
        t.push_back(traj.times[i]);
        amp.push_back(std::abs(a));
        logamp.push_back(std::log(std::max(std::abs(a), 1e-300)));
        phase.push_back(unwrapped);
    }
    const double mean = std::accumulate(amp.begin(), amp.end(), 0.0) / amp.size();
    double var = 0.0;
    for (double v : amp) var += (v - mean) * (v - mean);
    const double sd = std::sqrt(var / amp.size());
    const double peak = *std::max_element(amp.begin(), amp.end());

    rep.amplitude = mean;
    rep.drift = mean > 0.0 ? sd / mean : 0.0;
    rep.growth_rate = slope(t, logamp);
    rep.frequency = mean > 0.0 ? -slope(t, phase) : 0.0;

    if (peak < controls.amplitude_floor) {
        rep.phase = Phase::Mott;
        rep.frequency = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(traj.order_parameter[i]) < controls.amplitude_floor) {
                bool stays = true;
                for (std::size_t j = i; j < n && stays; ++j) {
                    stays = std::abs(traj.order_parameter[j]) < controls.amplitude_floor;
                }
                if (stays) {
                    rep.transient_end = traj.times[i];
                    break;
                }
            }
        }
    } else if (rep.drift < controls.drift_tol) {
        rep.phase = Phase::LimitCycle;
        for (std::size_t i = 0; i < n; ++i) {
            if (std::abs(std::abs(traj.order_parameter[i]) - mean) < 0.1 * mean) {
                rep.transient_end = traj.times[i];
                break;
            }
        }
    }
    return rep;
}

bool is_unstable(const TrajectoryRecord& traj, const LimitCycleReport& report)
{
    if (traj.stopped_early || report.phase == Phase::LimitCycle) return true;
    if (report.phase == Phase::Mott && report.amplitude < 1e-8) return false;
    return report.amplitude > 1e-8 && report.growth_rate > 0.0;
}

DynamicsCritical dynamics_critical_hopping(const ModelParams& params, const ReservoirSpec& spec,
                                           int nmax, const DynamicsCriticalOptions& options)
{
    if (!(options.J_hi > options.J_lo) || options.J_lo < 0.0 || options.iterations < 1) {
        throw InvalidParameter("dynamics_critical_hopping: invalid bracket");
    }
    const FockSpace space(nmax);
    ModelParams p0 = params;
    p0.J = 0.0;
    const Superoperator L0 = build_generator(space, p0, spec);
    const DensityMatrix rho0 = coherent_state(space, options.seed);
    const double t_end = options.t_end_kappa / params.kappa;
    EvolveControls ec = options.evolve;
    // far above the seed: growth is already established
    ec.stop_amplitude = std::min(ec.stop_amplitude, 20.0 * std::abs(options.seed));

    DynamicsCritical out;
    auto unstable = [&](double J) {
        ModelParams p = params;
        p.J = J * params.U;
        const auto traj = evolve(L0, p, rho0, t_end, ec);
        ++out.trajectories;
        return is_unstable(traj, classify_phase(traj, options.classify));
    };

    double lo = options.J_lo, hi = options.J_hi;
    if (unstable(lo)) throw NoConvergence("dynamics_critical_hopping: lower bracket unstable");
    if (!unstable(hi)) throw NoConvergence("dynamics_critical_hopping: upper bracket stable");
    for (int it = 0; it < options.iterations; ++it) {
        const double mid = 0.5 * (lo + hi);
        (unstable(mid) ? hi : lo) = mid;
    }
    out.J_lo = lo * params.U;
    out.J_hi = hi * params.U;
    out.J_c = 0.5 * (out.J_lo + out.J_hi);
    out.uncertainty = out.J_hi - out.J_lo;
    return out;
}

} // namespace mottlc

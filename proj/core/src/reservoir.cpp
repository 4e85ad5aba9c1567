// reservoir.cpp — spectral shapes and the Redfield complex response

#include "mottlc/reservoir.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "mottlc/errors.hpp"

namespace mottlc {

namespace {

inline double step(double x) { return x > 0.0 ? 1.0 : 0.0; }

template <class... Ts>
struct overloaded : Ts... { using Ts::operator()...; };
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

} // namespace

ReservoirSpec ReservoirSpec::square(const ModelParams& p)
{
    return {SquareBath{p.mu_eff}, p.r * p.kappa};
}

ReservoirSpec ReservoirSpec::lorentzian(const ModelParams& p, double omega_res,
                                        double gamma, double frame_offset)
{
    if (!(gamma > 0.0)) throw InvalidParameter("Lorentzian width must be positive");
    return {LorentzianBath{omega_res, gamma, frame_offset}, p.r * p.kappa};
}

ReservoirSpec ReservoirSpec::redfield(const ModelParams& p, bool with_lamb)
{
    return {RedfieldSquareBath{p.mu_eff, p.omega0, with_lamb, 1e-9 * p.U},
            p.r * p.kappa};
}

double rate(const ReservoirSpec& spec, double omega)
{
    const double rk = spec.pump_scale;
    return std::visit(overloaded{
        [&](const SquareBath& s) { return rk * step(s.mu_eff - omega); },
        [&](const LorentzianBath& s) {
            const double hw = 0.5 * s.gamma;
            const double d = omega - s.omega_res;
            return rk * hw * hw / (d * d + hw * hw);
        },
        [&](const RedfieldSquareBath& s) {
            return 0.5 * rk * step(s.mu_eff - omega) * step(omega + s.omega0);
        },
    }, spec.shape);
}

double lamb_shift(const ReservoirSpec& spec, double omega)
{
    const auto* s = std::get_if<RedfieldSquareBath>(&spec.shape);
    if (s == nullptr) return 0.0;
    const double upper = std::abs(s->mu_eff - omega);
    const double lower = std::abs(s->omega0 + omega);
    if (upper < s->clip || lower < s->clip) {
        std::ostringstream msg;
        msg << "Lamb shift evaluated at a branch point (omega = " << omega << ")";
        throw SingularPoint(msg.str());
    }
    return spec.pump_scale / std::numbers::pi * std::log(upper / lower);
}

std::complex<double> response(const ReservoirSpec& spec, double omega)
{
    if (const auto* s = std::get_if<RedfieldSquareBath>(&spec.shape)) {
        const double im = s->lamb_shift ? 0.5 * lamb_shift(spec, omega) : 0.0;
        return {rate(spec, omega), im};
    }
    return {0.5 * rate(spec, omega), 0.0};
}

double channel_frequency(const ReservoirSpec& spec, const ModelParams& p, int n)
{
    const double bohr = site_energy(p, n + 1) - site_energy(p, n);
    if (const auto* s = std::get_if<LorentzianBath>(&spec.shape)) {
        return bohr + s->frame_offset;
    }
    return bohr;
}

} // namespace mottlc

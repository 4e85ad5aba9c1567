// reservoir.hpp — pump spectral shapes: square (effective chemical
// potential), Lorentzian, and the Redfield square response with Lamb shift

#pragma once

#include <complex>
#include <variant>

#include "mottlc/fockspace.hpp"

namespace mottlc {

struct SquareBath {
    double mu_eff{0.5};
};

// frame_offset shifts the rotating-frame Bohr frequency n*U of channel
// n -> n+1 before the Lorentzian is evaluated; the default (one U) puts the
// 0 -> 1 transition at omega = U.
struct LorentzianBath {
    double omega_res{1.0};
    double gamma{1e-3};
    double frame_offset{1.0};
};

struct RedfieldSquareBath {
    double mu_eff{0.5};
    double omega0{10.0};
    bool lamb_shift{true};
    double clip{1e-9}; // absolute distance to a log branch point that is refused
};

struct ReservoirSpec {
    std::variant<SquareBath, LorentzianBath, RedfieldSquareBath> shape;
    double pump_scale{0.0}; // r * kappa

    static ReservoirSpec square(const ModelParams& p);
    static ReservoirSpec lorentzian(const ModelParams& p, double omega_res,
                                    double gamma, double frame_offset);
    static ReservoirSpec redfield(const ModelParams& p, bool lamb_shift = true);

    bool is_square() const { return std::holds_alternative<SquareBath>(shape); }
    bool is_lorentzian() const { return std::holds_alternative<LorentzianBath>(shape); }
    bool is_redfield() const { return std::holds_alternative<RedfieldSquareBath>(shape); }
};

// Pump rate density at transition energy omega, r*kappa included.
//   Square:         r k theta(mu - omega)
//   Lorentzian:     r k (g/2)^2 / ((omega - omega_res)^2 + (g/2)^2)
//   RedfieldSquare: (r k / 2) theta(mu - omega) theta(omega + omega0)
// theta(x) = 1 for x > 0, so the step is right-continuous.
double rate(const ReservoirSpec& spec, double omega);

// (r k / pi) log|(mu - omega) / (omega0 + omega)| for RedfieldSquare, 0 otherwise.
// Throws SingularPoint within `clip` of either branch point.
double lamb_shift(const ReservoirSpec& spec, double omega);

// r k S^R(omega) in the normalization of the Redfield filtered operator:
// rate + i lamb_shift / 2 for RedfieldSquare (Lamb part dropped when
// disabled); rate / 2 for the Lindblad shapes, so that twice the real part
// is always the secular Lindblad rate.
std::complex<double> response(const ReservoirSpec& spec, double omega);

// Frequency at which channel n -> n+1 samples the reservoir.
double channel_frequency(const ReservoirSpec& spec, const ModelParams& p, int n);

} // namespace mottlc

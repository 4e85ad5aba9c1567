// wigner.cpp — displaced-parity Wigner function on a phase-space grid

#include "mottlc/wigner.hpp"

#include <cmath>
#include <sstream>

namespace mottlc {

cplx displacement_element(int n, int m, cplx beta)
{
    const double b2 = std::norm(beta);
    const double gauss = std::exp(-0.5 * b2);
    if (n >= m) {
        const double pref = std::exp(0.5 * (std::lgamma(m + 1.0) - std::lgamma(n + 1.0)));
        return pref * std::pow(beta, n - m) * gauss *
               std::assoc_laguerre(static_cast<unsigned>(m), static_cast<unsigned>(n - m), b2);
    }
    const double pref = std::exp(0.5 * (std::lgamma(n + 1.0) - std::lgamma(m + 1.0)));
    return pref * std::pow(-std::conj(beta), m - n) * gauss *
           std::assoc_laguerre(static_cast<unsigned>(n), static_cast<unsigned>(m - n), b2);
}

double wigner_point(const DensityMatrix& rho, double x, double p)
{
    const cplx two_beta = std::sqrt(2.0) * cplx(x, p);
    const int d = static_cast<int>(rho.rows());
    cplx w = 0.0;
    for (int n = 0; n < d; ++n) {
        for (int m = 0; m < d; ++m) {
            if (rho(m, n) == cplx{}) continue;
            const double parity = (m % 2 == 0) ? 1.0 : -1.0;
            w += rho(m, n) * parity * displacement_element(n, m, two_beta);
        }
    }
    return w.real() / M_PI;
}

namespace {

std::vector<double> axis(double lo, double hi, int n)
{
    std::vector<double> out(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) out[i] = n > 1 ? lo + (hi - lo) * i / (n - 1) : lo;
    return out;
}

void check_axes(const WignerAxes& ax)
{
    if (ax.resolution < 2 || !(ax.x_max > ax.x_min) || !(ax.p_max > ax.p_min) ||
        !std::isfinite(ax.x_min + ax.x_max + ax.p_min + ax.p_max)) {
        throw InvalidParameter("wigner: invalid grid");
    }
}

} // namespace

double WignerGrid::integral() const
{
    const auto trap = [](const std::vector<double>& g, int i) {
        const int n = static_cast<int>(g.size());
        const double dx = g[1] - g[0];
        return (i == 0 || i == n - 1) ? 0.5 * dx : dx;
    };
    double s = 0.0;
    for (int i = 0; i < values.rows(); ++i) {
        for (int j = 0; j < values.cols(); ++j) {
            s += trap(xs, i) * trap(ps, j) * values(i, j);
        }
    }
    return s;
}

WignerGrid wigner(const DensityMatrix& rho, const WignerAxes& axes)
{
    check_axes(axes);
    WignerGrid g;
    g.xs = axis(axes.x_min, axes.x_max, axes.resolution);
    g.ps = axis(axes.p_min, axes.p_max, axes.resolution);
    g.values.resize(axes.resolution, axes.resolution);
    const int nmax = static_cast<int>(rho.rows()) - 1;
    double beta2_max = 0.0;
    for (int i = 0; i < axes.resolution; ++i) {
        for (int j = 0; j < axes.resolution; ++j) {
            g.values(i, j) = wigner_point(rho, g.xs[i], g.ps[j]);
            beta2_max = std::max(beta2_max, 0.5 * (g.xs[i] * g.xs[i] + g.ps[j] * g.ps[j]));
        }
    }
    if (beta2_max > 0.5 * nmax) {
        std::ostringstream msg;
        msg << "grid reaches |beta|^2 = " << beta2_max << " > nmax/2 = " << 0.5 * nmax;
        g.warnings.push_back({WarningKind::Truncation, msg.str()});
    }
    return g;
}

double rotational_asymmetry(const DensityMatrix& rho, const WignerAxes& axes, int angles)
{
    check_axes(axes);
    const auto xs = axis(axes.x_min, axes.x_max, axes.resolution);
    const auto ps = axis(axes.p_min, axes.p_max, axes.resolution);
    const double cx = 0.5 * (axes.x_min + axes.x_max), cp = 0.5 * (axes.p_min + axes.p_max);
    const double radius = 0.5 * std::min(axes.x_max - axes.x_min, axes.p_max - axes.p_min);
    double worst = 0.0;
    for (int k = 1; k < angles; ++k) {
        const double th = 2.0 * M_PI * k / angles;
        const double c = std::cos(th), s = std::sin(th);
        for (double x : xs) {
            for (double p : ps) {
                if (std::hypot(x - cx, p - cp) > radius) continue;
                const double w0 = wigner_point(rho, x, p);
                const double wr = wigner_point(rho, c * x - s * p, s * x + c * p);
                worst = std::max(worst, std::abs(wr - w0));
            }
        }
    }
    return worst;
}

} // namespace mottlc

// fockspace.cpp — ladder operators, site Hamiltonian and helper states

#include "mottlc/fockspace.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mottlc/errors.hpp"

namespace mottlc {

FockSpace::FockSpace(int nmax) : nmax_(nmax)
{
    if (nmax < 1) {
        throw InvalidParameter("FockSpace requires nmax >= 1");
    }
}

void ModelParams::validate() const
{
    std::ostringstream bad;
    if (!(U > 0.0) || !std::isfinite(U)) bad << " U>0";
    if (!(kappa > 0.0) || !std::isfinite(kappa)) bad << " kappa>0";
    if (!(r >= 0.0) || !std::isfinite(r)) bad << " r>=0";
    if (z < 1) bad << " z>=1";
    if (!(J >= 0.0) || !std::isfinite(J)) bad << " J>=0";
    if (!std::isfinite(mu_eff)) bad << " finite mu_eff";
    if (!std::isfinite(omega0)) bad << " finite omega0";
    if (!bad.str().empty()) {
        throw InvalidParameter("ModelParams violates:" + bad.str());
    }
}

Operator annihilation(const FockSpace& space)
{
    const int d = space.dim();
    Operator a = Operator::Zero(d, d);
    for (int n = 1; n < d; ++n) {
        a(n - 1, n) = std::sqrt(static_cast<double>(n));
    }
    return a;
}

Operator creation(const FockSpace& space)
{
    return annihilation(space).adjoint();
}

Operator number(const FockSpace& space)
{
    const int d = space.dim();
    Operator n = Operator::Zero(d, d);
    for (int k = 0; k < d; ++k) n(k, k) = static_cast<double>(k);
    return n;
}

Operator identity(const FockSpace& space)
{
    return Operator::Identity(space.dim(), space.dim());
}

double site_energy(const ModelParams& params, int n)
{
    return 0.5 * params.U * n * (n - 1);
}

Operator hamiltonian_site(const FockSpace& space, const ModelParams& params)
{
    const int d = space.dim();
    Operator h = Operator::Zero(d, d);
    for (int n = 0; n < d; ++n) h(n, n) = site_energy(params, n);
    return h;
}

int filling(const ModelParams& params)
{
    const double x = params.mu_eff / params.U;
    if (x <= 0.0) return 0;
    const double c = std::ceil(x);
    if (c == x) {
        std::ostringstream msg;
        msg << "mu_eff/U = " << x << " sits on a lobe boundary";
        throw InvalidFilling(msg.str());
    }
    return static_cast<int>(c);
}

int default_nmax(const ModelParams& params)
{
    return std::max(filling(params), 0) + 5;
}

DensityMatrix coherent_state(const FockSpace& space, cplx alpha)
{
    const int d = space.dim();
    Eigen::VectorXcd psi(d);
    cplx c = std::exp(-0.5 * std::norm(alpha));
    for (int n = 0; n < d; ++n) {
        psi(n) = c;
        c *= alpha / std::sqrt(static_cast<double>(n + 1));
    }
    psi.normalize();
    return psi * psi.adjoint();
}

DensityMatrix fock_state(const FockSpace& space, int n)
{
    if (n < 0 || n > space.nmax()) {
        throw InvalidParameter("fock_state: occupation outside the space");
    }
    DensityMatrix rho = DensityMatrix::Zero(space.dim(), space.dim());
    rho(n, n) = 1.0;
    return rho;
}

TruncationCheck check_truncation(
    const std::function<std::vector<double>(int nmax)>& observables,
    int nmax, double rel_tol)
{
    TruncationCheck out;
    out.nmax = nmax;
    out.nmax_refined = nmax + 2;
    const auto base = observables(nmax);
    const auto refined = observables(nmax + 2);
    if (base.size() != refined.size()) {
        throw InvalidParameter("check_truncation: observable count changed with nmax");
    }
    double worst = 0.0;
    for (std::size_t i = 0; i < base.size(); ++i) {
        // relative; observables below 1e-4 are compared on that absolute scale,
        // so roundoff in vanishing populations does not count as a change
        const double scale = std::max({std::abs(base[i]), std::abs(refined[i]), 1e-4});
        worst = std::max(worst, std::abs(base[i] - refined[i]) / scale);
    }
    out.max_rel_diff = worst;
    out.converged = worst <= rel_tol;
    return out;
}

} // namespace mottlc

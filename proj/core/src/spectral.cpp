// spectral.cpp — null space, biorthonormal eigensystem, Lehmann sums

#include "mottlc/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include <Eigen/Eigenvalues>

namespace mottlc {

using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

namespace {

constexpr double kNullThreshold = 1e-10;

Vector vec_identity(int dim)
{
    return vec(Matrix::Identity(dim, dim));
}

} // namespace

DensityMatrix steady_state(const Superoperator& L)
{
    const int d = L.dim();
    Eigen::ComplexEigenSolver<Matrix> solver(L.matrix, /*computeEigenvectors=*/false);
    if (solver.info() != Eigen::Success) {
        throw IllConditioned("steady_state: eigenvalue iteration failed");
    }
    const double thresh = kNullThreshold * L.energy_scale;
    int nulls = 0;
    for (Eigen::Index i = 0; i < solver.eigenvalues().size(); ++i) {
        if (std::abs(solver.eigenvalues()(i)) < thresh) ++nulls;
    }
    if (nulls != 1) {
        std::ostringstream msg;
        msg << "steady_state: " << nulls << " eigenvalues below " << thresh;
        throw DegenerateSteadyState(msg.str());
    }

    // Replace the rho_00 equation by the trace condition.
    Matrix m = L.matrix;
    m.row(0) = vec_identity(d).transpose();
    Vector rhs = Vector::Zero(m.rows());
    rhs(0) = 1.0;
    const Vector x = m.fullPivLu().solve(rhs);
    DensityMatrix rho = unvec(x, d);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    rho /= rho.trace();
    return rho;
}

std::vector<double> analytic_populations(const ModelParams& params, int N, int nmax)
{
    if (N < 0 || N > nmax) throw InvalidParameter("analytic_populations: 0 <= N <= nmax");
    if (filling(params) != N) {
        std::ostringstream msg;
        msg << "filling N = " << N << " is inconsistent with mu_eff/U = "
            << params.mu_eff / params.U;
        throw InvalidFilling(msg.str());
    }
    std::vector<double> p(static_cast<std::size_t>(nmax) + 1, 0.0);
    const double r = params.r;
    if (r == 1.0) {
        for (int n = 0; n <= N; ++n) p[n] = 1.0 / (N + 1);
    } else if (r > 1.0) {
        // r^{n-N} (1 - 1/r) / (1 - r^{-(N+1)}): same formula, no overflow
        const double inv = 1.0 / r;
        const double norm = (1.0 - inv) / (1.0 - std::pow(inv, N + 1));
        for (int n = 0; n <= N; ++n) p[n] = std::pow(inv, N - n) * norm;
    } else {
        const double norm = (1.0 - r) / (1.0 - std::pow(r, N + 1));
        for (int n = 0; n <= N; ++n) p[n] = std::pow(r, n) * norm;
    }
    return p;
}

Matrix EigenSystem::right(int alpha) const { return unvec(rights.col(alpha), dim); }
Matrix EigenSystem::left(int alpha) const { return unvec(lefts.col(alpha), dim); }

int EigenSystem::null_index() const
{
    Eigen::Index idx = 0;
    lambdas.cwiseAbs().minCoeff(&idx);
    return static_cast<int>(idx);
}

double EigenSystem::biorthonormality_residual() const
{
    const Matrix g = lefts.adjoint() * rights;
    return (g - Matrix::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff();
}

EigenSystem eigendecompose(const Superoperator& L)
{
    Eigen::ComplexEigenSolver<Matrix> solver(L.matrix);
    if (solver.info() != Eigen::Success) {
        throw IllConditioned("eigendecompose: eigenvalue iteration failed");
    }
    const Eigen::Index n = L.matrix.rows();
    std::vector<Eigen::Index> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    const auto& ev = solver.eigenvalues();
    std::stable_sort(order.begin(), order.end(), [&](auto i, auto j) {
        if (ev(i).imag() != ev(j).imag()) return ev(i).imag() < ev(j).imag();
        return ev(i).real() < ev(j).real();
    });

    EigenSystem sys;
    sys.dim = L.dim();
    sys.lambdas.resize(n);
    sys.rights.resize(n, n);
    for (Eigen::Index k = 0; k < n; ++k) {
        sys.lambdas(k) = ev(order[k]);
        sys.rights.col(k) = solver.eigenvectors().col(order[k]);
    }

    // Unit-trace normalization of the null mode makes r_null = rho_ss.
    const int null = sys.null_index();
    const std::complex<double> tr = vec_identity(sys.dim).transpose() * sys.rights.col(null);
    if (std::abs(tr) > 1e-300) sys.rights.col(null) /= tr;

    Eigen::PartialPivLU<Matrix> lu(sys.rights);
    sys.lefts = lu.inverse().adjoint();

    const double residual = sys.biorthonormality_residual();
    if (!(residual <= 1e-6)) {
        std::ostringstream msg;
        msg << "eigendecompose: biorthonormality residual " << residual
            << " (near-defective generator)";
        throw IllConditioned(msg.str());
    }
    return sys;
}

ImSplit split_imaginary(const Pole& pole, double omega)
{
    const double x = omega + pole.lambda.imag();
    const double g = pole.lambda.real();
    const double den = x * x + g * g;
    ImSplit s;
    s.lorentzian = pole.weight.real() * g / den;
    s.anti_lorentzian = g != 0.0 ? (pole.weight.imag() / g) * g * x / den
                                 : pole.weight.imag() * x / den;
    return s;
}

std::complex<double> GreensFunction::evaluate(double omega) const
{
    std::complex<double> g{0.0, 0.0};
    for (const auto& p : poles) {
        if (p.weight == std::complex<double>{}) continue;
        g += p.weight / std::complex<double>(omega + p.lambda.imag(), -p.lambda.real());
    }
    return g;
}

std::complex<double> GreensFunction::weight_sum() const
{
    std::complex<double> s{0.0, 0.0};
    for (const auto& p : poles) s += p.weight;
    return s;
}

GreensFunction greens_from_poles(std::vector<Pole> poles, std::span<const double> omegas)
{
    GreensFunction g;
    g.poles = std::move(poles);
    g.omegas.assign(omegas.begin(), omegas.end());
    g.values.reserve(g.omegas.size());
    for (double w : g.omegas) g.values.push_back(g.evaluate(w));
    return g;
}

GreensFunction greens_retarded(const EigenSystem& sys, const DensityMatrix& rho_ss,
                               std::span<const double> omegas)
{
    const FockSpace space(sys.dim - 1);
    const Matrix a = annihilation(space);
    const Matrix ad = a.adjoint();
    const Vector comm = vec(ad * rho_ss - rho_ss * ad);
    // tr(a r) = vec(a^T) . vec(r)
    const Eigen::RowVectorXcd tr_a = vec(Matrix(a.transpose())).transpose();
    const Eigen::RowVectorXcd ta = tr_a * sys.rights;
    const Vector lc = sys.lefts.adjoint() * comm;

    Vector w = ta.transpose().cwiseProduct(lc);
    // Weights outside the single-excitation sector vanish by U(1) symmetry;
    // flush their rounding residue so 0/0 cannot appear at lambda ~ 0.
    const double wmax = w.cwiseAbs().maxCoeff();
    std::vector<Pole> poles;
    poles.reserve(static_cast<std::size_t>(sys.size()));
    for (int k = 0; k < sys.size(); ++k) {
        const auto wk = std::abs(w(k)) < 1e-14 * wmax ? std::complex<double>{} : w(k);
        poles.push_back({sys.lambdas(k), wk});
    }
    return greens_from_poles(std::move(poles), omegas);
}

std::vector<std::complex<double>> greens_resolvent(const Superoperator& L,
                                                   const DensityMatrix& rho_ss,
                                                   std::span<const double> omegas)
{
    const int d = L.dim();
    const Matrix a = annihilation(L.space);
    const Matrix ad = a.adjoint();
    const Vector comm = vec(ad * rho_ss - rho_ss * ad);
    const Eigen::RowVectorXcd tr_a = vec(Matrix(a.transpose())).transpose();
    const Matrix id = Matrix::Identity(d * d, d * d);
    std::vector<std::complex<double>> out;
    out.reserve(omegas.size());
    for (double w : omegas) {
        const Matrix m = L.matrix + std::complex<double>(0.0, w) * id;
        const Vector y = m.partialPivLu().solve(comm);
        out.push_back(std::complex<double>(0.0, 1.0) * (tr_a * y)(0));
    }
    return out;
}

GreensFunction greens_groundstate(int N, double U, double mu_eff, double eta,
                                  std::span<const double> omegas)
{
    if (N < 1) throw InvalidParameter("greens_groundstate: N >= 1");
    if (!(eta > 0.0)) throw InvalidParameter("greens_groundstate: eta > 0");
    if (mu_eff < U * (N - 1) || mu_eff > U * N) {
        throw InvalidFilling("greens_groundstate: mu_eff outside the lobe of N");
    }
    // omega + Im lambda - i Re lambda = omega - E + i eta  =>  lambda = -eta - i E
    std::vector<Pole> poles{
        {{-eta, -U * N}, static_cast<double>(N + 1)},
        {{-eta, -U * (N - 1)}, -static_cast<double>(N)},
    };
    return greens_from_poles(std::move(poles), omegas);
}

SteadyResponse steady_response(const ModelParams& params, const ReservoirSpec& spec,
                               int nmax, std::span<const double> omegas)
{
    const FockSpace space(nmax);
    SteadyResponse out{build_generator(space, params, spec), {}, {}, {}};
    out.rho = steady_state(out.generator);
    out.eigen = eigendecompose(out.generator);
    out.greens = greens_retarded(out.eigen, out.rho, omegas);
    return out;
}

} // namespace mottlc

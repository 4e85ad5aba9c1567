// liouvillian.cpp — superoperator builders

#include "mottlc/liouvillian.hpp"

#include <cmath>
#include <sstream>

#include <unsupported/Eigen/KroneckerProduct>

namespace mottlc {

using Matrix = Eigen::MatrixXcd;

DensityMatrix Superoperator::apply(const DensityMatrix& rho) const
{
    return unvec(matrix * vec(rho), dim());
}

Eigen::VectorXcd vec(const Matrix& m)
{
    return Eigen::Map<const Eigen::VectorXcd>(m.data(), m.size());
}

Matrix unvec(const Eigen::VectorXcd& v, int dim)
{
    if (v.size() != static_cast<Eigen::Index>(dim) * dim) {
        throw InvalidParameter("unvec: vector length is not dim^2");
    }
    return Eigen::Map<const Matrix>(v.data(), dim, dim);
}

Matrix left_superop(const Matrix& a)
{
    const Matrix id = Matrix::Identity(a.rows(), a.cols());
    return Eigen::kroneckerProduct(id, a).eval();
}

Matrix right_superop(const Matrix& b)
{
    const Matrix id = Matrix::Identity(b.rows(), b.cols());
    return Eigen::kroneckerProduct(b.transpose(), id).eval();
}

Matrix hamiltonian_superop(const Matrix& h)
{
    const std::complex<double> mi{0.0, -1.0};
    return mi * (left_superop(h) - right_superop(h));
}

Matrix dissipator_superop(const Matrix& o, double rate)
{
    const Matrix od = o.adjoint();
    const Matrix odo = od * o;
    return rate * (left_superop(o) * right_superop(od)
                   - 0.5 * left_superop(odo) - 0.5 * right_superop(odo));
}

namespace {

Matrix channel_operator(const FockSpace& space, int n)
{
    Matrix a_n = Matrix::Zero(space.dim(), space.dim());
    a_n(n + 1, n) = std::sqrt(static_cast<double>(n + 1));
    return a_n;
}

void check_edge(Superoperator& out, const ReservoirSpec& spec, const ModelParams& p)
{
    const int nmax = out.space.nmax();
    const double dropped = rate(spec, channel_frequency(spec, p, nmax));
    if (dropped > 1e-8 * std::max(spec.pump_scale, 1e-300)) {
        std::ostringstream msg;
        msg << "pump channel " << nmax << "->" << nmax + 1
            << " has rate " << dropped << " and was dropped";
        out.warnings.push_back({WarningKind::Truncation, msg.str()});
    }
}

} // namespace

Superoperator build_lindblad(const FockSpace& space, const ModelParams& params,
                             const ReservoirSpec& spec)
{
    params.validate();
    if (spec.is_redfield()) {
        throw InvalidParameter("build_lindblad: RedfieldSquare spec needs build_redfield");
    }
    Superoperator out;
    out.space = space;
    out.kind = GeneratorKind::Lindblad;
    out.energy_scale = params.U;
    out.matrix = hamiltonian_superop(hamiltonian_site(space, params))
               + dissipator_superop(annihilation(space), params.kappa);
    for (int n = 0; n < space.nmax(); ++n) {
        const double g = rate(spec, channel_frequency(spec, params, n));
        if (g > 0.0) {
            out.matrix += dissipator_superop(channel_operator(space, n), g);
        }
    }
    check_edge(out, spec, params);
    return out;
}

Operator filtered_annihilation(const FockSpace& space, const ModelParams& params,
                               const ReservoirSpec& spec)
{
    Operator x = Operator::Zero(space.dim(), space.dim());
    for (int n = 1; n < space.dim(); ++n) {
        x(n - 1, n) = response(spec, channel_frequency(spec, params, n - 1))
                    * std::sqrt(static_cast<double>(n));
    }
    return x;
}

Operator lamb_shift_hamiltonian(const FockSpace& space, const ModelParams& params,
                                const ReservoirSpec& spec)
{
    Operator h = Operator::Zero(space.dim(), space.dim());
    for (int n = 0; n < space.nmax(); ++n) {
        const double im = response(spec, channel_frequency(spec, params, n)).imag();
        // A_n^dag A_n = (n+1) |n><n|
        h(n, n) -= im * (n + 1);
    }
    return h;
}

Superoperator build_redfield(const FockSpace& space, const ModelParams& params,
                             const ReservoirSpec& spec)
{
    params.validate();
    if (!spec.is_redfield()) {
        throw InvalidParameter("build_redfield requires a RedfieldSquare spec");
    }
    const Operator a = annihilation(space);
    const Operator ad = a.adjoint();
    const Operator x = filtered_annihilation(space, params, spec);
    const Operator xd = x.adjoint();

    Superoperator out;
    out.space = space;
    out.kind = GeneratorKind::Redfield;
    out.energy_scale = params.U;
    out.matrix = hamiltonian_superop(hamiltonian_site(space, params))
               + dissipator_superop(a, params.kappa)
               + left_superop(ad) * right_superop(x)
               + left_superop(xd) * right_superop(a)
               - left_superop(a * xd)
               - right_superop(x * ad);
    check_edge(out, spec, params);
    return out;
}

Matrix drive_superop(const FockSpace& space, DriveField drive)
{
    const Operator a = annihilation(space);
    const Operator h = std::conj(drive.phi) * a + drive.phi * a.adjoint();
    return hamiltonian_superop(h);
}

Superoperator add_drive(const Superoperator& L, DriveField drive)
{
    Superoperator out = L;
    out.matrix += drive_superop(L.space, drive);
    return out;
}

Superoperator build_generator(const FockSpace& space, const ModelParams& params,
                              const ReservoirSpec& spec)
{
    return spec.is_redfield() ? build_redfield(space, params, spec)
                              : build_lindblad(space, params, spec);
}

} // namespace mottlc

// oracles.cpp

#include "oracles.hpp"

#include <cmath>
#include <stdexcept>

namespace oracle {

Mat lowering(int dim)
{
    Mat a = Mat::Zero(dim, dim);
    for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(static_cast<double>(n));
    return a;
}

Mat lindblad_rhs(const Mat& H, const std::vector<std::pair<double, Mat>>& jumps, const Mat& rho)
{
    const cplx i{0.0, 1.0};
    Mat out = -i * (H * rho - rho * H);
    for (const auto& [g, l] : jumps) {
        const Mat ld = l.adjoint();
        out += g * (l * rho * ld - 0.5 * (ld * l * rho + rho * ld * l));
    }
    return out;
}

Mat secular_projection(const Mat& L, const std::vector<double>& energies, double tol)
{
    const int d = static_cast<int>(energies.size());
    Mat out = L;
    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j)
            for (int k = 0; k < d; ++k)
                for (int l = 0; l < d; ++l) {
                    const double w1 = energies[i] - energies[j];
                    const double w2 = energies[k] - energies[l];
                    if (std::abs(w1 - w2) > tol) out(i + d * j, k + d * l) = 0.0;
                }
    return out;
}

FirstOrder first_order(const Eigen::VectorXcd& lambda0, const Mat& D, int alpha)
{
    const int n = static_cast<int>(lambda0.size());
    FirstOrder f;
    f.lambda = lambda0(alpha) + D(alpha, alpha);
    f.right = Eigen::VectorXcd::Zero(n);
    f.left = Eigen::VectorXcd::Zero(n);
    f.right(alpha) = 1.0;
    f.left(alpha) = 1.0;
    for (int b = 0; b < n; ++b) {
        if (b == alpha) continue;
        const cplx gap = lambda0(alpha) - lambda0(b);
        if (D(b, alpha) != cplx{}) {
            if (std::abs(gap) < 1e-12) throw std::runtime_error("degenerate coupling");
            f.right(b) = D(b, alpha) / gap;
        }
        // l^1 = sum_b tr(l_b^dag D^dag l_a) / (lambda_a* - lambda_b*) l_b
        const cplx ddag = std::conj(D(alpha, b));
        if (ddag != cplx{}) {
            if (std::abs(gap) < 1e-12) throw std::runtime_error("degenerate coupling");
            f.left(b) = ddag / std::conj(gap);
        }
    }
    return f;
}

double hilbert_pv(const std::vector<double>& xs, const std::vector<double>& fs, double w)
{
    double s = 0.0;
    for (std::size_t k = 0; k + 1 < xs.size(); ++k) {
        const double x0 = xs[k], x1 = xs[k + 1];
        const double slope = (fs[k + 1] - fs[k]) / (x1 - x0);
        const double f_at_w = fs[k] + slope * (w - x0); // linear continuation
        // int (f(w) + slope (x - w)) / (x - w) dx; the log terms of adjacent
        // segments cancel at a node, which gives the principal value
        const double a = std::abs(x1 - w), b = std::abs(x0 - w);
        if (a > 0.0 && b > 0.0) s += f_at_w * std::log(a / b);
        else if (a > 0.0) s += f_at_w * std::log(a);
        else if (b > 0.0) s -= f_at_w * std::log(b);
        s += slope * (x1 - x0);
    }
    return s / M_PI;
}

double ground_state_jc(int N, double U, double mu)
{
    const double re = (N + 1) / (mu - U * N) - N / (mu - U * (N - 1));
    return -1.0 / re;
}

std::vector<double> birth_death_populations(const std::vector<double>& up, double kappa)
{
    std::vector<double> p(up.size() + 1);
    p[0] = 1.0;
    for (std::size_t n = 0; n < up.size(); ++n) {
        p[n + 1] = p[n] * up[n] / (kappa * (n + 1));
    }
    double z = 0.0;
    for (double v : p) z += v;
    for (double& v : p) v /= z;
    return p;
}

} // namespace oracle

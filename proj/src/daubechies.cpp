#include "daubechies.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace sgs::detail {

namespace {

// Roots of a real-coefficient polynomial via the companion matrix.
std::vector<std::complex<double>> poly_roots(const Eigen::VectorXd& coeffs) {
    const int n = static_cast<int>(coeffs.size()) - 1;  // degree
    if (n < 1) return {};
    Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) companion(0, i) = -coeffs[n - 1 - i] / coeffs[n];
    companion.block(1, 0, n - 1, n - 1).setIdentity();
    Eigen::EigenSolver<Eigen::MatrixXd> es(companion);
    std::vector<std::complex<double>> roots(n);
    for (int i = 0; i < n; ++i) roots[i] = es.eigenvalues()[i];
    return roots;
}

// Multiply polynomial (coeff vector, ascending powers) by (z - r).
void mul_linear(std::vector<std::complex<double>>& poly, std::complex<double> r) {
    poly.push_back(0.0);
    for (int i = static_cast<int>(poly.size()) - 1; i > 0; --i)
        poly[i] = poly[i - 1] - r * poly[i];
    poly[0] = -r * poly[0];
}

}  // namespace

Eigen::VectorXd daubechies_filter(int p) {
    if (p < 1) throw std::invalid_argument("daubechies_filter: p must be >= 1");
    if (p == 1) {
        Eigen::VectorXd c(2);
        c << 1.0, 1.0;
        return c;
    }

    // P(y) = sum_{k<p} binom(p-1+k, k) y^k, the residual polynomial of the
    // orthonormality identity.  Each root y_r is mapped to the pair of roots
    // of z^2 - (2 - 4 y_r) z + 1; the one inside the unit disk goes into the
    // minimum-phase spectral factor q(z).
    Eigen::VectorXd P(p);
    P[0] = 1.0;
    for (int k = 1; k < p; ++k) P[k] = P[k - 1] * (p - 1 + k) / static_cast<double>(k);

    std::vector<std::complex<double>> q{1.0};
    for (const auto& y : poly_roots(P)) {
        const std::complex<double> b = 2.0 - 4.0 * y;
        const std::complex<double> disc = std::sqrt(b * b - 4.0);
        std::complex<double> z1 = (b + disc) / 2.0;
        std::complex<double> z2 = (b - disc) / 2.0;
        mul_linear(q, std::abs(z1) < std::abs(z2) ? z1 : z2);
    }
    // Normalize q(1) = 1, then multiply by 2 ((1+z)/2)^p.
    std::complex<double> q1 = 0.0;
    for (const auto& a : q) q1 += a;
    std::vector<std::complex<double>> c(q.size());
    for (size_t i = 0; i < q.size(); ++i) c[i] = q[i] / q1;
    for (int k = 0; k < p; ++k) mul_linear(c, -1.0);  // times (z + 1)^p
    const double scale = 2.0 / std::pow(2.0, p);

    Eigen::VectorXd out(2 * p);
    for (int i = 0; i < 2 * p; ++i) {
        if (std::abs(c[i].imag()) > 1e-10)
            throw std::runtime_error("daubechies_filter: non-real coefficient");
        out[i] = scale * c[i].real();
    }
    return out;
}

double daub_phi(const Eigen::VectorXd& c, double x) {
    const int n = static_cast<int>(c.size()) - 1;  // support is [0, n]
    if (x <= 0.0 || x >= n) return x == 0.0 && n == 1 ? 1.0 : 0.0;  // Haar: phi(0)=1
    if (n == 1) return (x >= 0.0 && x < 1.0) ? 1.0 : 0.0;

    // Daubechies-Lagarias: with T_d(i,j) = c(2i - j + d), i,j = 0..n-1,
    // the product T_{d1} T_{d2} ... over the binary digits of frac(x)
    // converges to a rank-one matrix whose columns are (phi(frac + i))_i.
    Eigen::MatrixXd T0 = Eigen::MatrixXd::Zero(n, n), T1 = T0;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            int k0 = 2 * i - j;
            if (k0 >= 0 && k0 <= n) T0(i, j) = c[k0];
            if (k0 + 1 >= 0 && k0 + 1 <= n) T1(i, j) = c[k0 + 1];
        }

    const int base = static_cast<int>(std::floor(x));
    double frac = x - base;
    Eigen::MatrixXd prod = Eigen::MatrixXd::Identity(n, n);
    for (int iter = 0; iter < 60; ++iter) {
        frac *= 2.0;
        int digit = frac >= 1.0 ? 1 : 0;
        frac -= digit;
        prod = prod * (digit ? T1 : T0);
    }
    return prod.row(base).mean();
}

double daub_psi(const Eigen::VectorXd& c, double x) {
    const int n = static_cast<int>(c.size()) - 1;
    double v = 0.0;
    for (int k = 0; k <= n; ++k) {
        const double sign = (k % 2 == 0) ? 1.0 : -1.0;
        v += sign * c[n - k] * daub_phi(c, 2.0 * x - k);
    }
    return v;
}

}  // namespace sgs::detail

#include "sgs/grid.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace sgs {

void gauss_legendre(int n, Eigen::VectorXd& x, Eigen::VectorXd& w) {
    if (n < 1) throw std::invalid_argument("gauss_legendre: order must be >= 1");
    x.resize(n);
    w.resize(n);
    // Newton iteration on P_n starting from the Chebyshev-based estimate.
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int k = 0; k < n; ++k) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * k + 1.0) * z * p1 - k * p2) / (k + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * pp * pp);
        w[n - 1 - i] = w[i];
    }
}

Grid make_grid(Interval domain, int panels, int order) {
    if (panels < 1) throw std::invalid_argument("make_grid: panels must be >= 1");
    Eigen::VectorXd xr, wr;
    gauss_legendre(order, xr, wr);

    Grid g;
    g.domain = domain;
    g.panels = panels;
    g.order = order;
    g.nodes.resize(static_cast<Eigen::Index>(panels) * order);
    g.weights.resize(g.nodes.size());
    const double h = domain.length() / panels;
    for (int p = 0; p < panels; ++p) {
        const double lo = domain.a + p * h;
        const double mid = lo + 0.5 * h;
        for (int q = 0; q < order; ++q) {
            g.nodes[p * order + q] = mid + 0.5 * h * xr[q];
            g.weights[p * order + q] = 0.5 * h * wr[q];
        }
    }
    return g;
}

std::complex<double> dot(const Grid& grid, const Eigen::VectorXcd& f,
                         const Eigen::VectorXcd& g) {
    if (f.size() != grid.size() || g.size() != grid.size())
        throw std::invalid_argument("dot: length mismatch with grid");
    return (f.array() * g.array().conjugate() * grid.weights.array().cast<std::complex<double>>())
        .sum();
}

double norm(const Grid& grid, const Eigen::VectorXcd& f) {
    return std::sqrt(std::abs(dot(grid, f, f)));
}

}  // namespace sgs

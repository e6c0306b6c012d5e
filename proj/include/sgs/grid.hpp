#pragma once

#include <Eigen/Dense>

namespace sgs {

struct Interval {
    double a = 0.0;
    double b = 1.0;
    double length() const { return b - a; }
    bool operator==(const Interval&) const = default;
};

/// Quadrature grid: strictly increasing nodes with positive weights,
/// built from composite Gauss-Legendre panels.
struct Grid {
    Eigen::VectorXd nodes;
    Eigen::VectorXd weights;
    Interval domain;
    int panels = 1;
    int order = 0;  // nodes per panel

    Eigen::Index size() const { return nodes.size(); }
};

/// n-point Gauss-Legendre rule on [-1,1].
void gauss_legendre(int n, Eigen::VectorXd& x, Eigen::VectorXd& w);

/// Composite Gauss-Legendre grid with `panels` uniform panels of `order`
/// nodes each.  Panels should be a power of two when wavelet systems are in
/// play so panel edges align with dyadic breakpoints.
Grid make_grid(Interval domain, int panels, int order = 10);

/// Quadrature L2 inner product <f, g> (conjugation on the second argument).
std::complex<double> dot(const Grid& grid, const Eigen::VectorXcd& f,
                         const Eigen::VectorXcd& g);

/// Quadrature L2 norm.
double norm(const Grid& grid, const Eigen::VectorXcd& f);

}  // namespace sgs

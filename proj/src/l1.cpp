#include <cmath>
#include <stdexcept>

#include "sgs/csinf.hpp"

namespace sgs {

namespace {

using cd = std::complex<double>;

// Spectral norm by power iteration on B* B.
double spectral_norm(const Eigen::MatrixXcd& B) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(B.cols()).normalized();
    double lambda = 0.0;
    for (int it = 0; it < 200; ++it) {
        Eigen::VectorXcd w = B.adjoint() * (B * v);
        const double next = w.norm();
        if (next == 0.0) return 0.0;
        v = w / next;
        if (std::abs(next - lambda) <= 1e-12 * next && it > 10) return std::sqrt(next);
        lambda = next;
    }
    return std::sqrt(lambda);
}

void soft_threshold(Eigen::VectorXcd& x, double t) {
    for (Eigen::Index i = 0; i < x.size(); ++i) {
        const double a = std::abs(x[i]);
        x[i] = a <= t ? cd(0.0, 0.0) : x[i] * ((a - t) / a);
    }
}

// Lower bound on the optimum from the Chambolle-Pock dual iterate z: scale z
// into the feasible set || B* z ||_inf <= 1, then the dual objective is
// -Re<y, z> - delta ||z|| (the primal-dual z carries the opposite sign of
// the Lagrange multiplier).
double dual_value(const Eigen::MatrixXcd& B, const Eigen::VectorXcd& y, double delta,
                  Eigen::VectorXcd z) {
    const double scale = (B.adjoint() * z).cwiseAbs().maxCoeff();
    if (scale > 1.0) z /= scale;
    return -(y.dot(z)).real() - delta * z.norm();
}

}  // namespace

CsResult l1_solve(const Eigen::MatrixXcd& B, const Eigen::VectorXcd& y, double delta) {
    if (delta < 0.0) throw std::invalid_argument("l1_solve: delta must be >= 0");
    if (y.size() != B.rows()) throw std::invalid_argument("l1_solve: size mismatch");

    CsResult res;
    res.K = B.cols();

    // Feasibility: the least-squares residual is the smallest achievable.
    // The minimum-norm solve can overstate the residual on ill-conditioned
    // sections, so only blatant infeasibility is declared here; borderline
    // cases are left to the iteration, whose cap reports the truth.
    {
        Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(B);
        const double min_resid = (B * cod.solve(y) - y).norm();
        if (min_resid > delta + 1e-6 * (1.0 + y.norm())) {
            res.status = CsStatus::Infeasible;
            res.feasibility_gap = min_resid;
            res.coeffs = Eigen::VectorXcd::Zero(B.cols());
            return res;
        }
    }

    // Chambolle-Pock on min ||x||_1 + indicator(||Bx - y|| <= delta).
    const double L = spectral_norm(B);
    if (L == 0.0) {
        res.coeffs = Eigen::VectorXcd::Zero(B.cols());
        return res;
    }
    const double tau = 1.0 / L, sigma = 1.0 / L;
    const int cap = 50000;
    // The iterates approach the constraint set only in the limit, so accept
    // residuals within a small multiple of the data scale beyond delta.
    const double feas_tol = 1e-8 * (1.0 + y.norm());

    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(B.cols());
    Eigen::VectorXcd xbar = x;
    Eigen::VectorXcd z = Eigen::VectorXcd::Zero(B.rows());

    int it = 0;
    for (; it < cap; ++it) {
        // Dual step: prox of the conjugate of the ball indicator is a
        // shrink of v - sigma y by sigma delta.
        Eigen::VectorXcd u = z + sigma * (B * xbar) - sigma * y;
        const double r = u.norm();
        if (delta > 0.0) {
            u *= r > sigma * delta ? (1.0 - sigma * delta / r) : 0.0;
        }
        z = u;
        // Primal step: soft threshold.
        Eigen::VectorXcd xn = x - tau * (B.adjoint() * z);
        soft_threshold(xn, tau);
        xbar = 2.0 * xn - x;
        x = xn;

        if (it % 50 == 49) {
            const double obj = x.lpNorm<1>();
            const double feas = (B * x - y).norm();
            const double gap = obj - dual_value(B, y, delta, z);
            if (feas <= delta + feas_tol && gap <= 1e-6 * (1.0 + obj)) {
                res.duality_gap = gap;
                break;
            }
        }
    }

    res.coeffs = x;
    res.objective = x.lpNorm<1>();
    res.feasibility_gap = (B * x - y).norm();
    res.duality_gap = res.objective - dual_value(B, y, delta, z);
    res.iterations = std::min(it + 1, cap);
    if (res.iterations >= cap &&
        !(res.feasibility_gap <= delta + feas_tol &&
          res.duality_gap <= 1e-6 * (1.0 + res.objective)))
        res.status = CsStatus::IterationCap;
    return res;
}

}  // namespace sgs

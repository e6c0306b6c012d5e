#include "sgs/gensamp.hpp"

#include <stdexcept>

namespace sgs {

namespace {

Eigen::VectorXcd apply(const SectionMatrix& A, const Eigen::VectorXcd& x, bool adjoint,
                       bool fast) {
    return fast ? matvec_fast(A, x, adjoint) : matvec(A, x, adjoint);
}

}  // namespace

GsResult gs_reconstruct(const SectionMatrix& A, const Eigen::VectorXcd& samples) {
    if (samples.size() != A.rows.count())
        throw std::invalid_argument("gs_reconstruct: sample count mismatch");
    const long m = A.cols.count();
    const bool fast = has_fast_path(A);

    // CG on the normal equations A* A beta = A* b.
    Eigen::VectorXcd beta = Eigen::VectorXcd::Zero(m);
    Eigen::VectorXcd r = apply(A, samples, true, fast);  // residual of the normal eqs
    const double rhs_norm = r.norm();
    Eigen::VectorXcd p = r;
    double rho = r.squaredNorm();
    const double tol = 1e-12 * rhs_norm;
    const int cap = static_cast<int>(10 * m);
    int it = 0;
    while (std::sqrt(rho) > tol && it < cap) {
        Eigen::VectorXcd ap = apply(A, apply(A, p, false, fast), true, fast);
        const std::complex<double> denom = p.dot(ap);  // p* ap, real for PSD
        const double alpha_den = denom.real();
        if (alpha_den <= 0.0) break;
        const double alpha = rho / alpha_den;
        beta += alpha * p;
        r -= alpha * ap;
        const double rho_new = r.squaredNorm();
        p = r + (rho_new / rho) * p;
        rho = rho_new;
        ++it;
    }

    GsResult res;
    res.coeffs = beta;
    res.iterations = it;
    res.residual_norm = (apply(A, beta, false, fast) - samples).norm();
    res.d_nm = 1.0 / min_singular_value(A);
    return res;
}

GsResult consistent_reconstruct(const SectionMatrix& A, const Eigen::VectorXcd& samples) {
    if (A.rows.count() != A.cols.count())
        throw std::invalid_argument("consistent_reconstruct: section must be square");
    if (samples.size() != A.rows.count())
        throw std::invalid_argument("consistent_reconstruct: sample count mismatch");
    GsResult res;
    res.coeffs = A.entries.partialPivLu().solve(samples);
    res.residual_norm = (A.entries * res.coeffs - samples).norm();
    res.d_nm = 1.0 / min_singular_value(A);
    return res;
}

double d_nm(const FunctionSystem& sampling, long N, const FunctionSystem& reconstruction,
            long M) {
    const SectionMatrix A = assemble_section(sampling, {1, N}, reconstruction, {1, M});
    return 1.0 / min_singular_value(A);
}

long stable_sampling_rate(const FunctionSystem& sampling,
                          const FunctionSystem& reconstruction, SsrQuery q) {
    if (q.theta <= 1.0) throw std::invalid_argument("stable_sampling_rate: theta must exceed 1");
    if (q.M < 1) throw std::invalid_argument("stable_sampling_rate: M must be >= 1");

    auto ok = [&](long n) {
        return d_nm(sampling, n, reconstruction, q.M) <= q.theta;
    };

    // sigma_min(A^[N,M]) is nondecreasing in N (rows only get added), so
    // D_{N,M} is nonincreasing: double until satisfied, then bisect.
    long lo = std::max(q.n_min, q.M);  // need at least M rows for full column rank
    if (ok(lo)) return lo;
    long hi = lo;
    do {
        hi *= 2;
        if (hi > q.n_max)
            throw std::runtime_error("stable_sampling_rate: search cap exceeded");
    } while (!ok(hi));
    while (hi - lo > 1) {
        const long mid = lo + (hi - lo) / 2;
        (ok(mid) ? hi : lo) = mid;
    }
    return hi;
}

double sec_angle(const SectionMatrix& A) { return 1.0 / min_singular_value(A); }

}  // namespace sgs

#include "sgs/invreg.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <stdexcept>

namespace sgs {

namespace {

using std::numbers::pi;
using cd = std::complex<double>;

long next_pow2(long n) {
    long p = 1;
    while (p < n) p <<= 1;
    return p;
}

// Grid fine enough for u_l/v_l up to index N and sampling/reconstruction
// elements up to count R.
Grid section_grid(const Interval& domain, long N, const FunctionSystem& sys, long count) {
    long need = std::max({8L, N + 1});
    if (sys.kind == SystemKind::Fourier)
        need = std::max(need, count / 2 + 1);
    else
        need = std::max(need, count);
    return make_grid(domain, static_cast<int>(next_pow2(2 * need)), 12);
}

}  // namespace

SingularSystem SingularSystem::volterra(long count) {
    if (count < 1) throw std::invalid_argument("volterra: count must be >= 1");
    SingularSystem s;
    s.domain = {0.0, 1.0};
    s.sigma.resize(count);
    for (long l = 1; l <= count; ++l) s.sigma[l - 1] = 1.0 / ((l + 0.5) * pi);
    return s;
}

Eigen::VectorXcd SingularSystem::eval_v(long l, const Grid& grid) const {
    if (l < 1 || l > count()) throw std::invalid_argument("eval_v: index out of range");
    Eigen::VectorXcd out(grid.size());
    for (Eigen::Index i = 0; i < grid.size(); ++i)
        out[i] = std::numbers::sqrt2 * std::cos((l + 0.5) * pi * grid.nodes[i]);
    return out;
}

Eigen::VectorXcd SingularSystem::eval_u(long l, const Grid& grid) const {
    if (l < 1 || l > count()) throw std::invalid_argument("eval_u: index out of range");
    Eigen::VectorXcd out(grid.size());
    for (Eigen::Index i = 0; i < grid.size(); ++i)
        out[i] = std::numbers::sqrt2 * std::sin((l + 0.5) * pi * grid.nodes[i]);
    return out;
}

Eigen::VectorXcd volterra_forward(const Grid& grid, const Eigen::VectorXcd& f) {
    if (f.size() != grid.size())
        throw std::invalid_argument("volterra_forward: size mismatch");
    if (grid.order < 2) throw std::invalid_argument("volterra_forward: grid lacks panel info");
    const int q = grid.order;

    // Reference Gauss-Legendre rule of the grid's order, plus Legendre values
    // P_0..P_order at each reference node (one extra degree for the
    // antiderivative identity).
    Eigen::VectorXd xr, wr;
    gauss_legendre(q, xr, wr);
    Eigen::MatrixXd P(q + 1, q);  // P(n, i) = P_n(xr_i)
    for (int i = 0; i < q; ++i) {
        P(0, i) = 1.0;
        P(1, i) = xr[i];
        for (int n = 1; n < q; ++n)
            P(n + 1, i) = ((2.0 * n + 1.0) * xr[i] * P(n, i) - n * P(n - 1, i)) / (n + 1.0);
    }

    const double h2 = 0.5 * grid.domain.length() / grid.panels;  // panel half-width
    Eigen::VectorXcd g(grid.size());
    cd cum = 0.0;  // integral over all previous panels
    for (int p = 0; p < grid.panels; ++p) {
        const auto fp = f.segment(static_cast<Eigen::Index>(p) * q, q);
        // Legendre coefficients of the panel interpolant.
        Eigen::VectorXcd a(q);
        for (int n = 0; n < q; ++n) {
            cd s = 0.0;
            for (int i = 0; i < q; ++i) s += wr[i] * P(n, i) * fp[i];
            a[n] = (2.0 * n + 1.0) / 2.0 * s;
        }
        // int_{-1}^{xi} P_n = (P_{n+1} - P_{n-1})/(2n+1); P_0 integrates to xi+1.
        for (int i = 0; i < q; ++i) {
            cd acc = a[0] * (xr[i] + 1.0);
            for (int n = 1; n < q; ++n)
                acc += a[n] * (P(n + 1, i) - P(n - 1, i)) / (2.0 * n + 1.0);
            g[p * q + i] = cum + h2 * acc;
        }
        cum += h2 * 2.0 * a[0];
    }
    return g;
}

Eigen::MatrixXcd data_section(const SingularSystem& sys, long N,
                              const FunctionSystem& sampling, long R) {
    if (N > sys.count()) throw std::invalid_argument("data_section: N exceeds system count");
    const Grid g = section_grid(sys.domain, N, sampling, R);
    Eigen::MatrixXcd WU(g.size(), N);
    for (long l = 1; l <= N; ++l)
        WU.col(l - 1) = g.weights.cast<cd>().asDiagonal() * sys.eval_u(l, g);
    Eigen::MatrixXcd out(R, N);
    for (long k = 1; k <= R; ++k)
        out.row(k - 1) = eval_element(sampling, k, g).adjoint() * WU;
    return out;
}

Eigen::MatrixXcd solution_section(const SingularSystem& sys, long N,
                                  const FunctionSystem& reconstruction, long M) {
    if (N > sys.count())
        throw std::invalid_argument("solution_section: N exceeds system count");
    const Grid g = section_grid(sys.domain, N, reconstruction, M);
    Eigen::MatrixXcd WT(g.size(), M);
    for (long m = 1; m <= M; ++m)
        WT.col(m - 1) = g.weights.cast<cd>().asDiagonal() * eval_element(reconstruction, m, g);
    Eigen::MatrixXcd out(N, M);
    for (long l = 1; l <= N; ++l)
        out.row(l - 1) = sys.eval_v(l, g).adjoint() * WT;
    return out;
}

InvProblemData add_noise(const Grid& grid, const Eigen::VectorXcd& g, double eps_rel,
                         std::uint64_t seed, bool complex_noise) {
    if (eps_rel < 0.0) throw std::invalid_argument("add_noise: eps_rel must be >= 0");
    InvProblemData d;
    d.g_clean = g;
    d.seed = seed;
    if (eps_rel == 0.0) {
        d.g_noisy = g;
        d.delta = 0.0;
        return d;
    }
    const double g_norm = norm(grid, g);
    if (g_norm == 0.0) throw std::invalid_argument("add_noise: zero data with eps_rel > 0");

    // Hand-rolled Box-Muller on mt19937_64 for cross-platform determinism.
    std::mt19937_64 rng(seed);
    auto gauss_pair = [&rng]() {
        double u1;
        do {
            u1 = std::ldexp(static_cast<double>(rng()), -64);
        } while (u1 <= 0.0);
        const double u2 = std::ldexp(static_cast<double>(rng()), -64);
        const double r = std::sqrt(-2.0 * std::log(u1));
        return cd(r * std::cos(2.0 * pi * u2), r * std::sin(2.0 * pi * u2));
    };
    Eigen::VectorXcd z(grid.size());
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        const cd p = gauss_pair();
        z[i] = complex_noise ? p : cd(p.real(), 0.0);
    }
    const double target = eps_rel / 100.0 * g_norm;
    z *= target / norm(grid, z);
    d.g_noisy = g + z;
    d.delta = target;
    return d;
}

Eigen::VectorXcd sample_coefficients(const Grid& grid, const Eigen::VectorXcd& g,
                                     const FunctionSystem& sampling, long R) {
    Eigen::VectorXcd eta(R);
    for (long k = 1; k <= R; ++k) eta[k - 1] = inner_product(grid, g, sampling, k);
    return eta;
}

Eigen::VectorXcd recover_gamma(const SingularSystem& sys,
                               const FunctionSystem& sampling, long N, long R,
                               const Eigen::VectorXcd& eta) {
    if (R < N) throw std::invalid_argument("recover_gamma: need R >= N");
    if (eta.size() != R) throw std::invalid_argument("recover_gamma: eta size mismatch");
    const Eigen::MatrixXcd A = data_section(sys, N, sampling, R);
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(A);
    if (qr.rank() < N)
        throw std::runtime_error(
            "recover_gamma: data section is rank-deficient; increase R");
    return qr.solve(eta);
}

Eigen::VectorXcd filtered_recover_from_gamma(const Eigen::MatrixXcd& solution_sec,
                                             const Eigen::VectorXd& sigma,
                                             const Eigen::VectorXcd& gamma,
                                             FilterSpec filter) {
    const long N = solution_sec.rows();
    Eigen::VectorXd d(N);  // 1 / F(sigma^2)
    for (long l = 0; l < N; ++l) d[l] = 1.0 / filter.evaluate(sigma[l] * sigma[l]);
    const Eigen::MatrixXcd DC = d.cast<cd>().asDiagonal() * solution_sec;
    const Eigen::VectorXcd rhs = sigma.head(N).cast<cd>().asDiagonal() * gamma;
    Eigen::ColPivHouseholderQR<Eigen::MatrixXcd> qr(DC);
    if (qr.rank() < solution_sec.cols())
        throw std::runtime_error(
            "filtered_recover: weighted section is rank-deficient; increase N or "
            "decrease M");
    return qr.solve(rhs);
}

Eigen::VectorXcd uneven_recover_from_gamma(const Eigen::MatrixXcd& solution_sec,
                                           const Eigen::VectorXd& sigma,
                                           const Eigen::VectorXcd& gamma) {
    const long N = solution_sec.rows();
    Eigen::VectorXcd rhs(N);
    for (long l = 0; l < N; ++l) rhs[l] = gamma[l] / sigma[l];
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(solution_sec,
                                        Eigen::ComputeThinU | Eigen::ComputeThinV);
    svd.setThreshold(1e-12);
    return svd.solve(rhs);
}

CoeffVec filtered_recover(const SingularSystem& sys, const FunctionSystem& sampling,
                          const FunctionSystem& reconstruction, FilterSpec filter,
                          long N, long M, long R, const Eigen::VectorXcd& eta) {
    const Eigen::VectorXcd gamma = recover_gamma(sys, sampling, N, R, eta);
    const Eigen::MatrixXcd C = solution_section(sys, N, reconstruction, M);
    return {filtered_recover_from_gamma(C, sys.sigma.head(N), gamma, filter),
            reconstruction, 1};
}

CoeffVec uneven_recover(const SingularSystem& sys, const FunctionSystem& sampling,
                        const FunctionSystem& reconstruction, long N, long M, long R,
                        const Eigen::VectorXcd& eta) {
    const Eigen::VectorXcd gamma = recover_gamma(sys, sampling, N, R, eta);
    const Eigen::MatrixXcd C = solution_section(sys, N, reconstruction, M);
    return {uneven_recover_from_gamma(C, sys.sigma.head(N), gamma), reconstruction, 1};
}

ErrorBoundTerms error_bound_terms(const Eigen::MatrixXcd& data_sec,
                                  const Eigen::MatrixXcd& solution_sec,
                                  const Eigen::VectorXd& sigma, long N,
                                  FilterSpec filter) {
    ErrorBoundTerms t;
    {
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(data_sec);
        t.sec_theta1 = 1.0 / svd.singularValues().tail(1)(0);
    }
    {
        Eigen::BDCSVD<Eigen::MatrixXcd> svd(solution_sec);
        t.sec_theta2 = 1.0 / svd.singularValues().tail(1)(0);
    }
    // Weighted angle: B = (C* D C)(C* D^2 C)^{-1}(C* D C), D = diag(1/F^2);
    // sec = 1 / sqrt(lambda_min(B)).
    {
        Eigen::VectorXd d(N);
        for (long l = 0; l < N; ++l) {
            const double F = filter.evaluate(sigma[l] * sigma[l]);
            d[l] = 1.0 / (F * F);
        }
        const Eigen::MatrixXcd& C = solution_sec;
        const Eigen::MatrixXcd H = C.adjoint() * d.cast<cd>().asDiagonal() * C;
        const Eigen::MatrixXcd G =
            C.adjoint() * d.array().square().matrix().cast<cd>().asDiagonal() * C;
        Eigen::MatrixXcd B = H * G.ldlt().solve(H);
        B = 0.5 * (B + B.adjoint()).eval();
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(B);
        t.sec_theta2w = 1.0 / std::sqrt(es.eigenvalues()(0));
    }
    t.sigma_next = N < sigma.size() ? sigma[N] : 0.0;
    t.filter_gain = 0.0;
    for (long l = 0; l < N; ++l)
        t.filter_gain =
            std::max(t.filter_gain, filter.evaluate(sigma[l] * sigma[l]) * sigma[l]);
    return t;
}

double tail_norm(double h_norm, const Eigen::VectorXcd& head_coeffs) {
    return std::sqrt(std::max(0.0, h_norm * h_norm - head_coeffs.squaredNorm()));
}

}  // namespace sgs

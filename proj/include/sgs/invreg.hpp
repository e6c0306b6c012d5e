#pragma once

#include <cstdint>

#include "sgs/basis.hpp"
#include "sgs/crossgram.hpp"

namespace sgs {

/// Truncated singular system (sigma_l, v_l, u_l), l = 1..count, of a compact
/// forward operator: A v_l = sigma_l u_l.  v_l live on the solution side,
/// u_l on the data side.
struct SingularSystem {
    Eigen::VectorXd sigma;  // singular values, descending
    Interval domain{0.0, 1.0};

    // Pointwise values of v_l / u_l on a grid (1-based l).
    Eigen::VectorXcd eval_v(long l, const Grid& grid) const;
    Eigen::VectorXcd eval_u(long l, const Grid& grid) const;

    long count() const { return sigma.size(); }

    /// Volterra integration operator (A f)(t) = int_0^t f on [0,1]:
    /// sigma_l = 1/((l + 1/2) pi), v_l = sqrt(2) cos((l + 1/2) pi t),
    /// u_l = sqrt(2) sin((l + 1/2) pi t), l = 1, 2, ...
    static SingularSystem volterra(long count);
};

/// Apply the Volterra forward operator to pointwise values on a grid by
/// cumulative quadrature (g(t) = int_0^t f).
Eigen::VectorXcd volterra_forward(const Grid& grid, const Eigen::VectorXcd& f);

/// Spectral filter F(sigma^2) applied to the singular spectrum during
/// inversion: the reconstructed singular coefficients are F(sigma^2) sigma
/// times the data coefficients.
struct FilterSpec {
    enum class Kind { None, Tikhonov } kind = Kind::None;
    double alpha = 0.0;

    static FilterSpec none() { return {}; }
    static FilterSpec tikhonov(double a) { return {Kind::Tikhonov, a}; }

    /// F(sigma^2): 1/sigma^2 unfiltered, 1/(alpha + sigma^2) for Tikhonov.
    double evaluate(double sigma_sq) const {
        return kind == Kind::None ? 1.0 / sigma_sq : 1.0 / (alpha + sigma_sq);
    }
};

/// Data-side section S*_R U_N: entry (k, l) = <u_l, psi_k>, k = 1..R rows,
/// l = 1..N columns.  Assembled by quadrature.
Eigen::MatrixXcd data_section(const SingularSystem& sys, long N,
                              const FunctionSystem& sampling, long R);

/// Solution-side section V*_N T_M: entry (l, m) = <t_m, v_l>, l = 1..N rows,
/// m = 1..M columns.  Assembled by quadrature.
Eigen::MatrixXcd solution_section(const SingularSystem& sys, long N,
                                  const FunctionSystem& reconstruction, long M);

/// Noisy data model: g^d = g + z with || z || / || g || = eps_rel / 100
/// exactly in the quadrature norm; z is pointwise Gaussian on the grid
/// (complex-circular when complex_noise), deterministic per seed.
struct InvProblemData {
    Eigen::VectorXcd g_clean;  // grid samples of A f
    Eigen::VectorXcd g_noisy;
    double delta = 0.0;        // || g_noisy - g_clean || in the quadrature norm
    std::uint64_t seed = 0;
};

InvProblemData add_noise(const Grid& grid, const Eigen::VectorXcd& g, double eps_rel,
                         std::uint64_t seed, bool complex_noise);

/// eta_k = <g, psi_k>, k = 1..R, by quadrature.
Eigen::VectorXcd sample_coefficients(const Grid& grid, const Eigen::VectorXcd& g,
                                     const FunctionSystem& sampling, long R);

/// Step 1: least-squares estimate of gamma_l = <g, u_l>, l = 1..N, from the
/// R measured coefficients eta (QR on the data section).  Requires R >= N
/// and a nonsingular section.
Eigen::VectorXcd recover_gamma(const SingularSystem& sys,
                               const FunctionSystem& sampling, long N, long R,
                               const Eigen::VectorXcd& eta);

/// Step 2 (filtered), from an estimate of gamma: beta minimizes
/// || D C beta - Sigma gamma || with C = solution section and
/// D = diag(1 / F(sigma_l^2)).
Eigen::VectorXcd filtered_recover_from_gamma(const Eigen::MatrixXcd& solution_sec,
                                             const Eigen::VectorXd& sigma,
                                             const Eigen::VectorXcd& gamma,
                                             FilterSpec filter);

/// Step 2 (uneven, unfiltered): beta minimizes || C beta - Sigma^{-1} gamma ||
/// via the SVD pseudoinverse with relative cutoff 1e-12.
Eigen::VectorXcd uneven_recover_from_gamma(const Eigen::MatrixXcd& solution_sec,
                                           const Eigen::VectorXd& sigma,
                                           const Eigen::VectorXcd& gamma);

/// Full pipelines: recover gamma from eta, then invert.  Coefficients are
/// against reconstruction elements 1..M.
CoeffVec filtered_recover(const SingularSystem& sys,
                          const FunctionSystem& sampling,
                          const FunctionSystem& reconstruction, FilterSpec filter,
                          long N, long M, long R, const Eigen::VectorXcd& eta);

CoeffVec uneven_recover(const SingularSystem& sys, const FunctionSystem& sampling,
                        const FunctionSystem& reconstruction, long N, long M,
                        long R, const Eigen::VectorXcd& eta);

/// Quantities entering the a-priori error bounds.
struct ErrorBoundTerms {
    double sec_theta1 = 0.0;   // 1 / sigma_min(data section)
    double sec_theta2 = 0.0;   // 1 / sigma_min(solution section), unfiltered
    double sec_theta2w = 0.0;  // weighted variant for the filtered method
    double sigma_next = 0.0;   // sigma_{N+1}
    double filter_gain = 0.0;  // max_l F(sigma_l^2) sigma_l over l = 1..N
};

/// The weighted angle uses B = (C* D C)(C* D^2 C)^{-1}(C* D C) with
/// D = diag(1 / F(sigma_l^2)^2); sec = 1 / sqrt(lambda_min(B)).
ErrorBoundTerms error_bound_terms(const Eigen::MatrixXcd& data_sec,
                                  const Eigen::MatrixXcd& solution_sec,
                                  const Eigen::VectorXd& sigma, long N,
                                  FilterSpec filter);

/// || h - P_{span} h || via head-energy subtraction: sqrt(||h||^2 - ||coeffs||^2).
double tail_norm(double h_norm, const Eigen::VectorXcd& head_coeffs);

}  // namespace sgs

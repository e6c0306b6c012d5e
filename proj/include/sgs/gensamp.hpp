#pragma once

#include "sgs/crossgram.hpp"

namespace sgs {

struct GsResult {
    Eigen::VectorXcd coeffs;    // reconstruction coefficients beta
    double residual_norm = 0.0; // || A beta - samples ||_2
    int iterations = 0;         // CG iterations (0 when solved directly)
    double d_nm = 0.0;          // 1 / sigma_min(A)
};

/// Generalized-sampling reconstruction: least squares min || A beta - b ||
/// over the column range, solved by CG on the normal equations (relative
/// tolerance 1e-12, cap 10 * cols iterations) and cross-checked against a
/// dense QR solve in tests.
GsResult gs_reconstruct(const SectionMatrix& A, const Eigen::VectorXcd& samples);

/// Consistent reconstruction: square section solve A beta = b.
GsResult consistent_reconstruct(const SectionMatrix& A, const Eigen::VectorXcd& samples);

/// D_{N,M} = 1 / sigma_min of the section with row count N, column count M.
double d_nm(const FunctionSystem& sampling, long N,
            const FunctionSystem& reconstruction, long M);

struct SsrQuery {
    long M = 0;
    double theta = 2.0;  // must be > 1
    long n_min = 1;
    long n_max = 1 << 20;  // search cap; throws if exceeded
};

/// Stable sampling rate: least N with D_{N,M} <= theta.  Uses doubling then
/// bisection (sigma_min is nondecreasing in N for fixed M).
long stable_sampling_rate(const FunctionSystem& sampling,
                          const FunctionSystem& reconstruction, SsrQuery q);

/// Secant of the subspace angle between R(P_N A P_M) and the sample space,
/// computed as 1 / sigma_min(A^[N,M]) for orthonormal sampling systems.
double sec_angle(const SectionMatrix& A);

}  // namespace sgs

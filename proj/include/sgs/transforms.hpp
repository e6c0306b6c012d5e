#pragma once

#include <Eigen/Dense>

namespace sgs {

/// In-place radix-2 FFT, forward: X[k] = sum_n x[n] exp(-2 pi i n k / N).
/// Size must be a power of two.
void fft(Eigen::VectorXcd& x, bool inverse = false);

/// Inverse orthonormal Haar wavelet transform on [father, w_{0,0},
/// w_{1,0}, w_{1,1}, ...] coefficients: returns the 2^J pointwise averages
/// scaled so the map is unitary.  Input size must be a power of two.
Eigen::VectorXcd inverse_haar(const Eigen::VectorXcd& coeffs);

/// Forward orthonormal Haar transform (adjoint/inverse of inverse_haar).
Eigen::VectorXcd forward_haar(const Eigen::VectorXcd& values);

}  // namespace sgs

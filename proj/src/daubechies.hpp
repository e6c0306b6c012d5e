#pragma once

#include <Eigen/Dense>

namespace sgs::detail {

/// Scaling-equation coefficients c_0..c_{2p-1} of the Daubechies family with
/// p vanishing moments, normalized so sum c_k = 2 (phi(x) = sum c_k phi(2x-k),
/// phi supported on [0, 2p-1]).  p = 1 gives the Haar filter {1, 1}.
Eigen::VectorXd daubechies_filter(int p);

/// Pointwise scaling function phi(x) by digit matrix products
/// (Daubechies-Lagarias); exact zero outside [0, 2p-1].
double daub_phi(const Eigen::VectorXd& c, double x);

/// Mother wavelet psi(x) = sum_k (-1)^k c_{2p-1-k} phi(2x-k), supported on
/// [0, 2p-1].
double daub_psi(const Eigen::VectorXd& c, double x);

}  // namespace sgs::detail

#pragma once

#include <complex>
#include <string>

#include "sgs/grid.hpp"

namespace sgs {

enum class SystemKind { Fourier, Haar, DaubechiesPeriodic, Legendre };

std::string to_string(SystemKind k);
SystemKind system_kind_from_string(const std::string& s);

/// A countable orthonormal system on an interval, indexed j = 1, 2, ...
/// All systems are defined in normalized coordinates t = (x - a) / (b - a)
/// and carry the 1/sqrt(length) factor so they are orthonormal in L2(a,b).
struct FunctionSystem {
    SystemKind kind = SystemKind::Fourier;
    Interval domain;
    int vanishing_moments = 1;  // only used by DaubechiesPeriodic

    static FunctionSystem fourier(Interval d = {0.0, 1.0});
    static FunctionSystem haar(Interval d = {0.0, 1.0});
    static FunctionSystem daubechies(int p, Interval d = {0.0, 1.0});
    static FunctionSystem legendre(Interval d = {0.0, 1.0});

    bool operator==(const FunctionSystem&) const = default;
};

/// Fourier index -> signed frequency: j=1 -> 0, j even -> j/2, j odd -> -(j-1)/2.
long fourier_frequency(long j);

/// Inverse of fourier_frequency.
long fourier_index(long freq);

/// Wavelet label for j >= 2: level l = floor(log2(j-1)), position
/// q = j - 1 - 2^l, so j = 2^l + q + 1 with 0 <= q < 2^l.  j = 1 is the
/// father (scaling) function and maps to {-1, 0}.
struct WaveletIndex {
    int level = -1;     // -1 marks the father function
    long position = 0;  // 0 <= position < 2^level
};
WaveletIndex wavelet_label(long j);
long wavelet_index(const WaveletIndex& w);

/// Pointwise values of element j of the system on the grid nodes.
Eigen::VectorXcd eval_element(const FunctionSystem& sys, long j, const Grid& grid);

/// Quadrature inner product <f, e_j>.
std::complex<double> inner_product(const Grid& grid, const Eigen::VectorXcd& f,
                                   const FunctionSystem& sys, long j);

/// A block of coefficients against consecutive indices of one system:
/// values(i) multiplies element (offset + i), offset >= 1.
struct CoeffVec {
    Eigen::VectorXcd values;
    FunctionSystem system;
    long offset = 1;
};

/// Pointwise values of sum_i values(i) * e_{offset+i} on the grid nodes.
Eigen::VectorXcd synthesize(const CoeffVec& coeffs, const Grid& grid);

}  // namespace sgs

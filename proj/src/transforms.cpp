#include "sgs/transforms.hpp"

#include <numbers>
#include <stdexcept>

namespace sgs {

namespace {
bool is_pow2(Eigen::Index n) { return n > 0 && (n & (n - 1)) == 0; }
}

void fft(Eigen::VectorXcd& x, bool inverse) {
    const Eigen::Index n = x.size();
    if (!is_pow2(n)) throw std::invalid_argument("fft: size must be a power of two");
    // Bit-reversal permutation, then iterative butterflies.  The inverse
    // flips the twiddle sign and applies no 1/n scaling.
    for (Eigen::Index i = 1, j = 0; i < n; ++i) {
        Eigen::Index bit = n >> 1;
        for (; j & bit; bit >>= 1) j ^= bit;
        j ^= bit;
        if (i < j) std::swap(x[i], x[j]);
    }
    const double sign = inverse ? 1.0 : -1.0;
    for (Eigen::Index len = 2; len <= n; len <<= 1) {
        const std::complex<double> wl =
            std::polar(1.0, sign * 2.0 * std::numbers::pi / static_cast<double>(len));
        for (Eigen::Index i = 0; i < n; i += len) {
            std::complex<double> w = 1.0;
            for (Eigen::Index k = 0; k < len / 2; ++k) {
                const std::complex<double> u = x[i + k];
                const std::complex<double> v = x[i + k + len / 2] * w;
                x[i + k] = u + v;
                x[i + k + len / 2] = u - v;
                w *= wl;
            }
        }
    }
}

Eigen::VectorXcd inverse_haar(const Eigen::VectorXcd& coeffs) {
    const Eigen::Index n = coeffs.size();
    if (!is_pow2(n)) throw std::invalid_argument("inverse_haar: size must be a power of two");
    const double r = 1.0 / std::numbers::sqrt2;
    Eigen::VectorXcd s(1);
    s[0] = coeffs[0];
    for (Eigen::Index half = 1; half < n; half <<= 1) {
        Eigen::VectorXcd next(2 * half);
        for (Eigen::Index t = 0; t < half; ++t) {
            const std::complex<double> d = coeffs[half + t];
            next[2 * t] = (s[t] + d) * r;
            next[2 * t + 1] = (s[t] - d) * r;
        }
        s.swap(next);
    }
    return s;
}

Eigen::VectorXcd forward_haar(const Eigen::VectorXcd& values) {
    const Eigen::Index n = values.size();
    if (!is_pow2(n)) throw std::invalid_argument("forward_haar: size must be a power of two");
    const double r = 1.0 / std::numbers::sqrt2;
    Eigen::VectorXcd out(n), work = values;
    for (Eigen::Index half = n / 2; half >= 1; half >>= 1) {
        Eigen::VectorXcd s(half);
        for (Eigen::Index t = 0; t < half; ++t) {
            s[t] = (work[2 * t] + work[2 * t + 1]) * r;
            out[half + t] = (work[2 * t] - work[2 * t + 1]) * r;
        }
        work = s;
    }
    out[0] = work[0];
    return out;
}

}  // namespace sgs

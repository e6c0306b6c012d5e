#include <numbers>
#include <stdexcept>

#include "sgs/crossgram.hpp"
#include "sgs/transforms.hpp"

namespace sgs {

namespace {
using cd = std::complex<double>;
using std::numbers::pi;

bool is_pow2(long n) { return n > 0 && (n & (n - 1)) == 0; }

// w(k) = int over one cell of the piecewise-constant representation against
// exp(-2 pi i k t): (1 - exp(-2 pi i k / N)) / (2 pi i k), w(0) = 1/N.
cd cell_weight(long k, long n) {
    if (k == 0) return 1.0 / static_cast<double>(n);
    return (1.0 - std::polar(1.0, -2.0 * pi * k / static_cast<double>(n))) /
           cd(0.0, 2.0 * pi * k);
}
}  // namespace

bool has_fast_path(const SectionMatrix& A) {
    return A.sampling.kind == SystemKind::Fourier &&
           A.reconstruction.kind == SystemKind::Haar && A.rows.lo == 1 &&
           A.cols.lo == 1 && A.rows.count() == A.cols.count() &&
           is_pow2(A.rows.count());
}

Eigen::VectorXcd matvec_fast(const SectionMatrix& A, const Eigen::VectorXcd& x,
                             bool adjoint) {
    if (!has_fast_path(A)) throw std::invalid_argument("matvec_fast: no fast path");
    const long n = A.rows.count();
    const double root = std::sqrt(static_cast<double>(n));  // 2^{J/2}

    if (!adjoint) {
        if (x.size() != n) throw std::invalid_argument("matvec_fast: size mismatch");
        // A = diag(w) . DFT . 2^{J/2} . inverse Haar
        Eigen::VectorXcd v = inverse_haar(x) * root;
        fft(v);
        Eigen::VectorXcd y(n);
        for (long i = 1; i <= n; ++i) {
            const long k = fourier_frequency(i);
            y[i - 1] = cell_weight(k, n) * v[((k % n) + n) % n];
        }
        return y;
    }

    if (x.size() != n) throw std::invalid_argument("matvec_fast: size mismatch");
    // A* = forward Haar . 2^{J/2} . DFT* . diag(conj w)
    Eigen::VectorXcd c = Eigen::VectorXcd::Zero(n);
    for (long i = 1; i <= n; ++i) {
        const long k = fourier_frequency(i);
        c[((k % n) + n) % n] += std::conj(cell_weight(k, n)) * x[i - 1];
    }
    fft(c, /*inverse=*/true);
    return forward_haar(c * root);
}

}  // namespace sgs

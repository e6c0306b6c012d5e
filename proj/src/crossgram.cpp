#include "sgs/crossgram.hpp"

#include <cmath>
#include <cstdint>
#include <vector>

#include "daubechies.hpp"
#include <cstring>
#include <fstream>
#include <numbers>
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

// Resolution demanded by element j: dyadic breakpoints for wavelets,
// oscillation count for Fourier, degree for Legendre.
long resolution(const FunctionSystem& sys, long j) {
    switch (sys.kind) {
        case SystemKind::Fourier: return std::abs(fourier_frequency(j)) + 1;
        case SystemKind::Haar: {
            const WaveletIndex w = wavelet_label(j);
            return w.level < 0 ? 1 : (2L << w.level);
        }
        case SystemKind::DaubechiesPeriodic: {
            const WaveletIndex w = wavelet_label(j);
            const long width = 2L * sys.vanishing_moments - 1;
            return w.level < 0 ? 1 : (2L << w.level) * width;
        }
        case SystemKind::Legendre: return j;
    }
    return 1;
}

// j_0..j_nmax at x >= 0 by Miller backward recurrence.  Normalized with
// sum_n (2n+1) j_n(x)^2 = 1, which stays robust at the zeros of j_0; the
// overall sign is pinned by whichever of j_0, j_1 is larger.
Eigen::VectorXd sph_bessel_batch(int nmax, double x) {
    Eigen::VectorXd out = Eigen::VectorXd::Zero(nmax + 1);
    if (x < 1e-300) {
        out[0] = 1.0;
        return out;
    }
    const int start = nmax + 16 + static_cast<int>(std::sqrt(40.0 * nmax) + x);
    std::vector<double> raw(start + 1);
    double jp1 = 0.0, j = 1.0;  // j_{n+2}, j_{n+1} in raw scale
    for (int n = start; n >= 0; --n) {
        const double jm1 = (2.0 * n + 3.0) / x * j - jp1;
        jp1 = j;
        j = jm1;
        raw[n] = j;
        if (std::abs(j) > 1e100) {  // rescale so the sum of squares below stays finite
            jp1 /= 1e100;
            j /= 1e100;
            for (int m = n; m <= start; ++m) raw[m] /= 1e100;
        }
    }
    double total = 0.0;
    for (int n = 0; n <= start; ++n) total += (2.0 * n + 1.0) * raw[n] * raw[n];
    double scale = 1.0 / std::sqrt(total);
    const double ref = std::abs(raw[0]) >= std::abs(raw[1])
                           ? (std::sin(x) / x) * raw[0]
                           : (std::sin(x) / (x * x) - std::cos(x) / x) * raw[1];
    if (ref < 0.0) scale = -scale;
    for (int n = 0; n <= nmax; ++n) out[n] = scale * raw[n];
    return out;
}

// Unit-interval Haar mother transform: int_0^1 h(u) exp(-2 pi i w u) du.
cd haar_symbol(double w) {
    if (w == 0.0) return 0.0;
    const cd e = std::polar(1.0, -pi * w);
    return (1.0 - e) * (1.0 - e) / cd(0.0, 2.0 * pi * w);
}

// <haar_j, fourier_i> in normalized coordinates (domain-independent).
cd fourier_haar_entry(long i, long j) {
    const long k = fourier_frequency(i);
    const WaveletIndex w = wavelet_label(j);
    if (w.level < 0) return k == 0 ? 1.0 : 0.0;
    const double scale = std::ldexp(1.0, w.level);
    return std::pow(2.0, -0.5 * w.level) *
           std::polar(1.0, -2.0 * pi * k * w.position / scale) * haar_symbol(k / scale);
}

// Fourier transform of the scaling function, phi_hat(w) = prod_j m0(w/2^j)
// with m0(xi) = (1/2) sum_k c_k exp(-i k xi); the product is truncated once
// the argument underflows the linear regime.
cd phi_hat(const Eigen::VectorXd& c, double w) {
    auto m0 = [&c](double xi) {
        cd s = 0.0;
        for (Eigen::Index k = 0; k < c.size(); ++k) s += c[k] * std::polar(1.0, -k * xi);
        return 0.5 * s;
    };
    cd prod = 1.0;
    double arg = w;
    for (int j = 0; j < 64 && std::abs(arg) > 1e-14; ++j) {
        arg *= 0.5;
        prod *= m0(arg);
    }
    return prod;
}

// <db_j, fourier_i> for the periodized Daubechies system:
// 2^{-l/2} exp(-2 pi i k q / 2^l) psi_hat(2 pi k / 2^l), with
// psi_hat(w) = m1(w/2) phi_hat(w/2) and m1 built from the wavelet taps.
cd fourier_daub_entry(const FunctionSystem& recon, long i, long j) {
    const long k = fourier_frequency(i);
    const WaveletIndex w = wavelet_label(j);
    if (w.level < 0) return k == 0 ? 1.0 : 0.0;  // periodized father = constant
    static thread_local int cached_p = 0;
    static thread_local Eigen::VectorXd cached_c;
    if (cached_p != recon.vanishing_moments) {
        cached_c = detail::daubechies_filter(recon.vanishing_moments);
        cached_p = recon.vanishing_moments;
    }
    const Eigen::VectorXd& c = cached_c;
    const long n = c.size() - 1;
    const double scale = std::ldexp(1.0, w.level);
    const double omega = 2.0 * pi * k / scale;
    cd m1 = 0.0;
    for (long t = 0; t <= n; ++t) {
        const double sign = (t % 2 == 0) ? 1.0 : -1.0;
        m1 += sign * c[n - t] * std::polar(1.0, -t * omega / 2.0);
    }
    m1 *= 0.5;
    return std::pow(2.0, -0.5 * w.level) *
           std::polar(1.0, -2.0 * pi * k * w.position / scale) * m1 *
           phi_hat(c, omega / 2.0);
}

// <legendre_j, fourier_i> = sqrt(2n+1) (-1)^k (-i)^n j_n(pi k), n = j-1.
cd fourier_legendre_entry(long i, long j, const Eigen::VectorXd* bessel_row) {
    const long k = fourier_frequency(i);
    const long n = j - 1;
    if (k == 0) return n == 0 ? 1.0 : 0.0;
    double jn = bessel_row ? (*bessel_row)[n]
                           : std::sph_bessel(static_cast<unsigned>(n), pi * std::abs(k));
    if (k < 0 && n % 2 == 1) jn = -jn;
    const double sign_k = (k % 2 == 0) ? 1.0 : -1.0;
    static const cd mi_pow[4] = {{1, 0}, {0, -1}, {-1, 0}, {0, 1}};
    return sign_k * jn * std::sqrt(2.0 * n + 1.0) * mi_pow[n % 4];
}

bool closed_form_pair(const FunctionSystem& s, const FunctionSystem& r) {
    return s.kind == SystemKind::Fourier && s.domain == r.domain &&
           (r.kind == SystemKind::Haar || r.kind == SystemKind::Legendre ||
            r.kind == SystemKind::DaubechiesPeriodic);
}

}  // namespace

std::complex<double> gram_entry_quadrature(const FunctionSystem& sampling, long i,
                                           const FunctionSystem& reconstruction, long j,
                                           int panels, int order) {
    if (!(sampling.domain == reconstruction.domain))
        throw std::invalid_argument("gram_entry_quadrature: domain mismatch");
    if (panels <= 0) {
        const long need = std::max(resolution(sampling, i), resolution(reconstruction, j));
        panels = static_cast<int>(next_pow2(std::max(8L, 2 * need)));
    }
    const Grid g = make_grid(sampling.domain, panels, order);
    return dot(g, eval_element(reconstruction, j, g), eval_element(sampling, i, g));
}

std::complex<double> gram_entry(const FunctionSystem& sampling, long i,
                                const FunctionSystem& reconstruction, long j) {
    if (closed_form_pair(sampling, reconstruction)) {
        switch (reconstruction.kind) {
            case SystemKind::Haar: return fourier_haar_entry(i, j);
            case SystemKind::DaubechiesPeriodic: return fourier_daub_entry(reconstruction, i, j);
            default: return fourier_legendre_entry(i, j, nullptr);
        }
    }
    return gram_entry_quadrature(sampling, i, reconstruction, j);
}

Eigen::VectorXcd gram_row(const FunctionSystem& sampling, long i,
                          const FunctionSystem& reconstruction, IndexRange cols) {
    Eigen::VectorXcd row(cols.count());
    if (closed_form_pair(sampling, reconstruction) &&
        reconstruction.kind == SystemKind::Legendre) {
        const long k = fourier_frequency(i);
        Eigen::VectorXd bessel;
        if (k != 0) bessel = sph_bessel_batch(static_cast<int>(cols.hi), pi * std::abs(k));
        for (long j = cols.lo; j <= cols.hi; ++j)
            row[j - cols.lo] = fourier_legendre_entry(i, j, k == 0 ? nullptr : &bessel);
        return row;
    }
    for (long j = cols.lo; j <= cols.hi; ++j)
        row[j - cols.lo] = gram_entry(sampling, i, reconstruction, j);
    return row;
}

SectionMatrix assemble_section(const FunctionSystem& sampling, IndexRange rows,
                               const FunctionSystem& reconstruction, IndexRange cols) {
    if (rows.count() < 1 || cols.count() < 1 || rows.lo < 1 || cols.lo < 1)
        throw std::invalid_argument("assemble_section: bad index ranges");
    SectionMatrix A;
    A.rows = rows;
    A.cols = cols;
    A.sampling = sampling;
    A.reconstruction = reconstruction;
    A.entries.resize(rows.count(), cols.count());

    if (closed_form_pair(sampling, reconstruction)) {
        for (long i = rows.lo; i <= rows.hi; ++i)
            A.entries.row(i - rows.lo) = gram_row(sampling, i, reconstruction, cols).transpose();
        return A;
    }

    // Quadrature route: one shared grid fine enough for every element, then a
    // single weighted Gram product.
    long need = 8;
    need = std::max(need, resolution(sampling, rows.hi));
    need = std::max(need, resolution(reconstruction, cols.hi));
    const int panels = static_cast<int>(next_pow2(2 * need));
    const Grid g = make_grid(sampling.domain, panels, 12);

    Eigen::MatrixXcd S(g.size(), rows.count()), R(g.size(), cols.count());
    for (long i = rows.lo; i <= rows.hi; ++i)
        S.col(i - rows.lo) = eval_element(sampling, i, g);
    for (long j = cols.lo; j <= cols.hi; ++j)
        R.col(j - cols.lo) = eval_element(reconstruction, j, g);
    A.entries = S.adjoint() * g.weights.asDiagonal() * R;
    return A;
}

Eigen::VectorXcd matvec(const SectionMatrix& A, const Eigen::VectorXcd& x, bool adjoint) {
    return adjoint ? (A.entries.adjoint() * x).eval() : (A.entries * x).eval();
}

double min_singular_value(const SectionMatrix& A) {
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(A.entries);
    return svd.singularValues().tail(1)(0);
}

void save_section(const SectionMatrix& A, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("save_section: cannot open " + path);
    f.write("SGRM", 4);
    const std::uint32_t hdr[4] = {static_cast<std::uint32_t>(A.rows.count()),
                                  static_cast<std::uint32_t>(A.cols.count()),
                                  static_cast<std::uint32_t>(A.rows.lo),
                                  static_cast<std::uint32_t>(A.cols.lo)};
    f.write(reinterpret_cast<const char*>(hdr), sizeof(hdr));
    for (Eigen::Index i = 0; i < A.entries.rows(); ++i)
        for (Eigen::Index j = 0; j < A.entries.cols(); ++j) {
            const float re = static_cast<float>(A.entries(i, j).real());
            const float im = static_cast<float>(A.entries(i, j).imag());
            f.write(reinterpret_cast<const char*>(&re), 4);
            f.write(reinterpret_cast<const char*>(&im), 4);
        }
    if (!f) throw std::runtime_error("save_section: write failed for " + path);
}

SectionMatrix load_section(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("load_section: cannot open " + path);
    char magic[4];
    f.read(magic, 4);
    if (!f || std::memcmp(magic, "SGRM", 4) != 0)
        throw std::runtime_error("load_section: bad magic in " + path);
    std::uint32_t hdr[4];
    f.read(reinterpret_cast<char*>(hdr), sizeof(hdr));
    if (!f) throw std::runtime_error("load_section: truncated header in " + path);
    SectionMatrix A;
    A.rows = {static_cast<long>(hdr[2]), static_cast<long>(hdr[2] + hdr[0] - 1)};
    A.cols = {static_cast<long>(hdr[3]), static_cast<long>(hdr[3] + hdr[1] - 1)};
    A.entries.resize(hdr[0], hdr[1]);
    for (std::uint32_t i = 0; i < hdr[0]; ++i)
        for (std::uint32_t j = 0; j < hdr[1]; ++j) {
            float re, im;
            f.read(reinterpret_cast<char*>(&re), 4);
            f.read(reinterpret_cast<char*>(&im), 4);
            A.entries(i, j) = cd(re, im);
        }
    if (!f) throw std::runtime_error("load_section: truncated data in " + path);
    return A;
}

}  // namespace sgs

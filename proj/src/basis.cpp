#include "sgs/basis.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "daubechies.hpp"

namespace sgs {

std::string to_string(SystemKind k) {
    switch (k) {
        case SystemKind::Fourier: return "fourier";
        case SystemKind::Haar: return "haar";
        case SystemKind::DaubechiesPeriodic: return "daubechies";
        case SystemKind::Legendre: return "legendre";
    }
    throw std::logic_error("to_string: bad SystemKind");
}

SystemKind system_kind_from_string(const std::string& s) {
    if (s == "fourier") return SystemKind::Fourier;
    if (s == "haar") return SystemKind::Haar;
    if (s == "daubechies") return SystemKind::DaubechiesPeriodic;
    if (s == "legendre") return SystemKind::Legendre;
    throw std::invalid_argument("unknown function system: " + s);
}

FunctionSystem FunctionSystem::fourier(Interval d) { return {SystemKind::Fourier, d, 1}; }
FunctionSystem FunctionSystem::haar(Interval d) { return {SystemKind::Haar, d, 1}; }
FunctionSystem FunctionSystem::daubechies(int p, Interval d) {
    if (p < 1) throw std::invalid_argument("daubechies: p must be >= 1");
    return {SystemKind::DaubechiesPeriodic, d, p};
}
FunctionSystem FunctionSystem::legendre(Interval d) { return {SystemKind::Legendre, d, 1}; }

long fourier_frequency(long j) {
    if (j < 1) throw std::invalid_argument("fourier_frequency: j must be >= 1");
    if (j == 1) return 0;
    return (j % 2 == 0) ? j / 2 : -(j - 1) / 2;
}

long fourier_index(long freq) {
    if (freq == 0) return 1;
    return freq > 0 ? 2 * freq : -2 * freq + 1;
}

WaveletIndex wavelet_label(long j) {
    if (j < 1) throw std::invalid_argument("wavelet_label: j must be >= 1");
    if (j == 1) return {-1, 0};
    int level = 0;
    while ((2L << level) <= j - 1) ++level;  // level = floor(log2(j-1))
    return {level, j - 1 - (1L << level)};
}

long wavelet_index(const WaveletIndex& w) {
    if (w.level < 0) return 1;
    return (1L << w.level) + w.position + 1;
}

namespace {

using std::numbers::pi;

Eigen::VectorXcd eval_fourier(const FunctionSystem& sys, long j, const Grid& grid) {
    const double L = sys.domain.length();
    const double k = static_cast<double>(fourier_frequency(j));
    Eigen::VectorXcd out(grid.size());
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        const double t = (grid.nodes[i] - sys.domain.a) / L;
        out[i] = std::polar(1.0 / std::sqrt(L), 2.0 * pi * k * t);
    }
    return out;
}

Eigen::VectorXcd eval_haar(const FunctionSystem& sys, long j, const Grid& grid) {
    const double L = sys.domain.length();
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(grid.size());
    const WaveletIndex w = wavelet_label(j);
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        const double t = (grid.nodes[i] - sys.domain.a) / L;
        if (t < 0.0 || t >= 1.0) continue;
        if (w.level < 0) {
            out[i] = 1.0 / std::sqrt(L);
        } else {
            const double u = std::ldexp(t, w.level) - w.position;  // 2^l t - q
            if (u >= 0.0 && u < 1.0)
                out[i] = (u < 0.5 ? 1.0 : -1.0) * std::sqrt(std::ldexp(1.0, w.level) / L);
        }
    }
    return out;
}

Eigen::VectorXcd eval_daub(const FunctionSystem& sys, long j, const Grid& grid) {
    if (sys.vanishing_moments == 1) return eval_haar(sys, j, grid);
    const double L = sys.domain.length();
    const Eigen::VectorXd c = detail::daubechies_filter(sys.vanishing_moments);
    const int supp = static_cast<int>(c.size()) - 1;  // psi supported on [0, supp]
    const WaveletIndex w = wavelet_label(j);
    Eigen::VectorXcd out(grid.size());
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        const double t = (grid.nodes[i] - sys.domain.a) / L;
        if (w.level < 0) {
            out[i] = 1.0 / std::sqrt(L);  // periodized scaling = partition of unity
            continue;
        }
        // Periodization: sum psi(2^l (t + m) - q) over the integers m that hit
        // the support.
        const double scale = std::ldexp(1.0, w.level);
        double v = 0.0;
        const long m_lo = static_cast<long>(std::floor((w.position - scale * t) / scale));
        const long m_hi = static_cast<long>(std::ceil((w.position + supp - scale * t) / scale));
        for (long m = m_lo; m <= m_hi; ++m)
            v += detail::daub_psi(c, scale * (t + m) - w.position);
        out[i] = v * std::sqrt(scale / L);
    }
    return out;
}

// Orthonormal Legendre sqrt((2n+1)/L) P_n(2t-1) by the three-term recurrence.
Eigen::VectorXcd eval_legendre(const FunctionSystem& sys, long j, const Grid& grid) {
    const double L = sys.domain.length();
    const long n = j - 1;
    Eigen::VectorXcd out(grid.size());
    for (Eigen::Index i = 0; i < grid.size(); ++i) {
        const double u = 2.0 * (grid.nodes[i] - sys.domain.a) / L - 1.0;
        double p0 = 1.0, p1 = u;
        if (n == 0) {
            out[i] = std::sqrt(1.0 / L);
            continue;
        }
        for (long k = 1; k < n; ++k) {
            const double p2 = ((2.0 * k + 1.0) * u * p1 - k * p0) / (k + 1.0);
            p0 = p1;
            p1 = p2;
        }
        out[i] = p1 * std::sqrt((2.0 * n + 1.0) / L);
    }
    return out;
}

}  // namespace

Eigen::VectorXcd eval_element(const FunctionSystem& sys, long j, const Grid& grid) {
    if (j < 1) throw std::invalid_argument("eval_element: index must be >= 1");
    switch (sys.kind) {
        case SystemKind::Fourier: return eval_fourier(sys, j, grid);
        case SystemKind::Haar: return eval_haar(sys, j, grid);
        case SystemKind::DaubechiesPeriodic: return eval_daub(sys, j, grid);
        case SystemKind::Legendre: return eval_legendre(sys, j, grid);
    }
    throw std::logic_error("eval_element: bad SystemKind");
}

std::complex<double> inner_product(const Grid& grid, const Eigen::VectorXcd& f,
                                   const FunctionSystem& sys, long j) {
    return dot(grid, f, eval_element(sys, j, grid));
}

Eigen::VectorXcd synthesize(const CoeffVec& coeffs, const Grid& grid) {
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(grid.size());
    for (Eigen::Index i = 0; i < coeffs.values.size(); ++i)
        out += coeffs.values[i] * eval_element(coeffs.system, coeffs.offset + i, grid);
    return out;
}

}  // namespace sgs

#include "sgs/csinf.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>

namespace sgs {

namespace {

using cd = std::complex<double>;

// Unbiased bounded draw from [0, n) by modulo rejection.
std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
    const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
    std::uint64_t r;
    do {
        r = rng();
    } while (r >= limit);
    return r % n;
}

void check_levels(const std::vector<long>& levels) {
    if (levels.empty()) throw std::invalid_argument("levels must be nonempty");
    long prev = 0;
    for (long v : levels) {
        if (v <= prev) throw std::invalid_argument("levels must be strictly increasing");
        prev = v;
    }
}

// Row block of level k relative to A's row offset (0-based dense indices).
std::pair<long, long> block(const std::vector<long>& levels, int k, long offset_lo) {
    const long lo = (k == 1 ? 0 : levels[k - 2]) + 1;  // 1-based global
    const long hi = levels[k - 1];
    return {lo - offset_lo, hi - offset_lo + 1};  // [begin, end) in dense coords
}

double max_sq(const Eigen::MatrixXcd& m) {
    return m.size() == 0 ? 0.0 : m.cwiseAbs2().maxCoeff();
}

// Max |eta* G eta| over unit-modulus eta via projected power iteration with
// deterministic restarts.  G is PSD.
double unimodular_max(const Eigen::MatrixXcd& G) {
    const Eigen::Index n = G.rows();
    if (n == 0) return 0.0;
    auto run = [&](Eigen::VectorXcd eta) {
        double val = (eta.adjoint() * G * eta).real()(0);
        for (int it = 0; it < 200; ++it) {
            Eigen::VectorXcd g = G * eta;
            for (Eigen::Index i = 0; i < n; ++i) {
                const double a = std::abs(g[i]);
                if (a > 1e-15) eta[i] = g[i] / a;
            }
            const double next = (eta.adjoint() * G * eta).real()(0);
            if (next <= val * (1.0 + 1e-14)) break;
            val = next;
        }
        return val;
    };

    double best = run(Eigen::VectorXcd::Ones(n));
    {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(G);
        Eigen::VectorXcd lead = es.eigenvectors().col(n - 1);
        for (Eigen::Index i = 0; i < n; ++i) {
            const double a = std::abs(lead[i]);
            lead[i] = a > 1e-15 ? lead[i] / a : cd(1.0, 0.0);
        }
        best = std::max(best, run(lead));
    }
    std::mt19937_64 rng(0x5eed5eedULL);
    for (int r = 0; r < 6; ++r) {
        Eigen::VectorXcd eta(n);
        for (Eigen::Index i = 0; i < n; ++i)
            eta[i] = std::polar(1.0, 2.0 * std::numbers::pi *
                                         std::ldexp(static_cast<double>(rng()), -64));
        best = std::max(best, run(eta));
    }
    return best;
}

// All (width choose count) index subsets of {0..width-1}, via callback.
template <typename F>
void for_each_combination(long width, long count, F&& f) {
    std::vector<long> idx(count);
    for (long i = 0; i < count; ++i) idx[i] = i;
    while (true) {
        f(idx);
        long i = count - 1;
        while (i >= 0 && idx[i] == width - count + i) --i;
        if (i < 0) break;
        ++idx[i];
        for (long j = i + 1; j < count; ++j) idx[j] = idx[j - 1] + 1;
    }
}

double binomial(long n, long k) {
    double r = 1.0;
    for (long i = 1; i <= k; ++i) r *= static_cast<double>(n - k + i) / i;
    return r;
}

// Enumerate one support per column level and collect the global (0-based)
// column list; calls f for each combined support.
template <typename F>
void for_each_support(const std::vector<long>& col_levels, const std::vector<long>& s,
                      F&& f) {
    const int r = static_cast<int>(col_levels.size());
    std::vector<std::vector<long>> chosen(r);
    std::function<void(int)> rec = [&](int level) {
        if (level == r) {
            std::vector<long> support;
            for (const auto& c : chosen) support.insert(support.end(), c.begin(), c.end());
            f(support);
            return;
        }
        const long lo = level == 0 ? 0 : col_levels[level - 1];
        const long width = col_levels[level] - lo;
        for_each_combination(width, s[level], [&](const std::vector<long>& idx) {
            chosen[level].resize(idx.size());
            for (size_t i = 0; i < idx.size(); ++i) chosen[level][i] = lo + idx[i];
            rec(level + 1);
        });
    };
    rec(0);
}

}  // namespace

long MultilevelScheme::total_m() const {
    long t = 0;
    for (long v : m) t += v;
    return t;
}

long SparsityLevels::total_s() const {
    long t = 0;
    for (long v : s) t += v;
    return t;
}

MultilevelScheme draw_scheme(const std::vector<long>& levels,
                             const std::vector<long>& m, std::uint64_t seed) {
    check_levels(levels);
    if (m.size() != levels.size())
        throw std::invalid_argument("draw_scheme: m/levels size mismatch");
    MultilevelScheme out;
    out.levels = levels;
    out.m = m;
    out.seed = seed;
    std::mt19937_64 rng(seed);
    for (size_t k = 0; k < levels.size(); ++k) {
        const long lo = (k == 0 ? 0 : levels[k - 1]) + 1;
        const long width = levels[k] - lo + 1;
        if (m[k] < 0 || m[k] > width)
            throw std::invalid_argument("draw_scheme: m_k exceeds level width");
        std::vector<long> pool(width);
        for (long i = 0; i < width; ++i) pool[i] = lo + i;
        for (long i = 0; i < m[k]; ++i) {  // partial Fisher-Yates
            const long j = i + static_cast<long>(bounded(rng, width - i));
            std::swap(pool[i], pool[j]);
            out.omega.push_back(pool[i]);
        }
    }
    std::sort(out.omega.begin(), out.omega.end());
    return out;
}

double coherence(const SectionMatrix& A) { return max_sq(A.entries); }

TailCoherence tail_coherence(const FunctionSystem& sampling,
                             const FunctionSystem& reconstruction, long N,
                             long probe_depth) {
    if (probe_depth <= 0) probe_depth = 4 * N;
    const long extent = N + probe_depth;
    TailCoherence t;
    for (long i = N + 1; i <= extent; ++i) {
        const Eigen::VectorXcd row = gram_row(sampling, i, reconstruction, {1, extent});
        t.mu_rows = std::max(t.mu_rows, row.cwiseAbs2().maxCoeff());
    }
    for (long i = 1; i <= extent; ++i) {
        const Eigen::VectorXcd row =
            gram_row(sampling, i, reconstruction, {N + 1, extent});
        t.mu_cols = std::max(t.mu_cols, row.cwiseAbs2().maxCoeff());
    }
    return t;
}

double local_coherence(const SectionMatrix& A, const std::vector<long>& row_levels,
                       const std::vector<long>& col_levels, int k, int l) {
    check_levels(row_levels);
    const auto [rb, re] = block(row_levels, k, A.rows.lo);
    if (rb < 0 || re > A.entries.rows())
        throw std::invalid_argument("local_coherence: row level outside section");
    const auto rows = A.entries.middleRows(rb, re - rb);
    double mu_block;
    if (l == 0) {  // column tail beyond the last level, up to A's extent
        const long start = col_levels.back() - A.cols.lo + 1;
        if (start >= A.entries.cols())
            throw std::invalid_argument("local_coherence: no column tail in section");
        mu_block = max_sq(rows.middleCols(start, A.entries.cols() - start));
    } else {
        check_levels(col_levels);
        const auto [cb, ce] = block(col_levels, l, A.cols.lo);
        if (cb < 0 || ce > A.entries.cols())
            throw std::invalid_argument("local_coherence: col level outside section");
        mu_block = max_sq(rows.middleCols(cb, ce - cb));
    }
    return std::sqrt(mu_block * max_sq(rows));
}

std::vector<long> effective_sparsity(const Eigen::VectorXcd& beta,
                                     const std::vector<long>& col_levels, double eps) {
    check_levels(col_levels);
    if (eps <= 0.0 || eps > 1.0)
        throw std::invalid_argument("effective_sparsity: eps must be in (0,1]");
    if (beta.size() < col_levels.back())
        throw std::invalid_argument("effective_sparsity: beta shorter than levels");
    std::vector<long> out;
    for (size_t k = 0; k < col_levels.size(); ++k) {
        const long lo = k == 0 ? 0 : col_levels[k - 1];
        const long width = col_levels[k] - lo;
        std::vector<double> mags(width);
        for (long i = 0; i < width; ++i) mags[i] = std::abs(beta[lo + i]);
        std::sort(mags.begin(), mags.end(), std::greater<>());
        double total = 0.0;
        for (double v : mags) total += v * v;
        const double target = eps * eps * total;
        double acc = 0.0;
        long count = 0;
        while (acc < target && count < width) {
            acc += mags[count] * mags[count];
            ++count;
            if (acc * (1.0 + 1e-14) >= target) break;
        }
        out.push_back(total == 0.0 ? 0 : count);
    }
    return out;
}

double sigma_sM(const Eigen::VectorXcd& beta, const SparsityLevels& sp) {
    check_levels(sp.levels);
    if (beta.size() < sp.levels.back())
        throw std::invalid_argument("sigma_sM: beta shorter than levels");
    double tail = 0.0;
    for (size_t k = 0; k < sp.levels.size(); ++k) {
        const long lo = k == 0 ? 0 : sp.levels[k - 1];
        const long width = sp.levels[k] - lo;
        std::vector<double> mags(width);
        for (long i = 0; i < width; ++i) mags[i] = std::abs(beta[lo + i]);
        std::sort(mags.begin(), mags.end(), std::greater<>());
        for (long i = sp.s[k]; i < width; ++i) tail += mags[i];
    }
    return tail;
}

double relative_sparsity(const SectionMatrix& A, const std::vector<long>& row_levels,
                         const SparsityLevels& sp, int k, SparsityMode mode) {
    check_levels(row_levels);
    check_levels(sp.levels);
    const auto [rb, re] = block(row_levels, k, A.rows.lo);
    const auto rows = A.entries.middleRows(rb, re - rb);

    if (mode == SparsityMode::Bound) {
        // Row-wise triangle-inequality bound: per row, sum the s_l largest
        // |a_ij| inside each column level, square, and add up; capped by the
        // universal bound S_k <= total s.
        double energy = 0.0;
        for (Eigen::Index i = 0; i < rows.rows(); ++i) {
            double row_sum = 0.0;
            for (size_t l = 0; l < sp.levels.size(); ++l) {
                const long lo = l == 0 ? 0 : sp.levels[l - 1];
                const long width = sp.levels[l] - lo;
                std::vector<double> mags(width);
                for (long j = 0; j < width; ++j)
                    mags[j] = std::abs(rows(i, lo + j - (A.cols.lo - 1)));
                std::sort(mags.begin(), mags.end(), std::greater<>());
                for (long j = 0; j < std::min<long>(sp.s[l], width); ++j)
                    row_sum += mags[j];
            }
            energy += row_sum * row_sum;
        }
        return std::min(static_cast<double>(sp.total_s()), energy);
    }

    double combos = 1.0;
    for (size_t l = 0; l < sp.levels.size(); ++l) {
        const long lo = l == 0 ? 0 : sp.levels[l - 1];
        combos *= binomial(sp.levels[l] - lo, sp.s[l]);
    }
    if (combos > 1e6)
        throw std::invalid_argument("relative_sparsity: exact mode too large");

    double best = 0.0;
    for_each_support(sp.levels, sp.s, [&](const std::vector<long>& support) {
        Eigen::MatrixXcd B(rows.rows(), support.size());
        for (size_t j = 0; j < support.size(); ++j)
            B.col(j) = rows.col(support[j] - (A.cols.lo - 1));
        best = std::max(best, unimodular_max(B.adjoint() * B));
    });
    return best;
}

double relative_sparsity_bruteforce(const SectionMatrix& A,
                                    const std::vector<long>& row_levels,
                                    const SparsityLevels& sp, int k) {
    if (A.entries.imag().cwiseAbs().maxCoeff() > 1e-12)
        throw std::invalid_argument("bruteforce S_k requires a real section");
    const auto [rb, re] = block(row_levels, k, A.rows.lo);
    const auto rows = A.entries.middleRows(rb, re - rb);
    double best = 0.0;
    for_each_support(sp.levels, sp.s, [&](const std::vector<long>& support) {
        const size_t n = support.size();
        Eigen::MatrixXcd B(rows.rows(), n);
        for (size_t j = 0; j < n; ++j) B.col(j) = rows.col(support[j] - (A.cols.lo - 1));
        for (std::uint64_t bits = 0; bits < (1ULL << n); ++bits) {
            Eigen::VectorXcd eta(n);
            for (size_t j = 0; j < n; ++j) eta[j] = (bits >> j) & 1 ? -1.0 : 1.0;
            best = std::max(best, (B * eta).squaredNorm());
        }
    });
    return best;
}

BalancingReport balancing_check(const FunctionSystem& sampling,
                                const FunctionSystem& reconstruction, long N,
                                double K, long M, long s) {
    const SectionMatrix head = assemble_section(sampling, {1, N}, reconstruction, {1, M});
    const SectionMatrix tail =
        assemble_section(sampling, {1, N}, reconstruction, {M + 1, 5 * M});
    BalancingReport r;
    const Eigen::MatrixXcd G =
        head.entries.adjoint() * head.entries - Eigen::MatrixXcd::Identity(M, M);
    r.lhs_weak = G.cwiseAbs().rowwise().sum().maxCoeff();
    r.rhs_weak =
        1.0 / (8.0 * std::sqrt(std::log2(4.0 * std::sqrt(static_cast<double>(s)) * K *
                                         static_cast<double>(M))));
    const Eigen::MatrixXcd X = tail.entries.adjoint() * head.entries;
    r.lhs_strong = X.cwiseAbs().rowwise().sum().maxCoeff();
    r.holds_weak = r.lhs_weak <= r.rhs_weak;
    r.holds_strong = r.holds_weak && r.lhs_strong <= 0.125;
    return r;
}

Eigen::MatrixXcd subsampled_matrix(const FunctionSystem& sampling,
                                   const FunctionSystem& reconstruction,
                                   const std::vector<long>& omega, long K) {
    Eigen::MatrixXcd B(omega.size(), K);
    for (size_t i = 0; i < omega.size(); ++i)
        B.row(i) = gram_row(sampling, omega[i], reconstruction, {1, K}).transpose();
    return B;
}

TruncationResult choose_truncation(const FunctionSystem& sampling,
                                   const FunctionSystem& reconstruction,
                                   const std::vector<long>& omega,
                                   const Eigen::VectorXcd& y, double delta,
                                   long base_K) {
    TruncationResult out;
    out.K = base_K;
    out.result = l1_solve(subsampled_matrix(sampling, reconstruction, omega, base_K),
                          y, delta);
    while (true) {
        const long next_K = 2 * out.K;
        if (next_K > (1L << 16))
            throw std::runtime_error("choose_truncation: column cap exceeded");
        CsResult next = l1_solve(
            subsampled_matrix(sampling, reconstruction, omega, next_K), y, delta);
        const double change = std::abs(next.objective - out.result.objective);
        out.K = next_K;
        out.result = std::move(next);
        if (change < 1e-6) break;
    }
    return out;
}

Eigen::VectorXcd flip_coefficients(const Eigen::VectorXcd& beta, long bandwidth) {
    if (bandwidth > beta.size())
        throw std::invalid_argument("flip_coefficients: bandwidth exceeds length");
    Eigen::VectorXcd out = beta;
    out.head(bandwidth).reverseInPlace();
    return out;
}

TheoremConditions theorem_conditions(const SectionMatrix& A,
                                     const MultilevelScheme& scheme,
                                     const SparsityLevels& sp,
                                     const std::vector<double>& S_values,
                                     double epsilon) {
    const int r = static_cast<int>(scheme.levels.size());
    if (static_cast<int>(sp.levels.size()) != r || static_cast<int>(S_values.size()) != r)
        throw std::invalid_argument("theorem_conditions: level count mismatch");
    TheoremConditions t;
    t.mu.resize(r, r);
    for (int k = 1; k <= r; ++k)
        for (int l = 1; l <= r; ++l)
            t.mu(k - 1, l - 1) = local_coherence(A, scheme.levels, sp.levels, k, l);

    const double log_n = std::log(static_cast<double>(scheme.bandwidth()));
    const double log_eps = std::log(1.0 / epsilon) + 1.0;
    t.level_ok.resize(r);
    bool all = true;
    for (int k = 0; k < r; ++k) {
        const long width = scheme.levels[k] - (k == 0 ? 0 : scheme.levels[k - 1]);
        double inner = 0.0;
        for (int l = 0; l < r; ++l) inner += t.mu(k, l) * static_cast<double>(sp.s[l]);
        t.required_m.push_back(static_cast<double>(width) * log_eps * inner * log_n);
        t.level_ok[k] = static_cast<double>(scheme.m[k]) >= t.required_m[k] ||
                        scheme.m[k] == width;  // full sampling always passes
        all = all && t.level_ok[k];
    }

    // Second family: with m_hat_k = m_k / (log_eps * log_n), the worst case
    // of sum_k (width_k / m_hat_k - 1) mu(k,l) s~_k over s~ <= S_k,
    // sum s~ <= s must not exceed 1, for every l.
    t.mhat_ok = true;
    const double s_total = static_cast<double>(sp.total_s());
    for (int l = 0; l < r; ++l) {
        std::vector<std::pair<double, int>> coeff(r);
        for (int k = 0; k < r; ++k) {
            const long width = scheme.levels[k] - (k == 0 ? 0 : scheme.levels[k - 1]);
            // A fully sampled level has no subsampling defect and drops out.
            double c = 0.0;
            if (scheme.m[k] < width) {
                const double mhat = static_cast<double>(scheme.m[k]) / (log_eps * log_n);
                c = std::max(0.0, static_cast<double>(width) / mhat - 1.0) * t.mu(k, l);
            }
            coeff[k] = {c, k};
        }
        std::sort(coeff.begin(), coeff.end(), std::greater<>());
        double budget = s_total, worst = 0.0;
        for (const auto& [c, k] : coeff) {
            const double take = std::min(budget, S_values[k]);
            worst += c * take;
            budget -= take;
            if (budget <= 0.0) break;
        }
        if (worst > 1.0) t.mhat_ok = false;
    }
    // Full sampling in every level is exact regardless of the estimates.
    bool full = true;
    for (int k = 0; k < r; ++k)
        full = full && scheme.m[k] == scheme.levels[k] - (k == 0 ? 0 : scheme.levels[k - 1]);
    t.satisfied = full || (all && t.mhat_ok);
    return t;
}

}  // namespace sgs

#pragma once

#include <cstdint>
#include <vector>

#include "sgs/crossgram.hpp"

namespace sgs {

/// Multilevel subsampling scheme: sampling level k is the index window
/// (N[k-1], N[k]] with N[0] = 0 implied, and m[k] row indices are drawn
/// uniformly without replacement inside level k.
struct MultilevelScheme {
    std::vector<long> levels;  // N_1 < ... < N_r
    std::vector<long> m;       // m_k <= N_k - N_{k-1}
    std::vector<long> omega;   // realized sorted index set
    std::uint64_t seed = 0;

    long total_m() const;
    long bandwidth() const { return levels.empty() ? 0 : levels.back(); }
};

/// Draw the realized index set; deterministic and bit-identical per seed
/// (own rejection-sampled bounded draws, no std distributions).
MultilevelScheme draw_scheme(const std::vector<long>& levels,
                             const std::vector<long>& m, std::uint64_t seed);

/// Sparsity-in-levels profile: s[k] nonzeros inside (M[k-1], M[k]].
struct SparsityLevels {
    std::vector<long> levels;  // M_1 < ... < M_r
    std::vector<long> s;
    long total_s() const;
};

/// Global coherence mu = max |a_ij|^2 over the dense section.
double coherence(const SectionMatrix& A);

/// Coherences of the row tail beyond N (mu_rows) and the column tail beyond
/// N (mu_cols), each scanned over a finite probe window: rows N+1..N+depth
/// against columns 1..N+depth and vice versa.  Lower bounds on the true
/// sups.  depth <= 0 means the default 4N window.
struct TailCoherence {
    double mu_rows = 0.0;
    double mu_cols = 0.0;
};
TailCoherence tail_coherence(const FunctionSystem& sampling,
                             const FunctionSystem& reconstruction, long N,
                             long probe_depth = 0);

/// (k,l)-th local coherence: sqrt( mu(row block k x col block l) *
/// mu(row block k x all columns of A) ).  Pass l = 0 for the column-tail
/// variant (columns beyond the last M level, up to A's column count).
double local_coherence(const SectionMatrix& A, const std::vector<long>& row_levels,
                       const std::vector<long>& col_levels, int k, int l);

/// Effective sparsity per level: smallest head count whose l2 mass reaches
/// eps times the level's l2 norm, under per-level magnitude sorting.
std::vector<long> effective_sparsity(const Eigen::VectorXcd& beta,
                                     const std::vector<long>& col_levels, double eps);

/// Best (s,M)-term approximation error in l1: what remains after keeping
/// the s[k] largest magnitudes inside each level.
double sigma_sM(const Eigen::VectorXcd& beta, const SparsityLevels& sp);

/// Relative sparsity S_k = max ||P(row level k) A eta||^2 over eta unit-
/// modulus on any support with exactly s_l entries per column level.
enum class SparsityMode { Exact, Bound };
double relative_sparsity(const SectionMatrix& A, const std::vector<long>& row_levels,
                         const SparsityLevels& sp, int k, SparsityMode mode);

/// Exhaustive reference: all supports x all +-1 sign patterns (real
/// sections, tiny widths only).
double relative_sparsity_bruteforce(const SectionMatrix& A,
                                    const std::vector<long>& row_levels,
                                    const SparsityLevels& sp, int k);

struct BalancingReport {
    double lhs_weak = 0.0;    // || P_M A* P_N A P_M - P_M ||_{inf -> inf}
    double rhs_weak = 0.0;    // 1/8 (log2^{1/2}(4 sqrt(s) K M))^{-1}
    double lhs_strong = 0.0;  // || P_M^perp A* P_N A P_M ||_{inf -> inf}, windowed
    bool holds_weak = false;
    bool holds_strong = false;  // lhs_strong <= 1/8 as well as weak
};

/// Balancing property of the pair (N, K) with respect to A, M, s.  The
/// P_M^perp tail is truncated at 4M rows beyond M (a lower bound on the
/// true norm).
BalancingReport balancing_check(const FunctionSystem& sampling,
                                const FunctionSystem& reconstruction, long N,
                                double K, long M, long s);

enum class CsStatus { Converged, IterationCap, Infeasible };

struct CsResult {
    Eigen::VectorXcd coeffs;
    CsStatus status = CsStatus::Converged;
    double objective = 0.0;        // l1 norm of coeffs
    double feasibility_gap = 0.0;  // || B coeffs - y ||_2
    double duality_gap = 0.0;      // certified optimality gap at exit
    int iterations = 0;
    long K = 0;  // columns used
};

/// min || eta ||_1 subject to || B eta - y ||_2 <= delta, by Chambolle-Pock
/// primal-dual iteration with steps tau = sigma = 1/||B||_2, iteration cap
/// 50000, stopping once the residual is within delta + 1e-8 (1 + ||y||) and
/// the duality-gap certificate gap <= 1e-6 (1 + ||eta||_1) holds.
/// Infeasibility (delta below the minimal residual of any point) is
/// detected via the least-squares residual.
CsResult l1_solve(const Eigen::MatrixXcd& B, const Eigen::VectorXcd& y, double delta);

/// Rows of the cross-Gramian selected by the realized index set, columns
/// 1..K: the matrix P_Omega A P_K fed to l1_solve.
Eigen::MatrixXcd subsampled_matrix(const FunctionSystem& sampling,
                                   const FunctionSystem& reconstruction,
                                   const std::vector<long>& omega, long K);

/// Doubles K from base_K until the l1 objective changes by < 1e-6 between
/// consecutive solves; errors past 2^16 columns.
struct TruncationResult {
    long K = 0;
    CsResult result;
};
TruncationResult choose_truncation(const FunctionSystem& sampling,
                                   const FunctionSystem& reconstruction,
                                   const std::vector<long>& omega,
                                   const Eigen::VectorXcd& y, double delta,
                                   long base_K);

/// Reverse entries 1..bandwidth; the rest are unchanged.
Eigen::VectorXcd flip_coefficients(const Eigen::VectorXcd& beta, long bandwidth);

/// Sample-count conditions of the multilevel recovery guarantee, evaluated
/// with the proportionality constants set to 1.
struct TheoremConditions {
    Eigen::MatrixXd mu;              // local coherences, r x r
    std::vector<double> required_m;  // per-level lower bounds from the first family
    std::vector<bool> level_ok;
    bool mhat_ok = false;  // second condition family (worst case over s-tilde)
    bool satisfied = false;
};

TheoremConditions theorem_conditions(const SectionMatrix& A,
                                     const MultilevelScheme& scheme,
                                     const SparsityLevels& sp,
                                     const std::vector<double>& S_values,
                                     double epsilon);

}  // namespace sgs

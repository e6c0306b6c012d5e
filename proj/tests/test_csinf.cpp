#include <cmath>
#include <complex>
#include <numbers>
#include <set>

#include "doctest.h"
#include "sgs/csinf.hpp"

using namespace sgs;
using std::numbers::pi;
using cd = std::complex<double>;

namespace {

SectionMatrix manual_section(const Eigen::MatrixXcd& entries) {
    SectionMatrix A;
    A.entries = entries;
    A.rows = {1, entries.rows()};
    A.cols = {1, entries.cols()};
    A.sampling = FunctionSystem::fourier();
    A.reconstruction = FunctionSystem::fourier();
    return A;
}

Eigen::MatrixXcd dft_matrix(long n) {
    Eigen::MatrixXcd F(n, n);
    for (long a = 0; a < n; ++a)
        for (long b = 0; b < n; ++b)
            F(a, b) = std::polar(1.0 / std::sqrt(double(n)), 2.0 * pi * a * b / n);
    return F;
}

}  // namespace

TEST_CASE("coherence of a unitary dft section is one over its size") {
    for (long n : {4L, 8L, 16L}) {
        const SectionMatrix A = manual_section(dft_matrix(n));
        CHECK(coherence(A) == doctest::Approx(1.0 / n).epsilon(1e-12));
    }
}

TEST_CASE("fourier-haar sections have a flat head entry") {
    const auto four = FunctionSystem::fourier();
    const auto haar = FunctionSystem::haar();
    // The constant element pairs with the zero frequency at unit weight, so
    // the global coherence of any head section is exactly one.
    const SectionMatrix A = assemble_section(four, {1, 64}, haar, {1, 64});
    CHECK(coherence(A) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("tail coherence of a basis against itself is one") {
    const auto four = FunctionSystem::fourier();
    const TailCoherence tc = tail_coherence(four, four, 8, 16);
    CHECK(tc.mu_rows == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(tc.mu_cols == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("fourier-haar tail coherence decays like one over the bandwidth") {
    const auto four = FunctionSystem::fourier();
    const auto haar = FunctionSystem::haar();
    for (long N : {16L, 32L, 64L}) {
        const TailCoherence tc = tail_coherence(four, haar, N);
        CHECK(N * tc.mu_rows > 0.05);
        CHECK(N * tc.mu_rows < 8.0);
        CHECK(N * tc.mu_cols > 0.05);
        CHECK(N * tc.mu_cols < 8.0);
    }
}

TEST_CASE("fourier-legendre tail coherence decays more slowly") {
    const auto four = FunctionSystem::fourier();
    const auto leg = FunctionSystem::legendre();
    const double m16 = tail_coherence(four, leg, 16).mu_rows;
    const double m32 = tail_coherence(four, leg, 32).mu_rows;
    CHECK(m32 < m16);
    // Between the 1/N of a wavelet pair and no decay at all.
    CHECK(m32 / m16 > 0.5);
    CHECK(m32 / m16 < 1.0);
}

TEST_CASE("local coherence separates the blocks of a block-diagonal section") {
    Eigen::MatrixXcd E = Eigen::MatrixXcd::Zero(4, 4);
    E.block(0, 0, 2, 2) << 0.5, 0.1, 0.1, 0.5;
    E.block(2, 2, 2, 2) << 0.2, 0.0, 0.0, 0.2;
    const SectionMatrix A = manual_section(E);
    const std::vector<long> lv{2, 4};
    CHECK(local_coherence(A, lv, lv, 1, 1) == doctest::Approx(0.25).epsilon(1e-12));
    CHECK(local_coherence(A, lv, lv, 1, 2) == doctest::Approx(0.0));
    CHECK(local_coherence(A, lv, lv, 2, 2) == doctest::Approx(0.04).epsilon(1e-12));
    CHECK(local_coherence(A, lv, lv, 2, 1) == doctest::Approx(0.0));
}

TEST_CASE("effective sparsity counts the heads that carry the level energy") {
    Eigen::VectorXcd beta(8);
    beta << 1.0, 0.1, 0.0, 0.0, 1.0, 1.0, 0.01, 0.0;
    const std::vector<long> lv{4, 8};
    const auto s = effective_sparsity(beta, lv, 0.99);
    REQUIRE(s.size() == 2);
    CHECK(s[0] == 1);
    CHECK(s[1] == 2);
    const auto all = effective_sparsity(beta, lv, 1.0);
    CHECK(all[0] == 2);
    CHECK(all[1] == 3);
}

TEST_CASE("best s,M-term approximation error in l1") {
    Eigen::VectorXcd beta(8);
    beta << 1.0, 0.1, 0.0, 0.0, 1.0, 1.0, 0.01, 0.0;
    SparsityLevels sp;
    sp.levels = {4, 8};
    sp.s = {1, 1};
    CHECK(sigma_sM(beta, sp) == doctest::Approx(0.1 + 1.0 + 0.01).epsilon(1e-12));
    sp.s = {2, 3};
    CHECK(sigma_sM(beta, sp) == doctest::Approx(0.0));
}

TEST_CASE("relative sparsity of a block-diagonal unitary section is the level sparsity") {
    Eigen::MatrixXcd E = Eigen::MatrixXcd::Zero(8, 8);
    E.block(0, 0, 4, 4) = dft_matrix(4) * 2.0;  // unimodular entries
    E.block(4, 4, 4, 4) = dft_matrix(4) * 2.0;
    E /= 2.0;
    const SectionMatrix A = manual_section(E);
    const std::vector<long> lv{4, 8};
    SparsityLevels sp;
    sp.levels = {4, 8};
    sp.s = {2, 1};
    CHECK(relative_sparsity(A, lv, sp, 1, SparsityMode::Exact) ==
          doctest::Approx(2.0).epsilon(1e-9));
    CHECK(relative_sparsity(A, lv, sp, 2, SparsityMode::Exact) ==
          doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("exact relative sparsity matches brute force on small real sections") {
    Eigen::MatrixXcd E(4, 6);
    E << 0.3, -0.1, 0.2, 0.0, 0.5, -0.2,
         0.1, 0.4, -0.3, 0.2, 0.0, 0.1,
         -0.2, 0.2, 0.1, 0.3, -0.1, 0.4,
         0.0, -0.3, 0.4, 0.1, 0.2, 0.0;
    const SectionMatrix A = manual_section(E);
    const std::vector<long> row_lv{2, 4};
    SparsityLevels sp;
    sp.levels = {3, 6};
    sp.s = {1, 2};
    for (int k : {1, 2}) {
        const double exact = relative_sparsity(A, row_lv, sp, k, SparsityMode::Exact);
        const double brute = relative_sparsity_bruteforce(A, row_lv, sp, k);
        CHECK(exact == doctest::Approx(brute).epsilon(1e-9));
        CHECK(relative_sparsity(A, row_lv, sp, k, SparsityMode::Bound) >=
              exact - 1e-12);
        CHECK(relative_sparsity(A, row_lv, sp, k, SparsityMode::Bound) <=
              double(sp.total_s()) + 1e-12);
    }
}

TEST_CASE("row permutations shuffle the relative sparsities") {
    // Two levels of width 2; the section swaps them, so S_1 of the swapped
    // section equals s_2 and vice versa.
    Eigen::MatrixXcd E = Eigen::MatrixXcd::Zero(4, 4);
    E.block(0, 2, 2, 2) = Eigen::MatrixXcd::Identity(2, 2);
    E.block(2, 0, 2, 2) = Eigen::MatrixXcd::Identity(2, 2);
    const SectionMatrix A = manual_section(E);
    const std::vector<long> lv{2, 4};
    SparsityLevels sp;
    sp.levels = {2, 4};
    sp.s = {2, 1};
    CHECK(relative_sparsity(A, lv, sp, 1, SparsityMode::Exact) ==
          doctest::Approx(1.0).epsilon(1e-9));
    CHECK(relative_sparsity(A, lv, sp, 2, SparsityMode::Exact) ==
          doctest::Approx(2.0).epsilon(1e-9));
}

TEST_CASE("balancing holds for square dyadic fourier-haar pairs and reports consistently") {
    const auto four = FunctionSystem::fourier();
    const auto haar = FunctionSystem::haar();
    const BalancingReport r16 = balancing_check(four, haar, 16, 1.0, 16, 4);
    CHECK(r16.holds_weak == (r16.lhs_weak <= r16.rhs_weak));
    const BalancingReport r256 = balancing_check(four, haar, 256, 1.0, 16, 4);
    CHECK(r256.lhs_weak < r16.lhs_weak + 1e-12);
    CHECK(r256.holds_weak);
    CHECK(r256.holds_strong);
    CHECK(r256.lhs_strong <= 0.125);
}

TEST_CASE("scheme draws are deterministic, sorted, and level-respecting") {
    const std::vector<long> levels{8, 32, 64};
    const std::vector<long> m{4, 10, 16};
    const MultilevelScheme a = draw_scheme(levels, m, 123);
    const MultilevelScheme b = draw_scheme(levels, m, 123);
    const MultilevelScheme c = draw_scheme(levels, m, 124);
    CHECK(a.omega == b.omega);
    CHECK(a.omega != c.omega);
    CHECK(a.total_m() == 30);
    REQUIRE(a.omega.size() == 30);
    CHECK(std::is_sorted(a.omega.begin(), a.omega.end()));
    CHECK(std::set<long>(a.omega.begin(), a.omega.end()).size() == 30);
    long lo = 0;
    std::size_t pos = 0;
    for (std::size_t k = 0; k < levels.size(); ++k) {
        for (long i = 0; i < m[k]; ++i, ++pos) {
            CHECK(a.omega[pos] > lo);
            CHECK(a.omega[pos] <= levels[k]);
        }
        lo = levels[k];
    }
}

TEST_CASE("full sampling draws every index") {
    const MultilevelScheme full = draw_scheme({4, 8}, {4, 4}, 9);
    REQUIRE(full.omega.size() == 8);
    for (long i = 0; i < 8; ++i) CHECK(full.omega[i] == i + 1);
}

TEST_CASE("l1 solver handles the identity problem") {
    const Eigen::MatrixXcd I = Eigen::MatrixXcd::Identity(8, 8);
    Eigen::VectorXcd y = Eigen::VectorXcd::Zero(8);
    y[0] = 1.0;
    const CsResult exact = l1_solve(I, y, 0.0);
    CHECK(exact.status == CsStatus::Converged);
    CHECK(std::abs(exact.coeffs[0] - cd(1.0, 0.0)) < 1e-6);
    CHECK(exact.objective == doctest::Approx(1.0).epsilon(1e-5));

    const CsResult slack = l1_solve(I, y, 0.5);
    CHECK(slack.status == CsStatus::Converged);
    CHECK(slack.objective == doctest::Approx(0.5).epsilon(1e-4));
    CHECK(slack.feasibility_gap <= 0.5 + 1e-9);
}

TEST_CASE("l1 solver reports infeasible targets") {
    Eigen::MatrixXcd B = Eigen::MatrixXcd::Zero(2, 2);
    B(0, 0) = 1.0;
    Eigen::VectorXcd y(2);
    y << 0.0, 1.0;
    CHECK(l1_solve(B, y, 0.5).status == CsStatus::Infeasible);
    CHECK(l1_solve(B, y, 1.5).status != CsStatus::Infeasible);
}

TEST_CASE("subsampled fourier rows recover a sparse haar expansion") {
    const auto four = FunctionSystem::fourier();
    const auto haar = FunctionSystem::haar();
    const MultilevelScheme scheme = draw_scheme({16, 64}, {16, 20}, 7);
    Eigen::VectorXcd beta = Eigen::VectorXcd::Zero(64);
    beta[1] = 1.0;
    beta[4] = -0.7;
    beta[10] = cd(0.0, 0.4);
    const Eigen::MatrixXcd B = subsampled_matrix(four, haar, scheme.omega, 64);
    REQUIRE(B.rows() == 36);
    const Eigen::VectorXcd y = B * beta;
    const CsResult r = l1_solve(B, y, 0.0);
    CHECK(r.status == CsStatus::Converged);
    CHECK((r.coeffs - beta).cwiseAbs().maxCoeff() < 1e-3);
}

TEST_CASE("truncation search stabilizes the objective") {
    const auto four = FunctionSystem::fourier();
    const auto haar = FunctionSystem::haar();
    const MultilevelScheme full = draw_scheme({32}, {32}, 1);
    Eigen::VectorXcd beta = Eigen::VectorXcd::Zero(8);
    beta[2] = 1.0;
    beta[5] = 0.5;
    const Eigen::MatrixXcd A8 = subsampled_matrix(four, haar, full.omega, 8);
    const Eigen::VectorXcd y = A8 * beta;
    const TruncationResult t = choose_truncation(four, haar, full.omega, y, 1e-8, 8);
    CHECK(t.K >= 8);
    CHECK(t.result.status == CsStatus::Converged);
    CHECK(t.result.objective == doctest::Approx(1.5).epsilon(1e-3));
}

TEST_CASE("coefficient flip reverses the band and is an involution") {
    Eigen::VectorXcd beta(6);
    beta << 1.0, 2.0, 3.0, 4.0, 5.0, 6.0;
    const Eigen::VectorXcd f = flip_coefficients(beta, 4);
    CHECK(f[0] == cd(4.0, 0.0));
    CHECK(f[3] == cd(1.0, 0.0));
    CHECK(f[4] == cd(5.0, 0.0));
    CHECK((flip_coefficients(f, 4) - beta).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("theorem conditions pass under full sampling and fail when starved") {
    const auto four = FunctionSystem::fourier();
    const auto haar = FunctionSystem::haar();
    const SectionMatrix A = assemble_section(four, {1, 32}, haar, {1, 32});
    SparsityLevels sp;
    sp.levels = {8, 32};
    sp.s = {2, 1};
    const std::vector<double> S{2.0, 1.0};

    const MultilevelScheme full = draw_scheme({8, 32}, {8, 24}, 3);
    const TheoremConditions good = theorem_conditions(A, full, sp, S, 0.5);
    CHECK(good.mhat_ok);
    CHECK(good.satisfied);
    for (bool ok : good.level_ok) CHECK(ok);

    const MultilevelScheme starved = draw_scheme({8, 32}, {1, 1}, 3);
    const TheoremConditions bad = theorem_conditions(A, starved, sp, S, 0.5);
    CHECK(!bad.satisfied);
    for (double m : bad.required_m) CHECK(m > 0.0);
}

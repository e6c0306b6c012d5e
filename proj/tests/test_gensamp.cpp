#include <cmath>

#include "doctest.h"
#include "sgs/gensamp.hpp"

using namespace sgs;

namespace {

// Fourier samples <f, phi_i> of a function given by coefficients in the
// reconstruction system: b = A beta_true.
Eigen::VectorXcd forward_samples(const SectionMatrix& A, const Eigen::VectorXcd& beta) {
    return matvec(A, beta);
}

}  // namespace

TEST_CASE("gs recovers functions lying in the reconstruction space") {
    const auto four = FunctionSystem::fourier();
    const auto haar = FunctionSystem::haar();
    const SectionMatrix A = assemble_section(four, {1, 32}, haar, {1, 8});
    Eigen::VectorXcd beta = Eigen::VectorXcd::Zero(8);
    beta << 1.0, -0.5, 0.25, 0.0, 2.0, -1.0, 0.1, 0.7;
    const GsResult r = gs_reconstruct(A, forward_samples(A, beta));
    CHECK((r.coeffs - beta).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(r.residual_norm < 1e-9);
}

TEST_CASE("cg least squares matches a dense qr solve") {
    const auto four = FunctionSystem::fourier();
    const auto leg = FunctionSystem::legendre();
    const SectionMatrix A = assemble_section(four, {1, 24}, leg, {1, 6});
    Eigen::VectorXcd b = Eigen::VectorXcd::Random(24);
    const GsResult r = gs_reconstruct(A, b);
    const Eigen::VectorXcd qr = A.entries.colPivHouseholderQr().solve(b);
    CHECK((r.coeffs - qr).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("gs with the fast dyadic path matches the dense solve") {
    const long n = 64;
    const auto four = FunctionSystem::fourier();
    const auto haar = FunctionSystem::haar();
    const SectionMatrix A = assemble_section(four, {1, n}, haar, {1, n});
    REQUIRE(has_fast_path(A));
    Eigen::VectorXcd b = Eigen::VectorXcd::Random(n);
    const GsResult r = gs_reconstruct(A, b);
    const Eigen::VectorXcd qr = A.entries.colPivHouseholderQr().solve(b);
    CHECK((r.coeffs - qr).cwiseAbs().maxCoeff() < 1e-8);
}

TEST_CASE("d_nm is nonincreasing in the row count and tends to one") {
    const auto four = FunctionSystem::fourier();
    const auto haar = FunctionSystem::haar();
    const long M = 8;
    double prev = std::numeric_limits<double>::infinity();
    for (long N : {8L, 16L, 32L, 64L, 128L}) {
        const double d = d_nm(four, N, haar, M);
        CHECK(d <= prev * (1.0 + 1e-12));
        CHECK(d >= 1.0 - 1e-12);  // orthonormal systems: sigma_min <= 1
        prev = d;
    }
    CHECK(prev < 1.1);  // large N: section is nearly an isometry
}

TEST_CASE("stable sampling rate is the least row count meeting the bound") {
    const auto four = FunctionSystem::fourier();
    const auto haar = FunctionSystem::haar();
    for (long M : {4L, 8L, 16L}) {
        SsrQuery q;
        q.M = M;
        q.theta = 2.0;
        const long N = stable_sampling_rate(four, haar, q);
        CHECK(d_nm(four, N, haar, M) <= q.theta);
        if (N > M) CHECK(d_nm(four, N - 1, haar, M) > q.theta);
        CHECK(N >= M);
    }
}

TEST_CASE("stable sampling rate throws when the cap is exhausted") {
    const auto four = FunctionSystem::fourier();
    const auto haar = FunctionSystem::haar();
    SsrQuery q;
    q.M = 16;
    q.theta = 1.0 + 1e-12;  // unreachably tight
    q.n_max = 64;
    CHECK_THROWS(stable_sampling_rate(four, haar, q));
}

TEST_CASE("consistent reconstruction solves the square section exactly") {
    const auto four = FunctionSystem::fourier();
    const auto haar = FunctionSystem::haar();
    const SectionMatrix A = assemble_section(four, {1, 8}, haar, {1, 8});
    Eigen::VectorXcd b = Eigen::VectorXcd::Random(8);
    const GsResult r = consistent_reconstruct(A, b);
    CHECK((A.entries * r.coeffs - b).cwiseAbs().maxCoeff() < 1e-10);
    CHECK(r.iterations == 0);
}

TEST_CASE("sec_angle equals the reciprocal least singular value") {
    const auto four = FunctionSystem::fourier();
    const auto leg = FunctionSystem::legendre();
    const SectionMatrix A = assemble_section(four, {1, 20}, leg, {1, 5});
    CHECK(sec_angle(A) == doctest::Approx(1.0 / min_singular_value(A)).epsilon(1e-12));
    CHECK(sec_angle(A) >= 1.0 - 1e-12);
}

TEST_CASE("gs result reports the stability constant of its section") {
    const auto four = FunctionSystem::fourier();
    const auto haar = FunctionSystem::haar();
    const SectionMatrix A = assemble_section(four, {1, 32}, haar, {1, 8});
    const GsResult r = gs_reconstruct(A, Eigen::VectorXcd::Random(32));
    CHECK(r.d_nm == doctest::Approx(1.0 / min_singular_value(A)).epsilon(1e-10));
}

#include <cmath>
#include <cstdio>

#include "doctest.h"
#include "sgs/crossgram.hpp"
#include "sgs/transforms.hpp"

using namespace sgs;

TEST_CASE("closed-form fourier-haar entries agree with quadrature") {
    const auto four = FunctionSystem::fourier();
    const auto haar = FunctionSystem::haar();
    for (long i : {1L, 2L, 3L, 7L, 12L, 25L}) {
        for (long j : {1L, 2L, 3L, 5L, 9L, 16L}) {
            const auto closed = gram_entry(four, i, haar, j);
            const auto quad = gram_entry_quadrature(four, i, haar, j);
            CHECK(std::abs(closed - quad) < 1e-10);
        }
    }
}

TEST_CASE("closed-form fourier-legendre entries agree with quadrature") {
    const auto four = FunctionSystem::fourier();
    const auto leg = FunctionSystem::legendre();
    for (long i : {1L, 2L, 3L, 8L, 15L, 24L}) {
        for (long j : {1L, 2L, 3L, 6L, 10L}) {
            const auto closed = gram_entry(four, i, leg, j);
            const auto quad = gram_entry_quadrature(four, i, leg, j);
            CHECK(std::abs(closed - quad) < 1e-10);
        }
    }
}

TEST_CASE("closed forms are domain independent in normalized coordinates") {
    const Interval dom{-1.5, 2.5};
    const auto four = FunctionSystem::fourier(dom);
    const auto haar = FunctionSystem::haar(dom);
    const auto leg = FunctionSystem::legendre(dom);
    CHECK(std::abs(gram_entry(four, 5, haar, 4) -
                   gram_entry_quadrature(four, 5, haar, 4)) < 1e-10);
    CHECK(std::abs(gram_entry(four, 5, leg, 4) -
                   gram_entry_quadrature(four, 5, leg, 4)) < 1e-10);
}

TEST_CASE("batched rows match per-entry evaluation") {
    const auto four = FunctionSystem::fourier();
    const auto leg = FunctionSystem::legendre();
    for (long i : {1L, 2L, 9L, 40L}) {
        const Eigen::VectorXcd row = gram_row(four, i, leg, {1, 30});
        for (long j = 1; j <= 30; ++j)
            CHECK(std::abs(row[j - 1] - gram_entry(four, i, leg, j)) < 1e-12);
    }
}

TEST_CASE("assembled fourier-fourier section is the identity") {
    const auto four = FunctionSystem::fourier();
    const SectionMatrix A = assemble_section(four, {1, 12}, four, {1, 12});
    CHECK((A.entries - Eigen::MatrixXcd::Identity(12, 12)).cwiseAbs().maxCoeff() <
          1e-12);
    CHECK(min_singular_value(A) == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("fourier-daubechies closed form with one moment reduces to haar") {
    const auto four = FunctionSystem::fourier();
    const auto haar = FunctionSystem::haar();
    const auto db1 = FunctionSystem::daubechies(1);
    for (long i : {1L, 2L, 3L, 7L, 12L, 25L})
        for (long j : {1L, 2L, 3L, 5L, 9L, 16L})
            CHECK(std::abs(gram_entry(four, i, db1, j) - gram_entry(four, i, haar, j)) <
                  1e-12);
}

TEST_CASE("fourier-daubechies closed form agrees with quadrature") {
    const auto four = FunctionSystem::fourier();
    for (int p : {2, 3}) {
        const auto db = FunctionSystem::daubechies(p);
        const SectionMatrix A = assemble_section(four, {1, 6}, db, {1, 5});
        for (long i = 1; i <= 6; ++i)
            for (long j = 1; j <= 5; ++j)
                CHECK(std::abs(A.entries(i - 1, j - 1) -
                               gram_entry_quadrature(four, i, db, j, 1024)) < 1e-7);
    }
}

TEST_CASE("fourier coefficients of daubechies elements carry unit energy") {
    const auto four = FunctionSystem::fourier();
    const auto db2 = FunctionSystem::daubechies(2);
    for (long j : {1L, 2L, 3L, 6L}) {
        double energy = 0.0;
        for (long i = 1; i <= 8193; ++i)
            energy += std::norm(gram_entry(four, i, db2, j));
        CHECK(energy > 0.995);
        CHECK(energy < 1.0 + 1e-9);
    }
}

TEST_CASE("matvec and its adjoint satisfy the inner-product identity") {
    const auto four = FunctionSystem::fourier();
    const auto haar = FunctionSystem::haar();
    const SectionMatrix A = assemble_section(four, {1, 16}, haar, {1, 8});
    Eigen::VectorXcd x = Eigen::VectorXcd::Random(8), y = Eigen::VectorXcd::Random(16);
    const auto lhs = y.dot(matvec(A, x));
    const auto rhs = matvec(A, y, true).dot(x);
    CHECK(std::abs(lhs - rhs) < 1e-12);
}

TEST_CASE("fast fourier-haar product agrees with the dense section") {
    const long n = 64;
    const auto four = FunctionSystem::fourier();
    const auto haar = FunctionSystem::haar();
    const SectionMatrix A = assemble_section(four, {1, n}, haar, {1, n});
    REQUIRE(has_fast_path(A));
    Eigen::VectorXcd x = Eigen::VectorXcd::Random(n), y = Eigen::VectorXcd::Random(n);
    CHECK((matvec_fast(A, x) - matvec(A, x)).cwiseAbs().maxCoeff() < 1e-10);
    CHECK((matvec_fast(A, y, true) - matvec(A, y, true)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("fast path preconditions") {
    const auto four = FunctionSystem::fourier();
    const auto haar = FunctionSystem::haar();
    CHECK(!has_fast_path(assemble_section(four, {1, 12}, haar, {1, 12})));
    CHECK(!has_fast_path(assemble_section(four, {1, 16}, haar, {1, 8})));
    CHECK(!has_fast_path(assemble_section(haar, {1, 16}, four, {1, 16})));
}

TEST_CASE("binary section files round-trip") {
    const auto four = FunctionSystem::fourier();
    const auto leg = FunctionSystem::legendre();
    const SectionMatrix A = assemble_section(four, {3, 9}, leg, {2, 6});
    const std::string path = "roundtrip.sgrm";
    save_section(A, path);
    const SectionMatrix B = load_section(path);
    std::remove(path.c_str());
    CHECK(B.rows.lo == 3);
    CHECK(B.rows.hi == 9);
    CHECK(B.cols.lo == 2);
    CHECK(B.cols.hi == 6);
    // float32 storage: relative accuracy ~1e-7
    CHECK((A.entries - B.entries).cwiseAbs().maxCoeff() < 1e-6);
}

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "mubcert/linalg.hpp"
#include "mubcert/rng.hpp"
#include "test_util.hpp"

using namespace mubcert;
using Catch::Approx;

namespace {
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
}

TEST_CASE("projector of basis vector") {
    const ComplexMatrix p = projector(ComplexVector::basis_state(2, 0));
    CHECK(p(0, 0) == cxd{1.0, 0.0});
    CHECK(p(0, 1) == cxd{0.0, 0.0});
    CHECK(p(1, 0) == cxd{0.0, 0.0});
    CHECK(p(1, 1) == cxd{0.0, 0.0});
}

TEST_CASE("projector of (1, i)/sqrt(2)") {
    const ComplexMatrix p = projector(ComplexVector({cxd{kInvSqrt2, 0.0}, cxd{0.0, kInvSqrt2}}));
    CHECK(p(0, 0).real() == Approx(0.5).margin(1e-15));
    CHECK(p(0, 1).imag() == Approx(-0.5).margin(1e-15));
    CHECK(p(1, 0).imag() == Approx(0.5).margin(1e-15));
    CHECK(p(1, 1).real() == Approx(0.5).margin(1e-15));
}

TEST_CASE("projector of (1, -1)/sqrt(2)") {
    const ComplexMatrix p = projector(ComplexVector({cxd{kInvSqrt2, 0.0}, cxd{-kInvSqrt2, 0.0}}));
    CHECK(p(0, 0).real() == Approx(0.5).margin(1e-15));
    CHECK(p(0, 1).real() == Approx(-0.5).margin(1e-15));
    CHECK(p(1, 0).real() == Approx(-0.5).margin(1e-15));
    CHECK(p(1, 1).real() == Approx(0.5).margin(1e-15));
}

TEST_CASE("projector rejects non-unit input") {
    CHECK_THROWS_AS(projector(ComplexVector({cxd{1.0, 0.0}, cxd{1.0, 0.0}})), ValidationError);
}

TEST_CASE("projector is Hermitian, idempotent, trace one") {
    SplitMix64 rng(11);
    for (int trial = 0; trial < 50; ++trial) {
        const int d = 2 + static_cast<int>(rng.next() % 7);
        std::vector<cxd> e(static_cast<size_t>(d));
        for (cxd& z : e) z = cxd{rng.normal(), rng.normal()};
        const ComplexVector v = ComplexVector(std::move(e)).normalized();
        const ComplexMatrix p = projector(v);
        CHECK(p.hermiticity_defect() < 1e-12);
        CHECK((p * p).max_abs_diff(p) < 1e-12);
        CHECK(p.trace().real() == Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("trace_product examples") {
    const ComplexMatrix pz = projector(ComplexVector::basis_state(2, 0));
    const ComplexMatrix px = projector(ComplexVector({cxd{kInvSqrt2, 0.0}, cxd{kInvSqrt2, 0.0}}));
    const ComplexMatrix pz1 = projector(ComplexVector::basis_state(2, 1));
    CHECK(trace_product(pz, pz) == Approx(1.0).margin(1e-12));
    CHECK(trace_product(pz, px) == Approx(0.5).margin(1e-12));
    CHECK(trace_product(pz, pz1) == Approx(0.0).margin(1e-12));
}

TEST_CASE("trace_product rejects dimension mismatch") {
    CHECK_THROWS_AS(trace_product(ComplexMatrix::identity(2), ComplexMatrix::identity(3)), ValidationError);
}

TEST_CASE("trace_product is symmetric") {
    SplitMix64 rng(12);
    for (int trial = 0; trial < 20; ++trial) {
        const ComplexMatrix a = testutil::random_hermitian(4, rng);
        const ComplexMatrix b = testutil::random_hermitian(4, rng);
        CHECK(std::abs(trace_product(a, b) - trace_product(b, a)) < 1e-12);
    }
}

TEST_CASE("hermitian_eigenvalues on diagonal matrices") {
    CHECK(hermitian_eigenvalues(ComplexMatrix::identity(2)) == std::vector<double>{1.0, 1.0});

    ComplexMatrix a(2);
    a(0, 0) = cxd{1.0, 0.0};
    a(1, 1) = cxd{-1.0, 0.0};
    CHECK(hermitian_eigenvalues(a) == std::vector<double>{1.0, -1.0});

    ComplexMatrix b(2);
    b(0, 0) = cxd{0.8, 0.0};
    b(1, 1) = cxd{0.2, 0.0};
    const std::vector<double> eigs = hermitian_eigenvalues(b);
    CHECK(eigs[0] == Approx(0.8).margin(1e-12));
    CHECK(eigs[1] == Approx(0.2).margin(1e-12));
}

TEST_CASE("hermitian_eigenvalues rejects non-Hermitian input") {
    ComplexMatrix a(2);
    a(0, 1) = cxd{1.0, 0.0};  // a(1,0) stays 0
    CHECK_THROWS_AS(hermitian_eigenvalues(a), ValidationError);
}

TEST_CASE("eigenvalue sum equals trace") {
    SplitMix64 rng(13);
    for (int trial = 0; trial < 30; ++trial) {
        const int d = 2 + static_cast<int>(rng.next() % 9);
        const ComplexMatrix a = testutil::random_hermitian(d, rng);
        const std::vector<double> eigs = hermitian_eigenvalues(a);
        double sum = 0.0;
        for (double e : eigs) sum += e;
        CHECK(sum == Approx(a.trace().real()).margin(1e-10));
        for (size_t i = 1; i < eigs.size(); ++i) CHECK(eigs[i] <= eigs[i - 1]);
    }
}

TEST_CASE("spectral reconstruction reproduces the matrix") {
    SplitMix64 rng(14);
    for (int trial = 0; trial < 20; ++trial) {
        const int d = 2 + static_cast<int>(rng.next() % 9);
        const ComplexMatrix a = testutil::random_hermitian(d, rng);
        const EigenSystem es = hermitian_eigensystem(a);
        ComplexMatrix rebuilt(d);
        for (int k = 0; k < d; ++k)
            for (int i = 0; i < d; ++i)
                for (int j = 0; j < d; ++j)
                    rebuilt(i, j) += es.values[static_cast<size_t>(k)] * es.vectors(i, k) *
                                     std::conj(es.vectors(j, k));
        CHECK(rebuilt.max_abs_diff(a) < 1e-9);
    }
}

TEST_CASE("eigensystem handles degenerate spectra") {
    // A rank-1 projector has a (d-1)-fold zero eigenvalue; the eigenvectors
    // must still come out orthonormal and the reconstruction exact.
    SplitMix64 rng(15);
    for (int d : {2, 4, 7}) {
        std::vector<cxd> e(static_cast<size_t>(d));
        for (cxd& z : e) z = cxd{rng.normal(), rng.normal()};
        const ComplexMatrix p = projector(ComplexVector(std::move(e)).normalized());
        const EigenSystem es = hermitian_eigensystem(p);
        CHECK(es.values.front() == Approx(1.0).margin(1e-10));
        for (size_t k = 1; k < es.values.size(); ++k) CHECK(std::abs(es.values[k]) < 1e-10);
        // Columns orthonormal: V^dagger V = I.
        const ComplexMatrix gram = es.vectors.adjoint() * es.vectors;
        CHECK(gram.max_abs_diff(ComplexMatrix::identity(d)) < 1e-10);
    }
}

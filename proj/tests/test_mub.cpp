#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "mubcert/mub.hpp"

using namespace mubcert;
using Catch::Approx;

namespace {

// |<a|b>| = 1 iff the vectors agree up to a global phase.
bool same_up_to_phase(const ComplexVector& a, const ComplexVector& b) {
    return std::abs(std::abs(inner(a, b)) - 1.0) < 1e-12;
}

}  // namespace

TEST_CASE("standard d=2 bases are the Pauli eigenbases") {
    const MubSet m = standard_mubs(2, 3);
    REQUIRE(m.count() == 3);
    CHECK(m.max_unbiasedness_deviation() < 1e-12);

    const double s = 1.0 / std::sqrt(2.0);
    // sigma_z eigenbasis, column by column.
    CHECK(same_up_to_phase(m.basis(0).vectors[0], ComplexVector::basis_state(2, 0)));
    CHECK(same_up_to_phase(m.basis(0).vectors[1], ComplexVector::basis_state(2, 1)));
    // sigma_x eigenbasis, column by column.
    CHECK(same_up_to_phase(m.basis(1).vectors[0], ComplexVector({cxd{s, 0}, cxd{s, 0}})));
    CHECK(same_up_to_phase(m.basis(1).vectors[1], ComplexVector({cxd{s, 0}, cxd{-s, 0}})));
    // sigma_y eigenbasis with the -1 eigenvector first (the ordering that
    // matches the d=2 closed-form table rows).
    CHECK(same_up_to_phase(m.basis(2).vectors[0], ComplexVector({cxd{s, 0}, cxd{0, -s}})));
    CHECK(same_up_to_phase(m.basis(2).vectors[1], ComplexVector({cxd{s, 0}, cxd{0, s}})));
}

TEST_CASE("standard d=3 bases match the explicit unitaries") {
    const MubSet m = standard_mubs(3, 4);
    REQUIRE(m.count() == 4);
    CHECK(m.max_unbiasedness_deviation() < 1e-12);

    const double s = 1.0 / std::sqrt(3.0);
    const cxd w = std::polar(1.0, 2.0 * std::numbers::pi / 3.0);
    const cxd w2 = w * w;
    auto col = [s](cxd a, cxd b, cxd c) { return ComplexVector({s * a, s * b, s * c}); };

    const ComplexVector expected[4][3] = {
        {ComplexVector::basis_state(3, 0), ComplexVector::basis_state(3, 1), ComplexVector::basis_state(3, 2)},
        {col(1, 1, 1), col(1, w, w2), col(1, w2, w)},
        {col(1, w, w), col(1, w2, 1), col(1, 1, w2)},
        {col(1, w2, w2), col(1, w, 1), col(1, 1, w)},
    };
    for (int n = 0; n < 4; ++n)
        for (int k = 0; k < 3; ++k) CHECK(same_up_to_phase(m.basis(n).vectors[static_cast<size_t>(k)], expected[n][k]));
}

TEST_CASE("quadratic-phase construction validates for d=5 and d=7") {
    for (int d : {5, 7}) {
        const MubSet m = standard_mubs(d, d + 1);
        CHECK(m.count() == d + 1);
        CHECK(m.max_unbiasedness_deviation() < 1e-12);
    }
}

TEST_CASE("standard_mubs rejects bad inputs") {
    CHECK_THROWS_AS(standard_mubs(4, 3), ValidationError);   // non-prime
    CHECK_THROWS_AS(standard_mubs(6, 3), ValidationError);   // non-prime
    CHECK_THROWS_AS(standard_mubs(3, 0), ValidationError);   // n out of range
    CHECK_THROWS_AS(standard_mubs(3, 5), ValidationError);   // n > d+1
}

TEST_CASE("validate_mub_set flags identical bases") {
    const MubSet m = standard_mubs(3, 1);
    std::vector<OrthonormalBasis> twice{m.basis(0), m.basis(0)};
    const MubValidationReport report = validate_mub_set(twice);
    CHECK_FALSE(report.pass());
    CHECK(report.max_unbiasedness_deviation == Approx(1.0 - 1.0 / 3.0).margin(1e-12));
    CHECK(report.worst_basis_a == 0);
    CHECK(report.worst_basis_b == 1);
}

TEST_CASE("validate_mub_set rejects mixed dimensions") {
    std::vector<OrthonormalBasis> mixed{standard_mubs(2, 1).basis(0), standard_mubs(3, 1).basis(0)};
    CHECK_THROWS_AS(validate_mub_set(mixed), ValidationError);
}

TEST_CASE("pauli trio passes with zero deviation") {
    const MubSet m = standard_mubs(2, 3);
    const MubValidationReport report = validate_mub_set(m.bases());
    CHECK(report.pass());
    CHECK(report.max_unbiasedness_deviation < 1e-15);
}

TEST_CASE("projector overlap law across all supported dimensions") {
    for (int d : {2, 3, 5}) {
        const MubSet m = standard_mubs(d, d + 1);
        const auto proj = m.projectors();
        for (int n = 0; n < m.count(); ++n)
            for (int mm = 0; mm < m.count(); ++mm)
                for (int k = 0; k < d; ++k)
                    for (int l = 0; l < d; ++l) {
                        const double expected =
                            (1.0 + (d * (k == l ? 1.0 : 0.0) - 1.0) * (n == mm ? 1.0 : 0.0)) / d;
                        CHECK(trace_product(proj[static_cast<size_t>(n)][static_cast<size_t>(k)],
                                            proj[static_cast<size_t>(mm)][static_cast<size_t>(l)]) ==
                              Approx(expected).margin(1e-10));
                    }
    }
}

TEST_CASE("each basis resolves the identity") {
    for (int d : {2, 3, 5, 7}) {
        const MubSet m = standard_mubs(d, d + 1);
        for (const auto& basis_projectors : m.projectors()) {
            ComplexMatrix sum(d);
            for (const ComplexMatrix& p : basis_projectors) sum += p;
            CHECK(sum.max_abs_diff(ComplexMatrix::identity(d)) < 1e-12);
        }
    }
}

TEST_CASE("bases_equal ignores global phases") {
    const MubSet m = standard_mubs(3, 2);
    OrthonormalBasis rotated = m.basis(1);
    for (ComplexVector& v : rotated.vectors) {
        const cxd phase = std::polar(1.0, 0.7);
        for (int i = 0; i < v.dim(); ++i) v[i] *= phase;
    }
    CHECK(bases_equal(m.basis(1), rotated));
    CHECK_FALSE(bases_equal(m.basis(0), m.basis(1)));
}

TEST_CASE("MubSet rejects more than d+1 bases") {
    const MubSet m = standard_mubs(2, 3);
    std::vector<OrthonormalBasis> four = m.bases();
    four.push_back(m.basis(0));
    CHECK_THROWS_AS(MubSet::from_bases(std::move(four)), ValidationError);
}

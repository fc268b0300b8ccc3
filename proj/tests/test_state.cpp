#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <numbers>

#include "mubcert/measure.hpp"
#include "mubcert/state.hpp"

using namespace mubcert;
using Catch::Approx;

TEST_CASE("pure_from_params_d2 at the chart corners") {
    const DensityMatrix ground = pure_from_params_d2({1.0, 2.3});
    CHECK(ground.matrix()(0, 0).real() == Approx(1.0).margin(1e-15));
    CHECK(std::abs(ground.matrix()(1, 1)) < 1e-15);

    const DensityMatrix balanced = pure_from_params_d2({0.5, 0.0});
    for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) CHECK(balanced.matrix()(i, j).real() == Approx(0.5).margin(1e-15));
}

TEST_CASE("pure_from_params_d2 near the symmetric optimum") {
    const DensityMatrix rho = pure_from_params_d2({0.788675, std::numbers::pi / 4.0});
    CHECK(rho.purity() == Approx(1.0).margin(1e-12));
    // Bloch components read off the closed-form table rows as 2 p_n1 - 1.
    const ProbabilityTable t = probs_d2_closed_form({0.788675, std::numbers::pi / 4.0});
    const double inv_sqrt3 = 1.0 / std::sqrt(3.0);
    CHECK(2.0 * t.at(0, 0) - 1.0 == Approx(inv_sqrt3).margin(1e-5));
    CHECK(2.0 * t.at(1, 0) - 1.0 == Approx(inv_sqrt3).margin(1e-5));
    CHECK(2.0 * t.at(2, 0) - 1.0 == Approx(-inv_sqrt3).margin(1e-5));
}

TEST_CASE("pure_from_params_d2 Bloch norm is 1 for any chart point") {
    SplitMix64 rng(3);
    for (int trial = 0; trial < 200; ++trial) {
        const double r = rng.uniform01();
        const double phi = rng.uniform01() * 2.0 * std::numbers::pi;
        const ProbabilityTable t = probabilities(pure_from_params_d2({r, phi}), standard_mubs(2, 3));
        double norm2 = 0.0;
        for (int n = 0; n < 3; ++n) {
            const double comp = 2.0 * t.at(n, 0) - 1.0;
            norm2 += comp * comp;
        }
        CHECK(std::sqrt(norm2) == Approx(1.0).margin(1e-12));
    }
}

TEST_CASE("pure_from_params_d3 corners and the reported near-optimal point") {
    const DensityMatrix ground = pure_from_params_d3({1.0, 0.0, 0.0, 0.0});
    CHECK(ground.matrix()(0, 0).real() == Approx(1.0).margin(1e-15));

    const DensityMatrix uniform = pure_from_params_d3({1.0 / 3.0, 1.0 / 3.0, 0.0, 0.0});
    for (int i = 0; i < 3; ++i) CHECK(uniform.matrix()(i, i).real() == Approx(1.0 / 3.0).margin(1e-14));

    const DensityMatrix near_opt = pure_from_params_d3({0.21, 0.395, 5.236, 5.236});
    CHECK(near_opt.purity() == Approx(1.0).margin(1e-12));
}

TEST_CASE("parameter invariants are enforced") {
    CHECK_THROWS_AS(pure_from_params_d2({1.2, 0.0}), ValidationError);
    CHECK_THROWS_AS(pure_from_params_d3({0.7, 0.5, 0.0, 0.0}), ValidationError);
}

TEST_CASE("random_pure is Haar-like, pure, and deterministic") {
    const DensityMatrix a = random_pure(3, 99);
    const DensityMatrix b = random_pure(3, 99);
    CHECK(a.purity() == Approx(1.0).margin(1e-12));
    CHECK(a.matrix().max_abs_diff(b.matrix()) == 0.0);  // bit-identical

    const DensityMatrix c = random_pure(3, 100);
    CHECK(c.matrix().max_abs_diff(a.matrix()) > 1e-3);

    // First-moment check: <0|rho|0> averages to 1/d over seeds.
    double mean = 0.0;
    const int n_seeds = 1000;
    for (int seed = 1; seed <= n_seeds; ++seed) mean += random_pure(3, static_cast<std::uint64_t>(seed)).matrix()(0, 0).real();
    mean /= n_seeds;
    CHECK(mean == Approx(1.0 / 3.0).margin(0.02));
}

TEST_CASE("mub_diagonal_mixture basics") {
    const MubSet m = standard_mubs(3, 4);
    const DensityMatrix maximally_mixed = mub_diagonal_mixture(m, MixtureWeights::uniform(4, 3));
    CHECK(maximally_mixed.matrix().max_abs_diff(ComplexMatrix::identity(3).scaled(cxd{1.0 / 3.0, 0.0})) < 1e-14);

    std::vector<double> one_hot(12, 0.0);
    one_hot[0] = 1.0;
    const DensityMatrix proj = mub_diagonal_mixture(m, MixtureWeights(4, 3, std::move(one_hot)));
    CHECK(proj.matrix().max_abs_diff(projector(m.basis(0).vectors[0])) < 1e-14);
}

TEST_CASE("mub_diagonal_mixture purity example") {
    const MubSet zx = standard_mubs(2, 2);
    const DensityMatrix rho = mub_diagonal_mixture(zx, MixtureWeights(2, 2, {0.5, 0.0, 0.5, 0.0}));
    CHECK(rho.purity() == Approx(0.75).margin(1e-12));
}

TEST_CASE("mixture weight validation") {
    const MubSet m = standard_mubs(2, 2);
    CHECK_THROWS_AS(MixtureWeights(2, 2, {0.5, 0.5, 0.5, -0.5}), ValidationError);   // negative
    CHECK_THROWS_AS(MixtureWeights(2, 2, {0.5, 0.5, 0.5, 0.5}), ValidationError);    // sum != 1
    CHECK_THROWS_AS(mub_diagonal_mixture(m, MixtureWeights::uniform(3, 2)), ValidationError);  // shape
}

TEST_CASE("signed weights construct only when the state stays positive") {
    const MubSet zx = standard_mubs(2, 2);
    // Mild tilt: still positive semidefinite.
    const MixtureWeights mild(2, 2, {0.55, -0.05, 0.3, 0.2}, /*allow_signed=*/true);
    CHECK_NOTHROW(mub_diagonal_mixture(zx, mild));
    // Heavy tilt: eigenvalue goes negative and construction must fail.
    const MixtureWeights heavy(2, 2, {1.4, -0.8, 0.2, 0.2}, /*allow_signed=*/true);
    CHECK_THROWS_AS(mub_diagonal_mixture(zx, heavy), ValidationError);
}

TEST_CASE("coherent_mixture limits") {
    const MubSet zx = standard_mubs(2, 2);
    const ComplexVector y_state({cxd{1.0 / std::sqrt(2.0), 0.0}, cxd{0.0, 1.0 / std::sqrt(2.0)}});

    const DensityMatrix pure_limit =
        coherent_mixture(CoherentMixtureSpec(MixtureWeights::uniform(2, 2), 1.0, y_state), zx);
    CHECK(pure_limit.matrix().max_abs_diff(projector(y_state)) < 1e-14);
    const ProbabilityTable t = probabilities(pure_limit, zx);
    for (double p : t.flat()) CHECK(p == Approx(0.5).margin(1e-12));

    SplitMix64 rng(5);
    const MixtureWeights w = MixtureWeights::random_simplex(2, 2, rng);
    const DensityMatrix no_coherent = coherent_mixture(CoherentMixtureSpec(w, 0.0, y_state), zx);
    CHECK(no_coherent.matrix().max_abs_diff(mub_diagonal_mixture(zx, w).matrix()) < 1e-14);
}

TEST_CASE("coherent_mixture rejects dimension mismatch") {
    const MubSet m3 = standard_mubs(3, 2);
    const ComplexVector psi_d2({cxd{1.0, 0.0}, cxd{0.0, 0.0}});
    CHECK_THROWS_AS(coherent_mixture(CoherentMixtureSpec(MixtureWeights::uniform(2, 2), 0.5, psi_d2), m3),
                    ValidationError);
}

TEST_CASE("bloch_density basics") {
    CHECK(bloch_density({0, 0, 0}).matrix().max_abs_diff(ComplexMatrix::identity(2).scaled(cxd{0.5, 0.0})) <
          1e-15);
    CHECK(bloch_density({0, 0, 1}).matrix().max_abs_diff(projector(ComplexVector::basis_state(2, 0))) < 1e-15);
    CHECK(bloch_density({0.6, 0.0, 0.0}).purity() == Approx(0.68).margin(1e-12));
    CHECK_THROWS_AS(bloch_density({0.8, 0.8, 0.8}), ValidationError);
}

TEST_CASE("bloch purity identity on random vectors") {
    SplitMix64 rng(7);
    for (int trial = 0; trial < 100; ++trial) {
        BlochVector b{rng.normal(), rng.normal(), rng.normal()};
        const double scale = rng.uniform01() / std::max(b.norm(), 1e-9);
        b.x *= scale;
        b.y *= scale;
        b.z *= scale;
        CHECK(bloch_density(b).purity() == Approx((1.0 + b.norm() * b.norm()) / 2.0).margin(1e-12));
    }
}

TEST_CASE("purity examples") {
    CHECK(purity(random_pure(4, 1)) == Approx(1.0).margin(1e-12));
    CHECK(purity(mub_diagonal_mixture(standard_mubs(5, 6), MixtureWeights::uniform(6, 5))) ==
          Approx(0.2).margin(1e-12));
    ComplexMatrix diag(2);
    diag(0, 0) = cxd{0.8, 0.0};
    diag(1, 1) = cxd{0.2, 0.0};
    CHECK(purity(DensityMatrix(std::move(diag))) == Approx(0.68).margin(1e-12));
}

TEST_CASE("every constructor output passes the DensityMatrix invariants") {
    SplitMix64 rng(8);
    for (int d : {2, 3, 5}) {
        const MubSet m = standard_mubs(d, d + 1);
        for (int trial = 0; trial < 20; ++trial) {
            SplitMix64 stream = SplitMix64::stream(8, static_cast<std::uint64_t>(trial + 100 * d));
            const DensityMatrix mix = mub_diagonal_mixture(m, MixtureWeights::random_simplex(d + 1, d, stream));
            CHECK(mix.matrix().hermiticity_defect() < 1e-10);
            CHECK(mix.matrix().trace().real() == Approx(1.0).margin(1e-10));
            CHECK(mix.min_eigenvalue() >= -1e-9);

            const DensityMatrix pure = random_pure(d, rng.next());
            CHECK(pure.min_eigenvalue() >= -1e-9);
        }
    }
}
